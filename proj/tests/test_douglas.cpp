#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "shs/aop.hpp"
#include "shs/douglas.hpp"
#include "shs/rng.hpp"

using namespace shs;
using namespace shs::douglas;

namespace {

CMat cmat2(cplx a, cplx b, cplx c, cplx d) {
    CMat m(2, 2);
    m << a, b, c, d;
    return m;
}

CMat random_rank(Rng& rng, int dim, int rank) {
    return rng.cgaussian_matrix(dim, rank) * rng.cgaussian_matrix(rank, dim);
}

} // namespace

TEST_CASE("range inclusion fixtures") {
    const CMat t = cmat2(1, 0, 0, 0);
    const CMat s = cmat2(0, 1, 0, 0);
    CHECK(range_included(t, s)); // both ranges are span(e1)
    CHECK_FALSE(range_included(CMat::Zero(2, 2), s));
    CHECK(range_included(s, s));
}

TEST_CASE("range inclusion agrees with the rank test") {
    Rng rng(61);
    for (int trial = 0; trial < 30; ++trial) {
        const int dim = 2 + static_cast<int>(rng.below(4));
        const int rank = 1 + static_cast<int>(rng.below(dim));
        const CMat t = random_rank(rng, dim, rank);
        const CMat inside = t * rng.cgaussian_matrix(dim, dim);
        const CMat outside = rng.cgaussian_matrix(dim, dim);
        CHECK(range_included(t, inside));
        CMat stacked(dim, 2 * dim);
        stacked << t, inside;
        CHECK(pinv(stacked).rank == pinv(t).rank);
        if (rank < dim) CHECK_FALSE(range_included(t, outside));
    }
}

TEST_CASE("solve fixture with the pencil oracle") {
    const CMat t = cmat2(1, 0, 0, 0);
    const CMat s = cmat2(0, 1, 0, 0);
    DouglasSolution sol = solve(t, s);
    CHECK(op_norm(sol.Q - s) < 1e-12);
    CHECK(sol.norm_sq == doctest::Approx(1.0));
    CHECK(sol.mu_star == doctest::Approx(1.0));
}

TEST_CASE("solve trivial cases") {
    Rng rng(62);
    const CMat s = rng.cgaussian_matrix(3, 3);
    DouglasSolution sol = solve(CMat::Identity(3, 3), s);
    CHECK(op_norm(sol.Q - s) < 1e-12);
    CHECK(sol.norm_sq == doctest::Approx(op_norm(s) * op_norm(s)));

    DouglasSolution zero = solve(s, CMat::Zero(3, 3));
    CHECK(op_norm(zero.Q) < 1e-12);
    CHECK(zero.mu_star == doctest::Approx(0.0));
}

TEST_CASE("solve refuses non-included ranges") {
    CHECK_THROWS_AS(solve(CMat::Zero(2, 2), cmat2(1, 0, 0, 0)),
                    RangeNotIncluded);
}

TEST_CASE("solution invariants: residual, kernel, range") {
    Rng rng(63);
    for (int trial = 0; trial < 50; ++trial) {
        const int dim = 2 + static_cast<int>(rng.below(5));
        const int rank = 1 + static_cast<int>(rng.below(dim));
        const CMat t = random_rank(rng, dim, rank);
        const CMat s = t * rng.cgaussian_matrix(dim, dim);
        DouglasSolution sol = solve(t, s);

        CHECK(op_norm(t * sol.Q - s) <= 1e-9 * (1 + op_norm(s)));
        // property (b): N(Q) = N(S) via ranks and kernel vectors
        CHECK(pinv(sol.Q).rank == pinv(s).rank);
        Eigen::JacobiSVD<CMat> svd(s, Eigen::ComputeFullV);
        for (Eigen::Index k = pinv(s).rank; k < dim; ++k) {
            const CVec null_vec = svd.matrixV().col(k);
            CHECK((sol.Q * null_vec).norm() < 1e-9 * (1 + op_norm(sol.Q)));
        }
        // property (c): R(Q) inside R(T*)
        const CMat row_proj = pinv(t).matrix * t;
        CHECK(op_norm(sol.Q - row_proj * sol.Q) <=
              1e-9 * (1 + op_norm(sol.Q)));
    }
}

TEST_CASE("the two routes to the minimal majorant agree") {
    Rng rng(64);
    for (int trial = 0; trial < 500; ++trial) {
        const int dim = 2 + static_cast<int>(rng.below(5));
        const int rank = 1 + static_cast<int>(rng.below(dim));
        const CMat t = random_rank(rng, dim, rank);
        const CMat s = t * rng.cgaussian_matrix(dim, dim);
        DouglasSolution sol = solve(t, s);
        CHECK(std::abs(sol.norm_sq - sol.mu_star) <=
              1e-8 * (1 + sol.mu_star));
    }
}

TEST_CASE("min_majorant scaling law and unitary fixture") {
    Rng rng(65);
    const CMat t = random_rank(rng, 4, 2);
    const CMat s = t * rng.cgaussian_matrix(4, 4);
    const double base = min_majorant(t, s);
    CHECK(min_majorant(t, CMat(2.0 * s)) ==
          doctest::Approx(4.0 * base).epsilon(1e-8));

    const CMat q = Eigen::HouseholderQR<CMat>(rng.cgaussian_matrix(4, 4))
                       .householderQ() *
                   CMat::Identity(4, 4);
    const CMat any = rng.cgaussian_matrix(4, 4);
    CHECK(min_majorant(q, any) ==
          doctest::Approx(op_norm(any) * op_norm(any)).epsilon(1e-8));
}

TEST_CASE("rank-deficient dual-route fixture") {
    Rng rng(66);
    const CMat t = random_rank(rng, 4, 2);
    const CMat r = rng.cgaussian_matrix(4, 4);
    const CMat s = t * r;
    const CMat q = pinv(t).matrix * t * r;
    const double direct = op_norm(q) * op_norm(q);
    CHECK(min_majorant(t, s) == doctest::Approx(direct).epsilon(1e-8));
}

TEST_CASE("sharp coincides with the Douglas solution of A X = T* A") {
    Rng rng(67);
    for (int trial = 0; trial < 20; ++trial) {
        const int dim = 2 + static_cast<int>(rng.below(4));
        const CMat g = rng.cgaussian_matrix(dim, dim);
        const CMat q = Eigen::HouseholderQR<CMat>(g).householderQ() *
                       CMat::Identity(dim, dim);
        RVec lambda(dim);
        for (int i = 0; i < dim; ++i)
            lambda[i] = i == 0 ? 0.0 : std::abs(rng.gaussian());
        Weight w =
            make_weight(hermitize(q * lambda.asDiagonal() * q.adjoint()));
        const CMat I = CMat::Identity(dim, dim);
        const CMat x = rng.cgaussian_matrix(dim, dim);
        const CMat t = x - w.P() * x * (I - w.P());
        AOp op = wrap(w, t);
        const CMat via_douglas =
            solve(w.A(), CMat(t.adjoint() * w.A())).Q;
        CHECK(op_norm(sharp(op).T - via_douglas) <
              1e-9 * (1 + op_norm(via_douglas)));
    }
}

TEST_CASE("shape mismatches are rejected") {
    CHECK_THROWS_AS(range_included(CMat::Zero(2, 2), CMat::Zero(3, 3)),
                    DimensionMismatch);
}
