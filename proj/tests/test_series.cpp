#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "shs/radii.hpp"
#include "shs/rng.hpp"
#include "shs/series.hpp"

using namespace shs;

namespace {

CMat cmat2(cplx a, cplx b, cplx c, cplx d) {
    CMat m(2, 2);
    m << a, b, c, d;
    return m;
}

Weight random_invertible_weight(Rng& rng, int dim) {
    const CMat g = rng.cgaussian_matrix(dim, dim);
    const CMat q = Eigen::HouseholderQR<CMat>(g).householderQ() *
                   CMat::Identity(dim, dim);
    RVec lambda(dim);
    for (int i = 0; i < dim; ++i) lambda[i] = 0.2 + std::abs(rng.gaussian());
    return make_weight(hermitize(q * lambda.asDiagonal() * q.adjoint()));
}

AOp scaled_op(Rng& rng, const Weight& w, double target) {
    const CMat x = rng.cgaussian_matrix(w.dim(), w.dim());
    AOp probe = wrap(w, x);
    return wrap(w, CMat(x * (target / seminorm(probe))));
}

} // namespace

TEST_CASE("builtin series carry their radii") {
    CHECK(PowerSeries::geometric().radius() == 1.0);
    CHECK(PowerSeries::alt_geometric().radius() == 1.0);
    CHECK(std::isinf(PowerSeries::exponential().radius()));
    CHECK(PowerSeries::geometric().coeff(7) == cplx(1.0));
    CHECK(PowerSeries::alt_geometric().coeff(7) == cplx(-1.0));
    CHECK(std::abs(PowerSeries::exponential().coeff(4) - cplx(1.0 / 24.0)) <
          1e-15);
}

TEST_CASE("cached prefixes respect the declared radius") {
    for (const PowerSeries& s :
         {PowerSeries::geometric(), PowerSeries::alt_geometric()}) {
        for (std::size_t k = 4; k < s.coeff_prefix().size(); ++k) {
            const double root =
                std::pow(std::abs(s.coeff(k)), 1.0 / static_cast<double>(k));
            CHECK(root <= 1.0 / s.radius() + 1e-9);
        }
    }
    // infinite radius: the root sequence must decay toward zero
    const PowerSeries e = PowerSeries::exponential();
    double prev = 1.0;
    for (std::size_t k = 4; k < e.coeff_prefix().size(); ++k) {
        const double root =
            std::pow(std::abs(e.coeff(k)), 1.0 / static_cast<double>(k));
        CHECK(root < prev);
        prev = root;
    }
}

TEST_CASE("geometric series truncates a nilpotent argument immediately") {
    Weight w = make_weight(cmat2(1, 0, 0, 2));
    AOp nil = wrap(w, cmat2(0, 0.7, 0, 0));
    REQUIRE(seminorm(nil) < 1.0);
    SeriesEval se = eval(nil, PowerSeries::geometric(), 1e-12);
    CHECK(op_norm(se.op.T - (CMat::Identity(2, 2) + nil.T)) < 1e-12);
    CHECK(se.tail_bound < 1e-12);
}

TEST_CASE("exp of zero is the identity") {
    Weight w = make_weight(cmat2(1, 0, 0, 2));
    AOp zero = wrap(w, CMat::Zero(2, 2));
    SeriesEval se = eval(zero, PowerSeries::exponential(), 1e-12);
    CHECK(op_norm(se.op.T - CMat::Identity(2, 2)) < 1e-14);
    CHECK(se.terms == 1);
}

TEST_CASE("geometric series against the direct inverse oracle") {
    Rng rng(91);
    for (double target : {0.3, 0.5, 0.9}) {
        for (int trial = 0; trial < 5; ++trial) {
            const int dim = 2 + static_cast<int>(rng.below(4));
            Weight w = random_invertible_weight(rng, dim);
            AOp op = scaled_op(rng, w, target);
            SeriesEval se = eval(op, PowerSeries::geometric(), 1e-12);
            const CMat inv =
                (CMat::Identity(dim, dim) - op.T).inverse();
            CHECK(seminorm(wrap(w, se.op.T - inv)) < 1e-12 + 1e-10);
        }
    }
}

TEST_CASE("alternating series matches the other resolvent") {
    Rng rng(92);
    Weight w = random_invertible_weight(rng, 3);
    AOp op = scaled_op(rng, w, 0.5);
    SeriesEval se = eval(op, PowerSeries::alt_geometric(), 1e-12);
    const CMat inv = (CMat::Identity(3, 3) + op.T).inverse();
    CHECK(seminorm(wrap(w, se.op.T - inv)) < 1e-12 + 1e-10);
}

TEST_CASE("eval refuses arguments on or outside the disk") {
    Rng rng(93);
    Weight w = random_invertible_weight(rng, 3);
    AOp op = scaled_op(rng, w, 1.1);
    CHECK_THROWS_AS(eval(op, PowerSeries::geometric(), 1e-12), OutsideDisk);
}

TEST_CASE("tail bound stalls near the boundary of the disk") {
    Rng rng(94);
    Weight w = random_invertible_weight(rng, 2);
    AOp op = scaled_op(rng, w, 0.9999);
    CHECK_THROWS_AS(eval(op, PowerSeries::geometric(), 1e-12),
                    TailBoundStall);
}

TEST_CASE("f_c fixtures") {
    CHECK(PowerSeries::exponential().f_c_at(1.25) ==
          doctest::Approx(std::exp(1.25)).epsilon(1e-12));
    CHECK(PowerSeries::alt_geometric().f_c_at(0.75) ==
          doctest::Approx(1.0 / 0.25).epsilon(1e-10));
    PowerSeries poly = PowerSeries::polynomial({1.0, cplx(0, -2), 3.0});
    CHECK(poly.f_c_at(2.0) == doctest::Approx(1 + 4 + 12).epsilon(1e-14));
    CHECK_THROWS_AS(PowerSeries::geometric().f_c_at(1.0), OutsideDisk);
    CHECK_THROWS_AS(PowerSeries::geometric().f_c_at(-0.5), OutsideDisk);
}

TEST_CASE("series bound on nilpotent arguments is an equality") {
    Weight w = make_weight(cmat2(1, 0, 0, 2));
    AOp nil = wrap(w, cmat2(0, 0.5, 0, 0));
    CheckOutcome geo = check_series_bound(nil, PowerSeries::geometric());
    CHECK_FALSE(geo.violated);
    CHECK(geo.lhs == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(geo.rhs == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(geo.margin) < 1e-10);

    CheckOutcome ex = check_series_bound(nil, PowerSeries::exponential());
    CHECK(std::abs(ex.margin) < 1e-10);
}

TEST_CASE("series bound on nonnegative scalar arguments is an equality") {
    Weight w = make_weight(cmat2(1, 0, 0, 2));
    AOp op = wrap(w, CMat(0.8 * CMat::Identity(2, 2)));
    CheckOutcome ex = check_series_bound(op, PowerSeries::exponential());
    CHECK(ex.lhs == doctest::Approx(std::exp(0.8)).epsilon(1e-10));
    CHECK(ex.rhs == doctest::Approx(std::exp(0.8)).epsilon(1e-10));
}

TEST_CASE("series bound enforces its hypotheses") {
    Weight singular = make_weight(cmat2(1, 0, 0, 0));
    AOp op = wrap(singular, cmat2(0.5, 0, 0, 0.5));
    CHECK_THROWS_AS(check_series_bound(op, PowerSeries::geometric()),
                    WeightSingular);
    CheckOutcome diag =
        check_series_bound(op, PowerSeries::geometric(), true);
    CHECK(diag.diagnostic);
}

TEST_CASE("series bound holds on random instances inside the disk") {
    Rng rng(95);
    for (int trial = 0; trial < 20; ++trial) {
        const int dim = 2 + static_cast<int>(rng.below(4));
        Weight w = random_invertible_weight(rng, dim);
        const double target = 0.3 + 0.3 * static_cast<double>(rng.below(3));
        AOp op = scaled_op(rng, w, target);
        for (int sid = 0; sid < 2; ++sid) {
            CheckOutcome o = check_series_bound(
                op, sid == 0 ? PowerSeries::geometric()
                             : PowerSeries::exponential());
            CHECK(o.margin >= -1e-9);
        }
    }
}

TEST_CASE("truncation radii converge to the limit radius") {
    Rng rng(96);
    Weight w = random_invertible_weight(rng, 3);
    AOp op = scaled_op(rng, w, 0.5);
    const PowerSeries s = PowerSeries::geometric();
    const SeriesEval ref = eval(op, s, 1e-12);
    const double r_ref = r_a(ref.op).value;
    double prev = -1.0;
    for (double level : {1e-4, 1e-6, 1e-8, 1e-10}) {
        const SeriesEval se = eval(op, s, level);
        const double rk = r_a(se.op).value;
        const double dist = seminorm(wrap(w, se.op.T - ref.op.T));
        CHECK(std::abs(rk - r_ref) <= dist + 1e-9);
        prev = rk;
    }
    CHECK(std::abs(prev - r_ref) <= 1e-8 * (1 + std::abs(r_ref)));
}

TEST_CASE("resolvent and exponential radius bounds") {
    Rng rng(97);
    for (int trial = 0; trial < 15; ++trial) {
        const int dim = 2 + static_cast<int>(rng.below(4));
        Weight w = random_invertible_weight(rng, dim);
        AOp op = scaled_op(rng, w, 0.3 + 0.6 * rng.uniform());
        const double r = r_a(op).value;
        const CMat I = CMat::Identity(dim, dim);
        const double bound = 1.0 / (1.0 - r);
        CHECK(r_a(wrap(w, CMat((I - op.T).inverse()))).value <=
              bound + 1e-8);
        CHECK(r_a(wrap(w, CMat((I + op.T).inverse()))).value <=
              bound + 1e-8);
        const SeriesEval ex = eval(op, PowerSeries::exponential(), 1e-12);
        CHECK(r_a(ex.op).value <= std::exp(r) + 1e-8);
    }
}
