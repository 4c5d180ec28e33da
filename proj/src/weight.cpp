#include "shs/weight.hpp"

#include <sstream>

namespace shs {

Weight make_weight(const CMat& A, const TolerancePolicy& tol) {
    if (A.rows() != A.cols() || A.rows() < 1) {
        std::ostringstream os;
        os << "make_weight: weight must be square, got " << A.rows() << "x"
           << A.cols();
        throw DimensionMismatch(os.str());
    }

    HermEig eig = herm_eig(A, tol); // throws NotHermitian on failure
    const int dim = static_cast<int>(A.rows());
    const double lambda_max = eig.values.maxCoeff();
    const double floor = -tol.psd_rel * std::max(lambda_max, 0.0);

    RVec lambda = eig.values;
    for (Eigen::Index i = 0; i < lambda.size(); ++i) {
        if (lambda[i] < floor) {
            std::ostringstream os;
            os << "make_weight: eigenvalue " << lambda[i] << " at index " << i
               << " is below the PSD clamp window " << floor;
            throw NotPSD(os.str());
        }
        if (lambda[i] < 0.0) lambda[i] = 0.0;
    }

    const double cut = tol.rank_tol(dim) * std::max(lambda_max, 0.0);
    auto data = std::make_shared<Weight::Data>();
    data->dim = dim;
    data->tol = tol;
    data->A = hermitize(A);

    // eigenvalues at or below the rank cut are dead everywhere: keeping
    // sqrt(lambda) dirt in B would leak it off the range of P
    RVec root(dim), root_inv(dim), inv(dim), ind(dim);
    std::vector<Eigen::Index> range_cols;
    for (Eigen::Index i = 0; i < lambda.size(); ++i) {
        const bool live = lambda[i] > cut && lambda[i] > 0.0;
        root[i] = live ? std::sqrt(lambda[i]) : 0.0;
        root_inv[i] = live ? 1.0 / root[i] : 0.0;
        inv[i] = live ? 1.0 / lambda[i] : 0.0;
        ind[i] = live ? 1.0 : 0.0;
        if (live) range_cols.push_back(i);
    }
    data->rank = static_cast<int>(range_cols.size());

    const CMat& V = eig.vectors;
    data->B = hermitize(V * root.asDiagonal() * V.adjoint());
    data->B_pinv = hermitize(V * root_inv.asDiagonal() * V.adjoint());
    data->A_pinv = hermitize(V * inv.asDiagonal() * V.adjoint());
    data->P = hermitize(V * ind.asDiagonal() * V.adjoint());
    data->range_basis.resize(dim, data->rank);
    for (std::size_t c = 0; c < range_cols.size(); ++c)
        data->range_basis.col(static_cast<Eigen::Index>(c)) =
            V.col(range_cols[c]);

    return Weight(std::move(data));
}

namespace {

void require_length(const Weight& w, const CVec& x, const char* who) {
    if (x.size() != w.dim()) {
        std::ostringstream os;
        os << who << ": vector length " << x.size()
           << " does not match weight dimension " << w.dim();
        throw DimensionMismatch(os.str());
    }
}

} // namespace

cplx sip(const Weight& w, const CVec& x, const CVec& y) {
    require_length(w, x, "sip");
    require_length(w, y, "sip");
    return (y.adjoint() * (w.A() * x))(0, 0);
}

double vnorm(const Weight& w, const CVec& x) {
    require_length(w, x, "vnorm");
    return (w.B() * x).norm();
}

} // namespace shs
