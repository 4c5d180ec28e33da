#include "shs/douglas.hpp"

#include <sstream>

namespace shs {
namespace douglas {

namespace {

void require_compatible(const CMat& T, const CMat& S) {
    if (T.rows() != S.rows()) {
        std::ostringstream os;
        os << "douglas: T has " << T.rows() << " rows but S has " << S.rows();
        throw DimensionMismatch(os.str());
    }
}

} // namespace

bool range_included(const CMat& T, const CMat& S, double tol) {
    require_compatible(T, S);
    const PinvResult Tp = pinv(T);
    const CMat proj = T * Tp.matrix; // orthogonal projector onto R(T)
    const double res = op_norm(S - proj * S);
    return res <= tol * (1.0 + op_norm(S));
}

DouglasSolution solve(const CMat& T, const CMat& S, double tol) {
    if (!range_included(T, S, tol)) {
        throw RangeNotIncluded(
            "douglas::solve: R(S) is not contained in R(T)");
    }
    DouglasSolution out;
    out.Q = pinv(T).matrix * S;
    const double qn = op_norm(out.Q);
    out.norm_sq = qn * qn;

    // Pencil route for the infimum, restricted to R(TT*).
    const CMat G = hermitize(T * T.adjoint());
    TolerancePolicy pol;
    HermEig eig = herm_eig(G, pol);
    const double lmax = eig.values.maxCoeff();
    const double cut = pol.rank_tol(static_cast<int>(G.rows())) *
                       std::max(lmax, 0.0);
    RVec half_inv(eig.values.size());
    for (Eigen::Index i = 0; i < eig.values.size(); ++i)
        half_inv[i] = eig.values[i] > cut && eig.values[i] > 0.0
                          ? 1.0 / std::sqrt(eig.values[i])
                          : 0.0;
    const CMat Ghi =
        eig.vectors * half_inv.asDiagonal() * eig.vectors.adjoint();
    const CMat M = hermitize(Ghi * (S * S.adjoint()) * Ghi);
    const double top = herm_eig(M, pol).values.maxCoeff();
    out.mu_star = top > 0.0 ? top : 0.0;
    return out;
}

double min_majorant(const CMat& T, const CMat& S, double tol) {
    return solve(T, S, tol).mu_star;
}

} // namespace douglas
} // namespace shs
