#include "shs/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <sstream>

namespace shs {

namespace {

void require_square(const CMat& m, const char* who) {
    if (m.rows() != m.cols() || m.rows() < 1) {
        std::ostringstream os;
        os << who << ": expected a square matrix, got " << m.rows() << "x"
           << m.cols();
        throw DimensionMismatch(os.str());
    }
}

} // namespace

double op_norm(const CMat& m) {
    if (m.size() == 0) return 0.0;
    // sqrt of the top eigenvalue of M*M; accurate for the dominant singular
    // value, which is all this toolkit ever needs from op_norm.
    Eigen::SelfAdjointEigenSolver<CMat> es(hermitize(m.adjoint() * m),
                                           Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) {
        std::ostringstream os;
        os << "op_norm: eigenvalue iteration failed on a " << m.rows() << "x"
           << m.cols() << " matrix";
        throw NoConvergence(os.str());
    }
    const double top = es.eigenvalues().maxCoeff();
    return top > 0.0 ? std::sqrt(top) : 0.0;
}

HermEig herm_eig(const CMat& m, const TolerancePolicy& tol) {
    require_square(m, "herm_eig");
    const double scale = op_norm(m);
    const double dev = op_norm(m - m.adjoint());
    if (dev > tol.herm_rel * std::max(scale, 1e-300) && dev > 0.0) {
        std::ostringstream os;
        os << "herm_eig: ||M - M*|| = " << dev << " exceeds " << tol.herm_rel
           << " * ||M|| = " << tol.herm_rel * scale;
        throw NotHermitian(os.str());
    }
    Eigen::SelfAdjointEigenSolver<CMat> es(hermitize(m));
    if (es.info() != Eigen::Success) {
        std::ostringstream os;
        os << "herm_eig: tridiagonal QL iteration failed on a " << m.rows()
           << "x" << m.cols() << " matrix (30*dim iteration cap reached)";
        throw NoConvergence(os.str());
    }
    return HermEig{es.eigenvalues(), es.eigenvectors()};
}

CMat psd_sqrt(const CMat& m, const TolerancePolicy& tol) {
    HermEig eig = herm_eig(m, tol);
    const double lambda_max = eig.values.maxCoeff();
    const double floor = -tol.psd_rel * std::max(lambda_max, 0.0);
    RVec roots(eig.values.size());
    for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
        const double l = eig.values[i];
        if (l < floor) {
            std::ostringstream os;
            os << "psd_sqrt: eigenvalue " << l << " at index " << i
               << " is below " << floor;
            throw NotPSD(os.str());
        }
        roots[i] = l > 0.0 ? std::sqrt(l) : 0.0;
    }
    return hermitize(eig.vectors * roots.asDiagonal() * eig.vectors.adjoint());
}

PinvResult pinv(const CMat& m, double rank_tol) {
    Eigen::JacobiSVD<CMat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double smax = sv.size() > 0 ? sv[0] : 0.0;
    const double cut = rank_tol * smax;
    PinvResult out;
    RVec inv = RVec::Zero(sv.size());
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv[i] > cut && sv[i] > 0.0) {
            inv[i] = 1.0 / sv[i];
            ++out.rank;
        }
    }
    out.matrix = svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
    return out;
}

CVec eigenvalues(const CMat& m) {
    require_square(m, "eigenvalues");
    if (m.rows() == 1) {
        CVec v(1);
        v[0] = m(0, 0);
        return v;
    }
    Eigen::ComplexEigenSolver<CMat> es(m, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success) {
        std::ostringstream os;
        os << "eigenvalues: complex Schur iteration failed on a " << m.rows()
           << "x" << m.cols() << " matrix (30*dim iteration cap reached)";
        throw NoConvergence(os.str());
    }
    return es.eigenvalues();
}

double spec_radius(const CMat& m) {
    return eigenvalues(m).cwiseAbs().maxCoeff();
}

} // namespace shs
