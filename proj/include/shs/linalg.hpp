#pragma once

#include "shs/errors.hpp"
#include "shs/matrix.hpp"
#include "shs/tolerance.hpp"

namespace shs {

// Spectral decomposition of a Hermitian matrix, eigenvalues ascending.
// Contract: ||V diag(values) V* - M|| <= recon_kappa * dim * eps * ||M||
// and V*V = I to the same bound.
struct HermEig {
    RVec values;
    CMat vectors;

    CMat reconstruct() const {
        return vectors * values.asDiagonal() * vectors.adjoint();
    }
};

struct PinvResult {
    CMat matrix;
    Eigen::Index rank = 0;
};

// Hermitian eigendecomposition. The input is accepted when
// ||M - M*|| <= herm_rel * ||M|| and symmetrized before solving.
HermEig herm_eig(const CMat& m, const TolerancePolicy& tol = {});

// Hermitian PSD square root. Eigenvalues in [-psd_rel*lambda_max, 0) are
// clamped to zero; anything lower is rejected.
CMat psd_sqrt(const CMat& m, const TolerancePolicy& tol = {});

// Moore-Penrose pseudoinverse with numerical-rank truncation at
// rank_tol * sigma_max. The zero matrix maps to the zero matrix, rank 0.
PinvResult pinv(const CMat& m, double rank_tol);
inline PinvResult pinv(const CMat& m, const TolerancePolicy& tol = {}) {
    return pinv(m, tol.rank_tol(static_cast<int>(std::max(m.rows(), m.cols()))));
}

// Largest singular value.
double op_norm(const CMat& m);

// Largest eigenvalue modulus of a general square matrix.
double spec_radius(const CMat& m);

// All eigenvalues of a general square matrix (unordered).
CVec eigenvalues(const CMat& m);

} // namespace shs
