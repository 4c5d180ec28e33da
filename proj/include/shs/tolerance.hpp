#pragma once

#include <cmath>
#include <limits>

namespace shs {

// All numerical thresholds used across the toolkit, threaded explicitly.
// No module keeps hidden tolerance globals; a Weight carries one policy
// and every operation derived from it reuses the same values.
struct TolerancePolicy {
    // Relative Hermiticity acceptance: ||M - M*|| <= herm_rel * ||M||.
    double herm_rel = 1e-10;
    // Eigenvalues of a weight in [-psd_rel * lambda_max, 0) are clamped to 0;
    // anything below that window is rejected as not PSD.
    double psd_rel = 1e-10;
    // Numerical-rank threshold relative to the largest singular value.
    // 0 means "dim * machine epsilon".
    double rank_rel = 0.0;
    // Factor kappa in reconstruction bounds kappa * dim * eps * ||M||.
    double recon_kappa = 100.0;
    // A-boundedness certificate: ||P T (I-P)|| <= membership_rel * (1 + ||T||).
    double membership_rel = 1e-10;
    // Residual acceptance for linear identities (A X = T* A, T Q = S, ...).
    double residual_rel = 1e-10;
    // A-unitary certificate: ||U#U - P|| <= unitary_rel * (1 + ||U||^2).
    double unitary_rel = 1e-8;

    // Check-outcome policy. Inequality: lhs > rhs*(1+ineq_rel) + ineq_abs is a
    // violation. Equality: |lhs - rhs| > eq_rel*(1+|rhs|) is a violation.
    double eq_rel = 1e-8;
    double ineq_rel = 1e-7;
    double ineq_abs = 1e-9;

    // Spectral-radius estimation by repeated squaring.
    int gelfand_max_squarings = 30;
    double gelfand_gap = 1e-3;

    // Numerical-radius scan: grid points over [0, pi), bracket refinement
    // down to this angular resolution, at most this many refined brackets.
    int theta_grid = 720;
    double theta_resolution = 1e-10;
    int theta_max_brackets = 64;

    // Power-series truncation cap.
    int series_max_terms = 10000;

    // Cross-method agreement: r_A (eig vs squaring) and w_A (scan vs sup form).
    double radius_cross_rel = 1e-4;
    double omega_cross_rel = 1e-8;

    double rank_tol(int dim) const {
        const double eps = std::numeric_limits<double>::epsilon();
        return rank_rel > 0.0 ? rank_rel : static_cast<double>(dim) * eps;
    }
};

} // namespace shs
