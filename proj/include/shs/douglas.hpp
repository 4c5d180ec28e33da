#pragma once

#include "shs/linalg.hpp"

namespace shs {
namespace douglas {

// Majorization data for the equation T X = S on R(S) in R(T):
//   Q        the minimal solution T^+ S
//   norm_sq  ||Q||^2
//   mu_star  inf{mu : SS* <= mu TT*}, computed independently through the
//            pencil lambda_max(G^{+/2} SS* G^{+/2}) with G = TT* restricted
//            to its range (the unrestricted pencil is singular).
struct DouglasSolution {
    CMat Q;
    double norm_sq = 0.0;
    double mu_star = 0.0;
};

// True iff ||(I - T T^+) S|| <= tol * (1 + ||S||).
bool range_included(const CMat& T, const CMat& S, double tol = 1e-10);

DouglasSolution solve(const CMat& T, const CMat& S, double tol = 1e-10);

// The minimal majorization constant; equals solve(T,S).norm_sq up to the
// agreement of the two routes.
double min_majorant(const CMat& T, const CMat& S, double tol = 1e-10);

} // namespace douglas
} // namespace shs
