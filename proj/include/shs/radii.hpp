#pragma once

#include "shs/aop.hpp"

#include <cstdint>
#include <vector>

namespace shs {

enum class Method { eig, gelfand, theta_scan, sup_formula };

const char* method_name(Method m);

struct RadiusResult {
    double value = 0.0;
    Method method = Method::eig;
    int iterations = 0;
    // eig: 0. gelfand: relative gap of the last two squaring estimates.
    // scans: improvement of bracket refinement over the coarse grid.
    double residual = 0.0;
};

// A-spectral radius r_A(T) = lim ||T^n||_A^{1/n}.
//   eig      eigenvalue moduli of the compressed matrix
//   gelfand  repeated squaring of C with per-step renormalization and
//            accumulated log scales (n = 2^30 by default)
RadiusResult r_a(const AOp& op, Method method = Method::eig);

// A-numerical radius w_A(T) = sup{|<Tx|x>_A| : ||x||_A = 1}.
//   theta_scan   max over theta in [0, pi) of || (e^{it}C + e^{-it}C*)/2 ||,
//                coarse grid then golden-section refinement of every local
//                maximum bracket
//   sup_formula  the same scan where the inner value is the A-seminorm of
//                (e^{it}T + e^{-it}T#)/2, reached through the A-adjoint
RadiusResult omega_a(const AOp& op, Method method = Method::theta_scan);

// Rotated A-real part (e^{it}T + e^{-it}T#)/2; an A-self-adjoint operator.
AOp re_a(const AOp& op, double theta);

// Points <Tx|x>_A for A-unit x = P g / ||P g||_A plus an optional null-space
// component c z with c uniform in [0, null_amplitude]. The null excitation
// makes an unbounded A-numerical radius observable instead of truncating it.
std::vector<cplx> sample_w_a(const AOp& op, int n, std::uint64_t seed,
                             double null_amplitude = 0.0);

} // namespace shs
