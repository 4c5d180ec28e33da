#pragma once

#include "shs/weight.hpp"

namespace shs {

// An operator bound to a weight, with its membership certificates and the
// compressed matrix C = A^{1/2} T (A^{1/2})^+ realizing the reduced operator
// on the range of A. In finite dimension both certificates reduce to
// invariance of the null space of A, so they coincide; wrap still computes
// them independently.
struct AOp {
    Weight w;
    CMat T;
    bool half_bounded = false;   // ||P T (I-P)|| small: T is A-bounded
    bool a_adjointable = false;  // R(T*A) inside R(A): T admits an A-adjoint
    CMat C;                      // compressed matrix, set when half_bounded
    double a_norm = 0.0;         // ||T||_A = ||C||, set when half_bounded

    int dim() const { return w.dim(); }
};

AOp wrap(const Weight& w, const CMat& T);

// ||T||_A. Throws NotABounded when the certificate fails (the mathematical
// value would be +infinity; no arithmetic downstream should see that).
double seminorm(const AOp& op);

// The distinguished A-adjoint T# = A^+ T* A.
AOp sharp(const AOp& op);

// U#U = (U#)#U# = P to tolerance. Non-adjointable operators are simply not
// A-unitary; no error.
bool is_a_unitary(const AOp& op);

// The compressed matrix C. Throws NotABounded when undefined.
const CMat& compress(const AOp& op);

} // namespace shs
