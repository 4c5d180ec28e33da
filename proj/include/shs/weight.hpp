#pragma once

#include "shs/linalg.hpp"

#include <memory>

namespace shs {

// The semi-Hilbertian structure induced by a fixed PSD weight A. All the
// spectral caches (square root, pseudoinverses, range projector, a basis of
// the range) are computed once from a single eigendecomposition, so they are
// mutually consistent by construction. Immutable after make_weight; copies
// share the cached data.
class Weight {
public:
    Weight() = default;

    int dim() const { return d_ ? d_->dim : 0; }
    int rank() const { return d_ ? d_->rank : 0; }
    bool invertible() const { return d_ && d_->rank == d_->dim; }

    const CMat& A() const { return d_->A; }
    const CMat& B() const { return d_->B; }            // A^{1/2}
    const CMat& B_pinv() const { return d_->B_pinv; }  // (A^{1/2})^+
    const CMat& A_pinv() const { return d_->A_pinv; }  // A^+
    const CMat& P() const { return d_->P; }            // projector onto R(A)
    // Orthonormal basis of R(A), dim x rank (empty when rank is 0).
    const CMat& range_basis() const { return d_->range_basis; }
    const TolerancePolicy& tol() const { return d_->tol; }

    bool valid() const { return static_cast<bool>(d_); }

private:
    struct Data {
        int dim = 0;
        int rank = 0;
        CMat A, B, B_pinv, A_pinv, P, range_basis;
        TolerancePolicy tol;
    };
    std::shared_ptr<const Data> d_;

    friend Weight make_weight(const CMat&, const TolerancePolicy&);
    friend Weight inflate_weight(const Weight&, int);
    explicit Weight(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
};

// Validates that A is Hermitian PSD (to policy tolerances), clamps eigenvalues
// in the [-psd_rel*lambda_max, 0) window to zero and builds all caches.
Weight make_weight(const CMat& A, const TolerancePolicy& tol = {});

// Semi-inner product <x|y>_A = <Ax|y>, linear in x, conjugate-linear in y.
cplx sip(const Weight& w, const CVec& x, const CVec& y);

// Seminorm ||x||_A = ||A^{1/2} x||.
double vnorm(const Weight& w, const CVec& x);

} // namespace shs
