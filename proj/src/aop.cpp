#include "shs/aop.hpp"

#include <cassert>
#include <sstream>

namespace shs {

AOp wrap(const Weight& w, const CMat& T) {
    if (T.rows() != T.cols() || T.rows() != w.dim()) {
        std::ostringstream os;
        os << "wrap: operator is " << T.rows() << "x" << T.cols()
           << " but the weight has dimension " << w.dim();
        throw DimensionMismatch(os.str());
    }
    const TolerancePolicy& tol = w.tol();
    const int dim = w.dim();
    const CMat I = CMat::Identity(dim, dim);
    const double tnorm = op_norm(T);

    AOp op;
    op.w = w;
    op.T = T;

    // T is A-bounded iff it leaves the null space of A invariant.
    const double half_res = op_norm(w.P() * T * (I - w.P()));
    op.half_bounded = half_res <= tol.membership_rel * (1.0 + tnorm);

    // Douglas range condition R(T*A) in R(A), tested against the same
    // projector: (I-P) T* A must vanish.
    const CMat TstarA = T.adjoint() * w.A();
    const double adj_res = op_norm((I - w.P()) * TstarA);
    op.a_adjointable =
        adj_res <= tol.membership_rel * (1.0 + op_norm(TstarA));

    // At finite dimension the two certificates agree; free self-test.
    assert(op.half_bounded == op.a_adjointable);

    if (op.half_bounded) {
        op.C = w.B() * T * w.B_pinv();
        op.a_norm = op_norm(op.C);
    }
    return op;
}

double seminorm(const AOp& op) {
    if (!op.half_bounded)
        throw NotABounded("seminorm: the A-seminorm of this operator is "
                          "unbounded (null space of A is not invariant)");
    return op.a_norm;
}

const CMat& compress(const AOp& op) {
    if (!op.half_bounded)
        throw NotABounded("compress: no compressed matrix exists for a "
                          "non-A-bounded operator");
    return op.C;
}

AOp sharp(const AOp& op) {
    if (!op.a_adjointable)
        throw NotAAdjointable("sharp: R(T*A) is not contained in R(A)");
    return wrap(op.w, op.w.A_pinv() * op.T.adjoint() * op.w.A());
}

bool is_a_unitary(const AOp& op) {
    if (!op.a_adjointable) return false;
    const AOp adj = sharp(op);
    const AOp adj2 = sharp(adj);
    const double scale =
        1.0 + op_norm(op.T) * op_norm(op.T);
    const double tol = op.w.tol().unitary_rel * scale;
    return op_norm(adj.T * op.T - op.w.P()) <= tol &&
           op_norm(adj2.T * adj.T - op.w.P()) <= tol;
}

} // namespace shs
