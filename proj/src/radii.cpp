#include "shs/radii.hpp"

#include "shs/rng.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace shs {

namespace {

constexpr double kPi = 3.14159265358979323846;

double gelfand_radius(const CMat& C, const TolerancePolicy& tol,
                      int& iterations, double& residual) {
    const double n0 = op_norm(C);
    iterations = 0;
    residual = 0.0;
    if (n0 == 0.0) return 0.0;

    CMat M = C / n0;
    // invariant: C^{2^k} = exp(log_scale) * M with ||M|| = 1
    double log_scale = std::log(n0);
    double last = 0.0, before_last = 0.0;
    bool have_prev = false;
    for (int k = 1; k <= tol.gelfand_max_squarings; ++k) {
        M = M * M;
        const double nrm = op_norm(M);
        iterations = k;
        if (nrm == 0.0) {
            // exactly nilpotent at this power
            residual = 0.0;
            return 0.0;
        }
        log_scale = 2.0 * log_scale + std::log(nrm);
        M /= nrm;
        const double estimate = std::exp(log_scale / std::exp2(k));
        if (have_prev) {
            residual = std::abs(estimate - last) /
                       std::max(std::abs(estimate), 1e-300);
        }
        before_last = last;
        last = estimate;
        have_prev = true;
    }
    if (residual > tol.gelfand_gap) {
        std::ostringstream os;
        os << "gelfand radius: relative gap " << residual << " after "
           << tol.gelfand_max_squarings << " squarings exceeds "
           << tol.gelfand_gap << " (last two estimates " << before_last
           << ", " << last << ")";
        throw NoConvergence(os.str());
    }
    return last;
}

// Norm of the Hermitian part of e^{i theta} M, via a Hermitian eigensolve.
double rotated_herm_norm(const CMat& M, double theta) {
    const cplx phase = std::polar(1.0, theta);
    const CMat H = hermitize(phase * M);
    Eigen::SelfAdjointEigenSolver<CMat> es(H, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw NoConvergence("omega_a: Hermitian eigensolve failed during "
                            "the theta scan");
    const auto& ev = es.eigenvalues();
    return std::max(std::abs(ev.minCoeff()), std::abs(ev.maxCoeff()));
}

struct ScanResult {
    double value = 0.0;
    double theta = 0.0;
    int evaluations = 0;
    double refinement_gain = 0.0;
};

// Coarse grid over [0, pi) followed by golden-section refinement of every
// local-maximum bracket. g is pi-periodic, so brackets may wrap. Ties are
// resolved toward the smaller theta.
ScanResult theta_maximize(const std::function<double(double)>& g,
                          const TolerancePolicy& tol) {
    const int grid = tol.theta_grid;
    const double h = kPi / grid;
    std::vector<double> val(grid);
    ScanResult out;
    for (int j = 0; j < grid; ++j) {
        val[j] = g(j * h);
        ++out.evaluations;
        if (val[j] > out.value) {
            out.value = val[j];
            out.theta = j * h;
        }
    }
    const double grid_best = out.value;

    std::vector<int> candidates;
    for (int j = 0; j < grid; ++j) {
        const double left = val[(j + grid - 1) % grid];
        const double right = val[(j + 1) % grid];
        if (val[j] >= left && val[j] >= right) candidates.push_back(j);
    }
    if (static_cast<int>(candidates.size()) > tol.theta_max_brackets) {
        std::stable_sort(candidates.begin(), candidates.end(),
                         [&](int a, int b) { return val[a] > val[b]; });
        candidates.resize(tol.theta_max_brackets);
        std::sort(candidates.begin(), candidates.end());
    }

    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int j : candidates) {
        double a = (j - 1) * h;
        double b = (j + 1) * h;
        double x1 = b - inv_phi * (b - a);
        double x2 = a + inv_phi * (b - a);
        double f1 = g(x1);
        double f2 = g(x2);
        out.evaluations += 2;
        while (b - a > tol.theta_resolution) {
            if (f1 < f2) {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + inv_phi * (b - a);
                f2 = g(x2);
            } else {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - inv_phi * (b - a);
                f1 = g(x1);
            }
            ++out.evaluations;
        }
        const double xm = 0.5 * (a + b);
        const double fm = std::max(f1, f2);
        // wrap the representative angle back into [0, pi)
        double tm = std::fmod(xm, kPi);
        if (tm < 0.0) tm += kPi;
        if (fm > out.value || (fm == out.value && tm < out.theta)) {
            out.value = fm;
            out.theta = tm;
        }
    }
    out.refinement_gain = out.value - grid_best;
    return out;
}

} // namespace

const char* method_name(Method m) {
    switch (m) {
        case Method::eig: return "eig";
        case Method::gelfand: return "gelfand";
        case Method::theta_scan: return "theta_scan";
        case Method::sup_formula: return "sup_formula";
    }
    return "?";
}

RadiusResult r_a(const AOp& op, Method method) {
    if (!op.half_bounded)
        throw NotABounded("r_a: the A-spectral radius needs an A-bounded "
                          "operator");
    RadiusResult res;
    res.method = method;
    switch (method) {
        case Method::eig:
            res.value = spec_radius(op.C);
            break;
        case Method::gelfand:
            res.value = gelfand_radius(op.C, op.w.tol(), res.iterations,
                                       res.residual);
            break;
        default:
            throw KindMismatch("r_a: method must be eig or gelfand");
    }
    return res;
}

RadiusResult omega_a(const AOp& op, Method method) {
    if (!op.half_bounded)
        throw NotABounded("omega_a: the A-numerical radius of a "
                          "non-A-bounded operator is unbounded");
    RadiusResult res;
    res.method = method;
    const TolerancePolicy& tol = op.w.tol();

    if (method == Method::theta_scan) {
        const CMat& C = op.C;
        ScanResult s = theta_maximize(
            [&](double th) { return rotated_herm_norm(C, th); }, tol);
        res.value = s.value;
        res.iterations = s.evaluations;
        res.residual = s.refinement_gain;
        return res;
    }
    if (method == Method::sup_formula) {
        if (!op.a_adjointable)
            throw NotAAdjointable(
                "omega_a: the sup formula runs through the A-adjoint");
        // ||Re_A(e^{it}T)||_A with the compression applied after the rotation;
        // M2 comes from the A^+ T* A route, not from C*.
        const AOp adj = sharp(op);
        const CMat M1 = op.w.B() * op.T * op.w.B_pinv();
        const CMat M2 = op.w.B() * adj.T * op.w.B_pinv();
        ScanResult s = theta_maximize(
            [&](double th) {
                const cplx ph = std::polar(1.0, th);
                return op_norm(0.5 * (ph * M1 + std::conj(ph) * M2));
            },
            tol);
        res.value = s.value;
        res.iterations = s.evaluations;
        res.residual = s.refinement_gain;
        return res;
    }
    throw KindMismatch("omega_a: method must be theta_scan or sup_formula");
}

AOp re_a(const AOp& op, double theta) {
    if (!op.a_adjointable)
        throw NotAAdjointable("re_a: needs an operator with an A-adjoint");
    const AOp adj = sharp(op);
    const cplx ph = std::polar(1.0, theta);
    return wrap(op.w, 0.5 * (ph * op.T + std::conj(ph) * adj.T));
}

std::vector<cplx> sample_w_a(const AOp& op, int n, std::uint64_t seed,
                             double null_amplitude) {
    const Weight& w = op.w;
    if (w.rank() < 1)
        throw ZeroWeight("sample_w_a: no A-unit vectors exist");
    Rng rng(seed);
    const int dim = w.dim();
    const CMat I = CMat::Identity(dim, dim);
    std::vector<cplx> pts;
    pts.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        CVec x;
        double nv = 0.0;
        do {
            // weight-adapted Gaussian: the induced A-unit vectors are
            // uniform in the A-geometry (Bx/||Bx|| is Haar on the range
            // sphere), not biased toward the large eigenvalues of A
            const CVec g = w.B_pinv() * rng.cgaussian_matrix(dim, 1);
            x = w.P() * g;
            nv = vnorm(w, x);
        } while (nv < 1e-14);
        x /= nv;
        if (null_amplitude > 0.0 && w.rank() < dim) {
            const CVec h = rng.cgaussian_matrix(dim, 1);
            CVec z = (I - w.P()) * h;
            const double zn = z.norm();
            if (zn > 1e-14) {
                const double c = null_amplitude * rng.uniform();
                x += (c / zn) * z; // A-null direction: ||x||_A is unchanged
            }
        }
        pts.push_back((x.adjoint() * (w.A() * (op.T * x)))(0, 0));
    }
    return pts;
}

} // namespace shs
