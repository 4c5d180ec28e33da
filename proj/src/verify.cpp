#include "shs/verify.hpp"

#include "shs/blocks.hpp"
#include "shs/radii.hpp"
#include "shs/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <thread>

namespace shs {
namespace verify {

const char* kind_name(Kind k) {
    switch (k) {
        case Kind::single: return "single";
        case Kind::pair: return "pair";
        case Kind::commuting_pair: return "commuting_pair";
        case Kind::quadruple: return "quadruple";
        case Kind::unitary_pair: return "unitary_pair";
        case Kind::block2x2: return "block2x2";
        case Kind::d_tuples: return "d_tuples";
        case Kind::series_case: return "series_case";
    }
    return "?";
}

PowerSeries series_by_id(int id) {
    switch (id) {
        case 0: return PowerSeries::geometric();
        case 1: return PowerSeries::alt_geometric();
        default: return PowerSeries::exponential();
    }
}

// ---------------------------------------------------------------------------
// Instance generation. Discrete decisions (zero pattern, series pick) are
// drawn first; every continuous quantity then comes from a flat vector of
// standard Gaussians with a fixed layout, which is also the coordinate space
// the tightness search perturbs.
// ---------------------------------------------------------------------------

namespace {

struct GenPlan {
    std::vector<int> zeroed;
    int series_id = 0;
    double scale_sel = 0.5;
};

class ParamStream {
public:
    explicit ParamStream(const std::vector<double>& v) : v_(&v) {}
    double next() { return (*v_)[i_++]; }
    cplx cnext() {
        const double re = next();
        const double im = next();
        return cplx(re, im) / std::sqrt(2.0);
    }
    CMat cmatrix(Eigen::Index rows, Eigen::Index cols) {
        CMat m(rows, cols);
        for (Eigen::Index i = 0; i < rows; ++i)
            for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = cnext();
        return m;
    }

private:
    const std::vector<double>* v_;
    std::size_t i_ = 0;
};

std::size_t op_slot(int dim) {
    return 2u * static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim);
}

std::size_t param_count(const InstanceSpec& s) {
    std::size_t n = op_slot(s.dim) + static_cast<std::size_t>(s.dim); // weight
    switch (s.kind) {
        case Kind::single: n += 1 * op_slot(s.dim); break;
        case Kind::pair: n += 2 * op_slot(s.dim); break;
        case Kind::commuting_pair: n += op_slot(s.dim) + 2u * 6 * 4; break;
        case Kind::quadruple: n += 4 * op_slot(s.dim); break;
        case Kind::unitary_pair: n += 2 * op_slot(s.dim); break;
        case Kind::block2x2: n += 4 * op_slot(s.dim); break;
        case Kind::d_tuples:
            n += (2u * s.d + static_cast<std::size_t>(s.d) * s.d) *
                 op_slot(s.dim);
            break;
        case Kind::series_case: n += 1 * op_slot(s.dim); break;
    }
    return n;
}

GenPlan draw_plan(const InstanceSpec& spec, Rng& rng) {
    GenPlan plan;
    if (spec.kind == Kind::series_case) {
        plan.series_id = static_cast<int>(rng.below(3));
        const double scales[3] = {0.3, 0.5, 0.9};
        plan.scale_sel = scales[rng.below(3)];
    }
    if (spec.singular) {
        if (spec.dim == 1) {
            plan.zeroed = {0};
        } else {
            const int k = 1 + static_cast<int>(rng.below(
                                  static_cast<std::uint64_t>(spec.dim - 1)));
            std::vector<int> idx(spec.dim);
            std::iota(idx.begin(), idx.end(), 0);
            for (int i = 0; i < k; ++i) {
                const int j =
                    i + static_cast<int>(rng.below(
                            static_cast<std::uint64_t>(spec.dim - i)));
                std::swap(idx[i], idx[j]);
            }
            plan.zeroed.assign(idx.begin(), idx.begin() + k);
            std::sort(plan.zeroed.begin(), plan.zeroed.end());
        }
    }
    return plan;
}

CMat haar_unitary(CMat g) {
    const Eigen::Index n = g.rows();
    Eigen::HouseholderQR<CMat> qr(g);
    CMat q = qr.householderQ() * CMat::Identity(n, n);
    const CMat r = qr.matrixQR();
    for (Eigen::Index j = 0; j < n; ++j) {
        const cplx rjj = r(j, j);
        const double a = std::abs(rjj);
        if (a > 0.0) q.col(j) *= std::conj(rjj / a);
    }
    return q;
}

Weight build_weight(const InstanceSpec& spec, const GenPlan& plan,
                    ParamStream& ps, const TolerancePolicy& pol) {
    const int dim = spec.dim;
    const CMat q = haar_unitary(ps.cmatrix(dim, dim));
    RVec lambda(dim);
    for (int i = 0; i < dim; ++i) lambda[i] = std::abs(ps.next());
    for (int z : plan.zeroed) lambda[z] = 0.0;
    const CMat a = hermitize(q * lambda.asDiagonal() * q.adjoint());
    return make_weight(a, pol);
}

// A-bounded by construction: remove the part mapping N(A) outside N(A).
CMat bounded_op(ParamStream& ps, const Weight& w) {
    const CMat x = ps.cmatrix(w.dim(), w.dim());
    const CMat I = CMat::Identity(w.dim(), w.dim());
    return x - w.P() * x * (I - w.P());
}

// A-unitary lift: a Haar unitary on the range of A, zero on the null space,
// conjugated back through the square-root factors.
CMat unitary_op(ParamStream& ps, const Weight& w) {
    const CMat g = ps.cmatrix(w.dim(), w.dim()); // full slot, fixed layout
    const int r = w.rank();
    if (r == 0) return CMat::Zero(w.dim(), w.dim());
    const CMat vr = haar_unitary(g.topLeftCorner(r, r));
    const CMat vt = w.range_basis() * vr * w.range_basis().adjoint();
    return w.B_pinv() * vt * w.B();
}

Instance build_instance(const InstanceSpec& spec, const GenPlan& plan,
                        const std::vector<double>& params,
                        const TolerancePolicy& pol) {
    ParamStream ps(params);
    Instance inst;
    inst.spec = spec;
    inst.series_id = plan.series_id;
    inst.scale_sel = plan.scale_sel;
    inst.w = build_weight(spec, plan, ps, pol);
    const Weight& w = inst.w;

    switch (spec.kind) {
        case Kind::single:
            inst.ops.push_back(bounded_op(ps, w));
            break;
        case Kind::pair:
            inst.ops.push_back(bounded_op(ps, w));
            inst.ops.push_back(bounded_op(ps, w));
            break;
        case Kind::commuting_pair: {
            CMat m = bounded_op(ps, w);
            const double nm = op_norm(m);
            if (nm > 1.0) m /= nm;
            CMat pw[4];
            pw[0] = CMat::Identity(w.dim(), w.dim());
            for (int i = 1; i < 4; ++i) pw[i] = pw[i - 1] * m;
            for (int j = 0; j < 6; ++j) {
                CMat p = CMat::Zero(w.dim(), w.dim());
                for (int i = 0; i < 4; ++i) p += ps.cnext() * pw[i];
                inst.ops.push_back(std::move(p));
            }
            break;
        }
        case Kind::quadruple:
        case Kind::block2x2:
            for (int k = 0; k < 4; ++k)
                inst.ops.push_back(bounded_op(ps, w));
            break;
        case Kind::unitary_pair:
            inst.ops.push_back(bounded_op(ps, w));
            inst.ops.push_back(unitary_op(ps, w));
            break;
        case Kind::d_tuples: {
            const int total = 2 * spec.d + spec.d * spec.d;
            for (int k = 0; k < total; ++k)
                inst.ops.push_back(bounded_op(ps, w));
            break;
        }
        case Kind::series_case: {
            CMat t = bounded_op(ps, w);
            const PowerSeries s = series_by_id(plan.series_id);
            const double rref =
                std::isfinite(s.radius()) ? s.radius() : 1.0;
            const double target = plan.scale_sel * rref;
            const AOp op = wrap(w, t);
            if (op.a_norm > 1e-12) {
                t *= target / op.a_norm;
            } else if (w.rank() > 0) {
                t = target * CMat::Identity(w.dim(), w.dim());
            }
            inst.ops.push_back(std::move(t));
            break;
        }
    }
    return inst;
}

void validate_spec(const InstanceSpec& spec) {
    if (spec.dim < 1 || spec.dim > 8)
        throw DimensionMismatch("gen_instance: dim must be in 1..8");
    if (spec.kind == Kind::d_tuples && (spec.d < 1 || spec.d > 4))
        throw DimensionMismatch("gen_instance: d must be in 1..4");
}

} // namespace

Instance gen_instance(const InstanceSpec& spec, const TolerancePolicy& pol) {
    validate_spec(spec);
    Rng rng(spec.seed);
    const GenPlan plan = draw_plan(spec, rng);
    std::vector<double> params(param_count(spec));
    for (auto& p : params) p = rng.gaussian();
    return build_instance(spec, plan, params, pol);
}

json instance_to_json(const Instance& inst) {
    json j;
    j["kind"] = kind_name(inst.spec.kind);
    j["dim"] = inst.spec.dim;
    j["d"] = inst.spec.d;
    j["singular"] = inst.spec.singular;
    j["seed"] = std::to_string(inst.spec.seed);
    if (inst.spec.kind == Kind::series_case) {
        j["series"] = series_by_id(inst.series_id).name();
        j["scale"] = inst.scale_sel;
    }
    j["weight"] = matrix_to_json(inst.w.A());
    json ops = json::array();
    for (const auto& t : inst.ops) ops.push_back(matrix_to_json(t));
    j["ops"] = std::move(ops);
    return j;
}

// ---------------------------------------------------------------------------
// Check evaluators. Everything goes through the public module surfaces:
// wrap/seminorm for norms, r_a/omega_a for radii, assemble for inflations.
// ---------------------------------------------------------------------------

namespace {

double sn_of(const Instance& I, const CMat& x) {
    return seminorm(wrap(I.w, x));
}
double r_of(const Instance& I, const CMat& x) {
    return r_a(wrap(I.w, x)).value;
}
double om_of(const Instance& I, const CMat& x) {
    return omega_a(wrap(I.w, x)).value;
}

std::vector<Part> eval_c01(const Instance& I) {
    const CMat &t = I.ops[0], &s = I.ops[1];
    return {{"sum", r_of(I, t + s), r_of(I, t) + r_of(I, s), false}};
}

std::vector<Part> eval_c02(const Instance& I) {
    const CMat &t = I.ops[0], &s = I.ops[1];
    return {{"product", r_of(I, t * s), r_of(I, t) * r_of(I, s), false}};
}

std::vector<Part> eval_c03(const Instance& I) {
    const CMat& t = I.ops[0];
    const double base = r_of(I, t);
    std::vector<Part> parts;
    CMat p = t;
    for (int k = 2; k <= 5; ++k) {
        p = p * t;
        parts.push_back({"k=" + std::to_string(k), r_of(I, p),
                         std::pow(base, k), true});
    }
    return parts;
}

std::vector<Part> eval_c04(const Instance& I) {
    const CMat &t = I.ops[0], &s = I.ops[1];
    return {{"swap", r_of(I, t * s), r_of(I, s * t), true}};
}

std::vector<Part> eval_c05(const Instance& I) {
    const CMat& t = I.ops[0];
    const double sn = sn_of(I, t);
    const double om = om_of(I, t);
    return {{"lower", 0.5 * sn, om, false}, {"upper", om, sn, false}};
}

std::vector<Part> eval_c06(const Instance& I) {
    const CMat& t = I.ops[0];
    const double r = r_of(I, t);
    return {{"vs_omega", r, om_of(I, t), false},
            {"vs_seminorm", r, sn_of(I, t), false}};
}

std::vector<CMat> grid_part(const Instance& I) {
    const int d = I.spec.d;
    return {I.ops.begin() + 2 * d, I.ops.end()};
}

std::vector<Part> eval_c07(const Instance& I) {
    const OpMatrix m = assemble(I.w, grid_part(I));
    return {{"norm_majorant", seminorm(m.inflated), op_norm(m.hat.cast<cplx>()),
             false}};
}

std::vector<Part> eval_c08(const Instance& I) {
    const OpMatrix m = assemble(I.w, grid_part(I));
    return {{"hat_radius", r_a(m.inflated).value,
             spec_radius(m.hat.cast<cplx>()), false}};
}

std::vector<Part> eval_c09(const Instance& I) {
    const CMat &t1 = I.ops[0], &t2 = I.ops[1], &s1 = I.ops[2], &s2 = I.ops[3];
    const double a = sn_of(I, s1 * t1);
    const double b = sn_of(I, s2 * t2);
    const double c = sn_of(I, s1 * t2);
    const double d = sn_of(I, s2 * t1);
    const double rhs =
        0.5 * (a + b + std::sqrt((a - b) * (a - b) + 4.0 * c * d));
    return {{"seminorm_bound", r_of(I, t1 * s1 + t2 * s2), rhs, false}};
}

std::vector<Part> eval_c10(const Instance& I) {
    const CMat &t = I.ops[0], &s = I.ops[1];
    const double a = sn_of(I, t * s);
    const double b = sn_of(I, s * t);
    const double c = sn_of(I, t * t);
    const double d = sn_of(I, s * s);
    const double rhs =
        0.5 * (a + b + std::sqrt((a - b) * (a - b) + 4.0 * c * d));
    return {{"plus", r_of(I, t * s + s * t), rhs, false},
            {"minus", r_of(I, t * s - s * t), rhs, false}};
}

std::vector<Part> eval_c11(const Instance& I) {
    const CMat &t = I.ops[0], &u = I.ops[1];
    const double snt = sn_of(I, t);
    const double rhs = snt + std::sqrt(sn_of(I, t * t));
    return {{"plus", r_of(I, t * u + u * t), rhs, false},
            {"minus", r_of(I, t * u - u * t), rhs, false},
            {"norm_left", sn_of(I, u * t), snt, true},
            {"norm_right", sn_of(I, t * u), snt, true}};
}

std::vector<Part> eval_c12(const Instance& I) {
    const CMat &t = I.ops[0], &s = I.ops[1];
    const Eigen::Index n = I.w.dim();
    const CMat zero = CMat::Zero(n, n);
    const OpMatrix diag = assemble(I.w, {t, zero, zero, s});
    const OpMatrix anti = assemble(I.w, {zero, t, s, zero});
    return {{"diag", r_a(diag.inflated).value,
             std::max(r_of(I, t), r_of(I, s)), true},
            {"antidiag", r_a(anti.inflated).value,
             std::sqrt(r_of(I, t * s)), true}};
}

std::vector<Part> eval_c13(const Instance& I) {
    const CMat &p = I.ops[0], &q = I.ops[1], &r = I.ops[2], &s = I.ops[3];
    const OpMatrix m = assemble(I.w, {p, q, r, s});
    const CMat sq = m.inflated.T * m.inflated.T;
    const double rhs = 0.5 * (seminorm(m.inflated) +
                              std::sqrt(seminorm(wrap(m.inflated_weight, sq))));
    const double lhs = std::max({std::sqrt(r_of(I, q * r)), r_of(I, p),
                                 r_of(I, s)});
    return {{"two_by_two", lhs, rhs, false}};
}

std::vector<Part> eval_c14(const Instance& I) {
    const CMat &p = I.ops[0], &q = I.ops[1], &r = I.ops[2], &s = I.ops[3];
    const OpMatrix m = assemble(I.w, {p, q, r, s});
    const double wp = om_of(I, p);
    const double ws = om_of(I, s);
    const double nq = sn_of(I, q);
    const double nr = sn_of(I, r);
    const double rhs =
        0.5 * (wp + ws +
               std::sqrt((wp - ws) * (wp - ws) + (nq + nr) * (nq + nr)));
    return {{"block_omega", omega_a(m.inflated).value, rhs, false}};
}

std::vector<Part> eval_c15(const Instance& I) {
    const CMat &t1 = I.ops[0], &t2 = I.ops[1], &s1 = I.ops[2], &s2 = I.ops[3];
    const double n11 = sn_of(I, s1 * t1);
    const double n22 = sn_of(I, s2 * t2);
    const double n12 = sn_of(I, s1 * t2);
    const double n21 = sn_of(I, s2 * t1);
    const double w11 = om_of(I, s1 * t1);
    const double w22 = om_of(I, s2 * t2);
    const double a1 = 0.5 * (n11 + n22 +
                             std::sqrt((n11 - n22) * (n11 - n22) +
                                       4.0 * n12 * n21));
    const double a2 = 0.5 * (w11 + w22 +
                             std::sqrt((w11 - w22) * (w11 - w22) +
                                       4.0 * n12 * n21));
    return {{"radius_bound", r_of(I, t1 * s1 + t2 * s2), a2, false},
            {"refines", a2, a1, false}};
}

std::vector<Part> eval_c16(const Instance& I) {
    const CMat &t = I.ops[0], &s = I.ops[1];
    const double wt = om_of(I, t);
    const double ws = om_of(I, s);
    const double mu = std::min(sn_of(I, t * s), sn_of(I, s * t));
    const double rhs =
        0.5 * (wt + ws + std::sqrt((wt - ws) * (wt - ws) + 4.0 * mu));
    return {{"sum", r_of(I, t + s), rhs, false}};
}

std::vector<Part> eval_c17(const Instance& I) {
    const CMat &t = I.ops[0], &s = I.ops[1];
    const double wts = om_of(I, t * s);
    const double wst = om_of(I, s * t);
    const double nu = std::min(sn_of(I, t) * sn_of(I, s * t * s),
                               sn_of(I, s) * sn_of(I, t * s * t));
    const double rhs = 0.25 * (wts + wst +
                               std::sqrt((wts - wst) * (wts - wst) +
                                         4.0 * nu));
    return {{"product", r_of(I, t * s), rhs, false}};
}

std::vector<Part> eval_c18(const Instance& I) {
    const CMat &t = I.ops[0], &s = I.ops[1];
    const double wts = om_of(I, t * s);
    const double wst = om_of(I, s * t);
    const double c = sn_of(I, t * t) * sn_of(I, s * s);
    const double rhs07 =
        0.5 * (wts + wst +
               std::sqrt((wts - wst) * (wts - wst) + 4.0 * c));
    const double rhs08 = 0.5 * (wts + std::sqrt(c));
    return {{"anticommutator", r_of(I, t * s + s * t), rhs07, false},
            {"commutator", r_of(I, t * s - s * t), rhs07, false},
            {"commuting_product", r_of(I, t * s), rhs08, false}};
}

std::vector<Part> eval_c19(const Instance& I) {
    const CMat &t = I.ops[0], &s = I.ops[1];
    const double r_plus = r_of(I, t * s + s * t);
    const double r_minus = r_of(I, t * s - s * t);
    const double via_ts =
        om_of(I, t * s) +
        std::min(std::sqrt(sn_of(I, t) * sn_of(I, t * s * s)),
                 std::sqrt(sn_of(I, t * t * s) * sn_of(I, s)));
    const double via_st =
        om_of(I, s * t) +
        std::min(std::sqrt(sn_of(I, s) * sn_of(I, s * t * t)),
                 std::sqrt(sn_of(I, s * s * t) * sn_of(I, t)));
    return {{"via_ts_plus", r_plus, via_ts, false},
            {"via_ts_minus", r_minus, via_ts, false},
            {"via_st_plus", r_plus, via_st, false},
            {"via_st_minus", r_minus, via_st, false}};
}

std::vector<Part> eval_c20(const Instance& I) {
    const CMat &t = I.ops[0], &s = I.ops[1];
    const double w = om_of(I, t * s);
    const double lhs = r_of(I, t * s);
    const double rhs1 =
        0.5 * (w + std::sqrt(sn_of(I, t) * sn_of(I, s) * sn_of(I, t * s)));
    const double rhs2 =
        0.5 * (w + std::min(sn_of(I, t) * std::sqrt(sn_of(I, s * s)),
                            std::sqrt(sn_of(I, t * t)) * sn_of(I, s)));
    return {{"with_triple_norm", lhs, rhs1, false},
            {"with_min", lhs, rhs2, false}};
}

std::vector<Part> eval_c21(const Instance& I) {
    const CMat &t = I.ops[0], &s = I.ops[1];
    const double rhs =
        0.5 * (om_of(I, s * t) + sn_of(I, t) * sn_of(I, s));
    return {{"omega_product", om_of(I, t * s), rhs, false}};
}

std::vector<Part> eval_c22(const Instance& I) {
    const int d = I.spec.d;
    const std::vector<CMat> g = grid_part(I);
    const OpMatrix m = assemble(I.w, g);
    double rhs = 0.0;
    for (int i = 0; i < d; ++i) {
        double row = om_of(I, m.block(i, i));
        for (int j = 0; j < d; ++j) {
            if (j == i) continue;
            row += 0.5 * (m.hat(i, j) + m.hat(j, i));
        }
        rhs = std::max(rhs, row);
    }
    return {{"block_omega", omega_a(m.inflated).value, rhs, false}};
}

std::vector<Part> eval_c23(const Instance& I) {
    const int d = I.spec.d;
    const Eigen::Index n = I.w.dim();
    CMat sum = CMat::Zero(n, n);
    for (int k = 0; k < d; ++k) sum += I.ops[k] * I.ops[d + k];
    double rhs = 0.0;
    for (int i = 0; i < d; ++i) {
        double row = om_of(I, I.ops[d + i] * I.ops[i]);
        for (int j = 0; j < d; ++j) {
            if (j == i) continue;
            row += 0.5 * (sn_of(I, I.ops[d + i] * I.ops[j]) +
                          sn_of(I, I.ops[d + j] * I.ops[i]));
        }
        rhs = std::max(rhs, row);
    }
    return {{"sum_of_products", r_of(I, sum), rhs, false}};
}

std::vector<Part> eval_c24(const Instance& I) {
    const CMat &t = I.ops[0], &s = I.ops[1];
    return {{"difference", std::abs(r_of(I, t) - r_of(I, s)),
             r_of(I, t - s), false}};
}

std::vector<Part> eval_c25(const Instance& I) {
    const Eigen::Index n = I.w.dim();
    CMat acc = CMat::Zero(n, n);
    double rhs = 0.0;
    for (const CMat& p : I.ops) {
        acc += p;
        rhs += r_of(I, p);
    }
    return {{"family_sum", r_of(I, acc), rhs, false}};
}

std::vector<Part> eval_c26(const Instance& I) {
    const PowerSeries s = series_by_id(I.series_id);
    const AOp op = wrap(I.w, I.ops[0]);
    const SeriesEval ref = eval(op, s, 1e-12);
    const double r_ref = r_a(ref.op).value;
    const double levels[] = {1e-4, 1e-6, 1e-8, 1e-10, 1e-12};
    std::vector<Part> parts;
    std::vector<double> rs;
    for (double lt : levels) {
        const SeriesEval se = eval(op, s, lt);
        const double rk = r_a(se.op).value;
        rs.push_back(rk);
        char label[32];
        std::snprintf(label, sizeof label, "lip_%g", lt);
        parts.push_back({label, std::abs(rk - r_ref),
                         seminorm(wrap(I.w, se.op.T - ref.op.T)), false});
    }
    const std::size_t L = rs.size();
    const double dev = std::max(std::abs(rs[L - 1] - rs[L - 2]),
                                std::abs(rs[L - 1] - rs[L - 3]));
    parts.push_back({"last_three_agree", dev,
                     1e-6 * (1.0 + std::abs(rs[L - 1])), false});
    parts.push_back({"limit", std::abs(rs[L - 1] - r_ref),
                     1e-8 * (1.0 + std::abs(r_ref)), false});
    return parts;
}

std::vector<Part> eval_c27(const Instance& I) {
    const PowerSeries s = series_by_id(I.series_id);
    const AOp op = wrap(I.w, I.ops[0]);
    const CheckOutcome o = check_series_bound(op, s, /*allow_singular=*/true);
    return {{s.name(), o.lhs, o.rhs, false}};
}

std::vector<Part> eval_c28(const Instance& I) {
    const AOp op = wrap(I.w, I.ops[0]);
    const double r = r_a(op).value; // < 1: the generator scales below 1
    const Eigen::Index n = I.w.dim();
    const CMat I_n = CMat::Identity(n, n);
    const double rhs_res = 1.0 / (1.0 - r);
    const CMat res_minus = (I_n - op.T).inverse();
    const CMat res_plus = (I_n + op.T).inverse();
    const double lhs_exp =
        r_a(eval(op, PowerSeries::exponential(), 1e-12).op).value;
    return {{"resolvent_minus", r_of(I, res_minus), rhs_res, false},
            {"resolvent_plus", r_of(I, res_plus), rhs_res, false},
            {"exponential", lhs_exp, std::exp(r), false}};
}

std::vector<CheckDef> build_registry() {
    return {
        {"C01", "commuting: r_A(T+S) <= r_A(T) + r_A(S)",
         Kind::commuting_pair, eval_c01},
        {"C02", "commuting: r_A(TS) <= r_A(T) r_A(S)", Kind::commuting_pair,
         eval_c02},
        {"C03", "r_A(T^k) = r_A(T)^k for k = 2..5", Kind::single, eval_c03},
        {"C04", "r_A(TS) = r_A(ST)", Kind::pair, eval_c04},
        {"C05", "||T||_A/2 <= w_A(T) <= ||T||_A", Kind::single, eval_c05},
        {"C06", "r_A(T) <= w_A(T) and r_A(T) <= ||T||_A", Kind::single,
         eval_c06},
        {"C07", "||[T_ij]||_bA <= || [ ||T_ij||_A ] ||", Kind::d_tuples,
         eval_c07},
        {"C08", "r_bA([T_ij]) <= r([ ||T_ij||_A ])", Kind::d_tuples,
         eval_c08},
        {"C09",
         "r_A(T1S1+T2S2) <= (||S1T1|| + ||S2T2|| + sqrt((||S1T1|| - "
         "||S2T2||)^2 + 4||S1T2|| ||S2T1||))/2, A-seminorms",
         Kind::quadruple, eval_c09},
        {"C10",
         "r_A(TS+-ST) <= (||TS|| + ||ST|| + sqrt((||TS|| - ||ST||)^2 + "
         "4||T^2|| ||S^2||))/2, A-seminorms",
         Kind::pair, eval_c10},
        {"C11",
         "U A-unitary: r_A(TU+-UT) <= ||T||_A + ||T^2||_A^(1/2); "
         "||UT||_A = ||TU||_A = ||T||_A",
         Kind::unitary_pair, eval_c11},
        {"C12",
         "r_bA(diag(T,S)) = max{r_A(T), r_A(S)}; r_bA(antidiag(T,S)) = "
         "sqrt(r_A(TS))",
         Kind::pair, eval_c12},
        {"C13",
         "max{sqrt(r_A(QR)), r_A(P), r_A(S)} <= (||M||_bA + "
         "||M^2||_bA^(1/2))/2 for M = [[P,Q],[R,S]]",
         Kind::block2x2, eval_c13},
        {"C14",
         "w_bA([[P,Q],[R,S]]) <= (w_A(P) + w_A(S) + sqrt((w_A(P) - "
         "w_A(S))^2 + (||Q||_A + ||R||_A)^2))/2",
         Kind::block2x2, eval_c14},
        {"C15",
         "r_A(T1S1+T2S2) <= a2 with numerical radii, and a2 <= a1 (the "
         "seminorm bound is refined)",
         Kind::quadruple, eval_c15},
        {"C16",
         "r_A(T+S) <= (w_A(T) + w_A(S) + sqrt((w_A(T) - w_A(S))^2 + "
         "4 min{||TS||, ||ST||}))/2",
         Kind::pair, eval_c16},
        {"C17",
         "r_A(TS) <= (w_A(TS) + w_A(ST) + sqrt((w_A(TS) - w_A(ST))^2 + "
         "4 min{||T|| ||STS||, ||S|| ||TST||}))/4",
         Kind::pair, eval_c17},
        {"C18",
         "r_A(TS+-ST) <= (w_A(TS) + w_A(ST) + sqrt((w_A(TS) - w_A(ST))^2 + "
         "4||T^2|| ||S^2||))/2; commuting: r_A(TS) <= (w_A(TS) + "
         "||T^2||^(1/2) ||S^2||^(1/2))/2",
         Kind::commuting_pair, eval_c18},
        {"C19",
         "r_A(TS+-ST) <= w_A(TS) + min{(||T|| ||TS^2||)^(1/2), (||T^2S|| "
         "||S||)^(1/2)} and the mirrored bound with w_A(ST)",
         Kind::pair, eval_c19},
        {"C20",
         "commuting: r_A(TS) <= (w_A(TS) + (||T|| ||S|| ||TS||)^(1/2))/2 "
         "and r_A(TS) <= (w_A(TS) + min{||T|| ||S^2||^(1/2), ||T^2||^(1/2) "
         "||S||})/2",
         Kind::commuting_pair, eval_c20},
        {"C21", "w_A(TS) <= (w_A(ST) + ||T||_A ||S||_A)/2", Kind::pair,
         eval_c21},
        {"C22",
         "w_bA([T_ij]) <= max_i { w_A(T_ii) + (1/2) sum_{j!=i} (||T_ij|| + "
         "||T_ji||) }",
         Kind::d_tuples, eval_c22},
        {"C23",
         "r_A(sum_k T_k S_k) <= max_i { w_A(S_i T_i) + (1/2) sum_{j!=i} "
         "(||S_i T_j|| + ||S_j T_i||) }",
         Kind::d_tuples, eval_c23},
        {"C24", "commuting: |r_A(T) - r_A(S)| <= r_A(T - S)",
         Kind::commuting_pair, eval_c24},
        {"C25", "commuting family: r_A(sum T_k) <= sum r_A(T_k)",
         Kind::commuting_pair, eval_c25},
        {"C26", "r_A(S_n) converges to r_A(f(T)) along the truncations",
         Kind::series_case, eval_c26},
        {"C27", "r_A(f(T)) <= f_c(r_A(T)), invertible A, ||T||_A < R",
         Kind::series_case, eval_c27},
        {"C28",
         "r_A((I+-T)^(-1)) <= (1 - r_A(T))^(-1) and r_A(exp T) <= "
         "exp(r_A(T)) for ||T||_A < 1",
         Kind::series_case, eval_c28},
    };
}

} // namespace

const std::vector<CheckDef>& list_checks() {
    static const std::vector<CheckDef> table = build_registry();
    return table;
}

const CheckDef* find_check(const std::string& id) {
    for (const auto& def : list_checks())
        if (def.id == id) return &def;
    return nullptr;
}

CheckOutcome run_check(const std::string& id, const Instance& inst,
                       const TolerancePolicy& pol) {
    const CheckDef* def = find_check(id);
    if (!def) throw KindMismatch("unknown check id " + id);
    if (def->kind != inst.spec.kind) {
        std::ostringstream os;
        os << id << " needs kind " << kind_name(def->kind)
           << " but the instance is " << kind_name(inst.spec.kind);
        throw KindMismatch(os.str());
    }
    if ((id == "C26" || id == "C28") && !inst.w.invertible())
        throw WeightSingular(id + " needs an invertible weight");

    const bool diagnostic = id == "C27" && !inst.w.invertible();
    const std::vector<Part> parts = def->eval(inst);
    CheckOutcome best;
    bool any_violated = false;
    bool first = true;
    for (const auto& p : parts) {
        CheckOutcome o =
            CheckOutcome::make(id, p.lhs, p.rhs, p.equality, pol, p.label);
        any_violated = any_violated || o.violated;
        // violating parts take precedence in the report; ties by ratio
        const bool better =
            first || (o.violated && !best.violated) ||
            (o.violated == best.violated && o.ratio > best.ratio);
        if (better) {
            best = o;
            first = false;
        }
    }
    best.violated = any_violated;
    best.diagnostic = diagnostic;
    return best;
}

CheckOutcome scalar_min_identity(std::uint64_t seed,
                                 const TolerancePolicy& pol) {
    Rng rng(seed);
    const double alpha = std::abs(rng.gaussian()) + 0.01;
    const double beta = std::abs(rng.gaussian()) + 0.01;
    // golden-section over log t; the objective is convex there
    auto f = [&](double u) {
        const double t = std::exp(u);
        return alpha * t + beta / t;
    };
    double a = std::log(1e-8), b = std::log(1e8);
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > 1e-12) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    char label[64];
    std::snprintf(label, sizeof label, "alpha=%.17g,beta=%.17g", alpha, beta);
    return CheckOutcome::make("AMGM", std::min(f1, f2),
                              2.0 * std::sqrt(alpha * beta), true, pol,
                              label);
}

// ---------------------------------------------------------------------------
// Suite runner.
// ---------------------------------------------------------------------------

namespace {

InstanceSpec trial_spec(const SuiteConfig& config, const CheckDef& def,
                        std::size_t check_index, int trial) {
    Rng r0(derive_seed(config.seed, check_index + 1,
                       static_cast<std::uint64_t>(trial)));
    InstanceSpec spec;
    spec.kind = def.kind;
    spec.dim = config.dims[r0.below(config.dims.size())];
    bool singular = r0.uniform() < config.singular_mix;
    // series instances run on invertible weights; C27 keeps the singular
    // draws as a diagnostic lane outside the hypotheses of the series bound
    if (def.kind == Kind::series_case && def.id != "C27") singular = false;
    spec.singular = singular;
    if (def.kind == Kind::d_tuples) spec.d = 2 + static_cast<int>(r0.below(2));
    spec.seed = r0.bits();
    return spec;
}

template <typename F>
void run_indexed(int count, int threads, F&& body) {
    if (threads <= 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(
        static_cast<std::size_t>(threads));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (int i; (i = next.fetch_add(1)) < count;) body(i);
            } catch (...) {
                errors[static_cast<std::size_t>(t)] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

Report run_suite(const SuiteConfig& config) {
    Report rep;
    rep.config = config;

    std::vector<const CheckDef*> defs;
    bool want_scalar = config.checks.empty();
    if (config.checks.empty()) {
        for (const auto& def : list_checks()) defs.push_back(&def);
    } else {
        for (const auto& id : config.checks) {
            if (id == "AMGM") {
                want_scalar = true;
                continue;
            }
            const CheckDef* def = find_check(id);
            if (!def) throw KindMismatch("unknown check id " + id);
            defs.push_back(def);
        }
    }
    if (!config.dims.empty()) {
        for (int d : config.dims)
            if (d < 1 || d > 8)
                throw DimensionMismatch("run_suite: dims must be in 1..8");
    } else {
        throw DimensionMismatch("run_suite: dims must not be empty");
    }

    for (std::size_t ci = 0; ci < defs.size(); ++ci) {
        const CheckDef& def = *defs[ci];
        std::vector<CheckOutcome> outcomes(
            static_cast<std::size_t>(std::max(config.trials, 0)));
        run_indexed(config.trials, config.threads, [&](int trial) {
            const InstanceSpec spec = trial_spec(config, def, ci, trial);
            const Instance inst = gen_instance(spec, config.policy);
            outcomes[static_cast<std::size_t>(trial)] =
                run_check(def.id, inst, config.policy);
        });

        CheckStats stats;
        stats.id = def.id;
        double margin_sum = 0.0;
        std::vector<int> order;
        for (int t = 0; t < config.trials; ++t) {
            const CheckOutcome& o = outcomes[static_cast<std::size_t>(t)];
            if (o.diagnostic) {
                ++stats.diagnostic_trials;
                if (!o.violated) ++stats.diagnostic_holds;
                continue;
            }
            ++stats.trials;
            if (o.violated) ++stats.violations;
            margin_sum += o.margin;
            if (stats.trials == 1 || o.ratio > stats.max_ratio)
                stats.max_ratio = o.ratio;
            order.push_back(t);
        }
        stats.mean_margin = stats.trials > 0
                                ? margin_sum / static_cast<double>(stats.trials)
                                : 0.0;
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return outcomes[static_cast<std::size_t>(a)].ratio >
                   outcomes[static_cast<std::size_t>(b)].ratio;
        });
        const int keep =
            std::min<int>(config.witness_count, static_cast<int>(order.size()));
        for (int k = 0; k < keep; ++k) {
            const int t = order[static_cast<std::size_t>(k)];
            const CheckOutcome& o = outcomes[static_cast<std::size_t>(t)];
            Witness wit;
            wit.trial = t;
            wit.ratio = o.ratio;
            wit.margin = o.margin;
            const InstanceSpec spec = trial_spec(config, def, ci, t);
            wit.instance = instance_to_json(gen_instance(spec, config.policy));
            stats.top.push_back(std::move(wit));
        }
        rep.total_violations += stats.violations;
        rep.checks.push_back(std::move(stats));
    }

    if (want_scalar) {
        CheckStats stats;
        stats.id = "AMGM";
        double margin_sum = 0.0;
        std::vector<CheckOutcome> outcomes(
            static_cast<std::size_t>(std::max(config.trials, 0)));
        run_indexed(config.trials, config.threads, [&](int trial) {
            outcomes[static_cast<std::size_t>(trial)] = scalar_min_identity(
                derive_seed(config.seed, 0, static_cast<std::uint64_t>(trial)),
                config.policy);
        });
        std::vector<int> order;
        for (int t = 0; t < config.trials; ++t) {
            const CheckOutcome& o = outcomes[static_cast<std::size_t>(t)];
            ++stats.trials;
            if (o.violated) ++stats.violations;
            margin_sum += o.margin;
            if (stats.trials == 1 || o.ratio > stats.max_ratio)
                stats.max_ratio = o.ratio;
            order.push_back(t);
        }
        stats.mean_margin = stats.trials > 0
                                ? margin_sum / static_cast<double>(stats.trials)
                                : 0.0;
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return outcomes[static_cast<std::size_t>(a)].ratio >
                   outcomes[static_cast<std::size_t>(b)].ratio;
        });
        const int keep =
            std::min<int>(config.witness_count, static_cast<int>(order.size()));
        for (int k = 0; k < keep; ++k) {
            const int t = order[static_cast<std::size_t>(k)];
            const CheckOutcome& o = outcomes[static_cast<std::size_t>(t)];
            Witness wit;
            wit.trial = t;
            wit.ratio = o.ratio;
            wit.margin = o.margin;
            json inst;
            inst["scalar"] = o.part; // alpha/beta rendered by the check
            wit.instance = std::move(inst);
            stats.top.push_back(std::move(wit));
        }
        rep.total_violations += stats.violations;
        rep.checks.push_back(std::move(stats));
    }

    return rep;
}

json report_to_json(const Report& rep) {
    json j;
    j["schema"] = rep.schema;
    json cfg;
    json ids = json::array();
    for (const auto& id : rep.config.checks) ids.push_back(id);
    cfg["checks"] = std::move(ids);
    cfg["trials"] = rep.config.trials;
    cfg["dims"] = rep.config.dims;
    cfg["singular_mix"] = rep.config.singular_mix;
    cfg["seed"] = std::to_string(rep.config.seed);
    cfg["witness_count"] = rep.config.witness_count;
    j["config"] = std::move(cfg);
    const TolerancePolicy& p = rep.config.policy;
    json pol;
    pol["herm_rel"] = p.herm_rel;
    pol["psd_rel"] = p.psd_rel;
    pol["rank_rel"] = p.rank_rel;
    pol["recon_kappa"] = p.recon_kappa;
    pol["membership_rel"] = p.membership_rel;
    pol["residual_rel"] = p.residual_rel;
    pol["unitary_rel"] = p.unitary_rel;
    pol["eq_rel"] = p.eq_rel;
    pol["ineq_rel"] = p.ineq_rel;
    pol["ineq_abs"] = p.ineq_abs;
    pol["gelfand_max_squarings"] = p.gelfand_max_squarings;
    pol["gelfand_gap"] = p.gelfand_gap;
    pol["theta_grid"] = p.theta_grid;
    pol["theta_resolution"] = p.theta_resolution;
    pol["theta_max_brackets"] = p.theta_max_brackets;
    pol["series_max_terms"] = p.series_max_terms;
    pol["radius_cross_rel"] = p.radius_cross_rel;
    pol["omega_cross_rel"] = p.omega_cross_rel;
    j["policy"] = std::move(pol);
    json checks = json::array();
    for (const auto& s : rep.checks) {
        json c;
        c["id"] = s.id;
        c["trials"] = s.trials;
        c["violations"] = s.violations;
        c["max_ratio"] = s.max_ratio;
        c["mean_margin"] = s.mean_margin;
        c["diagnostic_trials"] = s.diagnostic_trials;
        c["diagnostic_holds"] = s.diagnostic_holds;
        json wits = json::array();
        for (const auto& w : s.top) {
            json wj;
            wj["trial"] = w.trial;
            wj["ratio"] = w.ratio;
            wj["margin"] = w.margin;
            wj["instance"] = w.instance;
            wits.push_back(std::move(wj));
        }
        c["witnesses"] = std::move(wits);
        checks.push_back(std::move(c));
    }
    j["checks"] = std::move(checks);
    j["total_violations"] = rep.total_violations;
    return j;
}

std::string report_to_csv(const Report& rep) {
    std::ostringstream os;
    os << "check_id,trials,violations,max_ratio,mean_margin\n";
    for (const auto& s : rep.checks) {
        os << s.id << "," << s.trials << "," << s.violations << ","
           << format_double(s.max_ratio) << "," << format_double(s.mean_margin)
           << "\n";
    }
    return os.str();
}

SearchResult tightness_search(const std::string& id, int budget,
                              std::uint64_t seed,
                              const TolerancePolicy& pol) {
    if (budget < 1)
        throw KindMismatch("tightness_search: budget must be >= 1");
    const CheckDef* def = find_check(id);
    if (!def) throw KindMismatch("unknown check id " + id);

    Rng rng(seed);
    SearchResult res;
    res.ratio = -std::numeric_limits<double>::infinity();

    const int dims[] = {2, 3, 4};
    const int slice = std::max(50, budget / 8);
    int evals = 0;
    int restart = 0;

    InstanceSpec spec;
    GenPlan plan;
    std::vector<double> params;
    double current = -std::numeric_limits<double>::infinity();
    double step = 0.3;

    auto evaluate = [&](Instance& out_inst) -> CheckOutcome {
        out_inst = build_instance(spec, plan, params, pol);
        return run_check(id, out_inst, pol);
    };

    while (evals < budget) {
        if (evals % slice == 0) {
            spec = InstanceSpec{};
            spec.kind = def->kind;
            spec.dim = dims[restart % 3];
            spec.singular = false;
            spec.d = 2;
            spec.seed = 0;
            ++restart;
            plan = draw_plan(spec, rng);
            params.resize(param_count(spec));
            for (auto& p : params) p = rng.gaussian();
            step = 0.3;
            Instance inst;
            const CheckOutcome o = evaluate(inst);
            ++evals;
            current = o.ratio;
            if (o.ratio > res.ratio) {
                res.ratio = o.ratio;
                res.best = inst;
                res.violation = o.violated && !o.diagnostic;
            }
            res.trace.push_back(res.ratio);
            continue;
        }
        const std::size_t i = rng.below(params.size());
        const double old = params[i];
        params[i] += step * rng.gaussian();
        Instance inst;
        const CheckOutcome o = evaluate(inst);
        ++evals;
        if (o.ratio > current) {
            current = o.ratio;
            step = std::min(step * 1.2, 2.0);
            if (o.ratio > res.ratio) {
                res.ratio = o.ratio;
                res.best = inst;
                res.violation = o.violated && !o.diagnostic;
            }
        } else {
            params[i] = old;
            step = std::max(step * 0.8, 1e-3);
        }
        res.trace.push_back(res.ratio);
    }
    return res;
}

} // namespace verify
} // namespace shs
