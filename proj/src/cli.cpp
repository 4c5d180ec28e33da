#include "shs/cli.hpp"

#include "shs/blocks.hpp"
#include "shs/douglas.hpp"
#include "shs/json_io.hpp"
#include "shs/radii.hpp"
#include "shs/rng.hpp"
#include "shs/series.hpp"
#include "shs/verify.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

namespace shs {
namespace cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolations = 1;
constexpr int kExitInput = 2;
constexpr int kExitNumeric = 3;

std::string num12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

int env_threads() {
    const char* env = std::getenv("SHS_THREADS");
    if (!env) return 0;
    const long v = std::strtol(env, nullptr, 10);
    return v > 0 ? static_cast<int>(v) : 0;
}

void write_output(const std::string& out_path, const std::string& payload,
                  std::ostream& out) {
    if (out_path.empty()) {
        out << payload;
        if (!payload.empty() && payload.back() != '\n') out << "\n";
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw ParseError("cannot write output file: " + out_path);
    f << payload;
}

std::string matrix_text(const CMat& m) {
    std::ostringstream os;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) os << "  ";
            os << num12(m(i, j).real()) << (m(i, j).imag() < 0 ? "-" : "+")
               << num12(std::abs(m(i, j).imag())) << "i";
        }
        os << "\n";
    }
    return os.str();
}

struct ComputeArgs {
    std::string a_path, t_path, quantity, format = "text", out_path;
};

int run_compute(const ComputeArgs& args, std::ostream& out) {
    const Weight w = make_weight(matrix_from_json(load_json_file(args.a_path)));
    const AOp op = wrap(w, matrix_from_json(load_json_file(args.t_path)));

    json j;
    j["quantity"] = args.quantity;
    std::string text;
    std::string csv;

    if (args.quantity == "membership") {
        j["half_bounded"] = op.half_bounded;
        j["a_adjointable"] = op.a_adjointable;
        std::ostringstream os;
        os << "half_bounded: " << (op.half_bounded ? "true" : "false") << "\n"
           << "a_adjointable: " << (op.a_adjointable ? "true" : "false")
           << "\n";
        text = os.str();
        csv = std::string("membership.half_bounded,") +
              (op.half_bounded ? "true" : "false") +
              "\nmembership.a_adjointable," +
              (op.a_adjointable ? "true" : "false") + "\n";
    } else if (args.quantity == "anorm" || args.quantity == "omega" ||
               args.quantity == "r") {
        double value = 0.0;
        if (args.quantity == "anorm") value = seminorm(op);
        if (args.quantity == "omega") value = omega_a(op).value;
        if (args.quantity == "r") value = r_a(op).value;
        j["value"] = value;
        text = num12(value) + "\n";
        csv = args.quantity + "," + num12(value) + "\n";
    } else if (args.quantity == "sharp" || args.quantity == "compress") {
        const CMat m =
            args.quantity == "sharp" ? sharp(op).T : compress(op);
        j["matrix"] = matrix_to_json(m);
        text = matrix_text(m);
        std::ostringstream os;
        os << "i,j,re,im\n";
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            for (Eigen::Index k = 0; k < m.cols(); ++k)
                os << i << "," << k << "," << num12(m(i, k).real()) << ","
                   << num12(m(i, k).imag()) << "\n";
        csv = os.str();
    } else {
        throw ParseError("unknown quantity: " + args.quantity);
    }

    if (args.format == "json")
        write_output(args.out_path, j.dump(2) + "\n", out);
    else if (args.format == "csv")
        write_output(args.out_path, csv, out);
    else
        write_output(args.out_path, text, out);
    return kExitOk;
}

struct VerifyArgs {
    std::string checks = "all";
    int trials = 1000;
    std::string dims = "1,2,3,4,5,6";
    double singular_mix = 0.3;
    std::uint64_t seed = 1;
    int witnesses = 5;
    std::string format = "json", out_path;
};

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> items;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) items.push_back(item);
    return items;
}

int run_verify(const VerifyArgs& args, std::ostream& out) {
    verify::SuiteConfig config;
    if (args.checks != "all") config.checks = split_list(args.checks);
    config.trials = args.trials;
    config.dims.clear();
    for (const auto& d : split_list(args.dims))
        config.dims.push_back(std::stoi(d));
    config.singular_mix = args.singular_mix;
    config.seed = args.seed;
    config.witness_count = args.witnesses;
    config.threads = env_threads();

    const verify::Report report = verify::run_suite(config);
    const std::string payload = args.format == "csv"
                                    ? verify::report_to_csv(report)
                                    : verify::report_to_json(report).dump(2) +
                                          "\n";
    write_output(args.out_path, payload, out);
    if (!args.out_path.empty()) {
        out << "seed: " << args.seed << "\n";
        for (const auto& s : report.checks)
            out << s.id << ": " << s.trials << " trials, " << s.violations
                << " violations, max ratio " << num12(s.max_ratio) << "\n";
        out << "total violations: " << report.total_violations << "\n";
    }
    return report.total_violations == 0 ? kExitOk : kExitViolations;
}

struct SearchArgs {
    std::string check;
    int budget = 500;
    std::uint64_t seed = 1;
    std::string out_path;
};

int run_search(const SearchArgs& args, std::ostream& out) {
    const verify::SearchResult res =
        verify::tightness_search(args.check, args.budget, args.seed);
    json j;
    j["check"] = args.check;
    j["seed"] = std::to_string(args.seed);
    j["budget"] = args.budget;
    j["best_ratio"] = res.ratio;
    j["violation"] = res.violation;
    j["trace"] = res.trace;
    j["best_instance"] = verify::instance_to_json(res.best);
    write_output(args.out_path, j.dump(2) + "\n", out);
    if (res.violation) {
        out << "VIOLATION: " << args.check
            << " exceeded its bound at ratio " << num12(res.ratio) << "\n";
        return kExitViolations;
    }
    if (!args.out_path.empty())
        out << args.check << ": best ratio " << num12(res.ratio) << " (seed "
            << args.seed << ")\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// Self test: the independently derived fixtures of every module, kept fast
// enough for CI. The unit suites cover the same ground more thoroughly.
// ---------------------------------------------------------------------------

struct SelfTest {
    std::ostream& out;
    int failures = 0;

    void check(const std::string& name, bool ok, const std::string& note = {}) {
        if (ok) {
            out << "ok   " << name << "\n";
        } else {
            ++failures;
            out << "FAIL " << name << (note.empty() ? "" : ": " + note)
                << "\n";
        }
    }
};

CMat cmat2(cplx a, cplx b, cplx c, cplx d) {
    CMat m(2, 2);
    m << a, b, c, d;
    return m;
}

int run_selftest(std::ostream& out) {
    SelfTest st{out};
    Rng rng(421);

    // linalg: residual oracles
    {
        CMat g = rng.cgaussian_matrix(5, 5);
        CMat h = hermitize(g);
        HermEig eig = herm_eig(h);
        st.check("linalg.herm_eig_reconstruction",
                 op_norm(eig.reconstruct() - h) < 1e-12 * (1 + op_norm(h)));
        CMat x = rng.cgaussian_matrix(4, 4);
        CMat psd = x * x.adjoint();
        CMat b = psd_sqrt(psd);
        st.check("linalg.psd_sqrt_square_back",
                 op_norm(b * b - psd) < 1e-12 * (1 + op_norm(psd)));
        CMat low = rng.cgaussian_matrix(4, 2) * rng.cgaussian_matrix(2, 4);
        PinvResult pi = pinv(low);
        const CMat& mp = pi.matrix;
        const double pr = std::max(
            {op_norm(low * mp * low - low), op_norm(mp * low * mp - mp),
             op_norm((low * mp).adjoint() - low * mp),
             op_norm((mp * low).adjoint() - mp * low)});
        st.check("linalg.pinv_penrose", pi.rank == 2 && pr < 1e-10);
        // companion matrix of z^2 - z - 1 against a bisection root oracle
        double lo = 1.0, hi = 2.0;
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (lo + hi);
            (mid * mid - mid - 1.0 > 0 ? hi : lo) = mid;
        }
        st.check("linalg.companion_golden_ratio",
                 std::abs(spec_radius(cmat2(0, 1, 1, 1)) - lo) < 1e-10);
    }

    // weight: expansion oracles over diag(1,2)
    {
        CMat a = cmat2(1, 0, 0, 2);
        Weight w = make_weight(a);
        CVec x(2), y(2);
        x << 1, 1;
        y << 1, 0;
        st.check("weight.sip_expansion", std::abs(sip(w, x, y) - 1.0) < 1e-12);
        st.check("weight.vnorm_expansion",
                 std::abs(vnorm(w, x) - std::sqrt(3.0)) < 1e-12);
    }

    // aop: compressed-matrix fixtures over diag(1,2)
    {
        Weight w = make_weight(cmat2(1, 0, 0, 2));
        AOp nil = wrap(w, cmat2(0, 1, 0, 0));
        const double sn = seminorm(nil);
        st.check("aop.seminorm_fixture",
                 std::abs(sn - 1.0 / std::sqrt(2.0)) < 1e-12);
        double sampled = 0.0;
        for (int i = 0; i < 20000; ++i) {
            CVec g(2);
            g << rng.cgaussian(), rng.cgaussian();
            const double nv = vnorm(w, g);
            if (nv < 1e-12) continue;
            sampled = std::max(sampled, vnorm(w, CVec(nil.T * g)) / nv);
        }
        st.check("aop.seminorm_sampled_sup",
                 sampled <= sn + 1e-9 && sampled >= 0.95 * sn);
        AOp sh = sharp(nil);
        st.check("aop.sharp_solves_equation",
                 op_norm(w.A() * sh.T - nil.T.adjoint() * w.A()) < 1e-12);
        st.check("aop.sharp_fixture",
                 op_norm(sh.T - cmat2(0, 0, 0.5, 0)) < 1e-12);
        AOp swp = wrap(w, cmat2(0, 1, 1, 0));
        CMat expect = cmat2(0, 1.0 / std::sqrt(2.0), std::sqrt(2.0), 0);
        st.check("aop.compress_fixture", op_norm(compress(swp) - expect) < 1e-12);
    }

    // membership fixture: the rank-one weight rejects the swap operator
    {
        Weight w = make_weight(cmat2(1, 0, 0, 0));
        AOp swp = wrap(w, cmat2(0, 1, 1, 0));
        st.check("aop.membership_fixture", !swp.half_bounded);
        auto pts = sample_w_a(swp, 2000, 7, 1e4);
        double peak = 0.0;
        for (auto p : pts) peak = std::max(peak, std::abs(p));
        st.check("radii.unbounded_numerical_range", peak > 1e3);
    }

    // douglas: dual-route minimal majorant
    {
        CMat t = rng.cgaussian_matrix(4, 2) * rng.cgaussian_matrix(2, 4);
        CMat s = t * rng.cgaussian_matrix(4, 4);
        douglas::DouglasSolution sol = douglas::solve(t, s);
        st.check("douglas.dual_route",
                 std::abs(sol.norm_sq - sol.mu_star) <=
                     1e-8 * (1 + sol.mu_star));
        st.check("douglas.residual",
                 op_norm(t * sol.Q - s) <= 1e-9 * (1 + op_norm(s)));
    }

    // radii: closed-form fixtures over diag(1,2)
    {
        Weight w = make_weight(cmat2(1, 0, 0, 2));
        AOp swp = wrap(w, cmat2(0, 1, 1, 0));
        st.check("radii.r_fixture", std::abs(r_a(swp).value - 1.0) < 1e-10);
        const double om = omega_a(swp).value;
        st.check("radii.omega_fixture",
                 std::abs(om - 3.0 / (2.0 * std::sqrt(2.0))) < 1e-9);
        st.check("radii.omega_methods_agree",
                 std::abs(om - omega_a(swp, Method::sup_formula).value) <=
                     1e-8 * (1 + om));
        st.check("radii.gelfand_agrees",
                 std::abs(r_a(swp, Method::gelfand).value - 1.0) < 1e-4);
        AOp nil = wrap(w, cmat2(0, 1, 0, 0));
        st.check("radii.re_a_fixture",
                 op_norm(re_a(nil, 0.0).T - cmat2(0, 0.5, 0.25, 0)) < 1e-12);
    }

    // blocks: structured seminorm oracles
    {
        Weight w = make_weight(cmat2(1, 0, 0, 2));
        CMat t = cmat2(0, 1, 0, 0);
        CMat z = CMat::Zero(2, 2);
        OpMatrix corner = assemble(w, {t, z, z, z});
        st.check("blocks.corner_seminorm",
                 std::abs(seminorm(corner.inflated) -
                          seminorm(wrap(w, t))) < 1e-10);
        CMat s = cmat2(2, 0, 0, 3);
        OpMatrix diag = assemble(w, {t, z, z, s});
        st.check("blocks.diag_seminorm",
                 std::abs(seminorm(diag.inflated) -
                          std::max(seminorm(wrap(w, t)),
                                   seminorm(wrap(w, s)))) < 1e-10);
        auto [dr, ar] = two_by_two_radii(w, t, s);
        st.check("blocks.two_by_two",
                 std::abs(dr - 3.0) < 1e-10 && std::abs(ar) < 1e-6);
    }

    // series: closed-form inverse oracle
    {
        const CMat root = rng.cgaussian_matrix(3, 3);
        Weight w = make_weight(hermitize(root * root.adjoint() +
                                         0.5 * CMat::Identity(3, 3)));
        CMat x = rng.cgaussian_matrix(3, 3);
        AOp probe = wrap(w, x);
        CMat t = x * (0.5 / seminorm(probe));
        AOp op = wrap(w, t);
        SeriesEval se = eval(op, PowerSeries::geometric(), 1e-12);
        CMat inv = (CMat::Identity(3, 3) - t).inverse();
        st.check("series.geometric_vs_inverse",
                 seminorm(wrap(w, se.op.T - inv)) < 1e-12 + 1e-10);
        Weight w2 = make_weight(cmat2(1, 0, 0, 2));
        AOp nil = wrap(w2, cmat2(0, 0.5, 0, 0));
        SeriesEval sn = eval(nil, PowerSeries::geometric(), 1e-12);
        st.check("series.nilpotent_truncates",
                 op_norm(sn.op.T - (CMat::Identity(2, 2) + nil.T)) < 1e-10);
    }

    // verify: determinism and a dual-order equality
    {
        verify::InstanceSpec spec;
        spec.dim = 3;
        spec.singular = true;
        spec.kind = verify::Kind::pair;
        spec.seed = 99;
        const auto a = verify::instance_to_json(verify::gen_instance(spec));
        const auto b = verify::instance_to_json(verify::gen_instance(spec));
        st.check("verify.gen_deterministic", a.dump() == b.dump());
        verify::Instance inst = verify::gen_instance(spec);
        TolerancePolicy pol;
        const CheckOutcome o = verify::run_check("C04", inst, pol);
        st.check("verify.c04_equality", !o.violated &&
                                            std::abs(o.lhs - o.rhs) <
                                                1e-8 * (1 + std::abs(o.rhs)));
        const CheckOutcome sc = verify::scalar_min_identity(5, pol);
        st.check("verify.scalar_min_identity", !sc.violated);
    }

    out << (st.failures == 0 ? "selftest passed" : "selftest FAILED") << "\n";
    return st.failures == 0 ? kExitOk : kExitViolations;
}

} // namespace

int execute(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"semi-Hilbertian operator toolkit"};
    app.require_subcommand(1);

    ComputeArgs cargs;
    auto* compute = app.add_subcommand(
        "compute", "compute one quantity for a weight/operator pair");
    compute->add_option("--A", cargs.a_path, "weight matrix JSON")->required();
    compute->add_option("--T", cargs.t_path, "operator matrix JSON")
        ->required();
    compute
        ->add_option("--quantity", cargs.quantity,
                     "anorm|omega|r|sharp|compress|membership")
        ->required();
    compute->add_option("--format", cargs.format, "text|json|csv");
    compute->add_option("--out", cargs.out_path, "output path");

    VerifyArgs vargs;
    auto* verify_cmd =
        app.add_subcommand("verify", "run the inequality suite");
    verify_cmd->add_option("--checks", vargs.checks,
                           "all or a comma list of check ids");
    verify_cmd->add_option("--trials", vargs.trials, "trials per check");
    verify_cmd->add_option("--dims", vargs.dims, "comma list of dimensions");
    verify_cmd->add_option("--singular-mix", vargs.singular_mix,
                           "fraction of singular weights");
    verify_cmd->add_option("--seed", vargs.seed, "suite seed");
    verify_cmd->add_option("--witnesses", vargs.witnesses,
                           "witnesses kept per check");
    verify_cmd->add_option("--format", vargs.format, "json|csv");
    verify_cmd->add_option("--out", vargs.out_path, "report path");

    SearchArgs sargs;
    auto* search =
        app.add_subcommand("search", "hill-climb the tightness of one check");
    search->add_option("--check", sargs.check, "check id")->required();
    search->add_option("--budget", sargs.budget, "evaluation budget");
    search->add_option("--seed", sargs.seed, "search seed");
    search->add_option("--out", sargs.out_path, "output path");

    auto* selftest = app.add_subcommand(
        "selftest", "run the derived-oracle fixtures of all modules");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kExitOk;
        }
        err << "error: " << e.what() << "\n";
        return kExitInput;
    }

    try {
        if (compute->parsed()) return run_compute(cargs, out);
        if (verify_cmd->parsed()) return run_verify(vargs, out);
        if (search->parsed()) return run_search(sargs, out);
        if (selftest->parsed()) return run_selftest(out);
        err << "error: no subcommand\n";
        return kExitInput;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return e.error_class() == ErrorClass::numeric ? kExitNumeric
                                                      : kExitInput;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    }
}

int execute(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return execute(args, out, err);
}

} // namespace cli
} // namespace shs
