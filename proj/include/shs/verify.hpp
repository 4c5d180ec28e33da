#pragma once

#include "shs/json_io.hpp"
#include "shs/outcome.hpp"
#include "shs/series.hpp"
#include "shs/weight.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace shs {
namespace verify {

enum class Kind {
    single,
    pair,
    commuting_pair,
    quadruple,
    unitary_pair,
    block2x2,
    d_tuples,
    series_case,
};

const char* kind_name(Kind k);

// Everything needed to regenerate an instance bit-identically: the same spec
// and seed always produce the same bytes.
struct InstanceSpec {
    int dim = 2;
    bool singular = false;
    Kind kind = Kind::single;
    int d = 2; // block count, d_tuples only
    std::uint64_t seed = 0;
};

// Operator layout by kind:
//   single         {T}
//   pair           {T, S}
//   commuting_pair {P0..P5}, a commuting family of polynomials in one
//                  A-bounded matrix; the pair is (P0, P1)
//   quadruple      {T1, T2, S1, S2}
//   unitary_pair   {T, U} with U A-unitary
//   block2x2       {P, Q, R, S}
//   d_tuples       {T_1..T_d, S_1..S_d, G_11..G_dd} (tuples plus a full grid)
//   series_case    {T} over an invertible weight unless singular was forced,
//                  rescaled so ||T||_A = scale_sel * (radius or 1)
struct Instance {
    InstanceSpec spec;
    Weight w;
    std::vector<CMat> ops;
    int series_id = 0;      // 0 geometric, 1 alternating geometric, 2 exp
    double scale_sel = 0.5; // series_case target fraction of the radius
};

Instance gen_instance(const InstanceSpec& spec,
                      const TolerancePolicy& pol = {});
json instance_to_json(const Instance& inst);

PowerSeries series_by_id(int id);

// One registered inequality/equality. The statement is a self-describing
// rendering of the assertion; eval returns every elementary part evaluated
// on the instance.
struct Part {
    std::string label;
    double lhs = 0.0;
    double rhs = 0.0;
    bool equality = false;
};

struct CheckDef {
    std::string id;
    std::string statement;
    Kind kind;
    std::vector<Part> (*eval)(const Instance&);
};

// The static registry, C01..C28.
const std::vector<CheckDef>& list_checks();
const CheckDef* find_check(const std::string& id);

// Runs one check on one instance. The outcome carries the tightest part;
// `violated` is the OR over all parts. A series-bound trial on a singular
// weight comes back flagged diagnostic and never counts as a violation.
CheckOutcome run_check(const std::string& id, const Instance& inst,
                       const TolerancePolicy& pol);

// Scalar identity min_{t>0}(alpha t + beta/t) = 2 sqrt(alpha beta), checked
// by an independent one-dimensional minimization against the closed form.
CheckOutcome scalar_min_identity(std::uint64_t seed,
                                 const TolerancePolicy& pol);

struct SuiteConfig {
    std::vector<std::string> checks; // empty means the whole registry
    int trials = 1000;
    std::vector<int> dims = {1, 2, 3, 4, 5, 6};
    double singular_mix = 0.3;
    std::uint64_t seed = 1;
    // Worker cap; 0 runs serially. Not part of the serialized report:
    // parallel and serial runs must produce identical bytes.
    int threads = 0;
    int witness_count = 5;
    TolerancePolicy policy;
};

struct Witness {
    int trial = 0;
    double ratio = 0.0;
    double margin = 0.0;
    json instance;
};

struct CheckStats {
    std::string id;
    int trials = 0;
    int violations = 0;
    double max_ratio = 0.0;
    double mean_margin = 0.0;
    std::vector<Witness> top; // top ratios, ties toward the earlier trial
    int diagnostic_trials = 0;
    int diagnostic_holds = 0;
};

struct Report {
    std::string schema = "shs-report/1";
    SuiteConfig config;
    std::vector<CheckStats> checks; // registry entries plus AMGM
    int total_violations = 0;
};

Report run_suite(const SuiteConfig& config);
json report_to_json(const Report& report);
std::string report_to_csv(const Report& report);

// Random-restart hill climb over the generator's Gaussian coordinates,
// maximizing lhs/rhs. The best-ratio trace is monotone nondecreasing. A
// ratio beyond 1 + tolerance is a violation and is flagged, never reported
// as a search result.
struct SearchResult {
    Instance best;
    double ratio = 0.0;
    std::vector<double> trace;
    bool violation = false;
};

SearchResult tightness_search(const std::string& id, int budget,
                              std::uint64_t seed,
                              const TolerancePolicy& pol = {});

} // namespace verify
} // namespace shs
