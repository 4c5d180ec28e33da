#pragma once

#include "shs/aop.hpp"
#include "shs/outcome.hpp"

#include <limits>
#include <string>
#include <vector>

namespace shs {

// A power series sum c_k z^k with an explicit radius of convergence and a
// certified upper bound on its absolute tails, which is what the truncation
// rule for operator arguments consumes.
class PowerSeries {
public:
    enum class Family { geometric, alt_geometric, exponential, polynomial };

    static PowerSeries geometric();      // sum z^k,        R = 1
    static PowerSeries alt_geometric();  // sum (-1)^k z^k, R = 1
    static PowerSeries exponential();    // sum z^k / k!,   R = inf
    static PowerSeries polynomial(std::vector<cplx> coeffs,
                                  std::string name = "polynomial",
                                  double radius =
                                      std::numeric_limits<double>::infinity());

    const std::string& name() const { return name_; }
    double radius() const { return radius_; }
    Family family() const { return family_; }
    cplx coeff(std::size_t k) const;
    const std::vector<cplx>& coeff_prefix() const { return prefix_; }

    // Upper bound on sum_{k>n} |c_k| t^k; exact zero past a polynomial's
    // degree, geometric majorant otherwise. Requires t < radius.
    double abs_tail_bound(std::size_t n, double t) const;

    // f_c(x) = sum |c_k| x^k by monotone partial sums; stops once the
    // increment drops below 1e-14 * (1 + current). Throws OutsideDisk.
    double f_c_at(double x) const;

private:
    PowerSeries(Family f, std::string name, double radius,
                std::vector<cplx> prefix)
        : family_(f), name_(std::move(name)), radius_(radius),
          prefix_(std::move(prefix)) {}

    Family family_;
    std::string name_;
    double radius_;
    std::vector<cplx> prefix_; // cached coefficients (all of them for
                               // polynomials)
};

struct SeriesEval {
    AOp op;            // the truncated sum S_n
    std::size_t terms = 0; // number of terms accumulated (n + 1)
    double tail_bound = 0.0; // achieved bound on the dropped tail
};

// Truncated functional calculus S_n = sum_{k<=n} c_k T^k with n chosen so the
// tail bound falls below tail_tol. Powers accumulate on the compressed
// matrix; the result maps back through the weight's square-root factors.
SeriesEval eval(const AOp& op, const PowerSeries& s, double tail_tol);

// r_A(f(T)) <= f_c(r_A(T)) for invertible weights and ||T||_A < R.
// With allow_singular the rank requirement is skipped and the outcome is
// flagged diagnostic (recorded, never asserted).
CheckOutcome check_series_bound(const AOp& op, const PowerSeries& s,
                                bool allow_singular = false);

} // namespace shs
