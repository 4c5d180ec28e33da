#include "shs/series.hpp"

#include "shs/radii.hpp"

#include <cmath>
#include <sstream>

namespace shs {

namespace {

std::vector<cplx> builtin_prefix(PowerSeries::Family f, std::size_t count) {
    std::vector<cplx> p(count);
    double inv_fact = 1.0;
    for (std::size_t k = 0; k < count; ++k) {
        switch (f) {
            case PowerSeries::Family::geometric: p[k] = 1.0; break;
            case PowerSeries::Family::alt_geometric:
                p[k] = (k % 2 == 0) ? 1.0 : -1.0;
                break;
            case PowerSeries::Family::exponential:
                p[k] = inv_fact;
                inv_fact /= static_cast<double>(k + 1);
                break;
            case PowerSeries::Family::polynomial: break;
        }
    }
    return p;
}

} // namespace

PowerSeries PowerSeries::geometric() {
    return PowerSeries(Family::geometric, "geometric", 1.0,
                       builtin_prefix(Family::geometric, 32));
}

PowerSeries PowerSeries::alt_geometric() {
    return PowerSeries(Family::alt_geometric, "alt_geometric", 1.0,
                       builtin_prefix(Family::alt_geometric, 32));
}

PowerSeries PowerSeries::exponential() {
    return PowerSeries(Family::exponential, "exp",
                       std::numeric_limits<double>::infinity(),
                       builtin_prefix(Family::exponential, 32));
}

PowerSeries PowerSeries::polynomial(std::vector<cplx> coeffs,
                                    std::string name, double radius) {
    if (coeffs.empty()) coeffs.push_back(0.0);
    return PowerSeries(Family::polynomial, std::move(name), radius,
                       std::move(coeffs));
}

cplx PowerSeries::coeff(std::size_t k) const {
    switch (family_) {
        case Family::geometric: return 1.0;
        case Family::alt_geometric: return (k % 2 == 0) ? 1.0 : -1.0;
        case Family::exponential:
            // 1/k! via lgamma; underflows to 0 for large k, which is exact
            // enough for any tail this toolkit sums.
            return std::exp(-std::lgamma(static_cast<double>(k) + 1.0));
        case Family::polynomial:
            return k < prefix_.size() ? prefix_[k] : cplx(0.0);
    }
    return 0.0;
}

double PowerSeries::abs_tail_bound(std::size_t n, double t) const {
    if (t < 0.0) t = 0.0;
    switch (family_) {
        case Family::geometric:
        case Family::alt_geometric: {
            if (t >= 1.0) return std::numeric_limits<double>::infinity();
            return std::pow(t, static_cast<double>(n + 1)) / (1.0 - t);
        }
        case Family::exponential: {
            const double next = static_cast<double>(n + 2);
            if (t >= next) return std::numeric_limits<double>::infinity();
            // first dropped term times the geometric envelope of the ratios
            const double log_first =
                static_cast<double>(n + 1) * std::log(std::max(t, 1e-300)) -
                std::lgamma(static_cast<double>(n + 2));
            if (t == 0.0) return 0.0;
            return std::exp(log_first) / (1.0 - t / next);
        }
        case Family::polynomial: {
            double sum = 0.0;
            for (std::size_t k = n + 1; k < prefix_.size(); ++k)
                sum += std::abs(prefix_[k]) * std::pow(t, static_cast<double>(k));
            return sum;
        }
    }
    return 0.0;
}

double PowerSeries::f_c_at(double x) const {
    if (x < 0.0)
        throw OutsideDisk("f_c_at: argument must be nonnegative");
    if (!(x < radius_)) {
        std::ostringstream os;
        os << "f_c_at: " << x << " is not inside the disk of radius "
           << radius_;
        throw OutsideDisk(os.str());
    }
    if (family_ == Family::polynomial) {
        double sum = 0.0;
        double xk = 1.0;
        for (std::size_t k = 0; k < prefix_.size(); ++k) {
            sum += std::abs(prefix_[k]) * xk;
            xk *= x;
        }
        return sum;
    }
    double sum = 0.0;
    double xk = 1.0;
    for (std::size_t k = 0;; ++k) {
        const double term = std::abs(coeff(k)) * xk;
        sum += term;
        if (k > 0 && term < 1e-14 * (1.0 + sum)) break;
        xk *= x;
    }
    return sum;
}

SeriesEval eval(const AOp& op, const PowerSeries& s, double tail_tol) {
    const double t = seminorm(op); // throws NotABounded
    if (!(t < s.radius())) {
        std::ostringstream os;
        os << "eval: ||T||_A = " << t << " is not inside the disk of radius "
           << s.radius();
        throw OutsideDisk(os.str());
    }

    const Weight& w = op.w;
    const Eigen::Index n = w.dim();
    const CMat& C = op.C;
    CMat sum = s.coeff(0) * CMat::Identity(n, n);
    CMat power = CMat::Identity(n, n);

    SeriesEval out;
    const int kmax = w.tol().series_max_terms;
    for (int k = 0;; ++k) {
        const double bound = s.abs_tail_bound(static_cast<std::size_t>(k), t);
        if (bound < tail_tol) {
            out.terms = static_cast<std::size_t>(k) + 1;
            out.tail_bound = bound;
            break;
        }
        if (k + 1 > kmax) {
            std::ostringstream os;
            os << "eval: tail bound still " << bound << " after " << kmax
               << " terms (target " << tail_tol << ", ||T||_A = " << t << ")";
            throw TailBoundStall(os.str());
        }
        power = power * C;
        sum += s.coeff(static_cast<std::size_t>(k) + 1) * power;
    }
    out.op = wrap(w, w.B_pinv() * sum * w.B());
    return out;
}

CheckOutcome check_series_bound(const AOp& op, const PowerSeries& s,
                                bool allow_singular) {
    const Weight& w = op.w;
    const bool invertible = w.invertible();
    if (!invertible && !allow_singular) {
        std::ostringstream os;
        os << "check_series_bound: weight rank " << w.rank() << " < dim "
           << w.dim();
        throw WeightSingular(os.str());
    }
    const SeriesEval se = eval(op, s, 1e-12); // throws OutsideDisk
    const double lhs = r_a(se.op).value;
    const double rhs = s.f_c_at(r_a(op).value);
    CheckOutcome o = CheckOutcome::make("series_bound", lhs, rhs,
                                        /*equality=*/false, w.tol(),
                                        s.name());
    o.diagnostic = !invertible;
    return o;
}

} // namespace shs
