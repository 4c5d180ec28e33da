#pragma once

#include "shs/matrix.hpp"

#include <cstdint>
#include <random>

namespace shs {

// Deterministic random source. mt19937_64 is bit-exact across platforms and
// the Gaussian is produced by an explicit Box-Muller transform, so a given
// seed always yields the same stream regardless of the standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t bits() { return eng_(); }

    // Uniform in [0, 1).
    double uniform() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        return n > 0 ? eng_() % n : 0;
    }

    double gaussian() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * 3.14159265358979323846 * u2);
    }

    cplx cgaussian() {
        const double re = gaussian();
        const double im = gaussian();
        return cplx(re, im) / std::sqrt(2.0);
    }

    CMat cgaussian_matrix(Eigen::Index rows, Eigen::Index cols) {
        CMat m(rows, cols);
        for (Eigen::Index i = 0; i < rows; ++i)
            for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = cgaussian();
        return m;
    }

private:
    std::mt19937_64 eng_;
};

// splitmix64 step; used to derive independent per-trial seeds from a suite
// seed and the (check, trial) indices.
inline std::uint64_t mix_seed(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a,
                                 std::uint64_t b) {
    return mix_seed(mix_seed(base + a * 0x9e3779b97f4a7c15ULL) + b);
}

} // namespace shs
