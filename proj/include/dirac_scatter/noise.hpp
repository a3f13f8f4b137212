#pragma once

// Deterministic per-entry Gaussian noise.  Every observed transfer entry gets
// its own stream seeded from (seed, row, col, energy index), so a run is
// reproducible for a fixed seed and the draws do not depend on evaluation
// order, thread count, or which observation subset is active.

#include <cmath>
#include <cstdint>

namespace dirac_scatter {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// One standard normal draw keyed by (seed, a, b, c) via Box-Muller.
inline double keyed_gaussian(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                             std::uint64_t c) {
    std::uint64_t s = seed;
    s = splitmix64(s ^ (a + 0x100000001ULL));
    s = splitmix64(s ^ (b + 0x200000002ULL));
    s = splitmix64(s ^ (c + 0x300000003ULL));
    const std::uint64_t u1 = splitmix64(s);
    const std::uint64_t u2 = splitmix64(u1);
    // map to (0,1]; u must stay away from 0 for the log
    const double x1 = (static_cast<double>(u1 >> 11) + 1.0) * 0x1.0p-53;
    const double x2 = static_cast<double>(u2 >> 11) * 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(x1)) * std::cos(2.0 * M_PI * x2);
}

}  // namespace dirac_scatter
