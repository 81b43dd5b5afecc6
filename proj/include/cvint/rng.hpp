#pragma once
#include <cstdint>
#include <cmath>

namespace cvint {

// Counter-based uniform/normal generator. Every draw is addressed by an
// absolute stream index, so partitioning work across threads by index range
// reproduces the serial stream exactly.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t u64_at(std::uint64_t seed, std::uint64_t index) {
    return mix64(seed + (index + 1) * 0x9e3779b97f4a7c15ULL);
}

// uniform in the open interval (0,1); never 0, safe under log()
inline double uniform_at(std::uint64_t seed, std::uint64_t index) {
    return (static_cast<double>(u64_at(seed, index) >> 11) + 0.5) * 0x1.0p-53;
}

// Box-Muller pair; pair k consumes uniform indices 2k and 2k+1
inline void normal_pair_at(std::uint64_t seed, std::uint64_t pair_index,
                           double& z0, double& z1) {
    const double u1 = uniform_at(seed, 2 * pair_index);
    const double u2 = uniform_at(seed, 2 * pair_index + 1);
    const double rad = std::sqrt(-2.0 * std::log(u1));
    const double ang = 6.283185307179586476925286766559 * u2;
    z0 = rad * std::cos(ang);
    z1 = rad * std::sin(ang);
}

} // namespace cvint
