#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace bjo {

using Cx = std::complex<double>;

enum class Field { Real, Complex };

inline const char* field_name(Field f) { return f == Field::Real ? "real" : "complex"; }

// Deterministic per-trial seed derivation (splitmix64).
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline double abs2(Cx z) { return z.real() * z.real() + z.imag() * z.imag(); }

}  // namespace bjo
