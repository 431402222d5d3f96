#pragma once

#include <cstdint>
#include <string_view>

namespace qgeo {

// Deterministic splitmix64 stream. We hand-roll the few samplers we need
// because the std:: distributions are not bit-stable across standard library
// implementations, and every report we emit must be reproducible from a seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double next_real01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in [0, n). Modulo bias is < 2^-40 for any n we ever pass.
    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next_u64() % n; }

    double in_range(double lo, double hi) { return lo + (hi - lo) * next_real01(); }

    // Independent child stream; deterministic in (parent state, tag).
    Rng derive(std::uint64_t tag) const {
        Rng child(state_ ^ (0x6a09e667f3bcc909ULL + tag * 0x9e3779b97f4a7c15ULL));
        child.next_u64();
        return child;
    }

    Rng derive(std::string_view tag) const {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (char c : tag) {
            h ^= static_cast<unsigned char>(c);
            h *= 0x100000001b3ULL;
        }
        return derive(h);
    }

private:
    std::uint64_t state_;
};

// FNV-1a over arbitrary bytes; used for manifest content hashes.
inline std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : bytes) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace qgeo
