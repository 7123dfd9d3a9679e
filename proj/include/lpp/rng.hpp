#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

#include "lpp/lattice.hpp"

namespace lpp {

inline constexpr std::string_view kRngId = "splitmix64-site-hash/v1";

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Hash of (seed, x, y). Pure function of its arguments.
constexpr std::uint64_t site_hash(std::uint64_t seed, std::int64_t x, std::int64_t y) {
    std::uint64_t h = mix64(seed + 0x9e3779b97f4a7c15ULL);
    h = mix64(h ^ static_cast<std::uint64_t>(x));
    h = mix64(h ^ (static_cast<std::uint64_t>(y) * 0xd6e8feb86659fd93ULL));
    return h;
}

// Uniform in (0,1), never 0 or 1. 52 bits so that k + 1/2 is exact.
inline double unit_open(std::uint64_t bits) {
    return (static_cast<double>(bits >> 12) + 0.5) * 0x1.0p-52;
}

// Inverse-CDF exponential draw with the given rate.
inline double exp_from_bits(std::uint64_t bits, double rate = 1.0) {
    return -std::log1p(-unit_open(bits)) / rate;
}

// Seed for a named sub-stream of a master seed.
std::uint64_t derive_seed(std::uint64_t master, std::string_view tag, std::uint64_t index = 0);

// The environment ω on all of Z^2: i.i.d. Exp(1) weights keyed by (seed, site).
class Environment {
public:
    explicit Environment(std::uint64_t seed, Site offset = {}) : seed_(seed), offset_(offset) {}

    double weight(Site s) const {
        return exp_from_bits(site_hash(seed_, s.x + offset_.x, s.y + offset_.y));
    }
    // Shift operator: (T_z ω)_x = ω_{x+z}.
    Environment shifted(Site z) const { return Environment(seed_, offset_ + z); }

    std::uint64_t seed() const { return seed_; }
    Site offset() const { return offset_; }
    std::uint64_t id() const {
        return mix64(seed_ ^ mix64(static_cast<std::uint64_t>(offset_.x) * 31 + static_cast<std::uint64_t>(offset_.y)));
    }

private:
    std::uint64_t seed_;
    Site offset_;
};

// Sequential SplitMix64 stream for 1-D samplers (queues, walks, boundaries).
class Stream {
public:
    explicit Stream(std::uint64_t key) : state_(key) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix64(state_);
    }
    double uniform() { return unit_open(next()); }
    double exponential(double rate) { return exp_from_bits(next(), rate); }
    bool coin() { return (next() >> 63) != 0; }

private:
    std::uint64_t state_;
};

}  // namespace lpp
