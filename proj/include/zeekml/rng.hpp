#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace zeekml {

inline uint64_t fnv1a64(std::string_view s, uint64_t h = 0xcbf29ce484222325ULL) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Deterministic generator. std::mt19937_64's output sequence is pinned by the
// standard; the draws below avoid std distributions, whose results are
// implementation-defined and would break byte-identical reproducibility.
class Rng {
public:
    explicit Rng(uint64_t seed) : engine_(seed), seed_(seed) {}

    uint64_t next_u64() { return engine_(); }

    // Uniform in [0, n). Modulo bias is ~n/2^64 and irrelevant here.
    std::size_t uniform_index(std::size_t n) {
        return n == 0 ? 0 : static_cast<std::size_t>(next_u64() % n);
    }

    // Uniform in [0, 1) with 53 significant bits.
    double uniform_real() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform_real(double lo, double hi) {
        return lo + (hi - lo) * uniform_real();
    }

    // Inclusive integer range.
    int64_t uniform_int(int64_t lo, int64_t hi) {
        return lo + static_cast<int64_t>(uniform_index(static_cast<std::size_t>(hi - lo + 1)));
    }

    bool bernoulli(double p) { return uniform_real() < p; }

    // Box-Muller without cached state; two draws per variate.
    double normal(double mean = 0.0, double sd = 1.0) {
        double u1 = uniform_real();
        double u2 = uniform_real();
        if (u1 <= 0.0)
            u1 = 0x1.0p-53;
        double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
        return mean + sd * z;
    }

    double exponential(double mean) {
        double u = uniform_real();
        if (u <= 0.0)
            u = 0x1.0p-53;
        return -mean * std::log(u);
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = uniform_index(i);
            std::swap(v[i - 1], v[j]);
        }
    }

    // All randomness in the toolkit fans out from one user seed via
    // (seed, purpose tag) so that independent stages never share streams.
    Rng derive(std::string_view tag) const {
        return Rng(fnv1a64(tag, seed_ ^ 0x9e3779b97f4a7c15ULL));
    }

    uint64_t seed() const { return seed_; }

private:
    std::mt19937_64 engine_;
    uint64_t seed_ = 0;
};

inline Rng derive_rng(uint64_t seed, std::string_view tag) {
    return Rng(seed).derive(tag);
}

} // namespace zeekml
