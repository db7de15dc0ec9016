#ifndef MODGEN_RNG_HPP
#define MODGEN_RNG_HPP

#include <cstdint>
#include <string_view>
#include <vector>

namespace modgen {

// FNV-1a, 64 bit. Used to derive per-sentence seeds and artifact manifests.
inline std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

// xorshift64* (Vigna 2016). The one PRNG used everywhere randomness is
// needed, so corpora and training runs rebuild identically from a seed.
class Xorshift64Star {
public:
    explicit Xorshift64Star(std::uint64_t seed)
        // the generator has no zero state; remap seed 0 to a fixed constant
        : state_(seed != 0 ? seed : 0x9E3779B97F4A7C15ull) {}

    std::uint64_t next() {
        state_ ^= state_ >> 12;
        state_ ^= state_ << 25;
        state_ ^= state_ >> 27;
        return state_ * 0x2545F4914F6CDD1Dull;
    }

    // uniform in [0, 1) with 53 bits
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // uniform in [0, n); n > 0. Plain modulo, bias is O(n / 2^64).
    std::uint64_t next_below(std::uint64_t n) { return next() % n; }

    double next_uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

private:
    std::uint64_t state_;
};

// Fisher-Yates, descending index order.
template <typename T>
void shuffle(std::vector<T>& v, Xorshift64Star& rng) {
    if (v.size() < 2) return;
    for (std::size_t i = v.size() - 1; i > 0; --i) {
        std::size_t j = static_cast<std::size_t>(rng.next_below(i + 1));
        if (i != j) std::swap(v[i], v[j]);
    }
}

}  // namespace modgen

#endif
