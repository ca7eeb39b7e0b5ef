#pragma once

#include <cstdint>
#include <vector>

namespace spectra {

// splitmix64: tiny, portable, fully deterministic across platforms.
// std::mt19937 + distributions are avoided on purpose: distribution output is
// implementation-defined and would break byte-identical reports.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, m), m > 0, via rejection (no modulo bias).
    uint64_t below(uint64_t m) {
        uint64_t zone = ~uint64_t{0} - (~uint64_t{0} % m + 1) % m;
        uint64_t r;
        do { r = next(); } while (r > zone);
        return r % m;
    }

    bool coin() { return next() & 1; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            size_t j = static_cast<size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    uint64_t state_;
};

} // namespace spectra
