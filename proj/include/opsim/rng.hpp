#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace opsim {

// Vigna's splitmix64. Small, fast, and fixed across platforms, so seeded
// corpora reproduce bit-for-bit anywhere. Reference outputs for seed 0:
// e220a8397b1dcdaf, 6e789e6aa1b965f4, 06c45d188009454f, ...
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n). n must be positive.
    std::uint64_t bounded(std::uint64_t n) { return next() % n; }

    // Uniform in [0, 1) with 53 bits.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // The first k elements of a seeded Fisher-Yates pass over 0..n-1,
    // in selection order.
    std::vector<std::size_t> pick(std::size_t n, std::size_t k) {
        std::vector<std::size_t> idx(n);
        std::iota(idx.begin(), idx.end(), 0);
        if (k > n) k = n;
        for (std::size_t i = 0; i < k; ++i) {
            std::size_t j = i + static_cast<std::size_t>(bounded(n - i));
            std::swap(idx[i], idx[j]);
        }
        idx.resize(k);
        return idx;
    }

    // Seeded permutation of 0..n-1.
    std::vector<std::size_t> permutation(std::size_t n) { return pick(n, n); }

private:
    std::uint64_t state_;
};

}  // namespace opsim
