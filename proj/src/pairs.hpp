#ifndef OSCM_PAIRS_HPP
#define OSCM_PAIRS_HPP

#include <cassert>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace oscm {

using vertex_t = std::uint32_t;
using crossing_number_t = std::uint64_t;

// unordered pairs {u, v} with u < v are laid out row-major:
// (0,1), (0,2), ..., (0,n-1), (1,2), ...
inline std::size_t n_pairs(std::size_t n) { return n * (n - 1) / 2; }

inline std::size_t pair_index(std::size_t n, vertex_t u, vertex_t v) {
    assert(u < v && v < n);
    return static_cast<std::size_t>(u) * n - static_cast<std::size_t>(u) * (u + 1) / 2 +
           (v - u - 1);
}

// inverse of pair_index; O(n) scan, test/debug use only
inline std::pair<vertex_t, vertex_t> pair_from_index(std::size_t n, std::size_t idx) {
    vertex_t u = 0;
    std::size_t row = n - 1;
    while (idx >= row) {
        idx -= row;
        --row;
        ++u;
    }
    return {u, static_cast<vertex_t>(u + 1 + idx)};
}

// flat triangular table indexed by unordered pair
template <typename T>
class pair_table {
public:
    pair_table() : n_(0) {}
    explicit pair_table(std::size_t n, T init = T()) : n_(n), data_(n_pairs(n), init) {}

    T& at(vertex_t u, vertex_t v) { return data_[pair_index(n_, u, v)]; }
    const T& at(vertex_t u, vertex_t v) const { return data_[pair_index(n_, u, v)]; }
    T& operator[](std::size_t idx) { return data_[idx]; }
    const T& operator[](std::size_t idx) const { return data_[idx]; }

    std::size_t n() const { return n_; }
    std::size_t size() const { return data_.size(); }

private:
    std::size_t n_;
    std::vector<T> data_;
};

// deterministic randomness helpers; the 53-bit construction keeps draws
// identical across standard libraries
using rng_t = std::mt19937_64;

struct rng_seed {
    std::uint64_t value = 0;
};

inline double uniform01(rng_t& g) { return (g() >> 11) * 0x1.0p-53; }

inline bool bernoulli(rng_t& g, double p) { return uniform01(g) < p; }

// decorrelates derived seeds (portfolio restarts, per-node draws)
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace oscm

#endif
