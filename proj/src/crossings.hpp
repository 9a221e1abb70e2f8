#ifndef OSCM_CROSSINGS_HPP
#define OSCM_CROSSINGS_HPP

#include "instance.hpp"
#include "pairs.hpp"

namespace oscm {

// dense table of pairwise crossing numbers; c(u, v) counts the crossings
// among edges of u and v when u is placed left of v
class crossing_matrix {
public:
    crossing_matrix() : n1_(0) {}
    explicit crossing_matrix(vertex_t n1) : n1_(n1), c_(static_cast<std::size_t>(n1) * n1, 0) {}

    crossing_number_t& at(vertex_t u, vertex_t v) { return c_[static_cast<std::size_t>(u) * n1_ + v]; }
    crossing_number_t at(vertex_t u, vertex_t v) const {
        return c_[static_cast<std::size_t>(u) * n1_ + v];
    }

    vertex_t n1() const { return n1_; }

private:
    vertex_t n1_;
    std::vector<crossing_number_t> c_;
};

struct pair_counts {
    crossing_number_t c_uv = 0;   // crossings with u left of v
    crossing_number_t c_vu = 0;   // crossings with v left of u
    crossing_number_t shared = 0; // edge pairs meeting at a common A-endpoint
};

// both directed counts by a single merge over the sorted neighbor lists,
// O(d(u) + d(v)); also reports the shared-endpoint count for the identity
// c_uv + c_vu + shared = d(u) * d(v)
pair_counts pair_crossings(const instance& inst, vertex_t u, vertex_t v);

crossing_matrix build_crossing_matrix(const instance& inst);

// total crossings of the drawing given by perm, via inversion counting over
// A-positions with a binary-indexed accumulator; O(m log n0)
crossing_number_t count_crossings(const instance& inst, const ordering& perm);

// same total from the matrix: sum of c[earlier][later] over ordered pairs
crossing_number_t order_cost(const crossing_matrix& matrix, const ordering& perm);

// lb = sum over pairs of min(c_uv, c_vu); no ordering can cost less
crossing_number_t pair_lower_bound(const crossing_matrix& matrix);

}  // namespace oscm

#endif
