#ifndef OSCM_FIX_STATE_HPP
#define OSCM_FIX_STATE_HPP

#include <array>
#include <cstdint>

#include "crossings.hpp"
#include "pairs.hpp"

namespace oscm {

enum class pair_status : std::uint8_t { free_pair = 0, u_before_v = 1, v_before_u = 2 };

// partial orientation of the free-layer pairs accumulated by reduction and
// branching; tracks the constant cost of fixed pairs and the min-sum bound of
// the still-free ones so that lower_bound() = fixed_cost + residual_lb
class fix_state {
public:
    fix_state() = default;
    explicit fix_state(const crossing_matrix& matrix);

    vertex_t n1() const { return n1_; }
    std::size_t free_pairs() const { return free_pairs_; }
    crossing_number_t fixed_cost() const { return fixed_cost_; }
    crossing_number_t residual_lb() const { return residual_lb_; }
    crossing_number_t lower_bound() const { return fixed_cost_ + residual_lb_; }

    pair_status status(vertex_t u, vertex_t v) const {  // requires u < v
        return status_[pair_index(n1_, u, v)];
    }
    pair_status status_at(std::size_t pair_idx) const { return status_[pair_idx]; }
    bool is_fixed(vertex_t u, vertex_t v) const { return status(u, v) != pair_status::free_pair; }

    // true iff the pair is fixed with a ordered before b; a, b in either order
    bool fixed_before(vertex_t a, vertex_t b) const;

    // value of the orientation variable x_{u,v} (u < v) for a fixed pair
    int fixed_value(vertex_t u, vertex_t v) const {
        return status(u, v) == pair_status::u_before_v ? 1 : 0;
    }

    enum class fix_result { added, already_fixed, conflict };

    // orders a before b (either order of arguments); bookkeeping uses the matrix
    fix_result set_before(vertex_t a, vertex_t b, const crossing_matrix& matrix);

    struct close_result {
        std::size_t added = 0;
        bool conflict = false;
        std::array<vertex_t, 3> triple{};  // set when conflict: a directed 3-cycle
    };

    // propagates a<b, b<c => a<c to a fixed point; detects directed cycles
    close_result transitive_close(const crossing_matrix& matrix);

private:
    vertex_t n1_ = 0;
    std::vector<pair_status> status_;
    std::size_t free_pairs_ = 0;
    crossing_number_t fixed_cost_ = 0;
    crossing_number_t residual_lb_ = 0;
};

}  // namespace oscm

#endif
