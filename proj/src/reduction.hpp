#ifndef OSCM_REDUCTION_HPP
#define OSCM_REDUCTION_HPP

#include "crossings.hpp"
#include "fix_state.hpp"
#include "instance.hpp"

namespace oscm {

// maximal left-to-right decomposition of an instance plus the degree-zero
// prefix; concatenating optimally solved parts (isolated vertices first)
// yields an optimal full ordering
struct split_result {
    std::vector<instance> parts;                 // relabeled sub-instances, left to right
    std::vector<std::vector<vertex_t>> members;  // original free indices per part, ascending
    std::vector<vertex_t> isolated;              // original free indices, ascending
    vertex_t prefix_isolated = 0;                // == isolated.size()

    // full ordering = isolated prefix + per-part orderings mapped back
    ordering assemble(const std::vector<ordering>& part_orders) const;
};

// peels degree-zero free vertices off and relabels the rest contiguously
std::pair<instance, std::vector<vertex_t>> extract_isolated(const instance& inst);

// sweep over the neighbor intervals [l_v, r_v]: a new part starts whenever
// the next interval begins strictly right of everything seen so far
// (requires no isolated free vertices)
split_result split_instance(const instance& inst);

// c_uv = 0 < c_vu forces u before v in every optimal ordering
std::size_t fix_zero_pairs(const crossing_matrix& matrix, fix_state& state);

// equal-degree pair with c_uv < c_vu and the k-th smallest neighbor of u
// never right of the k-th smallest neighbor of v: a probe edge from between
// the pair into any gap crosses at most as much with u first, so some
// optimal ordering places u before v
std::size_t dominance_fix(const instance& inst, const crossing_matrix& matrix, fix_state& state);

// with lb = fixed_cost + residual_lb: taking the expensive direction of a
// pair raises the bound by max - min; once that increment reaches ub - lb
// only the cheap direction can still beat the incumbent
std::size_t bound_fix(const crossing_matrix& matrix, fix_state& state, crossing_number_t ub);

struct reduction_counts {
    std::size_t isolated = 0;
    std::size_t parts = 0;
    std::size_t zero = 0;
    std::size_t dominance = 0;
    std::size_t bound = 0;
    std::size_t transitive = 0;
};

struct reduce_result {
    fix_state state;  // over the original free indices; cross-part pairs fixed
    split_result split;
    reduction_counts counts;
    // the bound rule plus closure ruled every ordering cheaper than ub out
    // (directed cycle, or forced fixes alone reach ub): the incumbent that
    // supplied ub is optimal and the state must not be searched
    bool conflict = false;
};

// extract_isolated + split_instance, then zero / dominance / bound /
// transitive-closure iterated to a joint fixed point; ub is the incumbent
// crossing count used by the bound rule
reduce_result reduce(const instance& inst, const crossing_matrix& matrix, crossing_number_t ub);

}  // namespace oscm

#endif
