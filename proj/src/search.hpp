#ifndef OSCM_SEARCH_HPP
#define OSCM_SEARCH_HPP

#include <cstdint>

#include "heuristics.hpp"
#include "lp.hpp"
#include "reduction.hpp"

namespace oscm {

struct solver_config {
    std::uint64_t seed = 0;
    double time_limit_s = 0;        // <= 0: unlimited
    std::size_t restarts = 64;      // probabilistic-median draws in the portfolio
    std::size_t rr_trials = 32;     // randomized-rounding trials per invocation
    std::uint64_t rins_node_budget = 10000;
    vertex_t local_search_window = 0;  // >= 2 enables the pass before reduction
};

struct solve_report {
    solution best;
    bool proven_optimal = false;
    crossing_number_t lower_bound = 0;
    crossing_number_t heuristic_cost = 0;
    std::uint64_t nodes_explored = 0;
    std::uint64_t cuts_added = 0;
    std::uint64_t lp_solves = 0;
    double wall_ms = 0;
    reduction_counts reductions;
};

// the pair column whose fractional value sits closest to 0.5 (ties to the
// lowest column index); throws std::logic_error on an integral solution
std::size_t choose_branch_variable(const lp_solution& x);

// unique ordering encoded by an integral, triangle-feasible solution; score
// ties signal upstream inconsistency and throw std::logic_error
ordering decode_integral(const lp_solution& x, const fix_state& state);

// full pipeline: heuristic portfolio, optional windowed improvement,
// reduction + split, then depth-first branch-and-bound with lazy triangle
// cuts per part; on timeout returns the incumbent with proven_optimal false
// and a valid lower bound
solve_report solve_exact(const instance& inst, const solver_config& config = {});

// heuristic-only pipeline (portfolio on the isolated-free core; no search)
solve_report solve_heuristic(const instance& inst, const solver_config& config = {});

}  // namespace oscm

#endif
