#ifndef OSCM_HEURISTICS_HPP
#define OSCM_HEURISTICS_HPP

#include "crossings.hpp"
#include "instance.hpp"
#include "lp.hpp"
#include "pairs.hpp"

namespace oscm {

using score_vector = std::vector<double>;

// stable sort: vertices ordered by non-decreasing score, ties by index
ordering order_by_scores(const score_vector& scores);

// score = mean A-neighbor position
ordering barycenter(const instance& inst);

// score = middle neighbor (odd degree) or the mean of the two middle
// neighbors (even degree)
ordering median(const instance& inst);

// per-vertex random quantile: x ~ U[0.0957, 0.9043], score = w_{floor(x*d)}
ordering probabilistic_median(const instance& inst, rng_seed seed);

// score = expected number of vertices placed before v under the fractional
// assignment: s(v) = sum_{u<v} x_{u,v} + sum_{u>v} (1 - x_{v,u})
ordering sort_heuristic(const lp_solution& fractional, const fix_state& state);

// per trial: Bernoulli(x_{u,v}) tournament, vertices ordered by descending
// win count (ties by index); returns the best of `trials`
solution randomized_rounding(const lp_solution& fractional, const crossing_matrix& matrix,
                             rng_seed seed, std::size_t trials);

// single-vertex reinsertion to a fixed point; never increases cost
solution shift_improve(const ordering& order, const crossing_matrix& matrix);

struct portfolio_config {
    std::size_t restarts = 64;  // probabilistic-median draws
};

// barycenter + median + seeded probabilistic-median restarts, each polished
// by shift_improve; best result wins (requires no isolated free vertices)
solution heuristic_portfolio(const instance& inst, const crossing_matrix& matrix, rng_seed seed,
                             const portfolio_config& config = {});

// --- improvement passes that recurse into the exact search ---
// declared here with the rest of the heuristic family; definitions live with
// the search engine they drive

struct rins_limits {
    std::uint64_t node_budget = 10000;
};

// fixes every pair whose fractional value is within 1e-6 of 0/1 and agrees
// with the incumbent's relative order, then solves the residual subproblem
// under a node budget; never returns a worse solution than the incumbent
solution rins(const lp_solution& fractional, const solution& incumbent,
              const crossing_matrix& matrix, const rins_limits& limits = {});

// solves the reduced program where only pairs within `w` positions of each
// other stay free (all farther pairs frozen in their current relative
// order); never returns a worse solution
solution local_search_improve(const ordering& order, const crossing_matrix& matrix, vertex_t w);

}  // namespace oscm

#endif
