#include "heuristics.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace oscm {

namespace {
constexpr double quantile_lo = 0.0957;
constexpr double quantile_hi = 0.9043;

void require_no_isolated(const instance& inst) {
    for (vertex_t v = 0; v < inst.n1; ++v)
        if (inst.adjacency[v].empty())
            throw std::invalid_argument("isolated free vertex; reduce the instance first");
}
}  // namespace

ordering order_by_scores(const score_vector& scores) {
    for (double s : scores)
        if (!std::isfinite(s)) throw std::invalid_argument("non-finite score");
    ordering perm(scores.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(),
                     [&](vertex_t a, vertex_t b) { return scores[a] < scores[b]; });
    return perm;
}

ordering barycenter(const instance& inst) {
    require_no_isolated(inst);
    score_vector s(inst.n1);
    for (vertex_t v = 0; v < inst.n1; ++v) {
        double sum = 0;
        for (vertex_t a : inst.adjacency[v]) sum += a;
        s[v] = sum / inst.degree(v);
    }
    return order_by_scores(s);
}

ordering median(const instance& inst) {
    require_no_isolated(inst);
    score_vector s(inst.n1);
    for (vertex_t v = 0; v < inst.n1; ++v) {
        const auto& w = inst.adjacency[v];
        std::size_t d = w.size();
        s[v] = d % 2 == 1 ? w[(d - 1) / 2] : (w[d / 2 - 1] + w[d / 2]) / 2.0;
    }
    return order_by_scores(s);
}

ordering probabilistic_median(const instance& inst, rng_seed seed) {
    require_no_isolated(inst);
    rng_t rng(seed.value);
    score_vector s(inst.n1);
    for (vertex_t v = 0; v < inst.n1; ++v) {
        const auto& w = inst.adjacency[v];
        double x = quantile_lo + uniform01(rng) * (quantile_hi - quantile_lo);
        std::size_t idx = static_cast<std::size_t>(x * w.size());
        s[v] = w[std::min(idx, w.size() - 1)];
    }
    return order_by_scores(s);
}

namespace {

// shared by sort_heuristic and the integral decoder
score_vector scores_from_values(const std::vector<double>& x, vertex_t n1) {
    score_vector s(n1, 0.0);
    for (vertex_t u = 0; u < n1; ++u)
        for (vertex_t v = u + 1; v < n1; ++v) {
            double xuv = x[pair_index(n1, u, v)];
            s[v] += xuv;
            s[u] += 1.0 - xuv;
        }
    return s;
}

}  // namespace

ordering sort_heuristic(const lp_solution& fractional, const fix_state& state) {
    vertex_t n1 = state.n1();
    assert(fractional.x.size() == n_pairs(n1));
    for (double v : fractional.x)
        if (v < -1e-9 || v > 1.0 + 1e-9)
            throw std::invalid_argument("fractional value outside [0, 1]");
    return order_by_scores(scores_from_values(fractional.x, n1));
}

solution randomized_rounding(const lp_solution& fractional, const crossing_matrix& matrix,
                             rng_seed seed, std::size_t trials) {
    vertex_t n1 = matrix.n1();
    assert(trials >= 1 && fractional.x.size() == n_pairs(n1));
    rng_t rng(seed.value);
    solution best;
    bool have = false;
    std::vector<std::uint32_t> wins(n1);
    for (std::size_t t = 0; t < trials; ++t) {
        std::fill(wins.begin(), wins.end(), 0);
        for (vertex_t u = 0; u < n1; ++u)
            for (vertex_t v = u + 1; v < n1; ++v) {
                if (bernoulli(rng, fractional.x[pair_index(n1, u, v)]))
                    ++wins[u];  // u drawn before v
                else
                    ++wins[v];
            }
        ordering perm(n1);
        std::iota(perm.begin(), perm.end(), 0);
        std::stable_sort(perm.begin(), perm.end(),
                         [&](vertex_t a, vertex_t b) { return wins[a] > wins[b]; });
        crossing_number_t cost = order_cost(matrix, perm);
        if (!have || cost < best.crossings) {
            best = {std::move(perm), cost};
            have = true;
        }
    }
    if (!have) {  // n1 == 0 with trials >= 1 still lands here with empty perm
        best.order.resize(n1);
        std::iota(best.order.begin(), best.order.end(), 0);
        best.crossings = order_cost(matrix, best.order);
    }
    return best;
}

solution shift_improve(const ordering& order, const crossing_matrix& matrix) {
    vertex_t n1 = matrix.n1();
    if (!is_permutation(order, n1))
        throw std::invalid_argument("shift_improve requires a valid permutation");
    ordering ord = order;
    std::vector<double> prefix(n1 + 1);
    bool improved = true;
    while (improved) {
        improved = false;
        for (vertex_t p = 0; p < n1; ++p) {
            vertex_t v = ord[p];
            // prefix[k] = sum over the first k positions of c[v][t] - c[t][v];
            // moving v from p to q < p costs prefix[p] - prefix[q], and to
            // q > p costs prefix[p+1] - prefix[q+1]
            prefix[0] = 0;
            for (vertex_t k = 0; k < n1; ++k) {
                vertex_t t = ord[k];
                double g = t == v ? 0.0
                                  : static_cast<double>(matrix.at(v, t)) -
                                        static_cast<double>(matrix.at(t, v));
                prefix[k + 1] = prefix[k] + g;
            }
            double best_delta = 0;
            vertex_t best_q = p;
            for (vertex_t q = 0; q < n1; ++q) {
                if (q == p) continue;
                double delta = q < p ? prefix[p] - prefix[q] : prefix[p + 1] - prefix[q + 1];
                if (delta < best_delta) {
                    best_delta = delta;
                    best_q = q;
                }
            }
            if (best_q != p) {
                ord.erase(ord.begin() + p);
                ord.insert(ord.begin() + best_q, v);
                improved = true;
            }
        }
    }
    return {ord, order_cost(matrix, ord)};
}

solution heuristic_portfolio(const instance& inst, const crossing_matrix& matrix, rng_seed seed,
                             const portfolio_config& config) {
    if (inst.n1 == 0) return {{}, 0};
    solution best = shift_improve(barycenter(inst), matrix);
    solution cand = shift_improve(median(inst), matrix);
    if (cand.crossings < best.crossings) best = cand;
    for (std::size_t r = 0; r < config.restarts; ++r) {
        rng_seed draw{mix_seed(seed.value, r)};
        cand = shift_improve(probabilistic_median(inst, draw), matrix);
        if (cand.crossings < best.crossings) best = cand;
    }
    return best;
}

}  // namespace oscm
