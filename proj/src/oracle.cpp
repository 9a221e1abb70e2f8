#include "oracle.hpp"

#include <algorithm>
#include <limits>

#include "fix_state.hpp"

namespace oscm {

namespace {

struct brute_force_search {
    const crossing_matrix& matrix;
    const fix_state* state;  // optional restriction
    vertex_t n1;
    crossing_number_t best_cost = std::numeric_limits<crossing_number_t>::max();
    ordering best, current;
    std::vector<bool> used;

    brute_force_search(const crossing_matrix& m, const fix_state* s)
        : matrix(m), state(s), n1(m.n1()), used(m.n1(), false) {
        current.reserve(n1);
    }

    bool eligible(vertex_t v) const {
        if (!state) return true;
        for (vertex_t u = 0; u < n1; ++u)
            if (u != v && !used[u] && state->fixed_before(u, v)) return false;
        return true;
    }

    // depth-first in ascending vertex order: the first minimum reached is the
    // lexicographically smallest, so pruning on >= keeps the tie-break exact
    void recurse(crossing_number_t cost) {
        if (cost >= best_cost) return;
        if (current.size() == n1) {
            best_cost = cost;
            best = current;
            return;
        }
        for (vertex_t v = 0; v < n1; ++v) {
            if (used[v] || !eligible(v)) continue;
            crossing_number_t delta = 0;
            for (vertex_t u : current) delta += matrix.at(u, v);
            used[v] = true;
            current.push_back(v);
            recurse(cost + delta);
            current.pop_back();
            used[v] = false;
        }
    }

    solution run() {
        recurse(0);
        return {best, best_cost == std::numeric_limits<crossing_number_t>::max() ? 0 : best_cost};
    }
};

}  // namespace

solution brute_force_opt(const instance& inst) {
    if (inst.n1 > brute_force_limit)
        throw std::invalid_argument("brute_force_opt limited to n1 <= 10");
    if (inst.n1 == 0) return {{}, 0};
    crossing_matrix matrix = build_crossing_matrix(inst);
    brute_force_search search(matrix, nullptr);
    return search.run();
}

solution brute_force_opt_restricted(const crossing_matrix& matrix, const fix_state& state) {
    if (matrix.n1() > brute_force_limit)
        throw std::invalid_argument("brute_force_opt_restricted limited to n1 <= 10");
    if (matrix.n1() == 0) return {{}, 0};
    brute_force_search search(matrix, &state);
    return search.run();
}

instance generate(const gen_spec& spec) {
    instance inst;
    inst.n0 = spec.n0;
    inst.n1 = spec.n1;
    inst.adjacency.assign(spec.n1, {});
    rng_t rng(spec.seed.value);
    for (vertex_t v = 0; v < spec.n1; ++v)
        for (vertex_t a = 1; a <= spec.n0; ++a)
            if (bernoulli(rng, spec.density)) inst.adjacency[v].push_back(a);
    if (spec.guarantee_no_isolated && spec.n0 > 0)
        for (vertex_t v = 0; v < spec.n1; ++v)
            if (inst.adjacency[v].empty()) {
                vertex_t a = static_cast<vertex_t>(uniform01(rng) * spec.n0) + 1;
                inst.adjacency[v].push_back(std::min(a, spec.n0));
            }
    for (vertex_t v = 0; v < spec.n1; ++v) inst.m += inst.adjacency[v].size();
    return inst;
}

}  // namespace oscm
