#ifndef OSCM_ORACLE_HPP
#define OSCM_ORACLE_HPP

#include "crossings.hpp"
#include "instance.hpp"

namespace oscm {

// forward declaration; defined in fix_state.hpp
class fix_state;

struct gen_spec {
    vertex_t n0 = 0;
    vertex_t n1 = 0;
    double density = 0.5;  // independent edge probability per (a, b) pair
    rng_seed seed;
    bool guarantee_no_isolated = false;
};

inline constexpr vertex_t brute_force_limit = 10;

// exact minimum over all n1! orderings; ties resolved to the
// lexicographically smallest permutation; guarded to n1 <= 10
solution brute_force_opt(const instance& inst);

// same search restricted to orderings consistent with the fixed pairs;
// used by reduction-soundness checks
solution brute_force_opt_restricted(const crossing_matrix& matrix, const fix_state& state);

instance generate(const gen_spec& spec);

}  // namespace oscm

#endif
