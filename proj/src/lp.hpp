#ifndef OSCM_LP_HPP
#define OSCM_LP_HPP

#include <unordered_set>
#include <vector>

#include "crossings.hpp"
#include "fix_state.hpp"
#include "simplex.hpp"

namespace oscm {

struct lp_solution {
    lp_status status = lp_status::optimal;
    std::vector<double> x;        // one value per pair column, pair_index order
    double objective_value = 0;   // includes the constant term
};

// linear relaxation of the ordering program: one column x_{u,v} per pair
// u < v (free pairs bounded [0,1] with objective c_uv - c_vu; pairs fixed by
// the reduction are pinned columns with their direction cost absorbed into
// the constant), plus a growing pool of lazily separated triangle rows
// 0 <= x_uv + x_vw - x_uw <= 1
class lp_model {
public:
    lp_model(const crossing_matrix& matrix, const fix_state& state);

    vertex_t n1() const { return n1_; }
    std::size_t n_cols() const { return solver_.n_cols(); }
    double constant_term() const { return constant_; }

    simplex_solver& solver() { return solver_; }
    const simplex_solver& solver() const { return solver_; }

    // branching support: pin a pair column to 0/1 and restore it later
    void set_column_bounds(std::size_t col, double lo, double up) {
        solver_.set_col_bounds(col, lo, up);
    }
    double column_lower(std::size_t col) const { return solver_.col_lower(col); }
    double column_upper(std::size_t col) const { return solver_.col_upper(col); }
    bool column_pinned(std::size_t col) const {
        return solver_.col_lower(col) == solver_.col_upper(col);
    }

    bool has_triangle(vertex_t u, vertex_t v, vertex_t w) const {  // u < v < w
        return pooled_.count(triple_key(u, v, w)) > 0;
    }
    void add_triangle(vertex_t u, vertex_t v, vertex_t w);

    std::uint64_t cuts_added() const { return cuts_added_; }
    std::uint64_t lp_solves() const { return lp_solves_; }

    friend lp_solution simplex_solve(lp_model& model);

private:
    std::uint64_t triple_key(vertex_t u, vertex_t v, vertex_t w) const {
        return (static_cast<std::uint64_t>(u) * n1_ + v) * n1_ + w;
    }

    vertex_t n1_;
    double constant_;
    simplex_solver solver_;
    std::unordered_set<std::uint64_t> pooled_;
    std::uint64_t cuts_added_ = 0;
    std::uint64_t lp_solves_ = 0;
};

lp_model build_lp(const crossing_matrix& matrix, const fix_state& state);

// one dual-simplex run over the current rows; warm-starts from the basis
// left by the previous call
lp_solution simplex_solve(lp_model& model);

struct triangle_row {
    vertex_t u, v, w;  // u < v < w
    double violation;  // amount beyond [0 - tol, 1 + tol]
};

inline constexpr std::size_t default_max_cuts = 500;
inline constexpr double triangle_tol = 1e-6;

// scans all ordered triples and returns the most violated rows not yet in
// the pool, at most max_cuts; empty iff every triangle constraint holds
// within tolerance
std::vector<triangle_row> separate_triangles(const lp_model& model, const lp_solution& x,
                                             std::size_t max_cuts = default_max_cuts);

// alternates simplex_solve and separate_triangles until no violation remains
// (or the model proves infeasible under the current column bounds)
lp_solution solve_relaxation(lp_model& model);

}  // namespace oscm

#endif
