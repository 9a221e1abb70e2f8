#include "lp.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace oscm {

lp_model::lp_model(const crossing_matrix& matrix, const fix_state& state)
    : n1_(matrix.n1()), constant_(0.0), solver_(n_pairs(matrix.n1())) {
    assert(state.n1() == n1_);
    for (vertex_t u = 0; u < n1_; ++u)
        for (vertex_t v = u + 1; v < n1_; ++v) {
            std::size_t col = pair_index(n1_, u, v);
            crossing_number_t cuv = matrix.at(u, v), cvu = matrix.at(v, u);
            switch (state.status(u, v)) {
                case pair_status::free_pair:
                    solver_.set_cost(col, static_cast<double>(cuv) - static_cast<double>(cvu));
                    solver_.set_col_bounds(col, 0.0, 1.0);
                    constant_ += static_cast<double>(cvu);
                    break;
                case pair_status::u_before_v:
                    solver_.set_col_bounds(col, 1.0, 1.0);
                    constant_ += static_cast<double>(cuv);
                    break;
                case pair_status::v_before_u:
                    solver_.set_col_bounds(col, 0.0, 0.0);
                    constant_ += static_cast<double>(cvu);
                    break;
            }
        }
}

void lp_model::add_triangle(vertex_t u, vertex_t v, vertex_t w) {
    assert(u < v && v < w && w < n1_);
    bool fresh = pooled_.insert(triple_key(u, v, w)).second;
    if (!fresh) return;
    solver_.add_row({{pair_index(n1_, u, v), 1.0},
                     {pair_index(n1_, v, w), 1.0},
                     {pair_index(n1_, u, w), -1.0}},
                    0.0, 1.0);
    ++cuts_added_;
}

lp_model build_lp(const crossing_matrix& matrix, const fix_state& state) {
    return lp_model(matrix, state);
}

lp_solution simplex_solve(lp_model& model) {
    ++model.lp_solves_;
    lp_solution out;
    out.status = model.solver_.solve();
    if (out.status == lp_status::optimal) {
        out.x.resize(model.n_cols());
        for (std::size_t col = 0; col < model.n_cols(); ++col)
            out.x[col] = model.solver_.col_value(col);
        out.objective_value = model.solver_.objective() + model.constant_;
    }
    return out;
}

std::vector<triangle_row> separate_triangles(const lp_model& model, const lp_solution& x,
                                             std::size_t max_cuts) {
    vertex_t n1 = model.n1();
    std::vector<triangle_row> found;
    for (vertex_t u = 0; u < n1; ++u)
        for (vertex_t v = u + 1; v < n1; ++v) {
            double xuv = x.x[pair_index(n1, u, v)];
            for (vertex_t w = v + 1; w < n1; ++w) {
                double value = xuv + x.x[pair_index(n1, v, w)] - x.x[pair_index(n1, u, w)];
                double violation = std::max(value - 1.0, -value);
                if (violation <= triangle_tol) continue;
                if (model.has_triangle(u, v, w)) {
                    // a pooled row violated beyond tolerance would mean the
                    // simplex returned an infeasible point
                    assert(violation <= 10 * triangle_tol);
                    continue;
                }
                found.push_back({u, v, w, violation});
            }
        }
    std::sort(found.begin(), found.end(), [](const triangle_row& a, const triangle_row& b) {
        if (a.violation != b.violation) return a.violation > b.violation;
        if (a.u != b.u) return a.u < b.u;
        if (a.v != b.v) return a.v < b.v;
        return a.w < b.w;
    });
    if (found.size() > max_cuts) found.resize(max_cuts);
    return found;
}

lp_solution solve_relaxation(lp_model& model) {
    vertex_t n1 = model.n1();
    std::uint64_t triples =
        n1 >= 3 ? static_cast<std::uint64_t>(n1) * (n1 - 1) * (n1 - 2) / 6 : 0;
    std::uint64_t max_rounds = 2 * triples + 2;
    for (std::uint64_t round = 0; round < max_rounds; ++round) {
        lp_solution sol = simplex_solve(model);
        if (sol.status == lp_status::infeasible) return sol;
        std::vector<triangle_row> cuts = separate_triangles(model, sol);
        if (cuts.empty()) return sol;
        for (const triangle_row& c : cuts) model.add_triangle(c.u, c.v, c.w);
    }
    throw std::logic_error("cutting loop failed to terminate: a triangle row recurred");
}

}  // namespace oscm
