#include "fix_state.hpp"

#include <cassert>
#include <deque>

namespace oscm {

fix_state::fix_state(const crossing_matrix& matrix)
    : n1_(matrix.n1()),
      status_(n_pairs(matrix.n1()), pair_status::free_pair),
      free_pairs_(n_pairs(matrix.n1())) {
    residual_lb_ = pair_lower_bound(matrix);
}

bool fix_state::fixed_before(vertex_t a, vertex_t b) const {
    if (a < b) return status(a, b) == pair_status::u_before_v;
    return status(b, a) == pair_status::v_before_u;
}

fix_state::fix_result fix_state::set_before(vertex_t a, vertex_t b,
                                            const crossing_matrix& matrix) {
    assert(a != b && a < n1_ && b < n1_);
    vertex_t u = std::min(a, b), v = std::max(a, b);
    pair_status want = a < b ? pair_status::u_before_v : pair_status::v_before_u;
    pair_status& slot = status_[pair_index(n1_, u, v)];
    if (slot == want) return fix_result::already_fixed;
    if (slot != pair_status::free_pair) return fix_result::conflict;
    slot = want;
    --free_pairs_;
    fixed_cost_ += matrix.at(a, b);
    residual_lb_ -= std::min(matrix.at(u, v), matrix.at(v, u));
    return fix_result::added;
}

fix_state::close_result fix_state::transitive_close(const crossing_matrix& matrix) {
    close_result out;
    std::deque<std::pair<vertex_t, vertex_t>> work;  // directed: first before second
    for (vertex_t u = 0; u < n1_; ++u)
        for (vertex_t v = u + 1; v < n1_; ++v) {
            pair_status st = status(u, v);
            if (st == pair_status::u_before_v) work.emplace_back(u, v);
            else if (st == pair_status::v_before_u) work.emplace_back(v, u);
        }
    while (!work.empty()) {
        auto [a, b] = work.front();
        work.pop_front();
        for (vertex_t w = 0; w < n1_; ++w) {
            if (w == a || w == b) continue;
            if (fixed_before(b, w)) {  // a<b, b<w => a<w
                fix_result r = set_before(a, w, matrix);
                if (r == fix_result::conflict) return {out.added, true, {a, b, w}};
                if (r == fix_result::added) {
                    ++out.added;
                    work.emplace_back(a, w);
                }
            }
            if (fixed_before(w, a)) {  // w<a, a<b => w<b
                fix_result r = set_before(w, b, matrix);
                if (r == fix_result::conflict) return {out.added, true, {w, a, b}};
                if (r == fix_result::added) {
                    ++out.added;
                    work.emplace_back(w, b);
                }
            }
        }
    }
    return out;
}

}  // namespace oscm
