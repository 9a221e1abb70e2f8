#include "crossings.hpp"

#include <cassert>

namespace oscm {

pair_counts pair_crossings(const instance& inst, vertex_t u, vertex_t v) {
    if (u == v) throw std::invalid_argument("pair_crossings requires two distinct vertices");
    const auto& nu = inst.adjacency[u];
    const auto& nv = inst.adjacency[v];
    pair_counts out;
    // single pass over N(u); j tracks how many of N(v) lie strictly below a
    std::size_t j = 0;
    for (vertex_t a : nu) {
        while (j < nv.size() && nv[j] < a) ++j;
        bool eq = j < nv.size() && nv[j] == a;
        out.c_uv += j;                          // b < a: u's edge crosses when u is left
        out.shared += eq;
        out.c_vu += nv.size() - j - (eq ? 1 : 0);  // b > a
    }
    assert(out.c_uv + out.c_vu + out.shared ==
           static_cast<crossing_number_t>(nu.size()) * nv.size());
    return out;
}

crossing_matrix build_crossing_matrix(const instance& inst) {
    crossing_matrix m(inst.n1);
    for (vertex_t u = 0; u < inst.n1; ++u)
        for (vertex_t v = u + 1; v < inst.n1; ++v) {
            pair_counts pc = pair_crossings(inst, u, v);
            m.at(u, v) = pc.c_uv;
            m.at(v, u) = pc.c_vu;
        }
    return m;
}

namespace {

// binary-indexed accumulator over A-positions 1..n0
class position_counter {
public:
    explicit position_counter(vertex_t n0) : tree_(n0 + 1, 0) {}

    void insert(vertex_t pos) {
        for (std::size_t i = pos; i < tree_.size(); i += i & (0 - i)) ++tree_[i];
    }

    std::uint64_t count_at_most(vertex_t pos) const {
        std::uint64_t s = 0;
        for (std::size_t i = pos; i > 0; i -= i & (0 - i)) s += tree_[i];
        return s;
    }

private:
    std::vector<std::uint64_t> tree_;
};

}  // namespace

crossing_number_t count_crossings(const instance& inst, const ordering& perm) {
    if (!is_permutation(perm, inst.n1))
        throw std::invalid_argument("count_crossings requires a valid permutation");
    position_counter seen(inst.n0);
    crossing_number_t total = 0;
    std::uint64_t inserted = 0;
    for (vertex_t v : perm) {
        // edges of earlier vertices cross (a', a) exactly when a' > a; edges of
        // v itself never cross each other, so count before inserting
        for (vertex_t a : inst.adjacency[v]) total += inserted - seen.count_at_most(a);
        for (vertex_t a : inst.adjacency[v]) seen.insert(a);
        inserted += inst.adjacency[v].size();
    }
    return total;
}

crossing_number_t order_cost(const crossing_matrix& matrix, const ordering& perm) {
    if (!is_permutation(perm, matrix.n1()))
        throw std::invalid_argument("order_cost requires a valid permutation");
    crossing_number_t total = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = i + 1; j < perm.size(); ++j) total += matrix.at(perm[i], perm[j]);
    return total;
}

crossing_number_t pair_lower_bound(const crossing_matrix& matrix) {
    crossing_number_t lb = 0;
    for (vertex_t u = 0; u < matrix.n1(); ++u)
        for (vertex_t v = u + 1; v < matrix.n1(); ++v)
            lb += std::min(matrix.at(u, v), matrix.at(v, u));
    return lb;
}

}  // namespace oscm
