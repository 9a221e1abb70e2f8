#ifndef OSCM_TEST_FIXTURES_HPP
#define OSCM_TEST_FIXTURES_HPP

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "crossings.hpp"
#include "instance.hpp"
#include "pairs.hpp"

namespace oscm::testfix {

// two free vertices u (N={1,3,4}) and v (N={2,3,4}); crossing matrix
// [[0,3],[4,0]], optimum 3 via (u,v)
inline const char* const fig1_text = "p ocr 4 2 6\n1 5\n3 5\n4 5\n2 6\n3 6\n4 6\n";

// N(b0)={1}, N(b1)={2}: matrix [[0,0],[1,0]], optimum 0 via identity
inline const char* const swap2_text = "p ocr 2 2 2\n1 3\n2 4\n";

// three free vertices whose pairwise-min orientation is the directed cycle
// u<v, v<w, w<u; pair bound 8, optimum 9 — the relaxation needs one cut
inline const char* const cyclic3_text =
    "p ocr 6 3 8\n3 7\n4 7\n1 8\n4 8\n5 8\n2 9\n3 9\n6 9\n";

inline instance fig1() { return parse_instance(std::string(fig1_text)); }
inline instance swap2() { return parse_instance(std::string(swap2_text)); }
inline instance cyclic3() { return parse_instance(std::string(cyclic3_text)); }

inline instance from_neighbors(vertex_t n0, std::vector<std::vector<vertex_t>> adjacency) {
    instance inst;
    inst.n0 = n0;
    inst.n1 = static_cast<vertex_t>(adjacency.size());
    inst.adjacency = std::move(adjacency);
    inst.m = 0;
    for (auto& list : inst.adjacency) {
        std::sort(list.begin(), list.end());
        inst.m += list.size();
    }
    return inst;
}

inline ordering identity_order(vertex_t n1) {
    ordering out(n1);
    std::iota(out.begin(), out.end(), vertex_t{0});
    return out;
}

// true iff moving any single vertex to any other position strictly lowers the
// cost; used to certify shift fixed points
inline bool reinsertion_improves(const crossing_matrix& matrix, const ordering& order) {
    const crossing_number_t base = order_cost(matrix, order);
    for (std::size_t from = 0; from < order.size(); ++from)
        for (std::size_t to = 0; to < order.size(); ++to) {
            if (from == to) continue;
            ordering moved = order;
            const vertex_t v = moved[from];
            moved.erase(moved.begin() + static_cast<std::ptrdiff_t>(from));
            moved.insert(moved.begin() + static_cast<std::ptrdiff_t>(to), v);
            if (order_cost(matrix, moved) < base) return true;
        }
    return false;
}

}  // namespace oscm::testfix

#endif
