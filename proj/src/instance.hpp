#ifndef OSCM_INSTANCE_HPP
#define OSCM_INSTANCE_HPP

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "pairs.hpp"

namespace oscm {

// bipartite instance: layer A occupies positions 1..n0 in fixed order, the
// free layer B has public labels n0+1..n0+n1 but is stored 0-based; each
// free vertex carries its A-neighbor positions sorted ascending
struct instance {
    vertex_t n0 = 0;
    vertex_t n1 = 0;
    std::vector<std::vector<vertex_t>> adjacency;  // size n1, entries in [1, n0]
    std::uint64_t m = 0;

    vertex_t degree(vertex_t v) const { return static_cast<vertex_t>(adjacency[v].size()); }
};

// permutation of {0, ..., n1-1}; perm[i] = free vertex at position i (leftmost first)
using ordering = std::vector<vertex_t>;

struct solution {
    ordering order;
    crossing_number_t crossings = 0;
};

enum class parse_error_kind {
    malformed_header,
    label_out_of_range,
    edge_count_mismatch,
    duplicate_edge,
};

class parse_error : public std::runtime_error {
public:
    parse_error(parse_error_kind kind, std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what),
          kind_(kind),
          line_(line) {}

    parse_error_kind kind() const { return kind_; }
    std::size_t line() const { return line_; }

private:
    parse_error_kind kind_;
    std::size_t line_;
};

bool is_permutation(const ordering& perm, vertex_t n1);

// PACE OCM input: comment lines `c ...` anywhere, one header `p ocr n0 n1 m`,
// then m edge lines `a b` with 1 <= a <= n0 < b <= n0+n1
instance parse_instance(std::istream& in);
instance parse_instance(const std::string& text);

// PACE OCM output: one free-vertex label per line, top line = leftmost
std::string write_solution(const instance& inst, const ordering& perm);

// inverse of parse_instance, used by round-trip tests and the generator CLI path
std::string write_instance(const instance& inst);

void check_instance(const instance& inst);  // throws std::invalid_argument on broken invariants

}  // namespace oscm

#endif
