#include "instance.hpp"

#include <algorithm>
#include <istream>
#include <sstream>

namespace oscm {

bool is_permutation(const ordering& perm, vertex_t n1) {
    if (perm.size() != n1) return false;
    std::vector<bool> seen(n1, false);
    for (vertex_t v : perm) {
        if (v >= n1 || seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

void check_instance(const instance& inst) {
    if (inst.adjacency.size() != inst.n1)
        throw std::invalid_argument("adjacency size differs from n1");
    std::uint64_t edges = 0;
    for (vertex_t v = 0; v < inst.n1; ++v) {
        const auto& nb = inst.adjacency[v];
        for (std::size_t i = 0; i < nb.size(); ++i) {
            if (nb[i] < 1 || nb[i] > inst.n0)
                throw std::invalid_argument("neighbor position out of range");
            if (i > 0 && nb[i - 1] >= nb[i])
                throw std::invalid_argument("adjacency not strictly ascending");
        }
        edges += nb.size();
    }
    if (edges != inst.m) throw std::invalid_argument("edge count differs from m");
}

namespace {

// splits a line into whitespace-separated tokens
std::vector<std::string> tokens_of(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) out.push_back(tok);
    return out;
}

bool parse_u64(const std::string& tok, std::uint64_t& out) {
    if (tok.empty()) return false;
    std::uint64_t value = 0;
    for (char ch : tok) {
        if (ch < '0' || ch > '9') return false;
        if (value > (UINT64_MAX - (ch - '0')) / 10) return false;
        value = value * 10 + (ch - '0');
    }
    out = value;
    return true;
}

}  // namespace

instance parse_instance(std::istream& in) {
    instance inst;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    std::uint64_t edges_seen = 0;
    std::size_t last_line = 0;
    // per-vertex neighbor sets are collected unsorted and normalized at the end
    while (std::getline(in, line)) {
        ++line_no;
        auto toks = tokens_of(line);
        if (toks.empty()) continue;               // blank line
        if (toks[0] == "c") continue;             // comment
        if (!header_seen) {
            if (toks.size() != 5 || toks[0] != "p" || toks[1] != "ocr")
                throw parse_error(parse_error_kind::malformed_header, line_no,
                                  "expected header 'p ocr <n0> <n1> <m>'");
            std::uint64_t n0, n1, m;
            if (!parse_u64(toks[2], n0) || !parse_u64(toks[3], n1) || !parse_u64(toks[4], m))
                throw parse_error(parse_error_kind::malformed_header, line_no,
                                  "header counts must be nonnegative integers");
            if (n0 > UINT32_MAX || n1 > UINT32_MAX)
                throw parse_error(parse_error_kind::malformed_header, line_no,
                                  "layer size exceeds supported range");
            inst.n0 = static_cast<vertex_t>(n0);
            inst.n1 = static_cast<vertex_t>(n1);
            inst.m = m;
            inst.adjacency.assign(inst.n1, {});
            header_seen = true;
            continue;
        }
        std::uint64_t a, b;
        if (toks.size() != 2 || !parse_u64(toks[0], a) || !parse_u64(toks[1], b))
            throw parse_error(parse_error_kind::malformed_header, line_no,
                              "expected edge line '<a> <b>'");
        if (edges_seen == inst.m)
            throw parse_error(parse_error_kind::edge_count_mismatch, line_no,
                              "more edge lines than the declared m");
        if (a < 1 || a > inst.n0 || b <= inst.n0 || b > static_cast<std::uint64_t>(inst.n0) + inst.n1)
            throw parse_error(parse_error_kind::label_out_of_range, line_no,
                              "edge endpoints must satisfy 1 <= a <= n0 < b <= n0+n1");
        inst.adjacency[static_cast<std::size_t>(b - inst.n0 - 1)].push_back(
            static_cast<vertex_t>(a));
        ++edges_seen;
        last_line = line_no;
    }
    if (!header_seen)
        throw parse_error(parse_error_kind::malformed_header, line_no + 1, "missing header line");
    if (edges_seen != inst.m)
        throw parse_error(parse_error_kind::edge_count_mismatch, line_no + 1,
                          "fewer edge lines than the declared m");
    for (vertex_t v = 0; v < inst.n1; ++v) {
        auto& nb = inst.adjacency[v];
        std::sort(nb.begin(), nb.end());
        auto dup = std::adjacent_find(nb.begin(), nb.end());
        if (dup != nb.end())
            throw parse_error(parse_error_kind::duplicate_edge, last_line,
                              "duplicate edge (" + std::to_string(*dup) + ", " +
                                  std::to_string(inst.n0 + 1 + v) + ")");
    }
    return inst;
}

instance parse_instance(const std::string& text) {
    std::istringstream in(text);
    return parse_instance(in);
}

std::string write_solution(const instance& inst, const ordering& perm) {
    if (!is_permutation(perm, inst.n1))
        throw std::invalid_argument("ordering is not a permutation of the free layer");
    std::string out;
    for (vertex_t v : perm) {
        out += std::to_string(inst.n0 + 1 + v);
        out += '\n';
    }
    return out;
}

std::string write_instance(const instance& inst) {
    std::string out = "p ocr " + std::to_string(inst.n0) + ' ' + std::to_string(inst.n1) + ' ' +
                      std::to_string(inst.m) + '\n';
    for (vertex_t v = 0; v < inst.n1; ++v)
        for (vertex_t a : inst.adjacency[v])
            out += std::to_string(a) + ' ' + std::to_string(inst.n0 + 1 + v) + '\n';
    return out;
}

}  // namespace oscm
