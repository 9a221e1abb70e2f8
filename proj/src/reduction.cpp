#include "reduction.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <stdexcept>

namespace oscm {

ordering split_result::assemble(const std::vector<ordering>& part_orders) const {
    assert(part_orders.size() == parts.size());
    ordering full(isolated.begin(), isolated.end());
    for (std::size_t p = 0; p < parts.size(); ++p) {
        assert(part_orders[p].size() == members[p].size());
        for (vertex_t local : part_orders[p]) full.push_back(members[p][local]);
    }
    return full;
}

std::pair<instance, std::vector<vertex_t>> extract_isolated(const instance& inst) {
    instance core;
    core.n0 = inst.n0;
    std::vector<vertex_t> isolated;
    for (vertex_t v = 0; v < inst.n1; ++v) {
        if (inst.adjacency[v].empty()) {
            isolated.push_back(v);
        } else {
            core.adjacency.push_back(inst.adjacency[v]);
            core.m += inst.adjacency[v].size();
        }
    }
    core.n1 = static_cast<vertex_t>(core.adjacency.size());
    return {std::move(core), std::move(isolated)};
}

split_result split_instance(const instance& inst) {
    split_result out;
    if (inst.n1 == 0) return out;
    for (vertex_t v = 0; v < inst.n1; ++v)
        if (inst.adjacency[v].empty())
            throw std::invalid_argument("split_instance requires no isolated vertices");
    std::vector<vertex_t> order(inst.n1);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](vertex_t a, vertex_t b) {
        if (inst.adjacency[a].front() != inst.adjacency[b].front())
            return inst.adjacency[a].front() < inst.adjacency[b].front();
        return a < b;
    });
    // sweep ascending by l_v; a strict jump of l past the covered range cuts
    vertex_t max_r = 0;
    std::vector<std::vector<vertex_t>> groups;
    for (vertex_t v : order) {
        vertex_t l = inst.adjacency[v].front(), r = inst.adjacency[v].back();
        if (groups.empty() || l > max_r) groups.emplace_back();
        groups.back().push_back(v);
        max_r = std::max(max_r, r);
    }
    for (auto& g : groups) {
        std::sort(g.begin(), g.end());
        instance part;
        part.n0 = inst.n0;
        part.n1 = static_cast<vertex_t>(g.size());
        for (vertex_t v : g) {
            part.adjacency.push_back(inst.adjacency[v]);
            part.m += inst.adjacency[v].size();
        }
        out.parts.push_back(std::move(part));
        out.members.push_back(std::move(g));
    }
    return out;
}

namespace {

void apply_fix(fix_state& state, vertex_t first, vertex_t second, const crossing_matrix& matrix) {
    fix_state::fix_result r = state.set_before(first, second, matrix);
    if (r == fix_state::fix_result::conflict)
        throw std::logic_error("reduction rule contradicts an existing fix");
}

}  // namespace

std::size_t fix_zero_pairs(const crossing_matrix& matrix, fix_state& state) {
    std::size_t fixed = 0;
    for (vertex_t u = 0; u < matrix.n1(); ++u)
        for (vertex_t v = u + 1; v < matrix.n1(); ++v) {
            if (state.is_fixed(u, v)) continue;
            crossing_number_t cuv = matrix.at(u, v), cvu = matrix.at(v, u);
            if (cuv == 0 && cvu > 0) {
                apply_fix(state, u, v, matrix);
                ++fixed;
            } else if (cvu == 0 && cuv > 0) {
                apply_fix(state, v, u, matrix);
                ++fixed;
            }
        }
    return fixed;
}

std::size_t dominance_fix(const instance& inst, const crossing_matrix& matrix, fix_state& state) {
    std::size_t fixed = 0;
    // sorted equal-degree lists dominate elementwise iff every prefix count
    // dominates, which is the probe-edge condition over all gaps
    auto dominates = [&](vertex_t a, vertex_t b) {
        const auto& na = inst.adjacency[a];
        const auto& nb = inst.adjacency[b];
        for (std::size_t k = 0; k < na.size(); ++k)
            if (na[k] > nb[k]) return false;
        return true;
    };
    for (vertex_t u = 0; u < matrix.n1(); ++u)
        for (vertex_t v = u + 1; v < matrix.n1(); ++v) {
            if (state.is_fixed(u, v) || inst.degree(u) != inst.degree(v)) continue;
            crossing_number_t cuv = matrix.at(u, v), cvu = matrix.at(v, u);
            if (cuv < cvu && dominates(u, v)) {
                apply_fix(state, u, v, matrix);
                ++fixed;
            } else if (cvu < cuv && dominates(v, u)) {
                apply_fix(state, v, u, matrix);
                ++fixed;
            }
        }
    return fixed;
}

std::size_t bound_fix(const crossing_matrix& matrix, fix_state& state, crossing_number_t ub) {
    crossing_number_t lb = state.lower_bound();
    if (ub < lb)
        throw std::logic_error(
            "bound rule with ub < lb: both directions prunable, incumbent already optimal");
    crossing_number_t gap = ub - lb;
    std::size_t fixed = 0;
    // fixing the cheap direction leaves fixed_cost + residual_lb unchanged,
    // so the gap snapshot stays valid across the scan
    for (vertex_t u = 0; u < matrix.n1(); ++u)
        for (vertex_t v = u + 1; v < matrix.n1(); ++v) {
            if (state.is_fixed(u, v)) continue;
            crossing_number_t cuv = matrix.at(u, v), cvu = matrix.at(v, u);
            if (cuv == cvu) continue;  // increment zero both ways
            crossing_number_t increment = std::max(cuv, cvu) - std::min(cuv, cvu);
            if (increment < gap) continue;
            if (cuv < cvu)
                apply_fix(state, u, v, matrix);
            else
                apply_fix(state, v, u, matrix);
            ++fixed;
        }
    return fixed;
}

reduce_result reduce(const instance& inst, const crossing_matrix& matrix, crossing_number_t ub) {
    reduce_result out{fix_state(matrix), {}, {}};
    auto [core, isolated] = extract_isolated(inst);
    out.counts.isolated = isolated.size();

    split_result core_split = split_instance(core);
    // map part members from core indices back to original indices
    std::vector<vertex_t> core_to_orig;
    for (vertex_t v = 0; v < inst.n1; ++v)
        if (!inst.adjacency[v].empty()) core_to_orig.push_back(v);
    out.split.parts = std::move(core_split.parts);
    out.split.isolated = std::move(isolated);
    out.split.prefix_isolated = static_cast<vertex_t>(out.split.isolated.size());
    for (auto& group : core_split.members) {
        for (vertex_t& v : group) v = core_to_orig[v];
        out.split.members.push_back(std::move(group));
    }
    out.counts.parts = out.split.parts.size();

    // vertices of an earlier part precede all of a later part; the crossing
    // count of that direction is zero because their A-ranges do not overlap
    for (std::size_t p = 0; p < out.split.members.size(); ++p)
        for (std::size_t q = p + 1; q < out.split.members.size(); ++q)
            for (vertex_t u : out.split.members[p])
                for (vertex_t v : out.split.members[q]) {
                    assert(matrix.at(u, v) == 0);
                    apply_fix(out.state, u, v, matrix);
                }

    while (true) {
        std::size_t z = fix_zero_pairs(matrix, out.state);
        std::size_t d = dominance_fix(inst, matrix, out.state);
        std::size_t b = bound_fix(matrix, out.state, ub);
        fix_state::close_result cl = out.state.transitive_close(matrix);
        out.counts.zero += z;
        out.counts.dominance += d;
        out.counts.bound += b;
        out.counts.transitive += cl.added;
        // a directed cycle, or closure-forced expensive fixes driving the
        // bound past ub, both mean no ordering beats the incumbent
        if (cl.conflict || out.state.lower_bound() > ub) {
            out.conflict = true;
            return out;
        }
        if (z + d + b + cl.added == 0) break;
    }
    return out;
}

}  // namespace oscm
