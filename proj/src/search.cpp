#include "search.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cmath>
#include <memory>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <utility>

namespace oscm {

namespace {

using clock_type = std::chrono::steady_clock;

// dense pair structures (crossing matrix, LP columns) stay tractable only for
// moderate free layers; beyond these caps the pipeline degrades gracefully to
// matrix-free heuristics so that directory benchmarks never abort
constexpr vertex_t dense_vertex_cap = 4096;
constexpr std::size_t lp_pair_cap = 2'000'000;

constexpr std::uint64_t rounding_period = 16;  // nodes between rounding passes

struct search_limits {
    std::optional<clock_type::time_point> deadline;
    std::uint64_t node_budget = 0;  // 0: unlimited
};

bool past_deadline(const search_limits& limits) {
    return limits.deadline && clock_type::now() >= *limits.deadline;
}

struct search_counters {
    std::uint64_t nodes = 0;
    std::uint64_t cuts = 0;
    std::uint64_t lp_solves = 0;
    std::size_t refix_bound = 0;       // bound-rule fires from incumbent updates
    std::size_t refix_transitive = 0;  // closure fires from incumbent updates
};

crossing_number_t ceil_bound(double objective) {
    return static_cast<crossing_number_t>(std::max(0.0, std::ceil(objective - 1e-6)));
}

bool is_integral(const lp_solution& sol) {
    for (double v : sol.x)
        if (std::abs(v - std::round(v)) > 1e-6) return false;
    return true;
}

// unique total order encoded by a fully fixed state: predecessor counts are a
// permutation of 0..n1-1 exactly when the relation is total and acyclic
ordering order_from_state(const fix_state& state) {
    assert(state.free_pairs() == 0);
    const vertex_t n1 = state.n1();
    std::vector<vertex_t> before(n1, 0);
    std::size_t idx = 0;
    for (vertex_t u = 0; u < n1; ++u)
        for (vertex_t v = u + 1; v < n1; ++v, ++idx)
            ++before[state.status_at(idx) == pair_status::u_before_v ? v : u];
    ordering out(n1);
    std::vector<char> seen(n1, 0);
    for (vertex_t v = 0; v < n1; ++v) {
        if (before[v] >= n1 || seen[before[v]])
            throw std::logic_error("order_from_state: relation is not a total order");
        seen[before[v]] = 1;
        out[before[v]] = v;
    }
    return out;
}

struct core_result {
    solution best;
    bool proven = false;
    crossing_number_t bound = 0;  // valid lower bound; equals best when proven
};

solution rins_impl(const lp_solution& frac, const solution& incumbent,
                   const crossing_matrix& matrix, const solver_config& cfg,
                   const search_limits& limits, search_counters& counters);

// depth-first branch and bound over one pair-complete component: every node
// solves the cut-strengthened relaxation, integral optima update the
// incumbent, fractional ones feed rounding heuristics and pick the branching
// pair; incumbent improvements re-run the bound rule at the root so the whole
// remaining tree tightens at once
class search_core {
public:
    search_core(const crossing_matrix& matrix, fix_state state, solution incumbent,
                const solver_config& cfg, bool enable_rins, const search_limits& limits,
                search_counters& counters)
        : matrix_(matrix),
          state_(std::move(state)),
          incumbent_(std::move(incumbent)),
          cfg_(cfg),
          enable_rins_(enable_rins),
          limits_(limits),
          counters_(counters),
          n1_(matrix.n1()),
          nodes_at_entry_(counters.nodes) {
        assert(is_permutation(incumbent_.order, n1_));
        refresh_positions();
    }

    core_result run();

private:
    struct trail_entry {
        std::size_t col;
        int first_dir;                // child explored first (incumbent side)
        int stage;                    // 0: first child open, 1: second child open/done
        crossing_number_t node_bound; // relaxation bound of the branched node
    };

    bool stopped() const {
        if (limits_.node_budget && counters_.nodes - nodes_at_entry_ >= limits_.node_budget)
            return true;
        return past_deadline(limits_);
    }

    void refresh_positions() {
        positions_.assign(n1_, 0);
        for (vertex_t i = 0; i < n1_; ++i) positions_[incumbent_.order[i]] = i;
    }

    // bound-rule re-run at the root after an incumbent improvement: the new
    // fixes hold for every ordering cheaper than the incumbent, so they apply
    // to all open subtrees; columns currently pinned by the trail keep their
    // branch bounds and pick the root pin up on restore
    void refix_root() {
        if (state_.lower_bound() >= incumbent_.crossings) {
            proven_conflict_ = true;  // every consistent ordering costs at least ub
            return;
        }
        counters_.refix_bound += bound_fix(matrix_, state_, incumbent_.crossings);
        const auto closed = state_.transitive_close(matrix_);
        counters_.refix_transitive += closed.added;
        if (closed.conflict || state_.lower_bound() >= incumbent_.crossings) {
            proven_conflict_ = true;  // nothing beats the incumbent anywhere
            return;
        }
        if (!model_) return;
        for (std::size_t col = 0; col < root_lower_.size(); ++col) {
            if (root_lower_[col] == root_upper_[col]) continue;
            const pair_status st = state_.status_at(col);
            if (st == pair_status::free_pair) continue;
            const double v = st == pair_status::u_before_v ? 1.0 : 0.0;
            root_lower_[col] = v;
            root_upper_[col] = v;
            if (!on_trail_[col]) model_->set_column_bounds(col, v, v);
        }
    }

    void try_rins(const lp_solution& frac) {
        if (!enable_rins_ || rins_active_ || proven_conflict_) return;
        rins_active_ = true;
        search_limits sub = limits_;
        sub.node_budget = cfg_.rins_node_budget;
        solution found = rins_impl(frac, incumbent_, matrix_, cfg_, sub, counters_);
        rins_active_ = false;
        if (found.crossings < incumbent_.crossings) {
            incumbent_ = std::move(found);
            refresh_positions();
            refix_root();
        }
    }

    void maybe_incumbent(solution cand, const lp_solution* frac) {
        if (cand.crossings >= incumbent_.crossings) return;
        assert(is_permutation(cand.order, n1_));
        incumbent_ = std::move(cand);
        refresh_positions();
        refix_root();
        if (frac && !proven_conflict_) try_rins(*frac);
    }

    const crossing_matrix& matrix_;
    fix_state state_;
    solution incumbent_;
    const solver_config& cfg_;
    bool enable_rins_;
    search_limits limits_;
    search_counters& counters_;
    vertex_t n1_;
    std::uint64_t nodes_at_entry_;

    std::unique_ptr<lp_model> model_;
    std::vector<double> root_lower_, root_upper_;
    std::vector<char> on_trail_;
    std::vector<trail_entry> trail_;
    std::vector<vertex_t> positions_;
    crossing_number_t root_bound_ = 0;
    bool proven_conflict_ = false;
    bool rins_active_ = false;
};

core_result search_core::run() {
    if (state_.lower_bound() >= incumbent_.crossings)
        return {incumbent_, true, incumbent_.crossings};
    if (state_.free_pairs() == 0) {
        ordering ord = order_from_state(state_);
        crossing_number_t cost = order_cost(matrix_, ord);
        if (cost < incumbent_.crossings) incumbent_ = {std::move(ord), cost};
        return {incumbent_, true, incumbent_.crossings};
    }
    root_bound_ = state_.lower_bound();
    if (stopped()) return {incumbent_, false, std::min(incumbent_.crossings, root_bound_)};

    model_ = std::make_unique<lp_model>(matrix_, state_);
    const std::size_t cols = model_->n_cols();
    root_lower_.resize(cols);
    root_upper_.resize(cols);
    for (std::size_t col = 0; col < cols; ++col) {
        root_lower_[col] = model_->column_lower(col);
        root_upper_[col] = model_->column_upper(col);
    }
    on_trail_.assign(cols, 0);

    bool timeout = false;
    while (!proven_conflict_) {
        if (stopped()) {
            timeout = true;
            break;
        }
        ++counters_.nodes;
        const std::uint64_t node_id = counters_.nodes;
        lp_solution sol = solve_relaxation(*model_);

        bool prune = false;
        crossing_number_t node_bound = incumbent_.crossings;
        if (sol.status == lp_status::infeasible) {
            prune = true;
        } else {
            node_bound = ceil_bound(sol.objective_value);
            if (trail_.empty()) root_bound_ = node_bound;
            if (node_bound >= incumbent_.crossings) prune = true;
        }
        if (!prune && is_integral(sol)) {
            ordering ord = decode_integral(sol, state_);
            crossing_number_t cost = order_cost(matrix_, ord);
            maybe_incumbent({std::move(ord), cost}, &sol);
            prune = true;
        }
        if (!prune) {
            maybe_incumbent(shift_improve(sort_heuristic(sol, state_), matrix_), &sol);
            if (node_id % rounding_period == 0)
                maybe_incumbent(randomized_rounding(sol, matrix_,
                                                    rng_seed{mix_seed(cfg_.seed, node_id)},
                                                    cfg_.rr_trials),
                                &sol);
            if (node_id == nodes_at_entry_ + 1) try_rins(sol);
            if (proven_conflict_) break;
            if (node_bound >= incumbent_.crossings) prune = true;
        }
        if (!prune) {
            const std::size_t col = choose_branch_variable(sol);
            const auto [u, v] = pair_from_index(n1_, col);
            const int dir = positions_[u] < positions_[v] ? 1 : 0;
            trail_.push_back({col, dir, 0, node_bound});
            on_trail_[col] = 1;
            model_->set_column_bounds(col, dir, dir);
            continue;
        }
        bool descended = false;
        while (!trail_.empty()) {
            trail_entry& top = trail_.back();
            if (top.stage == 0) {
                top.stage = 1;
                const double opp = 1.0 - top.first_dir;
                if (root_lower_[top.col] <= opp && opp <= root_upper_[top.col]) {
                    model_->set_column_bounds(top.col, opp, opp);
                    descended = true;
                    break;
                }
                // root pin acquired since branching rules the sibling out
            }
            model_->set_column_bounds(top.col, root_lower_[top.col], root_upper_[top.col]);
            on_trail_[top.col] = 0;
            trail_.pop_back();
        }
        if (!descended) break;  // tree exhausted
    }

    counters_.cuts += model_->cuts_added();
    counters_.lp_solves += model_->lp_solves();

    if (!timeout)  // exhausted the tree or proved the incumbent by conflict
        return {incumbent_, true, incumbent_.crossings};
    crossing_number_t open = std::min(incumbent_.crossings, root_bound_);
    for (const trail_entry& entry : trail_) open = std::min(open, entry.node_bound);
    return {incumbent_, false, open};
}

// fix every pair where the relaxation is integral and agrees with the
// incumbent, then search the rest; disagreeing or fractional pairs stay free
solution rins_impl(const lp_solution& frac, const solution& incumbent,
                   const crossing_matrix& matrix, const solver_config& cfg,
                   const search_limits& limits, search_counters& counters) {
    const vertex_t n1 = matrix.n1();
    std::vector<vertex_t> pos(n1);
    for (vertex_t i = 0; i < n1; ++i) pos[incumbent.order[i]] = i;

    fix_state state(matrix);
    std::size_t idx = 0;
    for (vertex_t u = 0; u < n1; ++u)
        for (vertex_t v = u + 1; v < n1; ++v, ++idx) {
            const double val = frac.x[idx];
            const bool inc_uv = pos[u] < pos[v];
            fix_state::fix_result res = fix_state::fix_result::already_fixed;
            if (val >= 1.0 - 1e-6 && inc_uv)
                res = state.set_before(u, v, matrix);
            else if (val <= 1e-6 && !inc_uv)
                res = state.set_before(v, u, matrix);
            assert(res != fix_state::fix_result::conflict);
            (void)res;
        }
    if (state.transitive_close(matrix).conflict) return incumbent;
    if (state.free_pairs() == 0) return incumbent;  // relaxation mirrors the incumbent

    search_core sub(matrix, std::move(state), incumbent, cfg, /*enable_rins=*/false, limits,
                    counters);
    return sub.run().best;
}

solution local_search_impl(const ordering& order, const crossing_matrix& matrix, vertex_t w,
                           const solver_config& cfg, const search_limits& limits,
                           search_counters& counters) {
    const vertex_t n1 = matrix.n1();
    std::vector<vertex_t> pos(n1);
    for (vertex_t i = 0; i < n1; ++i) pos[order[i]] = i;

    fix_state state(matrix);
    for (vertex_t u = 0; u < n1; ++u)
        for (vertex_t v = u + 1; v < n1; ++v) {
            const vertex_t gap = pos[u] < pos[v] ? pos[v] - pos[u] : pos[u] - pos[v];
            if (gap < w) continue;
            if (pos[u] < pos[v])
                state.set_before(u, v, matrix);
            else
                state.set_before(v, u, matrix);
        }
    const auto closed = state.transitive_close(matrix);
    assert(!closed.conflict);  // all fixes embed in `order`
    (void)closed;

    solution seed{order, order_cost(matrix, order)};
    if (state.free_pairs() == 0) return seed;
    search_core sub(matrix, std::move(state), std::move(seed), cfg, /*enable_rins=*/false,
                    limits, counters);
    core_result res = sub.run();
    return res.best;
}

// matrix-free fallback for free layers too large for dense pair structures
solution sparse_portfolio(const instance& core, const solver_config& cfg,
                          const search_limits& limits) {
    solution best{barycenter(core), 0};
    best.crossings = count_crossings(core, best.order);
    const auto consider = [&](ordering ord) {
        const crossing_number_t cost = count_crossings(core, ord);
        if (cost < best.crossings) best = {std::move(ord), cost};
    };
    consider(median(core));
    for (std::size_t r = 0; r < cfg.restarts && !past_deadline(limits); ++r)
        consider(probabilistic_median(core, rng_seed{mix_seed(cfg.seed, r)}));
    return best;
}

search_limits limits_from(const solver_config& config, clock_type::time_point t0) {
    search_limits limits;
    if (config.time_limit_s > 0)
        limits.deadline = t0 + std::chrono::duration_cast<clock_type::duration>(
                                   std::chrono::duration<double>(config.time_limit_s));
    return limits;
}

double elapsed_ms(clock_type::time_point t0) {
    return std::chrono::duration<double, std::milli>(clock_type::now() - t0).count();
}

// isolated prefix + core ordering mapped back to original labels
ordering lift_core_order(vertex_t n1, const std::vector<vertex_t>& isolated,
                         const ordering& core_order) {
    std::vector<vertex_t> core_to_orig;
    core_to_orig.reserve(n1 - isolated.size());
    std::size_t next_isolated = 0;
    for (vertex_t v = 0; v < n1; ++v) {
        if (next_isolated < isolated.size() && isolated[next_isolated] == v)
            ++next_isolated;
        else
            core_to_orig.push_back(v);
    }
    ordering full;
    full.reserve(n1);
    full.insert(full.end(), isolated.begin(), isolated.end());
    for (vertex_t v : core_order) full.push_back(core_to_orig[v]);
    return full;
}

}  // namespace

std::size_t choose_branch_variable(const lp_solution& x) {
    std::size_t best = x.x.size();
    double best_gap = 2.0;
    for (std::size_t col = 0; col < x.x.size(); ++col) {
        const double v = x.x[col];
        if (std::abs(v - std::round(v)) <= 1e-6) continue;
        const double gap = std::abs(v - 0.5);
        // tolerance keeps decimal mirror values (0.3 vs 0.7) a genuine tie,
        // which then resolves to the lowest column index
        if (gap + 1e-9 < best_gap) {
            best_gap = gap;
            best = col;
        }
    }
    if (best == x.x.size())
        throw std::logic_error("choose_branch_variable: solution is integral");
    return best;
}

ordering decode_integral(const lp_solution& x, const fix_state& state) {
    const vertex_t n1 = state.n1();
    if (x.x.size() != n_pairs(n1))
        throw std::invalid_argument("decode_integral: value count does not match the state");
    std::vector<vertex_t> before(n1, 0);
    std::size_t idx = 0;
    for (vertex_t u = 0; u < n1; ++u)
        for (vertex_t v = u + 1; v < n1; ++v, ++idx) {
            const double val = x.x[idx];
            const long r = std::lround(val);
            if (std::abs(val - r) > 1e-6)
                throw std::invalid_argument("decode_integral: fractional value");
            assert(state.status_at(idx) == pair_status::free_pair ||
                   state.fixed_value(u, v) == r);
            ++before[r == 1 ? v : u];
        }
    ordering out(n1);
    std::vector<char> seen(n1, 0);
    for (vertex_t v = 0; v < n1; ++v) {
        if (before[v] >= n1 || seen[before[v]])
            throw std::logic_error("decode_integral: values violate a triangle constraint");
        seen[before[v]] = 1;
        out[before[v]] = v;
    }
    return out;
}

solution rins(const lp_solution& fractional, const solution& incumbent,
              const crossing_matrix& matrix, const rins_limits& limits) {
    if (!is_permutation(incumbent.order, matrix.n1()))
        throw std::invalid_argument("rins: incumbent is not a permutation");
    if (fractional.x.size() != n_pairs(matrix.n1()))
        throw std::invalid_argument("rins: value count does not match the matrix");
    const solver_config cfg;
    search_limits sub;
    sub.node_budget = limits.node_budget;
    search_counters counters;
    return rins_impl(fractional, incumbent, matrix, cfg, sub, counters);
}

solution local_search_improve(const ordering& order, const crossing_matrix& matrix, vertex_t w) {
    if (w < 2) throw std::invalid_argument("local_search_improve: window must be >= 2");
    if (!is_permutation(order, matrix.n1()))
        throw std::invalid_argument("local_search_improve: order is not a permutation");
    const solver_config cfg;
    const search_limits limits;
    search_counters counters;
    return local_search_impl(order, matrix, w, cfg, limits, counters);
}

solve_report solve_exact(const instance& inst, const solver_config& config) {
    const auto t0 = clock_type::now();
    const search_limits limits = limits_from(config, t0);
    solve_report report;
    const vertex_t n1 = inst.n1;

    if (n1 == 0) {
        report.best = {{}, 0};
        report.proven_optimal = true;
        report.wall_ms = elapsed_ms(t0);
        return report;
    }

    auto [core, isolated] = extract_isolated(inst);
    report.reductions.isolated = isolated.size();

    if (core.n1 > dense_vertex_cap) {  // keep batch runs alive on huge inputs
        solution best = sparse_portfolio(core, config, limits);
        report.heuristic_cost = best.crossings;
        report.best = {lift_core_order(n1, isolated, best.order), best.crossings};
        report.proven_optimal = best.crossings == 0;
        report.lower_bound = 0;
        report.wall_ms = elapsed_ms(t0);
        return report;
    }

    search_counters counters;

    solution core_best;
    if (core.n1 > 0) {
        const crossing_matrix core_matrix = build_crossing_matrix(core);
        core_best = heuristic_portfolio(core, core_matrix, rng_seed{config.seed},
                                        portfolio_config{config.restarts});
        if (config.local_search_window >= 2 && n_pairs(core.n1) <= lp_pair_cap &&
            !past_deadline(limits)) {
            solution improved = local_search_impl(core_best.order, core_matrix,
                                                  config.local_search_window, config, limits,
                                                  counters);
            if (improved.crossings < core_best.crossings) core_best = std::move(improved);
        }
    }
    report.heuristic_cost = core_best.crossings;

    solution incumbent{lift_core_order(n1, isolated, core_best.order), core_best.crossings};
    std::vector<vertex_t> full_pos(n1);
    for (vertex_t i = 0; i < n1; ++i) full_pos[incumbent.order[i]] = i;

    const crossing_matrix matrix = build_crossing_matrix(inst);
    reduce_result red = reduce(inst, matrix, incumbent.crossings);
    report.reductions = red.counts;

    if (red.conflict) {  // the rules ruled every cheaper ordering out
        report.best = std::move(incumbent);
        report.proven_optimal = true;
        report.lower_bound = report.best.crossings;
        report.nodes_explored = counters.nodes;
        report.cuts_added = counters.cuts;
        report.lp_solves = counters.lp_solves;
        report.wall_ms = elapsed_ms(t0);
        return report;
    }

    const split_result& split = red.split;
    std::vector<ordering> part_orders(split.parts.size());
    bool proven = true;
    crossing_number_t bound_sum = 0;
    crossing_number_t cost_sum = 0;

    for (std::size_t p = 0; p < split.parts.size(); ++p) {
        const instance& part = split.parts[p];
        const std::vector<vertex_t>& members = split.members[p];
        const crossing_matrix part_matrix = build_crossing_matrix(part);

        fix_state part_state(part_matrix);
        for (vertex_t i = 0; i < part.n1; ++i)
            for (vertex_t j = i + 1; j < part.n1; ++j) {
                const pair_status st = red.state.status(members[i], members[j]);
                if (st == pair_status::u_before_v)
                    part_state.set_before(i, j, part_matrix);
                else if (st == pair_status::v_before_u)
                    part_state.set_before(j, i, part_matrix);
            }

        ordering part_inc(part.n1);
        std::iota(part_inc.begin(), part_inc.end(), vertex_t{0});
        std::sort(part_inc.begin(), part_inc.end(), [&](vertex_t a, vertex_t b) {
            return full_pos[members[a]] < full_pos[members[b]];
        });
        solution part_seed{std::move(part_inc), 0};
        part_seed.crossings = order_cost(part_matrix, part_seed.order);

        if (n_pairs(part.n1) > lp_pair_cap) {  // too wide for the relaxation
            bound_sum += std::min(part_seed.crossings, part_state.lower_bound());
            cost_sum += part_seed.crossings;
            part_orders[p] = std::move(part_seed.order);
            proven = false;
            continue;
        }

        search_core part_search(part_matrix, std::move(part_state), std::move(part_seed),
                                config, /*enable_rins=*/true, limits, counters);
        core_result res = part_search.run();
        bound_sum += res.bound;
        cost_sum += res.best.crossings;
        part_orders[p] = std::move(res.best.order);
        proven = proven && res.proven;
    }

    ordering full = split.assemble(part_orders);
    const crossing_number_t full_cost = count_crossings(inst, full);
    if (full_cost != cost_sum) throw std::logic_error("solver: part cost mismatch");

    report.best = {std::move(full), full_cost};
    report.proven_optimal = proven;
    report.lower_bound = bound_sum;
    assert(!proven || report.lower_bound == report.best.crossings);
    report.nodes_explored = counters.nodes;
    report.cuts_added = counters.cuts;
    report.lp_solves = counters.lp_solves;
    report.reductions.bound += counters.refix_bound;
    report.reductions.transitive += counters.refix_transitive;
    report.wall_ms = elapsed_ms(t0);
    return report;
}

solve_report solve_heuristic(const instance& inst, const solver_config& config) {
    const auto t0 = clock_type::now();
    const search_limits limits = limits_from(config, t0);
    solve_report report;
    const vertex_t n1 = inst.n1;

    if (n1 == 0) {
        report.best = {{}, 0};
        report.proven_optimal = true;
        report.wall_ms = elapsed_ms(t0);
        return report;
    }

    auto [core, isolated] = extract_isolated(inst);
    report.reductions.isolated = isolated.size();

    solution core_best;
    crossing_number_t pair_lb = 0;
    if (core.n1 > dense_vertex_cap) {
        core_best = sparse_portfolio(core, config, limits);
    } else if (core.n1 > 0) {
        const crossing_matrix matrix = build_crossing_matrix(core);
        core_best = heuristic_portfolio(core, matrix, rng_seed{config.seed},
                                        portfolio_config{config.restarts});
        pair_lb = pair_lower_bound(matrix);
    }

    report.heuristic_cost = core_best.crossings;
    report.best = {lift_core_order(n1, isolated, core_best.order), core_best.crossings};
    report.lower_bound = pair_lb;
    report.proven_optimal = core_best.crossings == pair_lb;
    report.wall_ms = elapsed_ms(t0);
    return report;
}

}  // namespace oscm
