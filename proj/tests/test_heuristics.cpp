#include <stdexcept>

#include "crossings.hpp"
#include "doctest.h"
#include "fix_state.hpp"
#include "fixtures.hpp"
#include "heuristics.hpp"
#include "instance.hpp"
#include "lp.hpp"
#include "oracle.hpp"

using namespace oscm;
using namespace oscm::testfix;

namespace {

lp_solution make_fractional(std::vector<double> x) {
    lp_solution frac;
    frac.status = lp_status::optimal;
    frac.x = std::move(x);
    return frac;
}

}  // namespace

TEST_CASE("order_by_scores sorts ascending with stable ties") {
    CHECK(order_by_scores({8.0 / 3.0, 3.0}) == ordering{0, 1});
    CHECK(order_by_scores({1.0, 1.0}) == ordering{0, 1});
    CHECK(order_by_scores({5.0, 1.0, 3.0}) == ordering{1, 2, 0});
    CHECK(order_by_scores({}) == ordering{});
    CHECK_THROWS_AS(order_by_scores({1.0, std::numeric_limits<double>::quiet_NaN()}),
                    std::invalid_argument);
    CHECK_THROWS_AS(order_by_scores({std::numeric_limits<double>::infinity()}),
                    std::invalid_argument);
}

TEST_CASE("barycenter averages neighbor positions") {
    CHECK(barycenter(fig1()) == ordering{0, 1});              // scores 8/3 vs 3
    CHECK(barycenter(from_neighbors(2, {{2}, {1}})) == ordering{1, 0});
    CHECK(barycenter(from_neighbors(4, {{1, 2, 3, 4}})) == ordering{0});
    CHECK_THROWS_AS(barycenter(from_neighbors(3, {{1}, {}})), std::invalid_argument);
}

TEST_CASE("median picks the lower middle neighbor") {
    // degree 3: middle element; degree 2: mean of the two neighbors
    CHECK(median(from_neighbors(6, {{1, 3, 4}, {2, 6}})) == ordering{0, 1});
    CHECK(median(from_neighbors(6, {{2, 6}, {1, 3, 4}})) == ordering{1, 0});
    CHECK(median(fig1()) == ordering{0, 1});  // both medians are 3; stable tie
    CHECK_THROWS_AS(median(from_neighbors(3, {{}, {1}})), std::invalid_argument);
}

TEST_CASE("probabilistic_median is deterministic per seed and always valid") {
    gen_spec spec;
    spec.n0 = 14;
    spec.n1 = 11;
    spec.density = 0.4;
    spec.seed = rng_seed{77};
    spec.guarantee_no_isolated = true;
    const instance inst = generate(spec);
    const ordering first = probabilistic_median(inst, rng_seed{5});
    CHECK(first == probabilistic_median(inst, rng_seed{5}));
    for (std::uint64_t s = 0; s < 32; ++s) {
        CAPTURE(s);
        CHECK(is_permutation(probabilistic_median(inst, rng_seed{s}), inst.n1));
    }
}

TEST_CASE("probabilistic_median degenerates to median on degree-one vertices") {
    const instance inst = from_neighbors(3, {{3}, {1}, {2}});
    for (std::uint64_t s = 0; s < 8; ++s) {
        CAPTURE(s);
        CHECK(probabilistic_median(inst, rng_seed{s}) == ordering{1, 2, 0});
    }
}

TEST_CASE("sort_heuristic orders by expected predecessors") {
    crossing_matrix two(2);
    const fix_state state2(two);

    // x = 0.8 gives scores (0.2, 0.8)
    CHECK(sort_heuristic(make_fractional({0.8}), state2) == ordering{0, 1});
    CHECK(sort_heuristic(make_fractional({0.2}), state2) == ordering{1, 0});

    // integral values reproduce the encoded order
    CHECK(sort_heuristic(make_fractional({0.0}), state2) == ordering{1, 0});
    CHECK(sort_heuristic(make_fractional({1.0}), state2) == ordering{0, 1});

    crossing_matrix three(3);
    const fix_state state3(three);
    CHECK(sort_heuristic(make_fractional({0.0, 0.0, 0.0}), state3) == ordering{2, 1, 0});

    CHECK_THROWS_AS(sort_heuristic(make_fractional({1.5}), state2), std::invalid_argument);
    CHECK_THROWS_AS(sort_heuristic(make_fractional({-0.2}), state2), std::invalid_argument);
}

TEST_CASE("randomized_rounding rounds integral inputs exactly") {
    const crossing_matrix matrix = build_crossing_matrix(fig1());
    const solution sol = randomized_rounding(make_fractional({1.0}), matrix, rng_seed{3}, 1);
    CHECK(sol.order == ordering{0, 1});
    CHECK(sol.crossings == 3);
}

TEST_CASE("randomized_rounding is deterministic and never invalid") {
    gen_spec spec;
    spec.n0 = 9;
    spec.n1 = 7;
    spec.density = 0.5;
    spec.seed = rng_seed{11};
    spec.guarantee_no_isolated = true;
    const instance inst = generate(spec);
    const crossing_matrix matrix = build_crossing_matrix(inst);
    std::vector<double> x(n_pairs(inst.n1), 0.5);
    const solution a = randomized_rounding(make_fractional(x), matrix, rng_seed{9}, 16);
    const solution b = randomized_rounding(make_fractional(x), matrix, rng_seed{9}, 16);
    CHECK(a.order == b.order);
    CHECK(a.crossings == b.crossings);
    CHECK(is_permutation(a.order, inst.n1));
    CHECK(a.crossings == order_cost(matrix, a.order));

    // more trials can only help
    const solution wide = randomized_rounding(make_fractional(x), matrix, rng_seed{9}, 64);
    CHECK(wide.crossings <= a.crossings);
}

TEST_CASE("shift_improve moves single vertices to better slots") {
    crossing_matrix matrix(2);
    matrix.at(0, 1) = 1;
    const solution sol = shift_improve({0, 1}, matrix);
    CHECK(sol.order == ordering{1, 0});
    CHECK(sol.crossings == 0);

    const crossing_matrix fig = build_crossing_matrix(fig1());
    CHECK(shift_improve({1, 0}, fig).crossings == 3);
    CHECK_THROWS_AS(shift_improve({0, 0}, fig), std::invalid_argument);
}

TEST_CASE("shift_improve leaves indifferent orders alone") {
    const crossing_matrix flat(4);
    const solution sol = shift_improve({2, 0, 3, 1}, flat);
    CHECK(sol.order == ordering{2, 0, 3, 1});
    CHECK(sol.crossings == 0);
}

TEST_CASE("shift_improve reaches a reinsertion fixed point and never regresses") {
    std::mt19937_64 shuffler(23);
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        gen_spec spec;
        spec.n0 = 3 + static_cast<vertex_t>(seed % 9);
        spec.n1 = 2 + static_cast<vertex_t>(seed % 6);
        spec.density = 0.55;
        spec.seed = rng_seed{700 + seed};
        const instance inst = generate(spec);
        const crossing_matrix matrix = build_crossing_matrix(inst);
        ordering start = identity_order(inst.n1);
        std::shuffle(start.begin(), start.end(), shuffler);
        const solution sol = shift_improve(start, matrix);
        CAPTURE(seed);
        CHECK(sol.crossings <= order_cost(matrix, start));
        CHECK(sol.crossings == order_cost(matrix, sol.order));
        CHECK_FALSE(reinsertion_improves(matrix, sol.order));
    }
}

TEST_CASE("heuristic_portfolio solves the tiny fixtures") {
    const instance swapped = from_neighbors(2, {{2}, {1}});
    CHECK(heuristic_portfolio(swapped, build_crossing_matrix(swapped), rng_seed{0}).crossings == 0);

    const instance fig = fig1();
    CHECK(heuristic_portfolio(fig, build_crossing_matrix(fig), rng_seed{0}).crossings == 3);

    const instance empty = from_neighbors(3, {});
    const solution none = heuristic_portfolio(empty, build_crossing_matrix(empty), rng_seed{0});
    CHECK(none.order.empty());
    CHECK(none.crossings == 0);
}

TEST_CASE("heuristic_portfolio is deterministic and respects restart budgets") {
    gen_spec spec;
    spec.n0 = 16;
    spec.n1 = 12;
    spec.density = 0.35;
    spec.seed = rng_seed{19};
    spec.guarantee_no_isolated = true;
    const instance inst = generate(spec);
    const crossing_matrix matrix = build_crossing_matrix(inst);

    const solution a = heuristic_portfolio(inst, matrix, rng_seed{4});
    const solution b = heuristic_portfolio(inst, matrix, rng_seed{4});
    CHECK(a.order == b.order);
    CHECK(a.crossings == b.crossings);
    CHECK(is_permutation(a.order, inst.n1));
    CHECK(a.crossings == order_cost(matrix, a.order));

    portfolio_config one;
    one.restarts = 1;
    const solution quick = heuristic_portfolio(inst, matrix, rng_seed{4}, one);
    CHECK(is_permutation(quick.order, inst.n1));
    CHECK(a.crossings <= quick.crossings);
}

TEST_CASE("median stays within three times the optimum") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        gen_spec spec;
        spec.n0 = 3 + static_cast<vertex_t>(seed % 8);
        spec.n1 = 2 + static_cast<vertex_t>(seed % 6);
        spec.density = 0.6;
        spec.seed = rng_seed{1300 + seed};
        spec.guarantee_no_isolated = true;
        const instance inst = generate(spec);
        const solution opt = brute_force_opt(inst);
        if (opt.crossings == 0) continue;
        const crossing_number_t med = count_crossings(inst, median(inst));
        CAPTURE(seed);
        CHECK(med <= 3 * opt.crossings);
    }
}
