#include "oscm.h"

#include <cstring>
#include <exception>
#include <fstream>
#include <memory>
#include <new>
#include <string>

#include "crossings.hpp"
#include "instance.hpp"
#include "search.hpp"

struct oscm_instance {
    oscm::instance inst;
};

struct oscm_result {
    oscm::solve_report report;
    oscm::vertex_t n0 = 0;
};

namespace {

thread_local std::string g_last_error = "no error";

int fail(int code, const std::string& message) {
    g_last_error = message;
    return code;
}

// wraps an entry point body: exceptions become status codes, never unwind
// across the C boundary
template <typename Fn>
int guarded(Fn&& body) {
    try {
        return body();
    } catch (const oscm::parse_error& e) {
        return fail(OSCM_ERR_PARSE, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(OSCM_ERR_INVALID, e.what());
    } catch (const std::bad_alloc&) {
        return fail(OSCM_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(OSCM_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(OSCM_ERR_INTERNAL, "unknown error");
    }
}

}  // namespace

extern "C" {

const char* oscm_last_error(void) { return g_last_error.c_str(); }

int oscm_parse(const char* text, size_t len, oscm_instance** out) {
    if (!text || !out) return fail(OSCM_ERR_INVALID, "oscm_parse: NULL argument");
    *out = nullptr;
    return guarded([&]() -> int {
        auto handle = std::make_unique<oscm_instance>();
        handle->inst = oscm::parse_instance(std::string(text, len));
        *out = handle.release();
        return OSCM_OK;
    });
}

int oscm_parse_file(const char* path, oscm_instance** out) {
    if (!path || !out) return fail(OSCM_ERR_INVALID, "oscm_parse_file: NULL argument");
    *out = nullptr;
    return guarded([&]() -> int {
        std::ifstream in(path);
        if (!in) return fail(OSCM_ERR_PARSE, std::string("cannot open ") + path);
        auto handle = std::make_unique<oscm_instance>();
        handle->inst = oscm::parse_instance(in);
        *out = handle.release();
        return OSCM_OK;
    });
}

void oscm_instance_free(oscm_instance* inst) { delete inst; }

uint32_t oscm_n_fixed(const oscm_instance* inst) { return inst ? inst->inst.n0 : 0; }
uint32_t oscm_n_free(const oscm_instance* inst) { return inst ? inst->inst.n1 : 0; }
uint64_t oscm_n_edges(const oscm_instance* inst) { return inst ? inst->inst.m : 0; }

int oscm_count_crossings(const oscm_instance* inst, const uint32_t* labels, uint32_t n,
                         uint64_t* out) {
    if (!inst || !out || (!labels && n > 0))
        return fail(OSCM_ERR_INVALID, "oscm_count_crossings: NULL argument");
    return guarded([&]() -> int {
        if (n != inst->inst.n1)
            return fail(OSCM_ERR_INVALID, "oscm_count_crossings: wrong ordering length");
        oscm::ordering perm(n);
        for (uint32_t i = 0; i < n; ++i) {
            const uint32_t label = labels[i];
            if (label <= inst->inst.n0 || label > inst->inst.n0 + inst->inst.n1)
                return fail(OSCM_ERR_INVALID,
                            "oscm_count_crossings: label " + std::to_string(label) +
                                " is outside the free layer");
            perm[i] = label - inst->inst.n0 - 1;
        }
        if (!oscm::is_permutation(perm, inst->inst.n1))
            return fail(OSCM_ERR_INVALID, "oscm_count_crossings: labels repeat");
        *out = oscm::count_crossings(inst->inst, perm);
        return OSCM_OK;
    });
}

oscm_options oscm_options_default(void) {
    oscm_options options;
    options.seed = 0;
    options.time_limit_s = 0;
    options.heuristic_only = 0;
    options.local_search_window = 20;
    options.restarts = 64;
    return options;
}

int oscm_solve(const oscm_instance* inst, const oscm_options* options, oscm_result** out) {
    if (!inst || !out) return fail(OSCM_ERR_INVALID, "oscm_solve: NULL argument");
    *out = nullptr;
    const oscm_options opts = options ? *options : oscm_options_default();
    return guarded([&]() -> int {
        oscm::solver_config config;
        config.seed = opts.seed;
        config.time_limit_s = opts.time_limit_s;
        config.restarts = opts.restarts;
        config.local_search_window = opts.local_search_window;
        auto handle = std::make_unique<oscm_result>();
        handle->report = opts.heuristic_only ? oscm::solve_heuristic(inst->inst, config)
                                             : oscm::solve_exact(inst->inst, config);
        handle->n0 = inst->inst.n0;
        *out = handle.release();
        return OSCM_OK;
    });
}

void oscm_result_free(oscm_result* result) { delete result; }

uint64_t oscm_result_crossings(const oscm_result* result) {
    return result ? result->report.best.crossings : 0;
}
int oscm_result_proven_optimal(const oscm_result* result) {
    return result && result->report.proven_optimal ? 1 : 0;
}
uint64_t oscm_result_lower_bound(const oscm_result* result) {
    return result ? result->report.lower_bound : 0;
}
uint64_t oscm_result_heuristic_cost(const oscm_result* result) {
    return result ? result->report.heuristic_cost : 0;
}
uint64_t oscm_result_nodes(const oscm_result* result) {
    return result ? result->report.nodes_explored : 0;
}
uint64_t oscm_result_cuts(const oscm_result* result) {
    return result ? result->report.cuts_added : 0;
}
uint64_t oscm_result_lp_solves(const oscm_result* result) {
    return result ? result->report.lp_solves : 0;
}
double oscm_result_wall_ms(const oscm_result* result) {
    return result ? result->report.wall_ms : 0;
}

uint64_t oscm_result_reduced_isolated(const oscm_result* result) {
    return result ? result->report.reductions.isolated : 0;
}
uint64_t oscm_result_split_parts(const oscm_result* result) {
    return result ? result->report.reductions.parts : 0;
}
uint64_t oscm_result_fixed_zero(const oscm_result* result) {
    return result ? result->report.reductions.zero : 0;
}
uint64_t oscm_result_fixed_dominance(const oscm_result* result) {
    return result ? result->report.reductions.dominance : 0;
}
uint64_t oscm_result_fixed_bound(const oscm_result* result) {
    return result ? result->report.reductions.bound : 0;
}
uint64_t oscm_result_fixed_transitive(const oscm_result* result) {
    return result ? result->report.reductions.transitive : 0;
}

int oscm_result_ordering(const oscm_result* result, uint32_t* out, uint32_t n) {
    if (!result || (!out && n > 0))
        return fail(OSCM_ERR_INVALID, "oscm_result_ordering: NULL argument");
    const auto& order = result->report.best.order;
    if (n != order.size())
        return fail(OSCM_ERR_INVALID, "oscm_result_ordering: wrong buffer length");
    for (uint32_t i = 0; i < n; ++i) out[i] = order[i] + result->n0 + 1;
    return OSCM_OK;
}

int oscm_result_solution_text(const oscm_result* result, char** out) {
    if (!result || !out)
        return fail(OSCM_ERR_INVALID, "oscm_result_solution_text: NULL argument");
    *out = nullptr;
    return guarded([&]() -> int {
        std::string text;
        text.reserve(result->report.best.order.size() * 8);
        for (oscm::vertex_t v : result->report.best.order)
            text += std::to_string(v + result->n0 + 1) + "\n";
        char* buffer = new char[text.size() + 1];
        std::memcpy(buffer, text.c_str(), text.size() + 1);
        *out = buffer;
        return OSCM_OK;
    });
}

void oscm_text_free(char* text) { delete[] text; }

}  // extern "C"
