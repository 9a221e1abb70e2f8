// command line front end: solve / verify / bench over the C API

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "oscm.h"

namespace {

using nlohmann::json;

constexpr int exit_ok = 0;        // includes timeouts: the incumbent is printed
constexpr int exit_invalid = 1;   // verify: ordering rejected
constexpr int exit_parse = 2;     // unreadable or malformed instance
constexpr int exit_internal = 3;  // solver failure

struct instance_deleter {
    void operator()(oscm_instance* p) const { oscm_instance_free(p); }
};
struct result_deleter {
    void operator()(oscm_result* p) const { oscm_result_free(p); }
};
using instance_ptr = std::unique_ptr<oscm_instance, instance_deleter>;
using result_ptr = std::unique_ptr<oscm_result, result_deleter>;

struct solver_flags {
    std::string mode = "exact";
    std::uint64_t seed = 0;
    double time_limit = 0;  // seconds; 0 = unlimited
    std::uint32_t window = 20;
    std::uint64_t restarts = 64;
    bool quiet = false;
};

void add_solver_flags(CLI::App* cmd, solver_flags& flags) {
    cmd->add_option("--mode", flags.mode, "solver mode")
        ->check(CLI::IsMember({"exact", "heuristic"}))
        ->capture_default_str();
    cmd->add_option("--seed", flags.seed, "random seed")->capture_default_str();
    cmd->add_option("--time-limit", flags.time_limit, "wall clock limit in seconds, 0 = unlimited")
        ->capture_default_str();
    cmd->add_option("--window", flags.window, "local search window, 0 = off")
        ->capture_default_str();
    cmd->add_option("--restarts", flags.restarts, "randomized heuristic restarts")
        ->capture_default_str();
    cmd->add_flag("--quiet", flags.quiet, "suppress the progress line on stderr");
}

oscm_options to_options(const solver_flags& flags) {
    oscm_options options = oscm_options_default();
    options.seed = flags.seed;
    options.time_limit_s = flags.time_limit;
    options.heuristic_only = flags.mode == "heuristic" ? 1 : 0;
    options.local_search_window = flags.window;
    options.restarts = flags.restarts;
    return options;
}

int parse_instance_arg(const std::string& path, instance_ptr& out) {
    oscm_instance* raw = nullptr;
    int rc;
    if (path.empty() || path == "-") {
        std::ostringstream buffer;
        buffer << std::cin.rdbuf();
        const std::string text = buffer.str();
        rc = oscm_parse(text.data(), text.size(), &raw);
    } else {
        rc = oscm_parse_file(path.c_str(), &raw);
    }
    if (rc != OSCM_OK) {
        std::cerr << "error: " << oscm_last_error() << "\n";
        return rc == OSCM_ERR_PARSE ? exit_parse : exit_internal;
    }
    out.reset(raw);
    return exit_ok;
}

json stats_json(const solver_flags& flags, const std::string& path, const oscm_instance* inst,
                const oscm_result* result) {
    json stats;
    stats["mode"] = flags.mode;
    stats["instance"] = path.empty() ? "-" : path;
    stats["n0"] = oscm_n_fixed(inst);
    stats["n1"] = oscm_n_free(inst);
    stats["m"] = oscm_n_edges(inst);
    stats["heuristic_cost"] = oscm_result_heuristic_cost(result);
    stats["lower_bound"] = oscm_result_lower_bound(result);
    stats["final_cost"] = oscm_result_crossings(result);
    stats["proven_optimal"] = oscm_result_proven_optimal(result) != 0;
    stats["nodes"] = oscm_result_nodes(result);
    stats["cuts"] = oscm_result_cuts(result);
    stats["lp_solves"] = oscm_result_lp_solves(result);
    stats["reduced_isolated"] = oscm_result_reduced_isolated(result);
    stats["reduced_split_parts"] = oscm_result_split_parts(result);
    stats["fixed_zero"] = oscm_result_fixed_zero(result);
    stats["fixed_dominance"] = oscm_result_fixed_dominance(result);
    stats["fixed_bound"] = oscm_result_fixed_bound(result);
    stats["fixed_transitive"] = oscm_result_fixed_transitive(result);
    stats["wall_ms"] = oscm_result_wall_ms(result);
    return stats;
}

int run_solve(const solver_flags& flags, const std::string& path, const std::string& stats_path) {
    instance_ptr inst;
    if (int rc = parse_instance_arg(path, inst); rc != exit_ok) return rc;

    const oscm_options options = to_options(flags);
    oscm_result* raw = nullptr;
    if (oscm_solve(inst.get(), &options, &raw) != OSCM_OK) {
        std::cerr << "error: " << oscm_last_error() << "\n";
        return exit_internal;
    }
    result_ptr result(raw);

    char* text = nullptr;
    if (oscm_result_solution_text(result.get(), &text) != OSCM_OK) {
        std::cerr << "error: " << oscm_last_error() << "\n";
        return exit_internal;
    }
    std::cout << text;
    std::cout.flush();
    oscm_text_free(text);

    if (!flags.quiet) {
        std::cerr << "crossings " << oscm_result_crossings(result.get())
                  << (oscm_result_proven_optimal(result.get()) ? " (optimal" : " (bound")
                  << " " << oscm_result_lower_bound(result.get()) << "), nodes "
                  << oscm_result_nodes(result.get()) << ", cuts "
                  << oscm_result_cuts(result.get()) << ", lp " << oscm_result_lp_solves(result.get())
                  << ", " << oscm_result_wall_ms(result.get()) << " ms\n";
    }

    if (!stats_path.empty()) {
        std::ofstream out(stats_path);
        if (!out) {
            std::cerr << "error: cannot write " << stats_path << "\n";
            return exit_internal;
        }
        out << stats_json(flags, path, inst.get(), result.get()).dump() << "\n";
    }
    return exit_ok;
}

int run_verify(const std::string& instance_path, const std::string& solution_path) {
    instance_ptr inst;
    if (int rc = parse_instance_arg(instance_path, inst); rc != exit_ok) return rc;

    std::ifstream in(solution_path);
    if (!in) {
        std::cerr << "error: cannot open " << solution_path << "\n";
        return exit_invalid;
    }
    std::vector<std::uint32_t> labels;
    std::string token;
    while (in >> token) {
        try {
            const unsigned long value = std::stoul(token);
            if (value > 0xffffffffUL) throw std::out_of_range(token);
            labels.push_back(static_cast<std::uint32_t>(value));
        } catch (const std::exception&) {
            std::cerr << "error: '" << token << "' is not a vertex label\n";
            return exit_invalid;
        }
    }

    std::uint64_t crossings = 0;
    if (oscm_count_crossings(inst.get(), labels.data(),
                             static_cast<std::uint32_t>(labels.size()), &crossings) != OSCM_OK) {
        std::cerr << "error: " << oscm_last_error() << "\n";
        return exit_invalid;
    }
    std::cout << crossings << "\n";
    return exit_ok;
}

int run_bench(const solver_flags& flags, const std::string& dir, const std::string& out_path) {
    namespace fs = std::filesystem;
    std::vector<fs::path> files;
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(dir, ec)) {
        if (entry.is_regular_file() && entry.path().extension() == ".gr")
            files.push_back(entry.path());
    }
    if (ec) {
        std::cerr << "error: cannot read directory " << dir << "\n";
        return exit_parse;
    }
    std::sort(files.begin(), files.end());

    std::ofstream file_out;
    if (!out_path.empty() && out_path != "-") {
        file_out.open(out_path);
        if (!file_out) {
            std::cerr << "error: cannot write " << out_path << "\n";
            return exit_internal;
        }
    }
    std::ostream& out = file_out.is_open() ? file_out : std::cout;

    const oscm_options options = to_options(flags);
    std::size_t solved = 0, proven = 0, failed = 0;
    std::uint64_t total_crossings = 0;
    double total_wall = 0;

    for (const fs::path& file : files) {
        oscm_instance* inst_raw = nullptr;
        if (oscm_parse_file(file.string().c_str(), &inst_raw) != OSCM_OK) {
            json row;
            row["instance"] = file.string();
            row["error"] = oscm_last_error();
            out << row.dump() << "\n";
            ++failed;
            continue;
        }
        instance_ptr inst(inst_raw);
        oscm_result* result_raw = nullptr;
        if (oscm_solve(inst.get(), &options, &result_raw) != OSCM_OK) {
            json row;
            row["instance"] = file.string();
            row["error"] = oscm_last_error();
            out << row.dump() << "\n";
            ++failed;
            continue;
        }
        result_ptr result(result_raw);
        out << stats_json(flags, file.string(), inst.get(), result.get()).dump() << "\n";
        ++solved;
        if (oscm_result_proven_optimal(result.get())) ++proven;
        total_crossings += oscm_result_crossings(result.get());
        total_wall += oscm_result_wall_ms(result.get());
    }

    json summary;
    summary["summary"] = true;
    summary["instances"] = files.size();
    summary["solved"] = solved;
    summary["proven_optimal"] = proven;
    summary["failed"] = failed;
    summary["total_crossings"] = total_crossings;
    summary["total_wall_ms"] = total_wall;
    out << summary.dump() << "\n";
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"one-sided crossing minimization solver"};
    app.require_subcommand(1);

    solver_flags solve_flags;
    std::string solve_path;
    std::string stats_path;
    CLI::App* solve_cmd = app.add_subcommand("solve", "solve an instance (stdin when no path)");
    solve_cmd->add_option("instance", solve_path, "instance file, '-' for stdin");
    add_solver_flags(solve_cmd, solve_flags);
    solve_cmd->add_option("--stats", stats_path, "write run statistics as JSON to this path");

    std::string verify_instance, verify_solution;
    CLI::App* verify_cmd = app.add_subcommand("verify", "recompute the crossings of an ordering");
    verify_cmd->add_option("instance", verify_instance, "instance file")->required();
    verify_cmd->add_option("solution", verify_solution, "ordering file, one label per line")
        ->required();

    solver_flags bench_flags;
    std::string bench_dir;
    std::string bench_out;
    CLI::App* bench_cmd = app.add_subcommand("bench", "run every .gr file in a directory");
    bench_cmd->add_option("directory", bench_dir, "directory of .gr instances")->required();
    add_solver_flags(bench_cmd, bench_flags);
    bench_cmd->add_option("--out", bench_out, "JSONL output path, '-' for stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve_cmd->parsed()) return run_solve(solve_flags, solve_path, stats_path);
        if (verify_cmd->parsed()) return run_verify(verify_instance, verify_solution);
        if (bench_cmd->parsed()) return run_bench(bench_flags, bench_dir, bench_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_internal;
    }
    return exit_ok;
}
