#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "equisched/exact.hpp"
#include "equisched/io.hpp"
#include "equisched/reductions.hpp"

namespace equisched::cli {

namespace {

namespace fs = std::filesystem;

constexpr const char *kExitCodeHelp =
    "Exit codes: 0 feasible/ok, 1 infeasible or verification failure, 2 usage or validation error, "
    "3 search guard exceeded.";

struct RunConfig {
    std::string instance_path;
    std::string solution_path;
    std::string algo_name = "auto";
    std::string out_path;
    Guards guards;

    // generate
    std::string from;
    std::string source_path;
    std::string mode = "days";
    std::string labels_path;
    int padding = 0;
    bool random = false;
    int clients = 0;
    int days = 0;
    Time pmax = 9;
    std::optional<Time> k;
    std::uint64_t seed = 0;

    // bench
    std::string bench_dir;
    std::vector<std::string> bench_algos;
};

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void emit(const RunConfig &cfg, const std::string &text, std::ostream &out) {
    if (cfg.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(cfg.out_path, std::ios::binary);
    if (!file) throw ValidationError("cannot write " + cfg.out_path);
    file << text;
}

Algorithm require_algorithm(const std::string &name) {
    const auto algo = parse_algorithm(name);
    if (!algo) throw ValidationError("unknown algorithm '" + name + "'");
    return *algo;
}

std::uint64_t env_guard_default(std::uint64_t fallback) {
    const char *raw = std::getenv("EQUISCHED_GUARD_NODES");
    if (!raw || !*raw) return fallback;
    char *end = nullptr;
    const unsigned long long value = std::strtoull(raw, &end, 10);
    if (*end != '\0' || value == 0) return fallback;
    return value;
}

int cmd_solve(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
    const Instance inst = parse_instance(read_file(cfg.instance_path));
    const Time k = inst.require_k();
    const DecisionResult result = decide(inst, require_algorithm(cfg.algo_name), cfg.guards);
    emit(cfg, serialize_solution(make_solution(inst, result.feasible, k, result.witness)), out);
    err << "algorithm: " << to_string(result.algorithm) << ", work: " << result.work << "\n";
    return result.feasible ? kExitOk : kExitNegative;
}

int cmd_minimize(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
    const Instance inst = parse_instance(read_file(cfg.instance_path)).with_k(std::nullopt);
    const MinimizeResult result = minimize_k(inst, require_algorithm(cfg.algo_name), cfg.guards);
    emit(cfg, serialize_solution(make_solution(inst, true, result.min_k, result.witness)), out);
    err << "algorithm: " << to_string(result.algorithm) << ", decide calls: " << result.decide_calls
        << ", work: " << result.work << "\n";
    return kExitOk;
}

int cmd_verify(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
    const Instance inst = parse_instance(read_file(cfg.instance_path));
    const Solution sol = parse_solution(read_file(cfg.solution_path));
    if (!sol.schedules) {
        err << "solution carries no schedules (feasible=" << (sol.feasible ? "true" : "false") << ")\n";
        return kExitNegative;
    }
    const Time k = inst.k().value_or(sol.k);
    const CompletionReport report = evaluate(inst, *sol.schedules);

    out << "client,total\n";
    for (int j = 0; j < inst.num_clients(); ++j) out << j + 1 << "," << report.per_client(j) << "\n";
    out << "max_total=" << report.max_total << " k=" << k << "\n";

    for (int j = 0; j < inst.num_clients(); ++j) {
        if (report.per_client(j) > k) {
            err << "client " << j + 1 << " has total completion time " << report.per_client(j) << " > k=" << k
                << "\n";
            return kExitNegative;
        }
    }
    if (!sol.per_client_total.empty()) {
        const bool agrees = static_cast<int>(sol.per_client_total.size()) == inst.num_clients() &&
                            std::equal(sol.per_client_total.begin(), sol.per_client_total.end(),
                                       report.per_client.begin());
        if (!agrees) {
            err << "reported per_client_total disagrees with the recomputed totals\n";
            return kExitNegative;
        }
    }
    return kExitOk;
}

reductions::ReductionOutput generate_from_source(const RunConfig &cfg) {
    const std::string text = read_file(cfg.source_path);
    if (cfg.from == "partition") {
        const reductions::PartitionInput input = reductions::parse_partition(text);
        if (cfg.mode == "days") return reductions::reduce_partition_days(input, cfg.padding);
        if (cfg.mode == "clients") return reductions::reduce_partition_clients(input, cfg.padding);
        throw ValidationError("--mode must be days or clients");
    }
    if (cfg.padding != 0) throw ValidationError("--pad applies to partition sources only");
    if (cfg.from == "sat34") return reductions::reduce_sat34(reductions::parse_sat34(text));
    if (cfg.from == "binpack") return reductions::reduce_bin_packing(reductions::parse_binpacking(text));
    throw ValidationError("--from must be partition, sat34 or binpack");
}

int cmd_generate(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
    if (cfg.random == !cfg.from.empty()) throw ValidationError("use exactly one of --random or --from");
    if (cfg.random) {
        if (cfg.clients < 1 || cfg.days < 1 || cfg.pmax < 0)
            throw ValidationError("--random needs --clients >= 1, --days >= 1 and --pmax >= 0");
        std::mt19937_64 rng(cfg.seed);
        std::uniform_int_distribution<Time> dist(0, cfg.pmax);
        TimeMatrix proc(cfg.days, cfg.clients);
        for (int i = 0; i < cfg.days; ++i)
            for (int j = 0; j < cfg.clients; ++j) proc(i, j) = dist(rng);
        emit(cfg, serialize_instance(Instance(std::move(proc), cfg.k)), out);
        return kExitOk;
    }
    if (cfg.source_path.empty()) throw ValidationError("--from needs a source file");
    const reductions::ReductionOutput generated = generate_from_source(cfg);
    emit(cfg, serialize_instance(generated.instance), out);
    if (!cfg.labels_path.empty()) {
        if (cfg.labels_path == "-") {
            err << generated.labels_json();
        } else {
            std::ofstream labels(cfg.labels_path, std::ios::binary);
            if (!labels) throw ValidationError("cannot write " + cfg.labels_path);
            labels << generated.labels_json();
        }
    }
    return kExitOk;
}

struct BenchRow {
    std::string status;
    std::string k;
    double wall_ms = 0;
    std::uint64_t nodes = 0;
};

BenchRow bench_one(const Instance &inst, Algorithm algo, const Guards &guards) {
    BenchRow row;
    const auto start = std::chrono::steady_clock::now();
    try {
        if (inst.k()) {
            const DecisionResult r = decide(inst, algo, guards);
            row.status = r.feasible ? "feasible" : "infeasible";
            row.k = std::to_string(*inst.k());
            row.nodes = r.work;
        } else {
            const MinimizeResult r = minimize_k(inst, algo, guards);
            row.status = "optimal";
            row.k = std::to_string(r.min_k);
            row.nodes = r.work;
        }
    } catch (const GuardExceeded &) {
        row.status = "guard_exceeded";
    } catch (const InapplicableError &) {
        row.status = "inapplicable";
    } catch (const std::exception &) {
        row.status = "error";
    }
    row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return row;
}

int cmd_bench(const RunConfig &cfg, std::ostream &out, std::ostream &) {
    if (!fs::is_directory(cfg.bench_dir)) throw ValidationError(cfg.bench_dir + " is not a directory");
    std::vector<Algorithm> algos;
    for (const std::string &name : cfg.bench_algos.empty() ? std::vector<std::string>{"auto"} : cfg.bench_algos)
        algos.push_back(require_algorithm(name));

    std::vector<fs::path> files;
    for (const auto &entry : fs::directory_iterator(cfg.bench_dir))
        if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
    std::sort(files.begin(), files.end(),
              [](const fs::path &a, const fs::path &b) { return a.filename().string() < b.filename().string(); });

    std::ostringstream csv;
    csv << "file,algo,status,k,wall_ms,nodes\n";
    for (const fs::path &file : files) {
        std::optional<Instance> inst;
        try {
            inst = parse_instance(read_file(file.string()));
        } catch (const std::exception &) {
            for (Algorithm algo : algos) csv << file.filename().string() << "," << to_string(algo) << ",error,,0,0\n";
            continue;
        }
        for (Algorithm algo : algos) {
            const BenchRow row = bench_one(*inst, algo, cfg.guards);
            csv << file.filename().string() << "," << to_string(algo) << "," << row.status << "," << row.k << ","
                << std::fixed << std::setprecision(3) << row.wall_ms << "," << row.nodes << "\n";
        }
    }
    emit(cfg, csv.str(), out);
    return kExitOk;
}

void add_search_options(CLI::App *cmd, RunConfig &cfg) {
    cmd->add_option("--algo", cfg.algo_name, "auto, brute, two_day, dp, nfold or category")->capture_default_str();
    cmd->add_option("--guard-nodes", cfg.guards.brute_nodes,
                    "Node budget for brute force and integer search (env EQUISCHED_GUARD_NODES)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--guard-states", cfg.guards.dp_states, "State budget for the dynamic program")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--out", cfg.out_path, "Write the result here instead of stdout");
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    RunConfig cfg;
    cfg.guards.brute_nodes = env_guard_default(cfg.guards.brute_nodes);

    CLI::App app{"Equitable single-machine scheduling: decide, minimize, verify, generate, bench.", "equisched"};
    app.footer(kExitCodeHelp);
    app.require_subcommand(1);

    auto *solve = app.add_subcommand("solve", "Decide whether the instance's k is achievable; print a Solution JSON");
    solve->add_option("instance", cfg.instance_path, "Instance JSON with k")->required();
    add_search_options(solve, cfg);

    auto *minimize = app.add_subcommand("minimize", "Find the least achievable k; print a Solution JSON");
    minimize->add_option("instance", cfg.instance_path, "Instance JSON (k ignored)")->required();
    add_search_options(minimize, cfg);

    auto *verify = app.add_subcommand("verify", "Check a Solution JSON against an instance");
    verify->add_option("instance", cfg.instance_path)->required();
    verify->add_option("solution", cfg.solution_path)->required();

    auto *generate = app.add_subcommand("generate", "Generate an instance from a source problem or at random");
    generate->add_option("--from", cfg.from, "partition, sat34 or binpack");
    generate->add_option("source", cfg.source_path, "Source problem file for --from");
    generate->add_option("--mode", cfg.mode, "Partition construction: days (m=4) or clients (n=2)")
        ->capture_default_str();
    generate->add_option("--pad", cfg.padding, "Extra all-zero days (mode days) or clients (mode clients)");
    generate->add_option("--labels", cfg.labels_path, "Write construction labels JSON here ('-' for stderr)");
    generate->add_flag("--random", cfg.random, "Uniform random instance");
    generate->add_option("--clients", cfg.clients, "Random mode: n");
    generate->add_option("--days", cfg.days, "Random mode: m");
    generate->add_option("--pmax", cfg.pmax, "Random mode: largest processing time")->capture_default_str();
    generate->add_option("--k", cfg.k, "Random mode: equitability parameter to embed");
    generate->add_option("--seed", cfg.seed, "Random mode: RNG seed")->capture_default_str();
    generate->add_option("--out", cfg.out_path, "Write the instance here instead of stdout");

    auto *bench = app.add_subcommand("bench", "Run algorithms over a directory of instances; print CSV");
    bench->add_option("dir", cfg.bench_dir)->required();
    bench->add_option("--algo", cfg.bench_algos, "Algorithms to run (repeatable or comma-separated)")
        ->delimiter(',');
    bench->add_option("--guard-nodes", cfg.guards.brute_nodes)->check(CLI::PositiveNumber);
    bench->add_option("--guard-states", cfg.guards.dp_states)->check(CLI::PositiveNumber);
    bench->add_option("--out", cfg.out_path);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }
    // One --guard-nodes budget covers both node-counting searches.
    const bool nodes_overridden = std::getenv("EQUISCHED_GUARD_NODES") != nullptr ||
                                  solve->get_option("--guard-nodes")->count() > 0 ||
                                  minimize->get_option("--guard-nodes")->count() > 0 ||
                                  bench->get_option("--guard-nodes")->count() > 0;
    if (nodes_overridden) cfg.guards.ip_nodes = cfg.guards.brute_nodes;

    try {
        if (*solve) return cmd_solve(cfg, out, err);
        if (*minimize) return cmd_minimize(cfg, out, err);
        if (*verify) return cmd_verify(cfg, out, err);
        if (*generate) return cmd_generate(cfg, out, err);
        if (*bench) return cmd_bench(cfg, out, err);
    } catch (const GuardExceeded &e) {
        err << "guard exceeded: " << e.what() << "\n";
        return kExitGuard;
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace equisched::cli
