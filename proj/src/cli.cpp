#include "routeproj/cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "routeproj/constructor.hpp"
#include "routeproj/dsl.hpp"
#include "routeproj/evolution.hpp"
#include "routeproj/instance_io.hpp"
#include "routeproj/oracle.hpp"
#include "routeproj/parallel.hpp"
#include "routeproj/policy.hpp"
#include "routeproj/report.hpp"

namespace fs = std::filesystem;

namespace routeproj::cli {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// ---------------------------------------------------------------------------
// Shared helpers

struct Loaded {
    std::string path;
    Instance instance;
};

std::vector<std::string> list_instance_files(const std::vector<std::string>& inputs) {
    std::vector<std::string> files;
    for (const std::string& in : inputs) {
        if (fs::is_directory(in)) {
            std::vector<std::string> found;
            for (const auto& e : fs::directory_iterator(in)) {
                const auto ext = e.path().extension().string();
                if (e.is_regular_file() && (ext == ".tsp" || ext == ".vrp")) found.push_back(e.path().string());
            }
            std::sort(found.begin(), found.end());
            files.insert(files.end(), found.begin(), found.end());
        } else if (fs::is_regular_file(in)) {
            files.push_back(in);
        } else {
            throw std::invalid_argument("no such instance file or directory: " + in);
        }
    }
    if (files.empty()) throw std::invalid_argument("no instance files found");
    return files;
}

std::vector<Loaded> load_instances(const std::vector<std::string>& inputs) {
    std::vector<Loaded> out;
    for (const std::string& f : list_instance_files(inputs)) {
        Loaded l{f, read_tsplib(f)};
        if (l.instance.name.empty()) l.instance.name = fs::path(f).stem().string();
        out.push_back(std::move(l));
    }
    return out;
}

std::string default_evolved(ProblemKind kind, std::size_t scale) {
    const std::string prefix = kind == ProblemKind::tsp ? "tsp" : "cvrp";
    if (scale <= 2000) return prefix + "1k";
    if (scale <= 7500) return prefix + "5k";
    return prefix + "10k";
}

struct Strategy {
    std::string label;
    Projection fn;
};

// A built-in name, a strategy JSON file, or inline DSL source.
Strategy resolve_strategy(const std::string& spec) {
    static const StrategyRegistry registry;
    if (registry.contains(spec)) return {spec, registry.lookup(spec)};
    if (fs::is_regular_file(spec)) {
        const dsl::StrategyFile file = dsl::read_strategy_file(spec);
        return {file.name.empty() ? fs::path(spec).stem().string() : file.name,
                dsl::as_projection(dsl::parse(file.source))};
    }
    if (spec.find(';') != std::string::npos || spec.rfind("window", 0) == 0) {
        try {
            return {"dsl", dsl::as_projection(dsl::parse(spec))};
        } catch (const dsl::DslError& e) {
            throw std::invalid_argument(std::string("invalid strategy program: ") + e.what());
        }
    }
    registry.lookup(spec);  // throws with the list of known names
    throw std::invalid_argument("unknown strategy " + spec);
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw std::runtime_error("unwritable output dir " + dir);
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

struct SolverOptions {
    std::string policy = "scale-sensitive";
    std::size_t k = 100;
    bool mvdf = false;
    std::vector<std::size_t> views;
    std::uint64_t seed = 0;
    std::size_t jobs = 0;
    ScaleSensitiveParams weights;
};

void add_solver_options(CLI::App* cmd, SolverOptions& o) {
    cmd->add_option("--policy", o.policy, "scale-sensitive | isometry-invariant | coordinate-x")->capture_default_str();
    cmd->add_option("-k,--k", o.k, "KNN candidate count")->capture_default_str()->check(CLI::PositiveNumber);
    cmd->add_flag("--mvdf", o.mvdf, "fuse decisions over the eight square symmetries");
    cmd->add_option("--views", o.views, "MVDF view subset (0..7)")->check(CLI::Range(0, 7));
    cmd->add_option("--seed", o.seed, "random seed")->capture_default_str();
    cmd->add_option("-j,--jobs", o.jobs, "worker threads (0 = all cores)")->capture_default_str();
    auto* w = cmd->add_option_group("scale-sensitive policy constants");
    w->add_option("--w1", o.weights.w1)->capture_default_str();
    w->add_option("--w2", o.weights.w2)->capture_default_str();
    w->add_option("--w3", o.weights.w3)->capture_default_str();
    w->add_option("--w4", o.weights.w4)->capture_default_str();
    w->add_option("--w5", o.weights.w5)->capture_default_str();
    w->add_option("--sigma1", o.weights.sigma1)->capture_default_str()->check(CLI::PositiveNumber);
    w->add_option("--sigma2", o.weights.sigma2)->capture_default_str()->check(CLI::PositiveNumber);
}

SolverConfig make_solver(const SolverOptions& o, const Policy& policy, Projection strategy) {
    SolverConfig cfg;
    cfg.strategy = std::move(strategy);
    cfg.policy = &policy;
    cfg.k = o.k;
    cfg.mvdf = o.mvdf;
    cfg.views = o.views;
    cfg.seed = o.seed;
    return cfg;
}

std::optional<double> reference_for(const Instance& inst, const std::string& mode, std::uint64_t seed, bool rounding,
                                    bool& exact) {
    if (mode == "none") return std::nullopt;
    exact = exact && oracle::reference_is_exact(inst);
    const double ref = objective(inst, oracle::reference(inst, seed), rounding);
    return ref > 0.0 ? std::optional<double>(ref) : std::nullopt;
}

// ---------------------------------------------------------------------------
// gen

struct GenOptions {
    std::string kind;
    std::size_t scale = 0;
    std::string distribution = "uniform";
    std::optional<std::size_t> count;
    std::string out = "instances";
    std::uint64_t seed = 0;
    int capacity = 0;
};

std::size_t default_count(ProblemKind kind, std::size_t scale) {
    if (kind == ProblemKind::tsp) return scale == 1000 ? 128 : 16;
    return scale <= 5000 ? 100 : 16;
}

int cmd_gen(const GenOptions& o, std::ostream& out) {
    const ProblemKind kind = parse_kind(o.kind);
    const Distribution dist = parse_distribution(o.distribution);
    if (o.scale < 1) throw std::invalid_argument("scale must be >= 1");
    const std::size_t count = o.count.value_or(default_count(kind, o.scale));
    ensure_dir(o.out);

    nlohmann::json manifest = {{"kind", kind_name(kind)}, {"scale", o.scale}, {"distribution", o.distribution},
                               {"base_seed", o.seed}, {"instances", nlohmann::json::array()}};
    const std::string ext = kind == ProblemKind::tsp ? ".tsp" : ".vrp";
    for (std::size_t i = 0; i < count; ++i) {
        const std::uint64_t seed = o.seed + i;
        Instance inst = generate(dist, o.scale, kind, seed, {}, o.capacity);
        std::ostringstream name;
        name << (kind == ProblemKind::tsp ? "tsp" : "cvrp") << o.scale << '_' << o.distribution << '_'
             << std::setw(3) << std::setfill('0') << i;
        inst.name = name.str();
        const fs::path file = fs::path(o.out) / (inst.name + ext);
        write_tsplib(inst, file.string());
        manifest["capacity"] = inst.capacity;
        manifest["instances"].push_back({{"file", file.filename().string()}, {"seed", seed}});
    }
    write_text(fs::path(o.out) / "manifest.json", manifest.dump(2) + "\n");
    out << "wrote " << count << " instances to " << o.out << '\n';
    return kExitOk;
}

// ---------------------------------------------------------------------------
// solve

struct SolveOptions {
    std::vector<std::string> instances;
    std::string strategy = "seed";
    std::size_t rrc = 0;
    std::string out = "results";
    std::string reference = "auto";
    bool rounding = false;
    SolverOptions solver;
};

int cmd_solve(const SolveOptions& o, std::ostream& out) {
    // Lookups first so that configuration mistakes surface before any work.
    const Strategy strategy = resolve_strategy(o.strategy);
    const auto policy = make_policy(o.solver.policy, o.solver.weights);
    const SolverConfig cfg = make_solver(o.solver, *policy, strategy.fn);
    const std::vector<Loaded> inputs = load_instances(o.instances);
    ensure_dir(o.out);
    ensure_dir((fs::path(o.out) / "solutions").string());

    std::string method = strategy.label;
    if (o.solver.mvdf) method += "+mvdf";
    if (o.rrc > 0) method += "+rrc" + std::to_string(o.rrc);

    struct Result {
        double objective = 0.0;
        double seconds = 0.0;
        std::optional<double> reference;
        bool exact = true;
    };
    std::vector<Result> results(inputs.size());
    parallel_for(inputs.size(), o.solver.jobs, [&](std::size_t i) {
        const Instance& inst = inputs[i].instance;
        const auto t0 = Clock::now();
        Solution sol = construct(inst, cfg);
        if (o.rrc > 0) sol = rrc(inst, sol, o.rrc, cfg, o.solver.seed + i);
        results[i].seconds = seconds_since(t0);
        write_solution(sol, (fs::path(o.out) / "solutions" / (inst.name + ".sol")).string());
        results[i].objective = objective(inst, sol, o.rounding);
        results[i].reference = reference_for(inst, o.reference, o.solver.seed, o.rounding, results[i].exact);
    });

    GapReport report;
    bool all_exact = o.reference != "none";
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        report.add(inputs[i].instance.name, method, results[i].objective, results[i].reference, results[i].seconds);
        all_exact = all_exact && results[i].exact;
    }
    report.reference_kind = all_exact ? "exact" : "reference";
    write_text(fs::path(o.out) / "solve_rows.csv", report.rows_csv());
    write_text(fs::path(o.out) / "solve_summary.csv", report.summary_csv());
    out << report.summary_table();
    return kExitOk;
}

// ---------------------------------------------------------------------------
// evolve

struct EvolveOptions {
    std::string kind = "tsp";
    std::size_t scale = 1000;
    std::string distribution = "uniform";
    std::vector<std::string> eval_instances;
    std::size_t eval_size = 4;
    std::uint64_t eval_seed = 1000000;
    std::size_t population = 20;
    std::size_t generations = 105;
    std::string generator = "mock";
    bool offspring_per_operator = false;
    std::string out = "evolve";
    std::vector<std::size_t> transfer;
    int llm_timeout = 60;
    int llm_retries = 3;
    double llm_temperature = 1.0;
    SolverOptions solver;
};

int cmd_evolve(const EvolveOptions& o, std::ostream& out) {
    evolution::EvolutionConfig ecfg;
    ecfg.population = o.population;
    ecfg.generations = o.generations;
    ecfg.offspring_per_operator = o.offspring_per_operator;
    ecfg.jobs = o.solver.jobs;
    ecfg.seed = o.solver.seed;
    evolution::validate(ecfg);

    std::unique_ptr<evolution::Generator> generator;
    if (o.generator == "llm") {
        evolution::LlmConfig lc = evolution::LlmConfig::from_env();
        lc.timeout = std::chrono::seconds(o.llm_timeout);
        lc.retries = o.llm_retries;
        lc.temperature = o.llm_temperature;
        generator = std::make_unique<evolution::LlmGenerator>(lc);
    } else {
        generator = evolution::make_generator(o.generator);
    }
    const auto policy = make_policy(o.solver.policy, o.solver.weights);
    const SolverConfig cfg = make_solver(o.solver, *policy, projection::identity);

    evolution::EvaluationSet set;
    set.kind = parse_kind(o.kind);
    if (!o.eval_instances.empty()) {
        for (auto& l : load_instances(o.eval_instances)) set.instances.push_back(std::move(l.instance));
        set.kind = set.instances.front().kind;
    } else {
        if (o.eval_size < 1) throw std::invalid_argument("eval-size must be >= 1");
        const Distribution dist = parse_distribution(o.distribution);
        for (std::size_t i = 0; i < o.eval_size; ++i) {
            set.instances.push_back(generate(dist, o.scale, set.kind, o.eval_seed + i));
        }
    }
    ensure_dir(o.out);

    const auto t0 = Clock::now();
    const evolution::RunResult result = evolution::run(*generator, set, cfg, ecfg);
    const double elapsed = seconds_since(t0);

    dsl::StrategyFile best;
    best.name = "evolved";
    best.description = result.best.description;
    best.source = result.best.source();
    best.created_by = "evolve/" + generator->name();
    best.fitness = result.best.fitness;
    dsl::write_strategy_file(best, (fs::path(o.out) / "best_strategy.json").string());
    evolution::write_history_csv(result.history, (fs::path(o.out) / "history.csv").string());

    std::ostringstream pop;
    pop << "rank,fitness,source\n";
    for (std::size_t i = 0; i < result.population.individuals.size(); ++i) {
        const auto& ind = result.population.individuals[i];
        pop << (i + 1) << ',' << format_double(ind.fitness.value()) << ",\"" << ind.source() << "\"\n";
    }
    write_text(fs::path(o.out) / "population.csv", pop.str());

    out << "generations: " << o.generations << "  population: " << o.population << "  time: "
        << format_duration(elapsed) << '\n';
    out << "initial best fitness: " << format_double(result.history.front().best_fitness) << '\n';
    out << "final best fitness:   " << format_double(result.best.fitness.value()) << '\n';
    out << "best program: " << best.source << '\n';

    if (!o.transfer.empty()) {
        SolverConfig seed_cfg = cfg;
        seed_cfg.strategy = dsl::as_projection(dsl::builtin_program("seed"));
        SolverConfig best_cfg = cfg;
        best_cfg.strategy = dsl::as_projection(result.best.program);
        GapReport report;
        for (std::size_t scale : o.transfer) {
            const Instance inst = generate(parse_distribution(o.distribution), scale, set.kind, o.eval_seed + scale);
            auto t = Clock::now();
            report.add(inst.name, "seed", construct(inst, seed_cfg).objective, std::nullopt, seconds_since(t));
            t = Clock::now();
            report.add(inst.name, "evolved", construct(inst, best_cfg).objective, std::nullopt, seconds_since(t));
        }
        write_text(fs::path(o.out) / "transfer_rows.csv", report.rows_csv());
        out << report.rows_csv();
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// bench

struct BenchOptions {
    std::vector<std::string> instances;
    std::string evolved;
    std::size_t rrc = 1000;
    std::string out = "bench";
    std::string reference = "auto";
    bool rounding = false;
    SolverOptions solver;
};

int cmd_bench(const BenchOptions& o, std::ostream& out) {
    const auto policy = make_policy(o.solver.policy, o.solver.weights);
    const std::vector<Loaded> inputs = load_instances(o.instances);
    const Instance& first = inputs.front().instance;
    const std::string evolved_spec = o.evolved.empty() ? default_evolved(first.kind, first.customer_count()) : o.evolved;

    struct Method {
        std::string strategy_label;
        Projection fn;
        bool mvdf;
    };
    std::vector<Method> methods;
    const std::vector<std::pair<std::string, std::string>> strategies = {
        {"identity", "identity"}, {"seed", "seed"}, {"evolved", evolved_spec}};
    for (const auto& [label, spec] : strategies) {
        const Strategy s = resolve_strategy(spec);
        methods.push_back({label, s.fn, false});
        methods.push_back({label, s.fn, true});
    }
    ensure_dir(o.out);

    auto method_name = [](const Method& m, std::size_t rrc_iters) {
        std::string n = m.strategy_label + (m.mvdf ? "+mvdf" : "");
        if (rrc_iters > 0) n += "+rrc" + std::to_string(rrc_iters);
        return n;
    };
    std::vector<std::string> names;
    for (const Method& m : methods) {
        names.push_back(method_name(m, 0));
        if (o.rrc > 0) names.push_back(method_name(m, o.rrc));
    }
    for (const auto& n : names) ensure_dir((fs::path(o.out) / "solutions" / n).string());

    struct Cell {
        double objective = 0.0;
        double seconds = 0.0;
    };
    std::vector<std::vector<Cell>> cells(inputs.size(), std::vector<Cell>(names.size()));
    std::vector<std::optional<double>> refs(inputs.size());
    std::vector<std::uint8_t> exact(inputs.size(), 1);

    parallel_for(inputs.size(), o.solver.jobs, [&](std::size_t i) {
        const Instance& inst = inputs[i].instance;
        bool is_exact = true;
        refs[i] = reference_for(inst, o.reference, o.solver.seed, o.rounding, is_exact);
        exact[i] = is_exact;
        std::size_t col = 0;
        for (const Method& m : methods) {
            SolverOptions so = o.solver;
            so.mvdf = m.mvdf;
            const SolverConfig cfg = make_solver(so, *policy, m.fn);
            auto store = [&](const Solution& sol, double secs) {
                // Objectives are reported from the stored file, which re-verifies them.
                const fs::path file = fs::path(o.out) / "solutions" / names[col] / (inst.name + ".sol");
                write_solution(sol, file.string());
                const Solution stored = read_solution(file.string(), inst);
                cells[i][col] = {o.rounding ? objective(inst, stored, true) : stored.objective, secs};
                ++col;
            };
            const auto t0 = Clock::now();
            const Solution sol = construct(inst, cfg);
            const double t_construct = seconds_since(t0);
            store(sol, t_construct);
            if (o.rrc > 0) {
                const auto t1 = Clock::now();
                const Solution improved = rrc(inst, sol, o.rrc, cfg, o.solver.seed + i);
                store(improved, t_construct + seconds_since(t1));
            }
        }
    });

    GapReport report;
    bool all_exact = o.reference != "none";
    for (std::size_t c = 0; c < names.size(); ++c) {
        for (std::size_t i = 0; i < inputs.size(); ++i) {
            report.add(inputs[i].instance.name, names[c], cells[i][c].objective, refs[i], cells[i][c].seconds);
        }
    }
    for (auto e : exact) all_exact = all_exact && e;
    report.reference_kind = all_exact ? "exact" : "reference";
    write_text(fs::path(o.out) / "bench_rows.csv", report.rows_csv());
    write_text(fs::path(o.out) / "bench_summary.csv", report.summary_csv());
    const std::string table = report.summary_table();
    write_text(fs::path(o.out) / "bench_table.txt", table);
    out << "evolved strategy: " << evolved_spec << '\n' << table;
    return kExitOk;
}

// ---------------------------------------------------------------------------
// oracle

struct OracleOptions {
    std::vector<std::string> instances;
    std::string method = "auto";
    std::string out = "oracle";
    std::uint64_t seed = 0;
    std::size_t jobs = 0;
};

int cmd_oracle(const OracleOptions& o, std::ostream& out) {
    static const std::vector<std::string> known = {"auto", "held-karp", "brute-force", "two-opt", "random-insertion",
                                                   "nearest-neighbor"};
    if (std::find(known.begin(), known.end(), o.method) == known.end()) {
        throw std::invalid_argument("unknown oracle method '" + o.method + "'");
    }
    const std::vector<Loaded> inputs = load_instances(o.instances);
    ensure_dir((fs::path(o.out) / "solutions").string());
    std::vector<Solution> sols(inputs.size());
    std::vector<double> secs(inputs.size());
    parallel_for(inputs.size(), o.jobs, [&](std::size_t i) {
        const Instance& inst = inputs[i].instance;
        const auto t0 = Clock::now();
        if (o.method == "auto") {
            sols[i] = oracle::reference(inst, o.seed);
        } else if (o.method == "held-karp") {
            sols[i] = oracle::held_karp(inst);
        } else if (o.method == "brute-force") {
            sols[i] = oracle::brute_force_cvrp(inst);
        } else if (o.method == "two-opt") {
            oracle::TwoOptOptions opt;
            if (inst.size() > 2000) opt.neighbors = 10;
            sols[i] = oracle::two_opt(inst, oracle::random_insertion(inst, o.seed), opt);
        } else if (o.method == "random-insertion") {
            sols[i] = oracle::random_insertion(inst, o.seed);
        } else {
            sols[i] = oracle::nearest_neighbor(inst);
        }
        secs[i] = seconds_since(t0);
        write_solution(sols[i], (fs::path(o.out) / "solutions" / (inst.name + ".sol")).string());
    });
    GapReport report;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        report.add(inputs[i].instance.name, o.method, sols[i].objective, std::nullopt, secs[i]);
    }
    write_text(fs::path(o.out) / "oracle_rows.csv", report.rows_csv());
    out << report.rows_csv();
    return kExitOk;
}

std::string trim(std::string_view v) {
    const auto b = v.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = v.find_last_not_of(" \t\r");
    return std::string(v.substr(b, e - b + 1));
}

bool names_option(const CLI::Option* opt, const std::string& token) {
    if (token.size() < 2 || token[0] != '-') return false;
    return opt->check_name(token.substr(0, token.find('=')));
}

// Expands `--config FILE` into options. The file holds one `key = value` per
// line, where key is a long option name of the subcommand; `#` starts a
// comment. Options given on the command line win over the file.
std::vector<std::string> expand_config(CLI::App& app, std::vector<std::string> args) {
    std::optional<std::string> path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 == args.size()) throw std::invalid_argument("--config needs a file name");
            path = args[i + 1];
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
            break;
        }
    }
    if (!path) return args;

    CLI::App* sub = nullptr;
    for (const std::string& a : args) {
        if ((sub = app.get_subcommand_no_throw(a)) != nullptr) break;
    }
    if (sub == nullptr) throw std::invalid_argument("--config needs a subcommand");
    std::ifstream in(*path);
    if (!in) throw std::invalid_argument("cannot read config file " + *path);

    std::vector<std::string> extra;
    std::string line;
    for (int lineno = 1; std::getline(in, line); ++lineno) {
        line = trim(line.substr(0, line.find('#')));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument(*path + ":" + std::to_string(lineno) + ": expected key=value");
        }
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));
        const CLI::Option* opt = sub->get_option_no_throw("--" + key);
        if (opt == nullptr || !opt->nonpositional()) {
            throw std::invalid_argument(*path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
        if (std::any_of(args.begin(), args.end(), [&](const std::string& a) { return names_option(opt, a); })) continue;
        if (opt->get_items_expected_max() == 0) {
            if (value == "true" || value == "1") extra.push_back("--" + key);
            continue;
        }
        extra.push_back("--" + key);
        std::istringstream words(value);
        for (std::string w; words >> w;) extra.push_back(w);
    }
    args.insert(args.end(), extra.begin(), extra.end());
    return args;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Projection-based greedy construction for TSP and CVRP", "routeproj"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "routeproj 0.1.0");
    app.footer("Every subcommand also accepts --config FILE: key=value lines naming long options.\n"
               "Options given on the command line take precedence.");

    GenOptions gen;
    auto* g = app.add_subcommand("gen", "generate synthetic instances");
    g->add_option("kind", gen.kind, "tsp | cvrp")->required();
    g->add_option("scale", gen.scale, "nodes (TSP) or customers (CVRP)")->required();
    g->add_option("distribution", gen.distribution, "uniform | clustered | explosion | implosion")->capture_default_str();
    g->add_option("-n,--count", gen.count, "number of instances (default depends on scale)");
    g->add_option("-o,--out", gen.out, "output directory")->capture_default_str();
    g->add_option("--seed", gen.seed, "base seed; instance i uses seed + i")->capture_default_str();
    g->add_option("--capacity", gen.capacity, "CVRP capacity (default 200 up to 1000 customers, else 300)");

    SolveOptions solve;
    auto* s = app.add_subcommand("solve", "construct solutions for instance files");
    s->add_option("instances", solve.instances, "instance files or directories")->required();
    s->add_option("--strategy", solve.strategy, "built-in name, strategy JSON file or inline program")->capture_default_str();
    s->add_option("--rrc", solve.rrc, "random re-construction iterations")->capture_default_str();
    s->add_option("-o,--out", solve.out, "output directory")->capture_default_str();
    s->add_option("--reference", solve.reference, "auto | none")->check(CLI::IsMember({"auto", "none"}))->capture_default_str();
    s->add_flag("--tsplib-rounding", solve.rounding, "report objectives with nearest-integer edge costs");
    add_solver_options(s, solve.solver);

    EvolveOptions evolve;
    auto* e = app.add_subcommand("evolve", "search for a projection program");
    e->add_option("--kind", evolve.kind, "tsp | cvrp")->capture_default_str();
    e->add_option("--scale", evolve.scale, "evaluation instance scale")->capture_default_str();
    e->add_option("--distribution", evolve.distribution, "evaluation distribution")->capture_default_str();
    e->add_option("--eval-instances", evolve.eval_instances, "evaluation instance files (instead of generating)");
    e->add_option("--eval-size", evolve.eval_size, "generated evaluation instances")->capture_default_str();
    e->add_option("--eval-seed", evolve.eval_seed, "seed of the generated evaluation set")->capture_default_str();
    e->add_option("-N,--population", evolve.population, "population size")->capture_default_str();
    e->add_option("-G,--generations", evolve.generations, "generations")->capture_default_str();
    e->add_option("--generator", evolve.generator, "mock | llm")->check(CLI::IsMember({"mock", "llm"}))->capture_default_str();
    e->add_flag("--offspring-per-operator", evolve.offspring_per_operator, "N offspring for each operator per generation");
    e->add_option("-o,--out", evolve.out, "output directory")->capture_default_str();
    e->add_option("--transfer", evolve.transfer, "evaluate the best program on one instance of each scale");
    e->add_option("--llm-timeout", evolve.llm_timeout, "seconds per request")->capture_default_str();
    e->add_option("--llm-retries", evolve.llm_retries, "retries per request")->capture_default_str();
    e->add_option("--llm-temperature", evolve.llm_temperature, "sampling temperature")->capture_default_str();
    add_solver_options(e, evolve.solver);

    BenchOptions bench;
    auto* b = app.add_subcommand("bench", "compare identity, seed and evolved projections");
    b->add_option("instances", bench.instances, "instance files or directories")->required();
    b->add_option("--evolved", bench.evolved, "evolved strategy (default: built-in formula for the scale)");
    b->add_option("--rrc", bench.rrc, "iterations of the re-construction rows")->capture_default_str();
    b->add_option("-o,--out", bench.out, "output directory")->capture_default_str();
    b->add_option("--reference", bench.reference, "auto | none")->check(CLI::IsMember({"auto", "none"}))->capture_default_str();
    b->add_flag("--tsplib-rounding", bench.rounding, "report objectives with nearest-integer edge costs");
    add_solver_options(b, bench.solver);
    // The grid toggles MVDF itself.
    b->remove_option(b->get_option("--mvdf"));

    OracleOptions orc;
    auto* r = app.add_subcommand("oracle", "exact and reference solvers");
    r->add_option("instances", orc.instances, "instance files or directories")->required();
    r->add_option("--method", orc.method, "auto | held-karp | brute-force | two-opt | random-insertion | nearest-neighbor")
        ->capture_default_str();
    r->add_option("-o,--out", orc.out, "output directory")->capture_default_str();
    r->add_option("--seed", orc.seed, "random seed")->capture_default_str();
    r->add_option("-j,--jobs", orc.jobs, "worker threads (0 = all cores)")->capture_default_str();

    std::vector<std::string> expanded;
    try {
        expanded = expand_config(app, args);
    } catch (const std::invalid_argument& ex) {
        err << "error: " << ex.what() << '\n';
        return kExitConfig;
    }
    try {
        std::vector<std::string> reversed(expanded.rbegin(), expanded.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& ex) {
        const int code = app.exit(ex, out, err);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (g->parsed()) return cmd_gen(gen, out);
        if (s->parsed()) return cmd_solve(solve, out);
        if (e->parsed()) return cmd_evolve(evolve, out);
        if (b->parsed()) return cmd_bench(bench, out);
        if (r->parsed()) return cmd_oracle(orc, out);
    } catch (const std::invalid_argument& ex) {
        err << "error: " << ex.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << '\n';
        return kExitRuntime;
    }
    return kExitConfig;
}

}  // namespace routeproj::cli
