#include "routeproj/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "routeproj/instance_io.hpp"
#include "routeproj/parallel.hpp"

namespace routeproj::evolution {

void validate(const EvolutionConfig& cfg) {
    if (cfg.population < 1) throw std::invalid_argument("population size must be >= 1");
}

double evaluate(const dsl::Program& program, const EvaluationSet& set, const SolverConfig& solver, std::size_t jobs) {
    if (set.instances.empty()) throw std::invalid_argument("empty evaluation set");
    SolverConfig cfg = solver;
    cfg.strategy = dsl::as_projection(program);
    std::vector<double> obj(set.instances.size());
    parallel_for(set.instances.size(), jobs, [&](std::size_t i) { obj[i] = construct(set.instances[i], cfg).objective; });
    // Summed in instance order so the result does not depend on `jobs`.
    const double mean = std::accumulate(obj.begin(), obj.end(), 0.0) / static_cast<double>(obj.size());
    if (!std::isfinite(mean)) throw std::runtime_error("non-finite objective");
    return -mean;
}

std::vector<double> rank_probabilities(std::size_t n) {
    std::vector<double> p(n);
    double total = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        p[r] = std::ldexp(1.0, -static_cast<int>(r + 1));
        total += p[r];
    }
    for (double& v : p) v /= total;
    return p;
}

std::vector<const Individual*> select_parents(const Population& pop, std::mt19937_64& rng, std::size_t count) {
    if (pop.individuals.empty()) throw std::invalid_argument("cannot select parents from an empty population");
    const std::vector<double> p = rank_probabilities(pop.individuals.size());
    std::discrete_distribution<std::size_t> pick(p.begin(), p.end());
    std::vector<const Individual*> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(&pop.individuals[pick(rng)]);
    return out;
}

std::optional<Individual> generate_offspring(const std::vector<const Individual*>& parents, Generator& generator,
                                             Operator op, std::uint64_t seed, std::size_t& failures) {
    OffspringRequest req;
    req.op = op;
    req.seed = seed;
    for (std::size_t i = 0; i < operator_arity(op); ++i) {
        const Individual* p = parents.at(std::min(i, parents.size() - 1));
        req.parents.push_back(Parent{p->description, p->source(), p->fitness});
    }
    std::optional<Draft> draft;
    try {
        draft = generator.generate(req);
    } catch (const GeneratorError&) {
        ++failures;
        return std::nullopt;
    }
    if (!draft) {
        ++failures;
        return std::nullopt;
    }
    try {
        Individual child;
        child.program = dsl::parse(draft->source);
        child.program.description = draft->description;
        child.description = draft->description;
        return child;
    } catch (const dsl::DslError&) {
        ++failures;
        return std::nullopt;
    }
}

namespace {

bool by_fitness(const Individual& a, const Individual& b) { return a.fitness.value() > b.fitness.value(); }

// Evaluates every individual; those whose evaluation fails are dropped and
// counted as failures.
std::vector<Individual> evaluate_all(std::vector<Individual> batch, const EvaluationSet& set, const SolverConfig& solver,
                                     std::size_t jobs, std::size_t& failures) {
    std::vector<std::uint8_t> ok(batch.size(), 0);
    parallel_for(batch.size(), jobs, [&](std::size_t i) {
        try {
            batch[i].fitness = evaluate(batch[i].program, set, solver);
            ok[i] = 1;
        } catch (const std::exception&) {
            ok[i] = 0;
        }
    });
    std::vector<Individual> out;
    for (std::size_t i = 0; i < batch.size(); ++i) {
        if (ok[i]) {
            out.push_back(std::move(batch[i]));
        } else {
            ++failures;
        }
    }
    return out;
}

GenerationStats stats_of(const Population& pop, std::size_t failures) {
    GenerationStats s;
    s.generation = pop.generation;
    s.failures = failures;
    if (pop.individuals.empty()) return s;
    s.best_fitness = pop.individuals.front().fitness.value();
    double total = 0.0;
    for (const auto& ind : pop.individuals) total += ind.fitness.value();
    s.mean_fitness = total / static_cast<double>(pop.individuals.size());
    return s;
}

const std::string& seed_source() {
    static const std::string s = dsl::builtin_program("seed").source();
    return s;
}

}  // namespace

Population init_population(Generator& generator, const EvaluationSet& set, const SolverConfig& solver,
                           const EvolutionConfig& cfg, std::size_t& failures) {
    validate(cfg);
    std::mt19937_64 rng(cfg.seed);
    Population pop;
    pop.capacity = cfg.population;

    Individual seed;
    seed.program = dsl::builtin_program("seed");
    seed.description = "Shift by the minimum of the window, divide by the largest axis range, clip to the unit square.";
    seed.fitness = evaluate(seed.program, set, solver, cfg.jobs);
    pop.individuals.push_back(seed);

    std::set<std::string> seen{seed_source()};
    std::size_t attempts_left = (cfg.population - 1) * (cfg.duplicate_retries + 1);
    std::uint64_t pad_seed = rng();
    while (pop.individuals.size() < cfg.population) {
        // Draft a batch of distinct candidates, then evaluate it in one go.
        std::vector<Individual> batch;
        while (pop.individuals.size() + batch.size() < cfg.population) {
            std::optional<Individual> child;
            if (attempts_left > 0) {
                --attempts_left;
                const std::vector<const Individual*> parents{&pop.individuals.front(), &pop.individuals.front()};
                child = generate_offspring(parents, generator, Operator::e1, rng(), failures);
            } else {
                // Generator keeps repeating itself: pad with fresh random programs.
                Individual fresh;
                fresh.program = dsl::random_program(pad_seed++);
                fresh.description = "random program";
                child = std::move(fresh);
            }
            if (child && seen.insert(child->source()).second) batch.push_back(std::move(*child));
        }
        for (auto& ind : evaluate_all(std::move(batch), set, solver, cfg.jobs, failures)) {
            pop.individuals.push_back(std::move(ind));
        }
    }
    std::stable_sort(pop.individuals.begin(), pop.individuals.end(), by_fitness);
    return pop;
}

void update_population(Population& pop, std::vector<Individual> offspring) {
    std::set<std::string> seen;
    std::vector<Individual> merged;
    merged.reserve(pop.individuals.size() + offspring.size());
    for (auto* group : {&pop.individuals, &offspring}) {
        for (auto& ind : *group) {
            if (!ind.fitness || !std::isfinite(*ind.fitness)) continue;
            if (!seen.insert(ind.source()).second) continue;
            merged.push_back(std::move(ind));
        }
    }
    std::stable_sort(merged.begin(), merged.end(), by_fitness);
    if (merged.size() > pop.capacity) merged.resize(pop.capacity);
    pop.individuals = std::move(merged);
    ++pop.generation;
}

RunResult run(Generator& generator, const EvaluationSet& set, const SolverConfig& solver, const EvolutionConfig& cfg) {
    validate(cfg);
    RunResult result;
    std::size_t failures = 0;
    result.population = init_population(generator, set, solver, cfg, failures);
    result.history.push_back(stats_of(result.population, failures));

    std::mt19937_64 rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
    const std::size_t n = cfg.population;
    for (std::size_t g = 0; g < cfg.generations; ++g) {
        failures = 0;
        std::vector<Individual> offspring;
        const std::size_t slots = cfg.offspring_per_operator ? 4 * n : n;
        for (std::size_t s = 0; s < slots; ++s) {
            const Operator op = cfg.offspring_per_operator ? kOperatorCycle[s / n] : kOperatorCycle[s % 4];
            const auto parents = select_parents(result.population, rng);
            auto child = generate_offspring(parents, generator, op, rng(), failures);
            if (child) offspring.push_back(std::move(*child));
        }
        update_population(result.population, evaluate_all(std::move(offspring), set, solver, cfg.jobs, failures));
        result.history.push_back(stats_of(result.population, failures));
    }
    result.best = result.population.individuals.front();
    return result;
}

std::string history_csv(const std::vector<GenerationStats>& history) {
    std::ostringstream out;
    out << "generation,best_fitness,mean_fitness,n_failures\n";
    for (const auto& h : history) {
        out << h.generation << ',' << format_double(h.best_fitness) << ',' << format_double(h.mean_fitness) << ','
            << h.failures << '\n';
    }
    return out.str();
}

void write_history_csv(const std::vector<GenerationStats>& history, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write history file " + path);
    out << history_csv(history);
}

}  // namespace routeproj::evolution
