#pragma once

// Population search over projection programs: rank-based parent selection,
// operator-cycled offspring generation, evaluation through the constructor and
// elitist truncation.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "routeproj/constructor.hpp"
#include "routeproj/dsl.hpp"
#include "routeproj/generators.hpp"
#include "routeproj/instance.hpp"

namespace routeproj::evolution {

struct Individual {
    dsl::Program program;
    std::string description;
    std::optional<double> fitness;  // -(mean objective); higher is better

    std::string source() const { return program.source(); }
};

struct Population {
    std::vector<Individual> individuals;  // sorted by descending fitness
    std::size_t capacity = 0;
    std::size_t generation = 0;
};

struct EvaluationSet {
    ProblemKind kind = ProblemKind::tsp;
    std::vector<Instance> instances;
    std::vector<std::optional<double>> references;  // optional, one per instance
};

struct EvolutionConfig {
    std::size_t population = 20;
    std::size_t generations = 105;
    // false: N offspring per generation, operators cycled E1, E2, M1, M2.
    // true: N offspring for each of the four operators.
    bool offspring_per_operator = false;
    std::size_t duplicate_retries = 8;
    std::size_t jobs = 1;
    std::uint64_t seed = 0;
};

/// Throws std::invalid_argument for N < 1.
void validate(const EvolutionConfig& config);

/// -(mean objective over the set). `solver.strategy` is replaced by the
/// program. Throws if construction fails on any instance.
double evaluate(const dsl::Program& program, const EvaluationSet& set, const SolverConfig& solver,
                std::size_t jobs = 1);

/// p_i = 2^-r_i / sum_j 2^-r_j for ranks 1..n.
std::vector<double> rank_probabilities(std::size_t n);

/// Two draws with replacement from a population sorted by fitness.
std::vector<const Individual*> select_parents(const Population& pop, std::mt19937_64& rng, std::size_t count = 2);

struct GenerationStats {
    std::size_t generation = 0;
    double best_fitness = 0.0;
    double mean_fitness = 0.0;
    std::size_t failures = 0;
};

/// Asks `generator` for one child. Returns std::nullopt (and bumps `failures`)
/// on unparseable output or transport errors.
std::optional<Individual> generate_offspring(const std::vector<const Individual*>& parents, Generator& generator,
                                             Operator op, std::uint64_t seed, std::size_t& failures);

/// N distinct evaluated individuals; the seed strategy is always one of them.
Population init_population(Generator& generator, const EvaluationSet& set, const SolverConfig& solver,
                           const EvolutionConfig& config, std::size_t& failures);

/// Merge, drop duplicates (incumbents win), sort by fitness, keep the best N.
void update_population(Population& pop, std::vector<Individual> offspring);

struct RunResult {
    Individual best;
    Population population;
    std::vector<GenerationStats> history;  // generation 0 is the initial population
};

RunResult run(Generator& generator, const EvaluationSet& set, const SolverConfig& solver,
              const EvolutionConfig& config);

/// generation,best_fitness,mean_fitness,n_failures
std::string history_csv(const std::vector<GenerationStats>& history);
void write_history_csv(const std::vector<GenerationStats>& history, const std::string& path);

}  // namespace routeproj::evolution
