// Genetic algorithm over hopping patterns: seeded population, fitness-
// proportionate (or tournament) selection, single-point crossover, per-gene
// mutation, slot-0 elitism, and a warm-started sweep over band fillings.
//
// Determinism contract: a run is a pure function of (config, bond table,
// fillings). Every (filling, generation) pair draws from its own RNG
// substream and fitness evaluation is side-effect free, so the thread count
// used for evaluation can never perturb the evolution path.

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "concordia/concurrence.hpp"
#include "concordia/rng.hpp"

namespace concordia {

enum class SelectionKind { RouletteWheel, Tournament };

struct GaConfig {
    int population_size = 100;
    int generations = 150;
    double p_c = 0.70;   // crossover probability per pair
    double p_m = 0.002;  // mutation probability per gene
    double gene_min = 0.0;
    double gene_max = 5.0;  // genes live in the open interval (gene_min, gene_max)
    std::uint64_t seed = 1;
    SelectionKind selection = SelectionKind::RouletteWheel;
    int tournament_k = 3;  // only used by Tournament selection
    int threads = 0;       // fitness-evaluation parallelism; 0 = hardware
};

struct GenerationStats {
    int filling_k = 0;
    int generation = 0;
    double avg_fitness = 0.0;
    double best_fitness = 0.0;
    Chromosome best_chromosome;
};

struct FillingResult {
    int filling_k = 0;
    double best_fitness = 0.0;
    Chromosome best_chromosome;
};

struct RunResult {
    std::vector<FillingResult> per_filling;
    std::vector<GenerationStats> log;
};

// Throws std::invalid_argument on out-of-range probabilities, populations
// below 2, or gene_min >= gene_max.
void validate_config(const GaConfig& cfg);

// population_size chromosomes with every gene drawn uniformly from the open
// interval (gene_min, gene_max).
std::vector<Chromosome> init_population(const GaConfig& cfg, std::size_t n_genes, Rng& rng);

// Index of the selected parent. RouletteWheel picks proportionally to
// fitness with a uniform fallback when every fitness is zero; Tournament
// returns the best of k uniform draws.
std::size_t select_parent(const std::vector<double>& fitnesses, const GaConfig& cfg, Rng& rng);

// With probability p_c, swaps the tails of the two parents at a uniform cut
// in [1, n_genes-1]; otherwise returns copies. Single-gene chromosomes have
// no interior cut and always come back as copies.
std::pair<Chromosome, Chromosome> crossover(const Chromosome& a, const Chromosome& b,
                                            const GaConfig& cfg, Rng& rng);

// Each gene is independently redrawn from (gene_min, gene_max) with
// probability p_m.
Chromosome mutate(const Chromosome& chrom, const GaConfig& cfg, Rng& rng);

// Fitness of every individual, in population order. Evaluation may run on
// several threads; results are written by index so the output is identical
// regardless of scheduling.
std::vector<double> evaluate_population(const std::vector<Chromosome>& population,
                                        const BondTable& table, int k_fermions, int threads);

// One generation: evaluate, update `best` (elitism), record stats, then
// breed the next population with `best` pinned into slot 0. The incoming
// population is replaced by the new one.
GenerationStats step_generation(std::vector<Chromosome>& population, const BondTable& table,
                                int k_fermions, const GaConfig& cfg, Chromosome& best, Rng& rng,
                                int generation_index);

// Full optimization sweep. For each requested filling the population is
// reinitialized randomly except slot 0, which carries the best chromosome
// found so far -- initially random, then warm-started across fillings.
RunResult run_filling_sweep(const BondTable& table, const GaConfig& cfg,
                            const std::vector<int>& fillings);

}  // namespace concordia
