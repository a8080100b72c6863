#include "concordia/ga.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <stdexcept>
#include <string>
#include <thread>

namespace concordia {

namespace {

// Substream labels; combined with the filling so every (filling, generation)
// pair owns an independent stream.
enum StreamKind : std::uint64_t { kBestInit = 1, kPopulationInit = 2, kGeneration = 3 };

std::uint64_t stream_label(StreamKind kind, int filling_k) {
    return (static_cast<std::uint64_t>(kind) << 32) | static_cast<std::uint32_t>(filling_k);
}

Chromosome random_chromosome(const GaConfig& cfg, std::size_t n_genes, Rng& rng) {
    Chromosome chrom;
    chrom.genes.resize(n_genes);
    for (auto& gene : chrom.genes) gene = rng.uniform(cfg.gene_min, cfg.gene_max);
    return chrom;
}

}  // namespace

void validate_config(const GaConfig& cfg) {
    if (cfg.population_size < 2) throw std::invalid_argument("ga: population_size must be >= 2");
    if (cfg.generations < 1) throw std::invalid_argument("ga: generations must be >= 1");
    if (cfg.p_c < 0.0 || cfg.p_c > 1.0) throw std::invalid_argument("ga: p_c must lie in [0, 1]");
    if (cfg.p_m < 0.0 || cfg.p_m > 1.0) throw std::invalid_argument("ga: p_m must lie in [0, 1]");
    if (!(cfg.gene_min < cfg.gene_max))
        throw std::invalid_argument("ga: gene_min must be strictly below gene_max");
    if (cfg.selection == SelectionKind::Tournament && cfg.tournament_k < 1)
        throw std::invalid_argument("ga: tournament size must be >= 1");
    if (cfg.threads < 0) throw std::invalid_argument("ga: threads must be >= 0");
}

std::vector<Chromosome> init_population(const GaConfig& cfg, std::size_t n_genes, Rng& rng) {
    validate_config(cfg);
    if (n_genes < 1) throw std::invalid_argument("ga: chromosomes need at least one gene");
    std::vector<Chromosome> population;
    population.reserve(cfg.population_size);
    for (int m = 0; m < cfg.population_size; ++m)
        population.push_back(random_chromosome(cfg, n_genes, rng));
    return population;
}

std::size_t select_parent(const std::vector<double>& fitnesses, const GaConfig& cfg, Rng& rng) {
    const std::size_t n = fitnesses.size();
    if (n == 0) throw std::invalid_argument("select_parent: empty population");

    if (cfg.selection == SelectionKind::Tournament) {
        std::size_t winner = rng.below(n);
        for (int round = 1; round < cfg.tournament_k; ++round) {
            const std::size_t challenger = rng.below(n);
            if (fitnesses[challenger] > fitnesses[winner]) winner = challenger;
        }
        return winner;
    }

    double total = 0.0;
    for (double f : fitnesses) total += f;
    if (total <= 0.0) return rng.below(n);  // nothing to weight by yet

    const double ticket = rng.uniform01() * total;
    double cumulative = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
        cumulative += fitnesses[m];
        if (ticket < cumulative) return m;
    }
    return n - 1;
}

std::pair<Chromosome, Chromosome> crossover(const Chromosome& a, const Chromosome& b,
                                            const GaConfig& cfg, Rng& rng) {
    if (a.genes.size() != b.genes.size())
        throw std::invalid_argument("crossover: parents have different gene counts");
    std::pair<Chromosome, Chromosome> children{a, b};
    const std::size_t n = a.genes.size();
    if (n < 2 || !rng.bernoulli(cfg.p_c)) return children;

    const std::size_t cut = 1 + rng.below(n - 1);
    for (std::size_t g = cut; g < n; ++g)
        std::swap(children.first.genes[g], children.second.genes[g]);
    return children;
}

Chromosome mutate(const Chromosome& chrom, const GaConfig& cfg, Rng& rng) {
    Chromosome out = chrom;
    for (auto& gene : out.genes)
        if (rng.bernoulli(cfg.p_m)) gene = rng.uniform(cfg.gene_min, cfg.gene_max);
    return out;
}

std::vector<double> evaluate_population(const std::vector<Chromosome>& population,
                                        const BondTable& table, int k_fermions, int threads) {
    const std::size_t n = population.size();
    std::vector<double> fitnesses(n, 0.0);

    unsigned worker_count = threads > 0 ? static_cast<unsigned>(threads)
                                        : std::max(1u, std::thread::hardware_concurrency());
    worker_count = std::min<unsigned>(worker_count, static_cast<unsigned>(n));

    if (worker_count <= 1) {
        for (std::size_t m = 0; m < n; ++m) fitnesses[m] = fitness(table, population[m], k_fermions);
        return fitnesses;
    }

    std::atomic<std::size_t> cursor{0};
    std::vector<std::exception_ptr> errors(n);
    std::vector<std::thread> workers;
    workers.reserve(worker_count);
    for (unsigned w = 0; w < worker_count; ++w)
        workers.emplace_back([&] {
            for (std::size_t m = cursor.fetch_add(1); m < n; m = cursor.fetch_add(1)) {
                try {
                    fitnesses[m] = fitness(table, population[m], k_fermions);
                } catch (...) {
                    errors[m] = std::current_exception();
                }
            }
        });
    for (auto& worker : workers) worker.join();
    for (const auto& err : errors)
        if (err) std::rethrow_exception(err);
    return fitnesses;
}

GenerationStats step_generation(std::vector<Chromosome>& population, const BondTable& table,
                                int k_fermions, const GaConfig& cfg, Chromosome& best, Rng& rng,
                                int generation_index) {
    if (population.empty()) throw std::invalid_argument("step_generation: empty population");
    const std::vector<double> fitnesses =
        evaluate_population(population, table, k_fermions, cfg.threads);

    // The incumbent best sits in slot 0, so a first-index argmax keeps it on
    // ties and best_fitness can never decrease within a filling.
    std::size_t best_idx = 0;
    for (std::size_t m = 1; m < fitnesses.size(); ++m)
        if (fitnesses[m] > fitnesses[best_idx]) best_idx = m;
    best = population[best_idx];

    double sum = 0.0;
    for (double f : fitnesses) sum += f;

    GenerationStats stats{k_fermions, generation_index, sum / static_cast<double>(fitnesses.size()),
                          fitnesses[best_idx], best};

    std::vector<Chromosome> next;
    next.reserve(population.size());
    next.push_back(best);  // elite slot
    while (next.size() < population.size()) {
        const Chromosome& parent_a = population[select_parent(fitnesses, cfg, rng)];
        const Chromosome& parent_b = population[select_parent(fitnesses, cfg, rng)];
        auto [child_a, child_b] = crossover(parent_a, parent_b, cfg, rng);
        next.push_back(mutate(child_a, cfg, rng));
        if (next.size() < population.size()) next.push_back(mutate(child_b, cfg, rng));
    }
    population = std::move(next);
    return stats;
}

RunResult run_filling_sweep(const BondTable& table, const GaConfig& cfg,
                            const std::vector<int>& fillings) {
    validate_config(cfg);
    for (int k : fillings)
        if (k < 0 || k > table.n_sites)
            throw std::invalid_argument("run_filling_sweep: filling " + std::to_string(k) +
                                        " outside [0, " + std::to_string(table.n_sites) + "]");

    RunResult result;
    result.per_filling.reserve(fillings.size());
    result.log.reserve(fillings.size() * static_cast<std::size_t>(cfg.generations));

    Rng best_rng(substream(cfg.seed, stream_label(kBestInit, 0), 0));
    Chromosome best = random_chromosome(cfg, table.bonds.size(), best_rng);

    for (int k : fillings) {
        Rng init_rng(substream(cfg.seed, stream_label(kPopulationInit, k), 0));
        std::vector<Chromosome> population = init_population(cfg, table.bonds.size(), init_rng);
        population[0] = best;

        for (int gen = 0; gen < cfg.generations; ++gen) {
            Rng gen_rng(substream(cfg.seed, stream_label(kGeneration, k),
                                  static_cast<std::uint64_t>(gen)));
            result.log.push_back(step_generation(population, table, k, cfg, best, gen_rng, gen));
        }
        const GenerationStats& last = result.log.back();
        result.per_filling.push_back(FillingResult{k, last.best_fitness, best});
    }
    return result;
}

}  // namespace concordia
