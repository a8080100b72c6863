#include <doctest.h>

#include <cmath>
#include <set>

#include "concordia/ga.hpp"

using namespace concordia;

namespace {

BondTable chain_table(int n, Boundary b) {
    return build_bond_table(LatticeSpec{LatticeKind::Chain, n, 0, 0, b, Shells::NN});
}

bool in_open_interval(const Chromosome& chrom, double lo, double hi) {
    for (double g : chrom.genes)
        if (!(g > lo && g < hi)) return false;
    return true;
}

}  // namespace

TEST_CASE("init_population draws inside the open gene interval, deterministically") {
    GaConfig cfg;
    cfg.population_size = 4;
    Rng rng_a(42);
    const auto pop_a = init_population(cfg, 3, rng_a);
    REQUIRE(pop_a.size() == 4);
    for (const Chromosome& c : pop_a) {
        REQUIRE(c.genes.size() == 3);
        CHECK(in_open_interval(c, cfg.gene_min, cfg.gene_max));
    }

    Rng rng_b(42);
    CHECK(init_population(cfg, 3, rng_b) == pop_a);

    Rng rng_c(43);
    CHECK(init_population(cfg, 3, rng_c) != pop_a);
}

TEST_CASE("config validation") {
    GaConfig cfg;
    cfg.population_size = 1;
    CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);
    cfg.population_size = 10;
    cfg.p_c = 1.5;
    CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);
    cfg.p_c = 0.7;
    cfg.gene_min = 5.0;
    cfg.gene_max = 5.0;
    CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);
}

TEST_CASE("roulette selection") {
    GaConfig cfg;
    Rng rng(1);

    SUBCASE("a degenerate wheel always picks the only nonzero slot") {
        const std::vector<double> fitnesses = {1.0, 0.0, 0.0, 0.0};
        for (int draw = 0; draw < 200; ++draw) CHECK(select_parent(fitnesses, cfg, rng) == 0);
    }
    SUBCASE("equal fitnesses select uniformly within 3 sigma") {
        const std::vector<double> fitnesses = {0.3, 0.3, 0.3, 0.3};
        int counts[4] = {0, 0, 0, 0};
        const int draws = 10000;
        for (int draw = 0; draw < draws; ++draw) ++counts[select_parent(fitnesses, cfg, rng)];
        const double sigma = std::sqrt(draws * 0.25 * 0.75);
        for (int slot = 0; slot < 4; ++slot) CHECK(std::abs(counts[slot] - 2500.0) <= 3.0 * sigma);
    }
    SUBCASE("all-zero fitnesses fall back to a uniform draw") {
        const std::vector<double> fitnesses = {0.0, 0.0, 0.0};
        std::set<std::size_t> seen;
        for (int draw = 0; draw < 200; ++draw) seen.insert(select_parent(fitnesses, cfg, rng));
        CHECK(seen.size() == 3);
    }
    SUBCASE("empty population is rejected") {
        CHECK_THROWS_AS(select_parent({}, cfg, rng), std::invalid_argument);
    }
}

TEST_CASE("tournament selection returns the best of its draws") {
    GaConfig cfg;
    cfg.selection = SelectionKind::Tournament;
    const std::vector<double> fitnesses = {0.1, 0.9, 0.3, 0.5};
    Rng rng(2);

    cfg.tournament_k = 4;  // enough rounds that the argmax dominates
    int wins = 0;
    const int draws = 2000;
    for (int draw = 0; draw < draws; ++draw)
        if (select_parent(fitnesses, cfg, rng) == 1) ++wins;
    // P(slot 1 in 4 draws with replacement) = 1 - (3/4)^4 = 175/256
    CHECK(std::abs(wins / static_cast<double>(draws) - 175.0 / 256.0) < 0.05);
}

TEST_CASE("crossover") {
    GaConfig cfg;
    Rng rng(3);
    const Chromosome a{{1.0, 1.0, 1.0}};
    const Chromosome b{{2.0, 2.0, 2.0}};

    SUBCASE("p_c = 0 copies the parents") {
        cfg.p_c = 0.0;
        const auto [ca, cb] = crossover(a, b, cfg, rng);
        CHECK(ca == a);
        CHECK(cb == b);
    }
    SUBCASE("p_c = 1 swaps a tail") {
        cfg.p_c = 1.0;
        for (int trial = 0; trial < 50; ++trial) {
            const auto [ca, cb] = crossover(a, b, cfg, rng);
            bool seen_cut = false;
            for (std::size_t g = 0; g < 3; ++g) {
                if (!seen_cut && ca.genes[g] == 2.0) seen_cut = true;
                CHECK(ca.genes[g] == (seen_cut ? 2.0 : 1.0));
                CHECK(cb.genes[g] == (seen_cut ? 1.0 : 2.0));
            }
            CHECK(seen_cut);  // cut position lies in [1, n-1], tails swap
        }
    }
    SUBCASE("children take every gene from one of the parents, positionally") {
        cfg.p_c = 0.7;
        Rng grng(4);
        for (int trial = 0; trial < 200; ++trial) {
            Chromosome pa, pb;
            for (int g = 0; g < 6; ++g) {
                pa.genes.push_back(grng.uniform(0.0, 5.0));
                pb.genes.push_back(grng.uniform(0.0, 5.0));
            }
            const auto [ca, cb] = crossover(pa, pb, cfg, grng);
            for (int g = 0; g < 6; ++g) {
                const bool from_a = ca.genes[g] == pa.genes[g] && cb.genes[g] == pb.genes[g];
                const bool from_b = ca.genes[g] == pb.genes[g] && cb.genes[g] == pa.genes[g];
                CHECK((from_a || from_b));
            }
        }
    }
    SUBCASE("single-gene chromosomes pass through unchanged") {
        cfg.p_c = 1.0;
        const auto [ca, cb] = crossover(Chromosome{{3.0}}, Chromosome{{4.0}}, cfg, rng);
        CHECK(ca.genes[0] == 3.0);
        CHECK(cb.genes[0] == 4.0);
    }
    SUBCASE("length mismatch is rejected") {
        CHECK_THROWS_AS(crossover(a, Chromosome{{1.0}}, cfg, rng), std::invalid_argument);
    }
}

TEST_CASE("mutation") {
    GaConfig cfg;
    Rng rng(5);
    Chromosome chrom;
    for (int g = 0; g < 20; ++g) chrom.genes.push_back(0.5 + 0.1 * g);

    SUBCASE("p_m = 0 is the identity") {
        cfg.p_m = 0.0;
        CHECK(mutate(chrom, cfg, rng) == chrom);
    }
    SUBCASE("p_m = 1 redraws every gene inside the interval") {
        cfg.p_m = 1.0;
        const Chromosome mutated = mutate(chrom, cfg, rng);
        CHECK(in_open_interval(mutated, cfg.gene_min, cfg.gene_max));
        for (std::size_t g = 0; g < chrom.genes.size(); ++g)
            CHECK(mutated.genes[g] != chrom.genes[g]);
    }
    SUBCASE("mutation count over a million gene trials is binomial") {
        cfg.p_m = 0.002;
        Chromosome wide;
        wide.genes.assign(1000, 2.5);
        int mutations = 0;
        for (int trial = 0; trial < 1000; ++trial) {
            const Chromosome mutated = mutate(wide, cfg, rng);
            for (std::size_t g = 0; g < wide.genes.size(); ++g)
                if (mutated.genes[g] != wide.genes[g]) ++mutations;
        }
        // 1e6 trials at p = 0.002: mean 2000, sigma ~44.7
        CHECK(std::abs(mutations - 2000.0) <= 3.0 * std::sqrt(1e6 * 0.002 * 0.998));
    }
}

TEST_CASE("step_generation") {
    const BondTable table = chain_table(6, Boundary::Periodic);
    GaConfig cfg;
    cfg.population_size = 20;
    cfg.threads = 1;

    SUBCASE("elitism keeps best_fitness non-decreasing and avg below best") {
        Rng init_rng(6);
        auto population = init_population(cfg, table.bonds.size(), init_rng);
        Chromosome best = population[0];
        double last_best = -1.0;
        for (int gen = 0; gen < 30; ++gen) {
            Rng gen_rng(substream(cfg.seed, 100, gen));
            const GenerationStats stats =
                step_generation(population, table, 2, cfg, best, gen_rng, gen);
            CHECK(stats.best_fitness >= last_best);
            CHECK(stats.avg_fitness <= stats.best_fitness + 1e-15);
            CHECK(in_open_interval(stats.best_chromosome, cfg.gene_min, cfg.gene_max));
            last_best = stats.best_fitness;
        }
    }
    SUBCASE("a uniform population without mutation is a fixed point") {
        cfg.p_m = 0.0;
        Chromosome seed_chrom;
        seed_chrom.genes.assign(table.bonds.size(), 1.5);
        std::vector<Chromosome> population(cfg.population_size, seed_chrom);
        Chromosome best = seed_chrom;
        Rng gen_rng(7);
        step_generation(population, table, 3, cfg, best, gen_rng, 0);
        for (const Chromosome& c : population) CHECK(c == seed_chrom);
    }
    SUBCASE("two-site chain at K=1 scores 0.5 in generation zero") {
        const BondTable pair = chain_table(2, Boundary::Open);
        Rng init_rng(8);
        auto population = init_population(cfg, pair.bonds.size(), init_rng);
        Chromosome best = population[0];
        Rng gen_rng(9);
        const GenerationStats stats = step_generation(population, pair, 1, cfg, best, gen_rng, 0);
        CHECK(stats.best_fitness == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(stats.avg_fitness == doctest::Approx(0.5).epsilon(1e-12));
    }
}

TEST_CASE("fitness evaluation is independent of the thread count") {
    const BondTable table = chain_table(10, Boundary::Periodic);
    GaConfig cfg;
    cfg.population_size = 17;
    Rng rng(10);
    const auto population = init_population(cfg, table.bonds.size(), rng);
    const auto serial = evaluate_population(population, table, 5, 1);
    const auto threaded = evaluate_population(population, table, 5, 4);
    CHECK(serial == threaded);
}

TEST_CASE("run_filling_sweep") {
    const BondTable table = chain_table(8, Boundary::Periodic);
    GaConfig cfg;
    cfg.population_size = 50;
    cfg.generations = 50;
    cfg.seed = 7;
    cfg.threads = 0;

    SUBCASE("vacuum filling scores zero") {
        const RunResult result = run_filling_sweep(table, cfg, {0});
        CHECK(result.per_filling.size() == 1);
        CHECK(result.per_filling[0].best_fitness == 0.0);
    }
    SUBCASE("identical runs produce identical results, any thread count") {
        GaConfig serial = cfg;
        serial.generations = 12;
        serial.threads = 1;
        GaConfig threaded = serial;
        threaded.threads = 4;
        const RunResult a = run_filling_sweep(table, serial, {2, 3});
        const RunResult b = run_filling_sweep(table, threaded, {2, 3});
        REQUIRE(a.log.size() == b.log.size());
        for (std::size_t row = 0; row < a.log.size(); ++row) {
            CHECK(a.log[row].avg_fitness == b.log[row].avg_fitness);
            CHECK(a.log[row].best_fitness == b.log[row].best_fitness);
            CHECK(a.log[row].best_chromosome == b.log[row].best_chromosome);
        }
    }
    SUBCASE("sweep beats the uniform pattern mid-band; band edges approach its bound") {
        // The uniform pattern is exactly optimal at K=1 and K=N-1 (the
        // fitness there is capped at 2/N for any chromosome), so the GA can
        // only approach those fillings from below. Mid-band the evolved
        // pattern must win outright.
        std::vector<int> fillings;
        for (int k = 1; k <= 7; ++k) fillings.push_back(k);
        const RunResult result = run_filling_sweep(table, cfg, fillings);
        Chromosome uniform;
        uniform.genes.assign(table.bonds.size(), 2.5);
        for (const FillingResult& fr : result.per_filling) {
            if (fr.filling_k == 3 || fr.filling_k == 5) {
                CHECK(fr.best_fitness >= fitness(table, uniform, fr.filling_k));
            }
            if (fr.filling_k == 1 || fr.filling_k == 7) {
                CHECK(fr.best_fitness <= 0.25 + 1e-12);
                CHECK(fr.best_fitness >= 0.249);
            }
        }
    }
    SUBCASE("fillings outside the band are rejected") {
        CHECK_THROWS_AS(run_filling_sweep(table, cfg, {9}), std::invalid_argument);
    }
}
