#include "concordia/verify.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <string>
#include <vector>

#include "concordia/concurrence.hpp"
#include "concordia/oracle.hpp"
#include "concordia/rng.hpp"

namespace concordia {

namespace {

struct CheckReport {
    std::string name;
    bool passed = true;
    double worst = 0.0;
    int cases = 0;

    void record(double err) {
        worst = std::max(worst, err);
        ++cases;
    }
};

void print_report(std::ostream& out, const CheckReport& report, double tolerance) {
    out << (report.passed ? "[PASS] " : "[FAIL] ") << report.name << "  (" << report.cases
        << " cases, worst " << std::scientific << std::setprecision(2) << report.worst
        << ", tol " << tolerance << ")\n"
        << std::defaultfloat;
}

Chromosome random_chromosome(std::size_t n_genes, Rng& rng) {
    Chromosome chrom;
    chrom.genes.resize(n_genes);
    for (auto& g : chrom.genes) g = rng.uniform(0.0, 5.0);
    return chrom;
}

std::vector<LatticeSpec> sector_specs(int max_sites, bool include_nnn) {
    std::vector<LatticeSpec> specs;
    for (int n = 4; n <= max_sites; ++n)
        for (Boundary b : {Boundary::Open, Boundary::Periodic}) {
            specs.push_back(LatticeSpec{LatticeKind::Chain, n, 0, 0, b, Shells::NN});
            if (include_nnn && n >= 4)
                specs.push_back(LatticeSpec{LatticeKind::Chain, n, 0, 0, b, Shells::NNPlusNNN});
        }
    for (auto [r, c] : {std::pair{2, 2}, {2, 3}, {2, 4}, {3, 3}, {2, 5}, {3, 4}, {2, 6}}) {
        if (r * c > max_sites) continue;
        for (Boundary b : {Boundary::Open, Boundary::Periodic})
            specs.push_back(LatticeSpec{LatticeKind::Square, 0, r, c, b, Shells::NN});
    }
    return specs;
}

// Random pair density matrix satisfying the trace and positivity
// constraints; by construction |rho23| <= sqrt(rho22*rho33).
PairDensityMatrix random_pair_rho(Rng& rng) {
    double parts[4];
    double total = 0.0;
    for (auto& p : parts) {
        p = -std::log(rng.uniform01());
        total += p;
    }
    PairDensityMatrix rho;
    rho.rho11 = parts[0] / total;
    rho.rho22 = parts[1] / total;
    rho.rho33 = parts[2] / total;
    rho.rho44 = parts[3] / total;
    const double bound = std::sqrt(rho.rho22 * rho.rho33);
    rho.rho23 = rng.uniform(-bound, bound);
    return rho;
}

int scaled(int count, double scale) { return std::max(1, static_cast<int>(count * scale)); }

}  // namespace

int run_verify(VerifyScale scale, std::ostream& out, const VerifyOptions& options) {
    const bool full = scale == VerifyScale::Full;
    const double mult = options.sample_scale * (full ? 10.0 : 1.0);
    const int max_sites = full ? 12 : 10;
    Rng rng(options.seed);
    std::vector<CheckReport> reports;

    // Uniform periodic chains against the analytic cosine spectrum.
    {
        CheckReport report{"ring spectrum vs analytic"};
        constexpr double tol = 1e-10;
        for (int n = 3; n <= 16; ++n)
            for (double t : {1.0, 0.6, 2.7}) {
                LatticeSpec spec{LatticeKind::Chain, n, 0, 0, Boundary::Periodic, Shells::NN};
                const BondTable table = build_bond_table(spec);
                Chromosome uniform;
                uniform.genes.assign(table.bonds.size(), t);
                const Spectrum spectrum = diagonalize(assemble_hamiltonian(table, uniform));
                const std::vector<double> exact = analytic_ring_eigenvalues(n, t);
                for (int k = 0; k < n; ++k)
                    report.record(std::abs(spectrum.eigenvalues[k] - exact[k]));
            }
        report.passed = report.worst <= tol;
        print_report(out, report, tol);
        reports.push_back(report);
    }

    // Closed-form vs spectral concurrence on random density matrices.
    {
        CheckReport report{"concurrence closed vs spectral"};
        constexpr double tol = 1e-12;
        const int n_cases = scaled(5000, mult);
        for (int c = 0; c < n_cases; ++c) {
            const PairDensityMatrix rho = random_pair_rho(rng);
            report.record(std::abs(concurrence_closed(rho) - concurrence_spectral(rho)));
        }
        report.passed = report.worst <= tol;
        print_report(out, report, tol);
        reports.push_back(report);
    }

    // Wick-factorized correlators against the brute-force sector solve.
    {
        CheckReport report{"wick correlators vs brute force"};
        constexpr double tol = 1e-10;
        const std::vector<LatticeSpec> specs = sector_specs(max_sites, true);
        const int n_instances = scaled(240, mult);
        for (int inst = 0; inst < n_instances; ++inst) {
            const LatticeSpec& spec = specs[rng.below(specs.size())];
            const BondTable table = build_bond_table(spec);
            const Chromosome chrom = random_chromosome(table.bonds.size(), rng);
            const Spectrum spectrum = diagonalize(assemble_hamiltonian(table, chrom));

            // Comparing floating results at 1e-10 budgets residual/gap, so
            // the sampler stays clear of nearly-closed Fermi gaps on top of
            // the exact-degeneracy exclusion.
            int k = static_cast<int>(rng.below(table.n_sites + 1));
            int guard = 0;
            while (fermi_degenerate(spectrum, k, 1e-3) && guard++ < 64)
                k = static_cast<int>(rng.below(table.n_sites + 1));
            if (fermi_degenerate(spectrum, k, 1e-3)) continue;

            const ManyBodyGroundState ground = fock_ground_state(table, chrom, k);
            if (ground.degenerate) continue;
            const FockBasis basis = build_fock_basis(table.n_sites, k);
            const OneBodyDensity density = one_body_density(spectrum, k);

            for (int i = 0; i < table.n_sites; ++i)
                for (int j = i + 1; j < table.n_sites; ++j) {
                    FockCorrelators exact = fock_correlators(basis, ground, i, j);
                    PairDensityMatrix rho_exact = fock_pair_rho(basis, ground, i, j);
                    if (options.inject_sign_bug) {
                        exact.cj_ci_dag = -exact.cj_ci_dag;
                        rho_exact.rho23 = -rho_exact.rho23;
                    }
                    const PairDensityMatrix rho = pair_rho(density, i, j);
                    report.record(std::abs(density.g(i, i) - exact.n_i));
                    report.record(std::abs(rho.rho44 - exact.n_i_n_j));
                    report.record(std::abs(rho.rho23 - exact.cj_ci_dag));
                    report.record(std::abs(rho.rho11 - rho_exact.rho11));
                    report.record(std::abs(rho.rho22 - rho_exact.rho22));
                    report.record(std::abs(rho.rho33 - rho_exact.rho33));
                    report.record(std::abs(concurrence_closed(rho) - concurrence_closed(rho_exact)));
                    report.record(
                        std::abs(concurrence_closed(rho) - concurrence_spectral(rho_exact)));
                }
        }
        report.passed = report.worst <= tol;
        print_report(out, report, tol);
        reports.push_back(report);
    }

    // Ground-state energy: sector minimum vs sum of the lowest orbitals.
    {
        CheckReport report{"ground energy vs filled orbitals"};
        constexpr double tol = 1e-9;
        const std::vector<LatticeSpec> specs = sector_specs(max_sites, true);
        const int n_instances = scaled(60, mult);
        for (int inst = 0; inst < n_instances; ++inst) {
            const LatticeSpec& spec = specs[rng.below(specs.size())];
            const BondTable table = build_bond_table(spec);
            const Chromosome chrom = random_chromosome(table.bonds.size(), rng);
            const int k = 1 + static_cast<int>(rng.below(table.n_sites - 1));
            const Spectrum spectrum = diagonalize(assemble_hamiltonian(table, chrom));
            double filled = 0.0;
            for (int level = 0; level < k; ++level) filled += spectrum.eigenvalues[level];
            const ManyBodyGroundState ground = fock_ground_state(table, chrom, k);
            report.record(std::abs(ground.energy - filled));
        }
        report.passed = report.worst <= tol;
        print_report(out, report, tol);
        reports.push_back(report);
    }

    // Electron-hole symmetry of the fitness on bipartite lattices.
    {
        CheckReport report{"electron-hole symmetry"};
        constexpr double tol = 1e-9;
        const std::vector<LatticeSpec> specs = {
            LatticeSpec{LatticeKind::Chain, 10, 0, 0, Boundary::Periodic, Shells::NN},
            LatticeSpec{LatticeKind::Chain, 10, 0, 0, Boundary::Open, Shells::NN},
            LatticeSpec{LatticeKind::Square, 0, 4, 4, Boundary::Periodic, Shells::NN},
            LatticeSpec{LatticeKind::Square, 0, 4, 4, Boundary::Open, Shells::NN},
        };
        const int per_spec = scaled(25, mult);
        for (const LatticeSpec& spec : specs) {
            const BondTable table = build_bond_table(spec);
            for (int c = 0; c < per_spec; ++c) {
                const Chromosome chrom = random_chromosome(table.bonds.size(), rng);
                for (int k = 0; k <= table.n_sites / 2; ++k)
                    report.record(std::abs(fitness(table, chrom, k) -
                                           fitness(table, chrom, table.n_sites - k)));
            }
        }
        report.passed = report.worst <= tol;
        print_report(out, report, tol);
        reports.push_back(report);
    }

    int failures = 0;
    for (const CheckReport& report : reports)
        if (!report.passed) ++failures;
    out << (failures == 0 ? "verify: all checks passed" : "verify: FAILURES DETECTED") << " ("
        << reports.size() - failures << "/" << reports.size() << " groups)\n";
    return failures;
}

}  // namespace concordia
