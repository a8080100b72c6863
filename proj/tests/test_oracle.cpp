#include <doctest.h>

#include <bit>
#include <cmath>

#include "concordia/oracle.hpp"
#include "concordia/rng.hpp"

using namespace concordia;

namespace {

BondTable chain_table(int n, Boundary b, Shells s = Shells::NN) {
    return build_bond_table(LatticeSpec{LatticeKind::Chain, n, 0, 0, b, s});
}

Chromosome random_genes(std::size_t n, Rng& rng) {
    Chromosome chrom;
    chrom.genes.resize(n);
    for (auto& g : chrom.genes) g = rng.uniform(0.0, 5.0);
    return chrom;
}

long binomial(int n, int k) {
    long result = 1;
    for (int x = 1; x <= k; ++x) result = result * (n - k + x) / x;
    return result;
}

}  // namespace

TEST_CASE("fock basis enumerates the fixed-K sector in ascending order") {
    for (auto [n, k] : {std::pair{4, 2}, {6, 3}, {10, 5}, {12, 4}, {16, 1}}) {
        const FockBasis basis = build_fock_basis(n, k);
        CHECK(static_cast<long>(basis.states.size()) == binomial(n, k));
        for (std::size_t s = 0; s < basis.states.size(); ++s) {
            CHECK(std::popcount(basis.states[s]) == k);
            if (s > 0) CHECK(basis.states[s] > basis.states[s - 1]);
            CHECK(basis.index_of(basis.states[s]) == s);
        }
    }
    CHECK_THROWS_AS(build_fock_basis(17, 1), std::invalid_argument);
    CHECK_THROWS_AS(build_fock_basis(4, 5), std::invalid_argument);
}

TEST_CASE("two-site ground state is the symmetric Bell combination") {
    const BondTable pair = chain_table(2, Boundary::Open);
    const ManyBodyGroundState state = fock_ground_state(pair, Chromosome{{1.0}}, 1);
    CHECK(state.energy == doctest::Approx(-1.0).epsilon(1e-12));
    REQUIRE(state.amplitudes.size() == 2);
    CHECK(state.amplitudes[0] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(state.amplitudes[1] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK_FALSE(state.degenerate);
}

TEST_CASE("vacuum sector") {
    const BondTable table = chain_table(5, Boundary::Periodic);
    Chromosome chrom;
    chrom.genes.assign(table.bonds.size(), 2.0);
    const ManyBodyGroundState state = fock_ground_state(table, chrom, 0);
    CHECK(state.energy == 0.0);
    REQUIRE(state.amplitudes.size() == 1);
    CHECK(state.amplitudes[0] == 1.0);
}

TEST_CASE("sector ground energy equals the sum of the lowest orbitals") {
    Rng rng(0x0c1e);
    for (const LatticeSpec spec :
         {LatticeSpec{LatticeKind::Chain, 8, 0, 0, Boundary::Periodic, Shells::NNPlusNNN},
          LatticeSpec{LatticeKind::Chain, 11, 0, 0, Boundary::Open, Shells::NN},
          LatticeSpec{LatticeKind::Square, 0, 3, 4, Boundary::Periodic, Shells::NN}}) {
        const BondTable table = build_bond_table(spec);
        for (int trial = 0; trial < 4; ++trial) {
            const Chromosome chrom = random_genes(table.bonds.size(), rng);
            const int k = 1 + static_cast<int>(rng.below(table.n_sites - 1));
            const Spectrum sp = diagonalize(assemble_hamiltonian(table, chrom));
            double filled = 0.0;
            for (int level = 0; level < k; ++level) filled += sp.eigenvalues[level];
            const ManyBodyGroundState state = fock_ground_state(table, chrom, k);
            CHECK(state.energy == doctest::Approx(filled).epsilon(1e-9));
        }
    }
}

TEST_CASE("correlator reference values") {
    SUBCASE("Bell state") {
        const BondTable pair = chain_table(2, Boundary::Open);
        const FockBasis basis = build_fock_basis(2, 1);
        const ManyBodyGroundState state = fock_ground_state(pair, Chromosome{{1.0}}, 1);
        const FockCorrelators c = fock_correlators(basis, state, 0, 1);
        CHECK(c.n_i == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(c.n_i_n_j == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(c.cj_ci_dag == doctest::Approx(-0.5).epsilon(1e-12));
    }
    SUBCASE("vacuum correlators vanish") {
        const BondTable table = chain_table(4, Boundary::Periodic);
        Chromosome chrom;
        chrom.genes.assign(table.bonds.size(), 1.0);
        const FockBasis basis = build_fock_basis(4, 0);
        const ManyBodyGroundState state = fock_ground_state(table, chrom, 0);
        const FockCorrelators c = fock_correlators(basis, state, 0, 2);
        CHECK(c.n_i == 0.0);
        CHECK(c.n_i_n_j == 0.0);
        CHECK(c.cj_ci_dag == 0.0);
    }
}

TEST_CASE("brute-force correlators certify the Wick factorization") {
    Rng rng(0x0c2e);
    for (const LatticeSpec spec :
         {LatticeSpec{LatticeKind::Chain, 6, 0, 0, Boundary::Periodic, Shells::NN},
          LatticeSpec{LatticeKind::Chain, 10, 0, 0, Boundary::Open, Shells::NNPlusNNN},
          LatticeSpec{LatticeKind::Square, 0, 2, 5, Boundary::Periodic, Shells::NN}}) {
        const BondTable table = build_bond_table(spec);
        for (int trial = 0; trial < 6; ++trial) {
            const Chromosome chrom = random_genes(table.bonds.size(), rng);
            const Spectrum sp = diagonalize(assemble_hamiltonian(table, chrom));
            int k = 1 + static_cast<int>(rng.below(table.n_sites - 1));
            if (fermi_degenerate(sp, k, 1e-3)) continue;
            const ManyBodyGroundState state = fock_ground_state(table, chrom, k);
            if (state.degenerate) continue;
            const FockBasis basis = build_fock_basis(table.n_sites, k);
            const OneBodyDensity density = one_body_density(sp, k);
            for (int i = 0; i < table.n_sites; ++i)
                for (int j = i + 1; j < table.n_sites; ++j) {
                    const FockCorrelators exact = fock_correlators(basis, state, i, j);
                    const PairDensityMatrix rho = pair_rho(density, i, j);
                    const PairDensityMatrix rho_exact = fock_pair_rho(basis, state, i, j);
                    CHECK(std::abs(density.g(i, i) - exact.n_i) <= 1e-10);
                    CHECK(std::abs(rho.rho44 - exact.n_i_n_j) <= 1e-10);
                    CHECK(std::abs(rho.rho23 - exact.cj_ci_dag) <= 1e-10);
                    CHECK(std::abs(rho.rho11 - rho_exact.rho11) <= 1e-10);
                    CHECK(std::abs(concurrence_closed(rho) - concurrence_closed(rho_exact)) <= 1e-10);
                }
        }
    }
}

TEST_CASE("half-filled uniform 6-ring matches the Wick route") {
    const BondTable ring = chain_table(6, Boundary::Periodic);
    Chromosome t1;
    t1.genes.assign(ring.bonds.size(), 1.0);
    const FockBasis basis = build_fock_basis(6, 3);
    const ManyBodyGroundState state = fock_ground_state(ring, t1, 3);
    const FockCorrelators c = fock_correlators(basis, state, 0, 1);
    CHECK(c.n_i == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(c.n_i_n_j == doctest::Approx(0.25 - 1.0 / 9.0).epsilon(1e-10));
    CHECK(c.cj_ci_dag == doctest::Approx(-1.0 / 3.0).epsilon(1e-10));
}

TEST_CASE("many-body Hamiltonian conserves particle number and is symmetric") {
    // apply H to every basis vector via the ground-state machinery residual:
    // instead probe matrix symmetry through correlator symmetry <c_j c_i^dag>
    // against <c_i c_j^dag> on a generic state.
    Rng rng(0x0c3e);
    const BondTable table = chain_table(6, Boundary::Periodic, Shells::NNPlusNNN);
    const Chromosome chrom = random_genes(table.bonds.size(), rng);
    const ManyBodyGroundState state = fock_ground_state(table, chrom, 3);
    const FockBasis basis = build_fock_basis(6, 3);
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j) {
            const FockCorrelators ij = fock_correlators(basis, state, i, j);
            const FockCorrelators ji = fock_correlators(basis, state, j, i);
            // real state: <c_j c_i^dag> = <c_i c_j^dag>
            CHECK(ij.cj_ci_dag == doctest::Approx(ji.cj_ci_dag).epsilon(1e-12));
            CHECK(ij.n_i_n_j == doctest::Approx(ji.n_i_n_j).epsilon(1e-12));
        }
}

TEST_CASE("degenerate many-body ground states are flagged") {
    // uniform 6-ring at K=2 occupies one of the two -1 orbitals
    const BondTable ring = chain_table(6, Boundary::Periodic);
    Chromosome t1;
    t1.genes.assign(ring.bonds.size(), 1.0);
    const ManyBodyGroundState state = fock_ground_state(ring, t1, 2);
    CHECK(state.degenerate);
    CHECK(state.gap <= 1e-9);
}

TEST_CASE("lanczos path agrees with the dense path") {
    Rng rng(0x0c4e);
    const BondTable table = chain_table(10, Boundary::Periodic, Shells::NNPlusNNN);
    for (int trial = 0; trial < 3; ++trial) {
        const Chromosome chrom = random_genes(table.bonds.size(), rng);
        const int k = 5;  // dim C(10,5) = 252
        const ManyBodyGroundState dense = fock_ground_state(table, chrom, k, 4096);
        const ManyBodyGroundState lanczos = fock_ground_state(table, chrom, k, 2);
        CHECK(lanczos.energy == doctest::Approx(dense.energy).epsilon(1e-10));
        CHECK(std::abs(lanczos.gap - dense.gap) <= 1e-7);
        const FockBasis basis = build_fock_basis(10, k);
        for (int i = 1; i < 10; i += 3) {
            const FockCorrelators a = fock_correlators(basis, dense, 0, i);
            const FockCorrelators b = fock_correlators(basis, lanczos, 0, i);
            CHECK(std::abs(a.n_i - b.n_i) <= 1e-10);
            CHECK(std::abs(a.n_i_n_j - b.n_i_n_j) <= 1e-10);
            CHECK(std::abs(a.cj_ci_dag - b.cj_ci_dag) <= 1e-10);
        }
    }
}

TEST_CASE("analytic ring eigenvalues") {
    const std::vector<double> n4 = analytic_ring_eigenvalues(4, 1.0);
    CHECK(n4[0] == doctest::Approx(-2.0));
    CHECK(n4[1] == doctest::Approx(0.0));
    CHECK(n4[2] == doctest::Approx(0.0));
    CHECK(n4[3] == doctest::Approx(2.0));

    const std::vector<double> n6 = analytic_ring_eigenvalues(6, 1.0);
    const double expected6[] = {-2.0, -1.0, -1.0, 1.0, 1.0, 2.0};
    for (int k = 0; k < 6; ++k) CHECK(n6[k] == doctest::Approx(expected6[k]).epsilon(1e-12));

    const std::vector<double> n3 = analytic_ring_eigenvalues(3, 1.0);
    CHECK(n3[0] == doctest::Approx(-2.0));
    CHECK(n3[1] == doctest::Approx(1.0));
    CHECK(n3[2] == doctest::Approx(1.0));

    CHECK_THROWS_AS(analytic_ring_eigenvalues(2, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(analytic_ring_eigenvalues(6, -1.0), std::invalid_argument);
}
