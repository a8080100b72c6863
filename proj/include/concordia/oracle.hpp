// Independent ground-truth engines for small systems.
//
// Everything in this header works directly in the occupation-number basis of
// the fixed-particle-number sector, with explicit fermionic signs, and never
// touches the one-body machinery it is used to certify. Bit k of a basis
// mask set means site k is occupied. Hopping between sites i < j picks up
// the Jordan-Wigner string sign (-1)^(number of occupied sites strictly
// between i and j), and the same convention drives the correlator
// evaluation, so the two stay consistent by construction.

#pragma once

#include <cstdint>
#include <vector>

#include "concordia/concurrence.hpp"
#include "concordia/spectrum.hpp"

namespace concordia {

struct FockBasis {
    int n_sites = 0;
    int k_fermions = 0;
    std::vector<std::uint32_t> states;  // ascending masks with popcount K

    // Position of `mask` in `states`; the mask must be present.
    std::size_t index_of(std::uint32_t mask) const;
};

// Enumerates the fixed-K sector. Throws for n_sites > 16 (the supported
// brute-force cap; the largest sector is then C(16,8) = 12870 states).
FockBasis build_fock_basis(int n_sites, int k_fermions);

struct ManyBodyGroundState {
    double energy = 0.0;
    std::vector<double> amplitudes;  // over FockBasis order, normalized
    double gap = 0.0;                // distance to the next sector eigenvalue
    bool degenerate = false;         // gap < 1e-9: comparisons should skip
};

// Lowest eigenpair of the many-body Hamiltonian in the K-fermion sector.
// Small sectors are solved densely; larger ones with a deflated Lanczos
// iteration. Either path must pass the residual check
// ||H psi - E psi||_inf <= 1e-9 or a NumericalError is thrown.
// `dense_cutoff` picks the crossover dimension (exposed so tests can force
// both paths). Memory peaks on the Lanczos path at the Krylov basis,
// <= 260 vectors of the sector dimension: about 27 MB for the largest
// admitted sector, C(16,8) = 12870 states.
ManyBodyGroundState fock_ground_state(const BondTable& table, const Chromosome& chrom,
                                      int k_fermions, std::size_t dense_cutoff = 128);

struct FockCorrelators {
    double n_i = 0.0;        // <n_i>
    double n_i_n_j = 0.0;    // <n_i n_j>
    double cj_ci_dag = 0.0;  // <c_j c_i^dag>, i != j
};

FockCorrelators fock_correlators(const FockBasis& basis, const ManyBodyGroundState& state,
                                 int i, int j);

// Two-site reduced density matrix measured directly on the many-body state:
// each diagonal entry is the summed weight of the basis states in the
// matching occupation class of (i, j), rho23 the signed hopping overlap.
// Every entry is a projective sum, so values that vanish structurally come
// out as exact zeros.
PairDensityMatrix fock_pair_rho(const FockBasis& basis, const ManyBodyGroundState& state,
                                int i, int j);

// Eigenvalues of a uniform periodic chain, {-2 t cos(2 pi k / n)}_{k=1..n},
// sorted ascending. Requires n >= 3 and t > 0.
std::vector<double> analytic_ring_eigenvalues(int n, double t);

}  // namespace concordia
