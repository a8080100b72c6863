// Ground-state pair entanglement for spinless fermions.
//
// The K-fermion ground state fills the K lowest one-body orbitals, so every
// many-body correlator reduces to entries of the one-body density matrix
// G[i][j] = <c_i^dag c_j>. Occupation encodes the qubit: an occupied site is
// |1>, an empty site |0>. For a site pair (i,j) the reduced density matrix
// in the basis {|00>,|01>,|10>,|11>} is block diagonal,
//
//     [ rho11   0      0      0    ]
//     [   0   rho22  rho23    0    ]
//     [   0   rho23  rho33    0    ]
//     [   0     0      0    rho44  ]
//
// with
//     rho11 = 1 - <n_i> - <n_j> + <n_i n_j>     rho22 = <n_j> - <n_i n_j>
//     rho33 = <n_i> - <n_i n_j>                 rho44 = <n_i n_j>
//     rho23 = <c_j c_i^dag> = -G[i][j]          (i != j)
//
// and <n_i n_j> = G[i][i] G[j][j] - G[i][j]^2, which is exact for a single
// Slater determinant. Concurrence comes out of this block structure in
// closed form, C = 2 max{0, |rho23| - sqrt(rho11 rho44)}; the full spectral
// route through the spin-flipped product rho * rho~ is kept alongside as an
// independent evaluation path.
//
// Numerical form: rho44 and rho11 are 2x2 Slater minors whose true value
// vanishes at band edges, and the naive difference G_ii G_jj - G_ij^2 then
// leaves pure roundoff that sqrt() amplifies to ~1e-8. They are therefore
// evaluated as Cauchy-Binet sums of squares over occupied (rho44) and empty
// (rho11) orbital pairs, which are exactly zero when fewer than two such
// orbitals exist, and rho22/rho33 in their factored nonnegative forms.

#pragma once

#include "concordia/spectrum.hpp"

namespace concordia {

struct OneBodyDensity {
    Matrix g;           // g(i,j) = <c_i^dag c_j>
    int k_fermions = 0;
    Matrix orbitals;    // eigenvector columns; [0, k_fermions) are occupied
};

// The five independent entries of the two-site reduced density matrix.
struct PairDensityMatrix {
    double rho11 = 0.0;
    double rho22 = 0.0;
    double rho33 = 0.0;
    double rho44 = 0.0;
    double rho23 = 0.0;
};

// G = sum over the K lowest orbitals of v_k v_k^T. Throws on K outside
// [0, n].
OneBodyDensity one_body_density(const Spectrum& spectrum, int k_fermions);

// Reduced density matrix of sites (i, j). Throws on i == j or out-of-range
// indices.
PairDensityMatrix pair_rho(const OneBodyDensity& density, int i, int j);

// Closed-form Wootters concurrence, C = 2 max{0, |rho23| - sqrt(rho11 rho44)}.
double concurrence_closed(const PairDensityMatrix& rho);

// Spectral Wootters concurrence: builds the 4x4 rho, applies the spin flip
// (sigma_y x sigma_y) rho* (sigma_y x sigma_y), multiplies out rho * rho~,
// extracts the four lambda eigenvalues from its block structure, and returns
// max{0, sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4)} with the roots sorted
// descending. Must agree with the closed form; exists as the independent
// route. Lambdas below -1e-12 indicate an inconsistent input and raise
// NumericalError; values in [-1e-12, 0) are clamped to zero as noise.
double concurrence_spectral(const PairDensityMatrix& rho);

// GA objective: sum of the concurrences of all nearest-neighbor pairs
// divided by the number of sites. Next-nearest bonds contribute hopping to
// the Hamiltonian but are not part of the sum.
double fitness(const BondTable& table, const Chromosome& chrom, int k_fermions);

}  // namespace concordia
