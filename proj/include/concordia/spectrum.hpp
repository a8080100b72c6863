// One-body hopping Hamiltonian assembly and eigendecomposition.
//
// The Hamiltonian is H[i][j] = -t_b for every bond b = (i,j) and zero on the
// diagonal (all on-site energies are taken equal and set to zero). Hopping
// magnitudes are positive, one gene per bond in bond-table order.

#pragma once

#include <vector>

#include "concordia/lattice.hpp"
#include "concordia/linalg.hpp"

namespace concordia {

// One hopping magnitude per bond, in bond-table order.
struct Chromosome {
    std::vector<double> genes;

    bool operator==(const Chromosome&) const noexcept = default;
};

struct HamiltonianMatrix {
    int n = 0;
    Matrix entries;
};

struct Spectrum {
    std::vector<double> eigenvalues;  // ascending
    Matrix eigenvectors;              // column k pairs with eigenvalues[k]
};

// Throws std::invalid_argument if the chromosome length does not match the
// bond count.
HamiltonianMatrix assemble_hamiltonian(const BondTable& table, const Chromosome& chrom);

// Full eigendecomposition with deterministic output: ascending eigenvalues,
// stable order under ties, and each eigenvector's first nonzero component
// positive. Throws NumericalError if the iteration fails to converge and
// std::invalid_argument on non-finite input.
Spectrum diagonalize(const HamiltonianMatrix& h);

// True when filling K sits on a degenerate Fermi level, i.e. the highest
// occupied and lowest empty orbitals are closer than `tol`. At such fillings
// the K-fermion ground state is not unique and downstream correlators depend
// on the eigensolver's basis choice inside the degenerate block.
bool fermi_degenerate(const Spectrum& spectrum, int k_fermions, double tol = 1e-9);

}  // namespace concordia
