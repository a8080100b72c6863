#include "concordia/spectrum.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace concordia {

HamiltonianMatrix assemble_hamiltonian(const BondTable& table, const Chromosome& chrom) {
    if (chrom.genes.size() != table.bonds.size())
        throw std::invalid_argument("assemble_hamiltonian: chromosome has " +
                                    std::to_string(chrom.genes.size()) + " genes but the table has " +
                                    std::to_string(table.bonds.size()) + " bonds");
    HamiltonianMatrix h{table.n_sites, Matrix(table.n_sites, table.n_sites)};
    for (std::size_t b = 0; b < table.bonds.size(); ++b) {
        const Bond& bond = table.bonds[b];
        const double t = chrom.genes[b];
        h.entries(bond.i, bond.j) = -t;
        h.entries(bond.j, bond.i) = -t;
    }
    return h;
}

Spectrum diagonalize(const HamiltonianMatrix& h) {
    for (int i = 0; i < h.n; ++i)
        for (int j = 0; j < h.n; ++j)
            if (!std::isfinite(h.entries(i, j)))
                throw std::invalid_argument("diagonalize: Hamiltonian has non-finite entries");

    SymEigenResult eig = sym_eigen(h.entries);
    return Spectrum{std::move(eig.values), std::move(eig.vectors)};
}

bool fermi_degenerate(const Spectrum& spectrum, int k_fermions, double tol) {
    const int n = static_cast<int>(spectrum.eigenvalues.size());
    if (k_fermions <= 0 || k_fermions >= n) return false;
    return spectrum.eigenvalues[k_fermions] - spectrum.eigenvalues[k_fermions - 1] < tol;
}

}  // namespace concordia
