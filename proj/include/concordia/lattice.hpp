// Lattice geometry: neighbor identification and canonical bond lists for
// chains, square lattices, and triangular lattices under open or periodic
// boundary conditions.
//
// The triangular lattice is realized as a square grid with one extra
// diagonal per plaquette, (r,c)-(r+1,c+1); under periodic wrapping every
// bulk site then has the expected coordination 6. Its next-nearest shell is
// the second coordination ring of that embedding: displacements (1,-1),
// (2,1) and (1,2). Periodic wrapping is a torus in both directions.
//
// The bond list order is the chromosome gene layout, so it must be stable:
// bonds are sorted by (shell, i, j) with the nearest-neighbor shell first.
// A nearest-neighbor-only chromosome is therefore a prefix of the combined
// NN+NNN chromosome for the same lattice.

#pragma once

#include <cstdint>
#include <vector>

namespace concordia {

enum class LatticeKind { Chain, Square, Triangular };
enum class Boundary { Open, Periodic };
enum class Shells { NN, NNPlusNNN };
enum class BondShell { NN, NNN };

struct LatticeSpec {
    LatticeKind kind = LatticeKind::Chain;
    int length = 0;  // Chain only
    int rows = 0;    // 2D only
    int cols = 0;    // 2D only
    Boundary boundary = Boundary::Open;
    Shells shells = Shells::NN;

    int n_sites() const noexcept {
        return kind == LatticeKind::Chain ? length : rows * cols;
    }

    bool operator==(const LatticeSpec&) const noexcept = default;
};

struct Bond {
    int i = 0;  // i < j always
    int j = 0;
    BondShell shell = BondShell::NN;

    bool operator==(const Bond&) const noexcept = default;
};

struct BondTable {
    LatticeSpec spec;
    std::vector<Bond> bonds;
    int n_sites = 0;

    bool operator==(const BondTable&) const noexcept = default;
};

// Row-major linearization of 2D coordinates. Throws std::out_of_range for
// coordinates outside the grid.
int site_index(int row, int col, const LatticeSpec& spec);

// Builds the complete, duplicate-free bond list for the given lattice.
// Throws std::invalid_argument for specs that violate size constraints
// (chains need length >= 2, periodic chains length >= 3, 2D extents >= 2).
BondTable build_bond_table(const LatticeSpec& spec);

// Number of NN bonds; since NN bonds lead the list, they occupy indices
// [0, nn_bond_count).
std::size_t nn_bond_count(const BondTable& table);

}  // namespace concordia
