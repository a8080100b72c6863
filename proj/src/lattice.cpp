#include "concordia/lattice.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

namespace concordia {

namespace {

struct Step {
    int dr;
    int dc;
};

// Nearest and next-nearest displacement sets. Only "forward" directions are
// listed; the reverse bonds come out of canonicalization.
constexpr Step kSquareNN[] = {{0, 1}, {1, 0}};
constexpr Step kSquareNNN[] = {{1, 1}, {1, -1}};
constexpr Step kTriangularNN[] = {{0, 1}, {1, 0}, {1, 1}};
constexpr Step kTriangularNNN[] = {{1, -1}, {2, 1}, {1, 2}};

void validate(const LatticeSpec& spec) {
    if (spec.kind == LatticeKind::Chain) {
        if (spec.length < 2)
            throw std::invalid_argument("lattice: chain length must be at least 2, got " +
                                        std::to_string(spec.length));
        if (spec.boundary == Boundary::Periodic && spec.length < 3)
            throw std::invalid_argument(
                "lattice: periodic chains need length >= 3, otherwise the wraparound "
                "bond duplicates an existing one");
    } else {
        if (spec.rows < 2 || spec.cols < 2)
            throw std::invalid_argument("lattice: 2D extents must be at least 2x2, got " +
                                        std::to_string(spec.rows) + "x" +
                                        std::to_string(spec.cols));
    }
}

class BondCollector {
public:
    void add(int a, int b, BondShell shell) {
        if (a == b) return;
        if (a > b) std::swap(a, b);
        if (!seen_.insert({a, b}).second) return;  // also drops cross-shell repeats
        (shell == BondShell::NN ? nn_ : nnn_).push_back(Bond{a, b, shell});
    }

    std::vector<Bond> take() {
        auto by_sites = [](const Bond& x, const Bond& y) {
            return std::pair{x.i, x.j} < std::pair{y.i, y.j};
        };
        std::sort(nn_.begin(), nn_.end(), by_sites);
        std::sort(nnn_.begin(), nnn_.end(), by_sites);
        std::vector<Bond> all = std::move(nn_);
        all.insert(all.end(), nnn_.begin(), nnn_.end());
        return all;
    }

private:
    std::set<std::pair<int, int>> seen_;
    std::vector<Bond> nn_;
    std::vector<Bond> nnn_;
};

void collect_chain(const LatticeSpec& spec, BondCollector& out) {
    const int n = spec.length;
    const bool periodic = spec.boundary == Boundary::Periodic;
    const int shells = spec.shells == Shells::NNPlusNNN ? 2 : 1;
    for (int dist = 1; dist <= shells; ++dist) {
        const BondShell shell = dist == 1 ? BondShell::NN : BondShell::NNN;
        for (int i = 0; i < n; ++i) {
            if (periodic)
                out.add(i, (i + dist) % n, shell);
            else if (i + dist < n)
                out.add(i, i + dist, shell);
        }
    }
}

void collect_grid(const LatticeSpec& spec, BondCollector& out) {
    const bool periodic = spec.boundary == Boundary::Periodic;
    const bool triangular = spec.kind == LatticeKind::Triangular;

    auto sweep = [&](const Step* steps, std::size_t n_steps, BondShell shell) {
        for (int r = 0; r < spec.rows; ++r)
            for (int c = 0; c < spec.cols; ++c)
                for (std::size_t s = 0; s < n_steps; ++s) {
                    int tr = r + steps[s].dr;
                    int tc = c + steps[s].dc;
                    if (periodic) {
                        tr = ((tr % spec.rows) + spec.rows) % spec.rows;
                        tc = ((tc % spec.cols) + spec.cols) % spec.cols;
                    } else if (tr < 0 || tr >= spec.rows || tc < 0 || tc >= spec.cols) {
                        continue;
                    }
                    out.add(site_index(r, c, spec), site_index(tr, tc, spec), shell);
                }
    };

    if (triangular)
        sweep(kTriangularNN, std::size(kTriangularNN), BondShell::NN);
    else
        sweep(kSquareNN, std::size(kSquareNN), BondShell::NN);

    if (spec.shells == Shells::NNPlusNNN) {
        if (triangular)
            sweep(kTriangularNNN, std::size(kTriangularNNN), BondShell::NNN);
        else
            sweep(kSquareNNN, std::size(kSquareNNN), BondShell::NNN);
    }
}

}  // namespace

int site_index(int row, int col, const LatticeSpec& spec) {
    if (spec.kind == LatticeKind::Chain)
        throw std::invalid_argument("site_index: chains have no 2D coordinates");
    if (row < 0 || row >= spec.rows || col < 0 || col >= spec.cols)
        throw std::out_of_range("site_index: coordinates (" + std::to_string(row) + "," +
                                std::to_string(col) + ") outside " + std::to_string(spec.rows) +
                                "x" + std::to_string(spec.cols) + " grid");
    return row * spec.cols + col;
}

BondTable build_bond_table(const LatticeSpec& spec) {
    validate(spec);
    BondCollector collector;
    if (spec.kind == LatticeKind::Chain)
        collect_chain(spec, collector);
    else
        collect_grid(spec, collector);
    return BondTable{spec, collector.take(), spec.n_sites()};
}

std::size_t nn_bond_count(const BondTable& table) {
    std::size_t count = 0;
    while (count < table.bonds.size() && table.bonds[count].shell == BondShell::NN) ++count;
    return count;
}

}  // namespace concordia
