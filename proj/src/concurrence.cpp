#include "concordia/concurrence.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace concordia {

namespace {

// Negative values closer to zero than this are treated as roundoff.
constexpr double kNoiseFloor = 1e-12;

double clamp_unit_interval(double x) {
    if (x < 0.0 && x >= -kNoiseFloor) return 0.0;
    if (x > 1.0 && x <= 1.0 + kNoiseFloor) return 1.0;
    return x;
}

}  // namespace

OneBodyDensity one_body_density(const Spectrum& spectrum, int k_fermions) {
    const int n = static_cast<int>(spectrum.eigenvalues.size());
    if (k_fermions < 0 || k_fermions > n)
        throw std::invalid_argument("one_body_density: filling " + std::to_string(k_fermions) +
                                    " outside [0, " + std::to_string(n) + "]");
    OneBodyDensity density{Matrix(n, n), k_fermions, spectrum.eigenvectors};
    for (int k = 0; k < k_fermions; ++k)
        for (int i = 0; i < n; ++i) {
            const double vik = spectrum.eigenvectors(i, k);
            if (vik == 0.0) continue;
            for (int j = 0; j < n; ++j)
                density.g(i, j) += vik * spectrum.eigenvectors(j, k);
        }
    return density;
}

namespace {

// det of the 2x2 minor of the projector spanned by orbital columns
// [first, last) at rows (i, j), expanded by Cauchy-Binet into a sum of
// squared 2x2 orbital determinants. Nonnegative term by term, and exactly
// zero when the range holds fewer than two orbitals.
double pair_minor(const Matrix& orbitals, int i, int j, int first, int last) {
    double acc = 0.0;
    for (int k = first; k < last; ++k)
        for (int l = k + 1; l < last; ++l) {
            const double m = orbitals(i, k) * orbitals(j, l) - orbitals(i, l) * orbitals(j, k);
            acc += m * m;
        }
    return acc;
}

}  // namespace

PairDensityMatrix pair_rho(const OneBodyDensity& density, int i, int j) {
    const int n = density.g.rows();
    if (i == j) throw std::invalid_argument("pair_rho: sites must differ");
    if (i < 0 || i >= n || j < 0 || j >= n)
        throw std::invalid_argument("pair_rho: site index out of range");

    const int k = density.k_fermions;

    // <c_j c_i^dag> = -G_ij = sum over hole orbitals of v_ik v_jk; summing
    // whichever side has fewer orbitals keeps empty and full bands at an
    // exact zero instead of accumulated roundoff.
    double overlap = 0.0;
    const bool use_occupied = 2 * k <= n;
    const int first = use_occupied ? 0 : k;
    const int last = use_occupied ? k : n;
    for (int m = first; m < last; ++m)
        overlap += density.orbitals(i, m) * density.orbitals(j, m);
    const double rho23 = use_occupied ? -overlap : overlap;
    const double gij = -rho23;

    // Particle and hole occupations as orbital sums of squares. The
    // equivalent 1 - G_ii cancels catastrophically at nearly-full sites,
    // and rho22*rho33 then misses the positivity bound on rho23 by far more
    // than the spectral concurrence route tolerates.
    double occ_i = 0.0, occ_j = 0.0, hole_i = 0.0, hole_j = 0.0;
    for (int m = 0; m < k; ++m) {
        occ_i += density.orbitals(i, m) * density.orbitals(i, m);
        occ_j += density.orbitals(j, m) * density.orbitals(j, m);
    }
    for (int m = k; m < n; ++m) {
        hole_i += density.orbitals(i, m) * density.orbitals(i, m);
        hole_j += density.orbitals(j, m) * density.orbitals(j, m);
    }

    // Wick factorization of <n_i n_j> = G_ii G_jj - G_ij^2, exact for a
    // Slater state; rho11 is the same minor taken over the hole orbitals.
    PairDensityMatrix rho;
    rho.rho44 = clamp_unit_interval(pair_minor(density.orbitals, i, j, 0, k));
    rho.rho11 = clamp_unit_interval(pair_minor(density.orbitals, i, j, k, n));
    rho.rho22 = clamp_unit_interval(hole_i * occ_j + gij * gij);
    rho.rho33 = clamp_unit_interval(occ_i * hole_j + gij * gij);
    rho.rho23 = rho23;
    return rho;
}

double concurrence_closed(const PairDensityMatrix& rho) {
    double p = rho.rho11 * rho.rho44;
    if (p < 0.0) {
        if (p < -kNoiseFloor)
            throw std::invalid_argument("concurrence_closed: rho11*rho44 negative beyond roundoff");
        p = 0.0;
    }
    return 2.0 * std::max(0.0, std::abs(rho.rho23) - std::sqrt(p));
}

double concurrence_spectral(const PairDensityMatrix& rho) {
    Matrix rho_a(4, 4);
    rho_a(0, 0) = rho.rho11;
    rho_a(1, 1) = rho.rho22;
    rho_a(1, 2) = rho.rho23;
    rho_a(2, 1) = rho.rho23;  // Hermitian with real entries
    rho_a(2, 2) = rho.rho33;
    rho_a(3, 3) = rho.rho44;

    // sigma_y tensor sigma_y; real antidiagonal.
    Matrix flip(4, 4);
    flip(0, 3) = -1.0;
    flip(1, 2) = 1.0;
    flip(2, 1) = 1.0;
    flip(3, 0) = -1.0;

    const Matrix rho_tilde = matmul(matmul(flip, rho_a), flip);
    const Matrix product = matmul(rho_a, rho_tilde);

    // The product is block diagonal: the corners carry rho11*rho44 twice and
    // the middle 2x2 block the quadratic pair, in factored form
    // (sqrt(rho22*rho33) -+ |rho23|)^2. The factored form is the stable one;
    // expanding the quadratic through mean^2 - det cancels to roundoff
    // whenever rho23 is small. The block trace ties the factored values back
    // to the computed product.
    double r2233 = rho.rho22 * rho.rho33;
    if (r2233 < 0.0) {
        if (r2233 < -kNoiseFloor)
            throw NumericalError("concurrence_spectral: rho22*rho33 negative beyond roundoff");
        r2233 = 0.0;
    }
    const double mid_low = std::sqrt(r2233) - std::abs(rho.rho23);
    const double mid_high = std::sqrt(r2233) + std::abs(rho.rho23);
    const double mid_trace = product(1, 1) + product(2, 2);
    if (std::abs(mid_low * mid_low + mid_high * mid_high - mid_trace) > 1e-9)
        throw NumericalError("concurrence_spectral: block trace mismatch");

    std::array<double, 4> lambdas = {product(0, 0), product(3, 3), mid_low * mid_low,
                                     mid_high * mid_high};
    std::array<double, 4> sqrts{};
    for (std::size_t k = 0; k < lambdas.size(); ++k) {
        double lambda = lambdas[k];
        if (lambda < 0.0) {
            if (lambda < -kNoiseFloor)
                throw NumericalError("concurrence_spectral: negative lambda beyond roundoff");
            lambda = 0.0;
        }
        sqrts[k] = std::sqrt(lambda);
    }
    std::sort(sqrts.begin(), sqrts.end(), std::greater<>());
    return std::max(0.0, sqrts[0] - sqrts[1] - sqrts[2] - sqrts[3]);
}

double fitness(const BondTable& table, const Chromosome& chrom, int k_fermions) {
    if (k_fermions < 0 || k_fermions > table.n_sites)
        throw std::invalid_argument("fitness: filling " + std::to_string(k_fermions) +
                                    " outside [0, " + std::to_string(table.n_sites) + "]");
    const Spectrum spectrum = diagonalize(assemble_hamiltonian(table, chrom));
    const OneBodyDensity density = one_body_density(spectrum, k_fermions);
    const std::size_t nn = nn_bond_count(table);
    double total = 0.0;
    for (std::size_t b = 0; b < nn; ++b)
        total += concurrence_closed(pair_rho(density, table.bonds[b].i, table.bonds[b].j));
    return total / table.n_sites;
}

}  // namespace concordia
