#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "eisenpack/eisenstein.hpp"

namespace eisenpack {

/**
 * Integer lattice given by rank-many independent integer row vectors in Z^n.
 */
struct IntegerLattice {
    int ambient_dim{0};
    std::vector<std::vector<std::int64_t>> basis;

    int rank() const { return static_cast<int>(basis.size()); }
};

/// A_{n-1} = {x in Z^n : sum x_i = 0}, basis {e_i - e_{i+1}}. Requires n >= 2.
IntegerLattice root_lattice_A(int n);

/**
 * Appends the row (0,..,0,chi) to a rank n-1 lattice whose rows all sum to
 * zero, yielding a rank n lattice. det grows by exactly |chi|/sqrt(n) and the
 * minimum distance obeys d_E >= min{d_E(L), |chi|/sqrt(n)}.
 */
IntegerLattice augment(const IntegerLattice& lattice, std::int64_t chi);

/// Exact det of the Gram matrix B*B^T (fraction-free elimination in 128-bit
/// integers, overflow-checked). Throws on a dependent basis.
__int128 gram_det_squared(const IntegerLattice& lattice);

/// sqrt(det(Gram)); covolume of the lattice inside its span.
double gram_det(const IntegerLattice& lattice);

/// Covolume of a real row basis (Cholesky of the Gram matrix).
double gram_det(const std::vector<std::vector<double>>& basis);

/**
 * Point set in R^N of the form coset_reps + (integer span of period_basis).
 * A plain lattice is the special case of a single zero coset. det_per_point
 * is the covolume of the period lattice divided by the number of cosets.
 */
struct EmbeddedPacking {
    int real_dim{0};
    std::vector<std::vector<double>> period_basis;
    std::vector<std::vector<double>> coset_reps{{}};
    double det_per_point{0.0};
    std::optional<double> min_dist;  // cached d_E when known
    int complex_dim{0};              // n when the packing lives in O_K^n

    bool is_lattice() const { return coset_reps.size() == 1; }
};

/**
 * Result of exhaustive short-vector search over bounded coefficients.
 * `certified` reports whether the searched box provably contains a shortest
 * nonzero difference: any vector v with |v| <= distance has i-th coefficient
 * bounded by |v|*|w_i| (w_i the dual basis rows), plus 1 when coset offsets
 * are present; `required_bound` is that ceiling.
 */
struct MinDistanceResult {
    double distance{0.0};
    bool certified{false};
    int required_bound{0};
};

/// Minimum nonzero length over integer combinations with coefficients in
/// [-coeff_bound, coeff_bound]. Exact when `certified`.
MinDistanceResult min_distance(const IntegerLattice& lattice, int coeff_bound);
MinDistanceResult min_distance(const EmbeddedPacking& packing, int coeff_bound);

/// Largest Euclidean norm among the dual basis rows w_i = sum_j (G^-1)_{ij} b_j;
/// |<v, w_i>| bounds the i-th coefficient of any lattice vector v.
double max_dual_row_norm(const std::vector<std::vector<double>>& basis);

/// Certified minimum distance: escalates the coefficient bound until the
/// certificate holds (bounded by max_bound). Throws InfeasibleError beyond.
MinDistanceResult certified_min_distance(const IntegerLattice& lattice, int initial_bound = 2,
                                         int max_bound = 64);
MinDistanceResult certified_min_distance(const EmbeddedPacking& packing, int initial_bound = 2,
                                         int max_bound = 64);

/**
 * P + omega*P as a lattice in R^{2n} for full-rank P in Z^n: generators
 * embed(p_i, 0) and embed(0, p_i) applied coordinatewise. By the two
 * degree-2 lemmas, d_E(P + omega*P) = d_E(P) and
 * det(P + omega*P) = (sqrt(3)/2)^n det(P)^2; the determinant is cached from
 * the formula (gram_det of the returned basis re-derives it for checks).
 */
EmbeddedPacking complexify(const IntegerLattice& lattice);

/// Multiplies every complex coordinate by t: d_E scales by sqrt(norm(t)),
/// det by norm(t)^n. Requires a packing with complex structure.
EmbeddedPacking scale_by(const EisensteinInt& t, const EmbeddedPacking& packing);

/// Volume of the unit ball in R^N, via log-gamma for stability.
double unit_ball_volume(int N);
double log2_unit_ball_volume(int N);

/// Stirling form -(N/2)log2(N/(2 pi e)) - (1/2)log2(N pi). Exceeds the exact
/// value by 0 < eps < log2(e)/(6N).
double stirling_log2_unit_ball_volume(int N);

/**
 * Packing metrics for minimum distance d_E, covolume-per-point det, and real
 * dimension N:
 *   density          Delta = (d_E/2)^N V_N / det
 *   center density   delta = Delta / V_N
 *   density exponent lambda = (1/N) log2 Delta
 * Computed in log space so huge/tiny intermediate values cannot overflow.
 */
struct DensityMetrics {
    double density{0.0};
    double center_density{0.0};
    double lambda{0.0};
    double log2_density{0.0};
};

DensityMetrics density_metrics(double d_E, double det, int N);

}  // namespace eisenpack
