#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "eisenpack/coding.hpp"
#include "eisenpack/eisenstein.hpp"
#include "eisenpack/lattice.hpp"

namespace eisenpack {

/**
 * Inputs of the concatenated point set
 *   C_0 + t C_1 + ... + t^{l-1} C_{l-1} + t^l (P + omega P)
 * over one prime ideal (t) of norm Q. Every code must use alphabet size Q,
 * length n = rank(base), contain the zero word, and satisfy the distance
 * hypothesis d_H(C_i) >= Q^{l-i} d_E^2(P + omega P).
 */
struct ConcatenationSpec {
    PrimeIdealInfo info;
    int levels{0};  // l
    std::vector<QaryCode> codes;
    IntegerLattice base;
};

/// Checks every hypothesis; returns human-readable violations (empty when
/// the spec is admissible). Violations are data, not errors.
std::vector<std::string> validate(const ConcatenationSpec& spec);

/**
 * The built packing: all sum_i t^i c_i as coset representatives (reduced into
 * the fundamental cell) over the period lattice t^l (P + omega P), plus the
 * density accounting of the concatenation lemma. lambda_lower is the
 * guaranteed exponent lambda(P + omega P) + (1/2n) sum log2 M_i; the measured
 * exponent from the brute-force distance is reported separately and never
 * conflated with it.
 */
struct ConcatenatedPacking {
    EmbeddedPacking packing;
    int levels{0};
    std::int64_t Q{0};
    std::vector<std::int64_t> code_sizes;
    std::int64_t points_per_cell{1};  // prod M_i
    double base_min_distance{0.0};    // d_E(P + omega P) = d_E(P), certified
    double lambda_lower{0.0};
};

struct BuildOptions {
    std::int64_t coset_cap{4096};  // refuse specs with prod M_i beyond this
    int min_distance_cap{64};      // certification escalation limit
};

/// Materializes the packing. Requires validate(spec) to be empty and
/// prod M_i within the cap.
ConcatenatedPacking build(const ConcatenationSpec& spec, const BuildOptions& options = {});

/**
 * Finite-window density probe: counts packing points in the centered box
 * [-window, window]^N and compares points/volume with 1/det_per_point.
 * Boundary effects scale like 1/window; `tolerance` reflects that.
 */
struct DensityCheckReport {
    std::int64_t points{0};
    double box_volume{0.0};
    double measured_density{0.0};
    double expected_density{0.0};
    double relative_error{0.0};
    double tolerance{0.0};
    bool within_tolerance{false};
};

DensityCheckReport brute_density_check(const EmbeddedPacking& packing, int window);

/**
 * Plain-text spec file:
 *   p <prime>
 *   ell <levels>
 *   base <n>          followed by n rows of n integers
 *   code <path>       one line per level, paths relative to the spec file
 * '#' starts a comment. Code files use the coding module text format.
 */
ConcatenationSpec load_concat_spec(const std::string& path);

}  // namespace eisenpack
