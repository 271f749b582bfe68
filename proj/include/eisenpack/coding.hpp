#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace eisenpack {

/**
 * Q-ary block code stored as index vectors into a residue alphabet.
 * Codewords are distinct, length `length`, entries in [0, alphabet_size).
 * min_hamming_distance is the exhaustively computed pairwise minimum.
 * Every code constructed here contains the all-zero word; concatenation
 * requires it (codeword weights must reach the minimum distance).
 */
struct QaryCode {
    int length{0};
    int alphabet_size{0};
    std::vector<std::vector<int>> codewords;
    int min_hamming_distance{0};
    bool contains_zero{false};

    std::size_t size() const { return codewords.size(); }
};

/// Validates words (distinct, in-range, zero word present), computes the
/// exhaustive minimum distance, and assembles the code.
QaryCode make_code(int n, int Q, std::vector<std::vector<int>> words);

int hamming_distance(const std::vector<int>& a, const std::vector<int>& b);

/// Exhaustive pairwise minimum; n for codes with fewer than two words.
int exhaustive_min_distance(const std::vector<std::vector<int>>& words, int n);

/**
 * Q-ary entropy H_Q(rho) = rho log_Q(Q-1) - rho log_Q(rho)
 * - (1-rho) log_Q(1-rho), extended continuously with H_Q(0) = 0 and
 * H_Q(1) = log_Q(Q-1). Evaluated as rho log_Q((Q-1)/rho) plus a log1p-based
 * tail so small rho keep full precision.
 */
double entropy(int Q, double rho);

/// Variant fed an explicit log2(rho); exact for arguments far below double
/// range when the caller tracks logs (asymptotic bound ladders).
double entropy_with_log2(int Q, double rho, double log2_rho);

/// H'_Q: equals H_Q below (Q-1)/Q and is clamped to 1 on [(Q-1)/Q, 1].
double clipped_entropy(int Q, double rho);

/// Asymptotic Gilbert-Varshamov rate 1 - H_Q(rho), rho in (0, (Q-1)/Q).
double gv_rate(int Q, double rho);

/// Finite GV counting bound Q^n / sum_{j<d} C(n,j)(Q-1)^j; greedy codes
/// always reach at least this size.
double gv_size_lower_bound(int n, int Q, int d);

/**
 * Lexicographic greedy code: scan all Q^n words in lexicographic order
 * starting from zero, keeping every word at distance >= d from all kept
 * words. Deterministic; size meets the finite GV bound. Requires
 * Q^n <= 2^20.
 */
QaryCode greedy_gv_code(int n, int Q, int d);

/// The Q repeated symbols: (n, Q, n) code containing zero.
QaryCode repetition_code(int n, int Q);

/// Plain-text code format: header "n Q M d", then M lines of n indices.
void save_code(const QaryCode& code, std::ostream& os);
QaryCode load_code(std::istream& is);

}  // namespace eisenpack
