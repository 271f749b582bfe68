#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace eisenpack {

/// Prime power q = p^r carried in log space; q itself is never materialized,
/// so exponents far beyond double range are fine.
struct PrimePower {
    std::int64_t p{0};
    int r{0};
    double log2_q{0.0};
    double ln_q{0.0};
};

/// Validates p prime and r >= 1. Evenness of r is enforced by the
/// curve-family bounds that require it, not here.
PrimePower make_prime_power(std::int64_t p, int r);

enum class BoundFamily { RingOfIntegers, Principal, Congruence, RTPrincipal, RTCongruence };

std::string to_string(BoundFamily family);

/**
 * One evaluated asymptotic bound. lambda_lower = lattice_term + codes_term
 * always; ell is the number of concatenated code levels, c the
 * minimum-distance coefficient d_E >= c sqrt(n) when the family defines one.
 */
struct BoundReport {
    BoundFamily family{BoundFamily::RingOfIntegers};
    std::int64_t Q{0};
    std::int64_t p{0};  // prime of q; 0 when the family has no q
    int r{0};
    std::optional<double> y;
    long long ell{0};
    std::optional<double> c;
    double lattice_term{0.0};
    double codes_term{0.0};
    double lambda_lower{0.0};
    bool ell_clamped{false};
};

/**
 * Family derived from O_K^n, n = Q^ell, with GV codes of relative distance
 * 1/Q^i (clipped entropy H'). Reported lattice term includes the
 * -(ell/2)log2(Q) determinant share; the codes term carries the matching
 * (1/2)log2(Q) sum(1 - H') so the two add to the closed-form bound.
 * Accepts any Q >= 2; prime-ideal norms are what the searches feed it.
 */
BoundReport ring_of_integers_bound(std::int64_t Q, long long ell);

/// General engine: family with d_E(L_n) >= c sqrt(n), c^2 = c2, and
/// delta = limsup (1/n) log2 det(L_n); ell = floor(log_Q((Q-1)/(c^2 Q))).
BoundReport general_concat_bound(std::int64_t Q, double c2, double delta);

/// Concatenation with augmented principal lattices, q an even prime power.
BoundReport principal_bound(std::int64_t Q, const PrimePower& q);

/// Concatenation with augmented congruence lattices; divisor density
/// lim deg(D)/|X(k)| = y/(2 ln q), 0 < y <= 1.
BoundReport congruence_bound(std::int64_t Q, const PrimePower& q, double y);

/// Lattice-only baselines (no codes, no quarter-log-3 complexification term).
double rt_principal_baseline(const PrimePower& q);
double rt_congruence_baseline(const PrimePower& q, double y);

/// Reference optimum of the third construction compared against in the
/// source material: -1.26532181415209410650824899158 at z = 3049/10000,
/// Q = 4. Stored, not computed; the defining formula is not part of this
/// library's scope.
double xing_reference_constant();

struct YStage {
    double lo{0.0};
    double hi{0.0};
    double step{0.0};
};

/**
 * Search grid: Q runs over norms of prime ideals above primes <=
 * prime_limit_Q, q = p^r over primes <= prime_limit_q with even r in
 * [r_min, r_max]. The congruence search additionally sweeps y through the
 * explicit stages, then (when auto_refine) keeps dividing the stage floor by
 * ten, restricted to the refine_top_k best (Q, q) pairs, until a stage fails
 * to improve the running best lambda by more than min_improvement, the step
 * falls below best_y/1000, or y_floor is reached.
 */
struct SearchConfig {
    std::int64_t prime_limit_Q{100};
    std::int64_t prime_limit_q{100};
    std::vector<std::int64_t> q_primes;  // explicit q primes; empty = all up to prime_limit_q
    int r_min{2};
    int r_max{250};
    std::vector<YStage> y_schedule;
    bool auto_refine{true};
    double min_improvement{2.5e-10};
    int refine_top_k{32};
    double y_floor{1e-13};
    int threads{1};
};

/// Remark-grid presets: principal (primes <= 100, even r <= 250) and
/// congruence (primes <= 60, even r <= 100, staged y refinement).
SearchConfig paper_grid_principal();
SearchConfig paper_grid_congruence();

struct StageSummary {
    YStage stage;
    double best_lambda{0.0};
    double best_y{0.0};
    bool accepted{false};
};

struct SearchResult {
    BoundReport best;
    std::uint64_t evaluations{0};
    std::vector<StageSummary> stages;  // congruence only
};

/// Streaming consumer for every grid evaluation (CSV dumps). Supplying a
/// sink forces single-threaded evaluation so dump order is deterministic.
using ReportSink = std::function<void(const BoundReport&)>;

/// Deterministic argmax of lambda_lower over the grid; ties within 1e-12 go
/// to the lexicographically smallest (Q, p, r[, y]).
SearchResult search_principal(const SearchConfig& config, const ReportSink& sink = {});
SearchResult search_congruence(const SearchConfig& config, const ReportSink& sink = {});

/// Primes up to and including limit.
std::vector<std::int64_t> primes_up_to(std::int64_t limit);

}  // namespace eisenpack
