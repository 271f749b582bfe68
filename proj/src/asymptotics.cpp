#include "eisenpack/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "eisenpack/bound_engine.hpp"
#include "eisenpack/eisenstein.hpp"

namespace eisenpack {

namespace {

using Engine = detail::BoundEngine<double>;
using QContext = Engine::QContext;

constexpr double kTieTolerance = 1e-12;

BoundReport to_report(BoundFamily family, std::int64_t Q, std::int64_t p, int r,
                      std::optional<double> y, const Engine::Terms& terms) {
    BoundReport report;
    report.family = family;
    report.Q = Q;
    report.p = p;
    report.r = r;
    report.y = y;
    report.ell = terms.ell;
    if (terms.has_c) report.c = terms.c;
    report.lattice_term = terms.lattice;
    report.codes_term = terms.codes;
    report.lambda_lower = terms.lambda;
    report.ell_clamped = terms.ell_clamped;
    return report;
}

struct Candidate {
    double lambda{-std::numeric_limits<double>::infinity()};
    BoundReport report;
};

bool lex_less(const BoundReport& a, const BoundReport& b) {
    if (a.Q != b.Q) return a.Q < b.Q;
    if (a.p != b.p) return a.p < b.p;
    if (a.r != b.r) return a.r < b.r;
    return a.y.value_or(0.0) < b.y.value_or(0.0);
}

/// Keeps every candidate within the tie tolerance of the running maximum;
/// the final pick is the lexicographically smallest near-best, which makes
/// the result independent of evaluation partitioning.
struct ArgmaxTracker {
    double max_lambda{-std::numeric_limits<double>::infinity()};
    std::vector<Candidate> near_best;

    void offer(double lambda, const BoundReport& report) {
        if (lambda > max_lambda) {
            max_lambda = lambda;
            std::erase_if(near_best,
                          [&](const Candidate& c) { return c.lambda < max_lambda - kTieTolerance; });
        }
        if (lambda >= max_lambda - kTieTolerance) near_best.push_back({lambda, report});
    }

    void merge(const ArgmaxTracker& other) {
        for (const auto& c : other.near_best) offer(c.lambda, c.report);
    }

    bool empty() const { return near_best.empty(); }

    BoundReport pick() const {
        const Candidate* best = nullptr;
        for (const auto& c : near_best) {
            if (c.lambda < max_lambda - kTieTolerance) continue;
            if (!best || lex_less(c.report, best->report)) best = &c;
        }
        if (!best) throw std::logic_error("search: empty grid");
        return best->report;
    }
};

std::vector<std::int64_t> prime_ideal_norms(std::int64_t prime_limit) {
    std::vector<std::int64_t> norms;
    for (std::int64_t p : primes_up_to(prime_limit)) norms.push_back(split_prime(p).Q);
    return norms;
}

struct GridContext {
    QContext ctx;
};

std::vector<GridContext> build_contexts(const SearchConfig& config) {
    if (config.r_min < 1 || config.r_max < config.r_min)
        throw std::invalid_argument("search: bad r range");
    const auto norms = prime_ideal_norms(config.prime_limit_Q);
    auto qprimes = config.q_primes;
    if (qprimes.empty()) qprimes = primes_up_to(config.prime_limit_q);
    for (std::int64_t p : qprimes)
        if (!is_prime(p)) throw std::invalid_argument("search: q_primes entries must be prime");
    if (norms.empty() || qprimes.empty()) throw std::invalid_argument("search: empty grid");

    const int r_first = config.r_min % 2 == 0 ? config.r_min : config.r_min + 1;
    std::vector<GridContext> contexts;
    for (std::int64_t Q : norms)
        for (std::int64_t p : qprimes)
            for (int r = r_first; r <= config.r_max; r += 2)
                contexts.push_back({Engine::make_context(Q, p, r)});
    if (contexts.empty()) throw std::invalid_argument("search: empty grid");
    return contexts;
}

/// Chunked parallel loop over context indices. Each context is owned by one
/// thread, so per-context accumulators never race; trackers merge in thread
/// order afterwards.
template <typename Work>
void for_each_context(std::size_t count, int threads, const Work& work) {
    const int t = std::max(1, threads);
    if (t == 1 || count < 2) {
        work(0, 0, count);
        return;
    }
    const std::size_t chunk = (count + t - 1) / t;
    std::vector<std::thread> pool;
    for (int i = 0; i < t; ++i) {
        const std::size_t lo = std::min(count, i * chunk);
        const std::size_t hi = std::min(count, (i + 1) * chunk);
        if (lo >= hi) break;
        pool.emplace_back([&work, i, lo, hi] { work(static_cast<std::size_t>(i), lo, hi); });
    }
    for (auto& th : pool) th.join();
}

struct StageOutcome {
    ArgmaxTracker tracker;
    std::uint64_t evaluations{0};
};

/// Evaluates the congruence bound over one y stage for the given contexts.
/// ctx_best, when non-null, records each context's best lambda (used to pick
/// refinement contenders).
StageOutcome run_congruence_stage(const YStage& stage, const std::vector<GridContext>& contexts,
                                  const std::vector<std::size_t>& active, int threads,
                                  const ReportSink& sink, std::vector<double>* ctx_best) {
    if (!(stage.step > 0.0) || !(stage.hi >= stage.lo) || !(stage.lo > 0.0))
        throw std::invalid_argument("search: bad y stage");
    const auto count = static_cast<long long>(std::llround((stage.hi - stage.lo) / stage.step));

    const int threads_used = sink ? 1 : threads;
    std::vector<ArgmaxTracker> trackers(std::max(1, threads_used));
    std::vector<std::uint64_t> evals(trackers.size(), 0);

    for_each_context(active.size(), threads_used, [&](std::size_t tid, std::size_t lo, std::size_t hi) {
        for (std::size_t a = lo; a < hi; ++a) {
            const std::size_t idx = active[a];
            const QContext& ctx = contexts[idx].ctx;
            for (long long k = 0; k <= count; ++k) {
                const double y = std::min(stage.lo + static_cast<double>(k) * stage.step, stage.hi);
                if (y > 1.0) break;
                const Engine::Terms terms = Engine::congruence(ctx, y);
                ++evals[tid];
                const BoundReport report =
                    to_report(BoundFamily::Congruence, ctx.Q, ctx.p, ctx.r, y, terms);
                trackers[tid].offer(terms.lambda, report);
                if (ctx_best) (*ctx_best)[idx] = std::max((*ctx_best)[idx], terms.lambda);
                if (sink) sink(report);
            }
        }
    });

    StageOutcome outcome;
    for (std::size_t i = 0; i < trackers.size(); ++i) {
        outcome.tracker.merge(trackers[i]);
        outcome.evaluations += evals[i];
    }
    return outcome;
}

}  // namespace

PrimePower make_prime_power(std::int64_t p, int r) {
    if (!is_prime(p)) throw std::invalid_argument("prime power: p must be prime");
    if (r < 1) throw std::invalid_argument("prime power: r must be >= 1");
    PrimePower q;
    q.p = p;
    q.r = r;
    q.log2_q = static_cast<double>(r) * std::log2(static_cast<double>(p));
    q.ln_q = q.log2_q * detail::RealOps<double>::ln2();
    return q;
}

std::string to_string(BoundFamily family) {
    switch (family) {
        case BoundFamily::RingOfIntegers: return "RingOfIntegers";
        case BoundFamily::Principal: return "Principal";
        case BoundFamily::Congruence: return "Congruence";
        case BoundFamily::RTPrincipal: return "RTPrincipal";
        case BoundFamily::RTCongruence: return "RTCongruence";
    }
    return "?";
}

BoundReport ring_of_integers_bound(std::int64_t Q, long long ell) {
    return to_report(BoundFamily::RingOfIntegers, Q, 0, 0, std::nullopt, Engine::ring(Q, ell));
}

BoundReport general_concat_bound(std::int64_t Q, double c2, double delta) {
    return to_report(BoundFamily::Principal, Q, 0, 0, std::nullopt, Engine::general(Q, c2, delta));
}

BoundReport principal_bound(std::int64_t Q, const PrimePower& q) {
    const auto ctx = Engine::make_context(Q, q.p, q.r);
    return to_report(BoundFamily::Principal, Q, q.p, q.r, std::nullopt, Engine::principal(ctx));
}

BoundReport congruence_bound(std::int64_t Q, const PrimePower& q, double y) {
    const auto ctx = Engine::make_context(Q, q.p, q.r);
    return to_report(BoundFamily::Congruence, Q, q.p, q.r, y, Engine::congruence(ctx, y));
}

double rt_principal_baseline(const PrimePower& q) {
    return Engine::rt_principal(Engine::make_context(2, q.p, q.r));
}

double rt_congruence_baseline(const PrimePower& q, double y) {
    return Engine::rt_congruence(Engine::make_context(2, q.p, q.r), y);
}

double xing_reference_constant() { return -1.26532181415209410650824899158; }

std::vector<std::int64_t> primes_up_to(std::int64_t limit) {
    std::vector<std::int64_t> primes;
    for (std::int64_t n = 2; n <= limit; ++n)
        if (is_prime(n)) primes.push_back(n);
    return primes;
}

SearchConfig paper_grid_principal() {
    SearchConfig config;
    config.prime_limit_Q = 100;
    config.prime_limit_q = 100;
    config.r_min = 2;
    config.r_max = 250;
    return config;
}

SearchConfig paper_grid_congruence() {
    SearchConfig config;
    config.prime_limit_Q = 60;
    config.prime_limit_q = 60;
    config.r_min = 2;
    config.r_max = 100;
    config.y_schedule = {{0.1, 1.0, 0.01}, {0.01, 0.2, 0.0001}};
    config.auto_refine = true;
    return config;
}

SearchResult search_principal(const SearchConfig& config, const ReportSink& sink) {
    const auto contexts = build_contexts(config);
    const int threads_used = sink ? 1 : config.threads;
    std::vector<ArgmaxTracker> trackers(std::max(1, threads_used));
    std::vector<std::uint64_t> evals(trackers.size(), 0);

    for_each_context(contexts.size(), threads_used, [&](std::size_t tid, std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const QContext& ctx = contexts[i].ctx;
            const Engine::Terms terms = Engine::principal(ctx);
            ++evals[tid];
            const BoundReport report =
                to_report(BoundFamily::Principal, ctx.Q, ctx.p, ctx.r, std::nullopt, terms);
            trackers[tid].offer(terms.lambda, report);
            if (sink) sink(report);
        }
    });

    SearchResult result;
    ArgmaxTracker merged;
    for (std::size_t i = 0; i < trackers.size(); ++i) {
        merged.merge(trackers[i]);
        result.evaluations += evals[i];
    }
    result.best = merged.pick();
    return result;
}

SearchResult search_congruence(const SearchConfig& config, const ReportSink& sink) {
    if (config.y_schedule.empty())
        throw std::invalid_argument("search_congruence: y schedule must be nonempty");
    const auto contexts = build_contexts(config);

    std::vector<std::size_t> all_indices(contexts.size());
    for (std::size_t i = 0; i < all_indices.size(); ++i) all_indices[i] = i;
    std::vector<double> ctx_best(contexts.size(), -std::numeric_limits<double>::infinity());

    SearchResult result;
    ArgmaxTracker global;

    for (const YStage& stage : config.y_schedule) {
        StageOutcome outcome =
            run_congruence_stage(stage, contexts, all_indices, config.threads, sink, &ctx_best);
        result.evaluations += outcome.evaluations;
        StageSummary summary;
        summary.stage = stage;
        summary.accepted = true;
        if (!outcome.tracker.empty()) {
            const BoundReport stage_best = outcome.tracker.pick();
            summary.best_lambda = outcome.tracker.max_lambda;
            summary.best_y = stage_best.y.value_or(0.0);
        }
        result.stages.push_back(summary);
        global.merge(outcome.tracker);
    }

    if (config.auto_refine) {
        // restrict deep refinement to the strongest (Q, q) pairs seen so far
        std::vector<std::size_t> contenders = all_indices;
        std::sort(contenders.begin(), contenders.end(), [&](std::size_t a, std::size_t b) {
            if (ctx_best[a] != ctx_best[b]) return ctx_best[a] > ctx_best[b];
            const auto& ca = contexts[a].ctx;
            const auto& cb = contexts[b].ctx;
            if (ca.Q != cb.Q) return ca.Q < cb.Q;
            if (ca.p != cb.p) return ca.p < cb.p;
            return ca.r < cb.r;
        });
        if (config.refine_top_k > 0 &&
            contenders.size() > static_cast<std::size_t>(config.refine_top_k))
            contenders.resize(static_cast<std::size_t>(config.refine_top_k));

        double lo = config.y_schedule.back().lo / 10.0;
        while (lo >= config.y_floor) {
            const YStage stage{lo, std::min(20.0 * lo, 1.0), lo / 100.0};
            StageOutcome outcome =
                run_congruence_stage(stage, contexts, contenders, config.threads, sink, nullptr);
            result.evaluations += outcome.evaluations;

            StageSummary summary;
            summary.stage = stage;
            summary.best_lambda = outcome.tracker.max_lambda;
            if (!outcome.tracker.empty()) summary.best_y = outcome.tracker.pick().y.value_or(0.0);
            summary.accepted = outcome.tracker.max_lambda > global.max_lambda + config.min_improvement;
            result.stages.push_back(summary);

            if (!summary.accepted) break;  // refinement converged: keep the last significant best
            global.merge(outcome.tracker);
            if (stage.step < global.pick().y.value_or(1.0) * 1e-3) break;
            lo /= 10.0;
        }
    }

    result.best = global.pick();
    return result;
}

}  // namespace eisenpack
