#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "eisenpack/summation.hpp"

namespace eisenpack::detail {

/**
 * Real-type abstraction for the asymptotic bound formulas. The double
 * specialization uses <cmath>; multiprecision types (Boost cpp_bin_float)
 * resolve log/exp/sqrt/floor by ADL and parse constants from decimal
 * strings. Corrections of size 1/q are applied through log1p while they are
 * representable and dropped once below `correction_floor` (error far under
 * any reported precision).
 */
template <class Real>
struct RealOps {
    static Real from_decimal(const char* s) { return Real(s); }
    static Real log2(const Real& x) {
        using std::log;
        return log(x) / ln2();
    }
    static Real exp2(const Real& x) {
        using std::exp;
        return exp(x * ln2());
    }
    static Real sqrt_(const Real& x) {
        using std::sqrt;
        return sqrt(x);
    }
    static long long floor_ll(const Real& x) {
        using std::floor;
        return static_cast<long long>(floor(x));
    }
    static Real log1p_(const Real& x) {
        using std::log;
        return log(Real(1) + x);
    }
    static Real exp_neg(const Real& x) {
        using std::exp;
        return exp(-x);
    }
    static Real ln2() { return from_decimal("0.69314718055994530941723212145817656807550013436026"); }
    static Real pi() { return from_decimal("3.14159265358979323846264338327950288419716939937511"); }
    static Real euler_e() { return from_decimal("2.71828182845904523536028747135266249775724709369996"); }
    static Real log2_e() { return Real(1) / ln2(); }
    static Real correction_floor() { return from_decimal("1e-45"); }
    static Real entropy_cutoff() { return from_decimal("1e-40"); }
    static double to_double(const Real& x) { return static_cast<double>(x); }
};

template <>
struct RealOps<double> {
    static double from_decimal(const char* s) { return std::strtod(s, nullptr); }
    static double log2(double x) { return std::log2(x); }
    static double exp2(double x) { return std::exp2(x); }
    static double sqrt_(double x) { return std::sqrt(x); }
    static long long floor_ll(double x) { return static_cast<long long>(std::floor(x)); }
    static double log1p_(double x) { return std::log1p(x); }
    static double exp_neg(double x) { return std::exp(-x); }
    static double ln2() { return 0.6931471805599453094172321214581766; }
    static double pi() { return 3.141592653589793238462643383279503; }
    static double euler_e() { return 2.718281828459045235360287471352662; }
    static double log2_e() { return 1.442695040888963407359924681001892; }
    // 2^-70 per the huge-q handling policy: dropped corrections err < 1e-20
    static double correction_floor() { return 8.470329472543003e-22; }
    static double entropy_cutoff() { return 1e-18; }
    static double to_double(double x) { return x; }
};

/**
 * Closed-form evaluation of every asymptotic density-exponent bound: the
 * ring-of-integers family, the general concatenation bound, the principal-
 * and congruence-lattice improvements, and the two lattice-only baselines.
 * q = p^r is carried in log space throughout; the formulas never materialize
 * q, so q far beyond double range evaluates exactly as stably.
 */
template <class Real>
struct BoundEngine {
    using Ops = RealOps<Real>;

    struct Terms {
        Real lattice{};
        Real codes{};
        Real lambda{};
        Real c{};
        long long ell{0};
        bool has_c{false};
        bool ell_clamped{false};
    };

    /// Per-(Q, q) constants shared by the principal/congruence bounds and
    /// their baselines; building one is a handful of logs.
    struct QContext {
        std::int64_t Q{0};
        std::int64_t p{0};
        int r{0};
        Real log2_Q{};
        Real log2_Qm1{};
        Real log2_boundary{};  // log2((Q-1)/Q)
        Real log2_q{};
        Real ln_q{};
        Real log2_ln_q{};
        Real log2_qm1{};
        Real log2_qp1{};
        Real surd{};  // sqrt(q)/(sqrt(q)-1)
    };

    static Real entropy_log2(std::int64_t Q, const Real& rho, const Real& log2_rho) {
        if (rho == Real(0)) return Real(0);
        const Real log2_Q = Ops::log2(Real(Q));
        const Real head = rho * (Ops::log2(Real(Q - 1)) - log2_rho);
        const Real tail = -(Real(1) - rho) * Ops::log1p_(-rho) / Ops::ln2();
        return (head + tail) / log2_Q;
    }

    static QContext make_context(std::int64_t Q, std::int64_t p, int r) {
        if (Q < 2) throw std::invalid_argument("bound: Q must be >= 2");
        if (p < 2 || r < 1) throw std::invalid_argument("bound: prime power q needs p >= 2, r >= 1");
        QContext ctx;
        ctx.Q = Q;
        ctx.p = p;
        ctx.r = r;
        ctx.log2_Q = Ops::log2(Real(Q));
        ctx.log2_Qm1 = Ops::log2(Real(Q - 1));
        ctx.log2_boundary = ctx.log2_Qm1 - ctx.log2_Q;
        const Real lp = Ops::log2(Real(p));
        ctx.log2_q = Real(r) * lp;
        ctx.ln_q = ctx.log2_q * Ops::ln2();
        ctx.log2_ln_q = Ops::log2(ctx.ln_q);
        const Real inv_q = Ops::exp_neg(ctx.ln_q);
        ctx.log2_qm1 = ctx.log2_q;
        ctx.log2_qp1 = ctx.log2_q;
        if (inv_q > Ops::correction_floor()) {
            ctx.log2_qm1 += Ops::log1p_(-inv_q) / Ops::ln2();
            ctx.log2_qp1 += Ops::log1p_(inv_q) / Ops::ln2();
        }
        const Real inv_sqrt_q = Ops::exp_neg(ctx.ln_q / 2);
        ctx.surd = Real(1) / (Real(1) - inv_sqrt_q);
        return ctx;
    }

    /// sum_{i=0}^{ell-1} (1 - H_Q(rho_i)) with log2(rho_i) = log2_rho_top -
    /// i*log2_Q; compensated, with the convergent tail of ones collapsed once
    /// H drops below the cutoff. Entropy arguments above (Q-1)/Q are clamped
    /// to H = 1 when `clip` is set and rejected otherwise.
    static Real code_sum(std::int64_t Q, const Real& log2_Q, const Real& log2_boundary,
                         const Real& log2_rho_top, long long ell, bool clip) {
        CompensatedSum<Real> sum;
        for (long long i = 0; i < ell; ++i) {
            const Real log2_rho = log2_rho_top - Real(i) * log2_Q;
            if (log2_rho > log2_boundary) {
                if (!clip) {
                    if (log2_rho > log2_boundary + Real(Ops::from_decimal("1e-9")))
                        throw std::logic_error("bound: entropy argument exceeds (Q-1)/Q");
                    sum += Real(0);  // argument is the boundary up to roundoff, H = 1
                    continue;
                }
                continue;  // clipped entropy is 1, term vanishes
            }
            const Real rho = Ops::exp2(log2_rho);
            const Real h = entropy_log2(Q, rho, log2_rho);
            sum += Real(1) - h;
            if (h < Ops::entropy_cutoff()) {
                sum += Real(ell - i - 1);  // remaining terms are 1 - o(cutoff)
                break;
            }
        }
        return sum.value();
    }

    /// Ring-of-integers family: lattice part of O_K^n at n = Q^ell plus GV
    /// codes of relative distance 1/Q^i (clipped entropy).
    static Terms ring(std::int64_t Q, long long ell) {
        if (Q < 2) throw std::invalid_argument("ring bound: Q must be >= 2");
        if (ell < 0) throw std::invalid_argument("ring bound: ell must be >= 0");
        const Real log2_Q = Ops::log2(Real(Q));
        const Real log2_boundary = Ops::log2(Real(Q - 1)) - log2_Q;
        Terms t;
        t.ell = ell;
        t.lattice = Real(-1) + Ops::log2(Real(2) * Ops::pi() * Ops::euler_e()) / 2 -
                    Ops::log2(Real(3)) / 4 - Real(ell) / 2 * log2_Q;
        t.codes = log2_Q / 2 * code_sum(Q, log2_Q, log2_boundary, Real(0), ell, /*clip=*/true);
        t.lambda = t.lattice + t.codes;
        return t;
    }

    /// General concatenation bound for a family with d_E >= c sqrt(n) and
    /// normalized determinant exponent delta = lim (1/n) log2 det(L_n).
    static Terms general(std::int64_t Q, const Real& c2, const Real& delta) {
        if (Q < 2) throw std::invalid_argument("general bound: Q must be >= 2");
        if (!(c2 > Real(0)) || c2 > Real(1))
            throw std::invalid_argument("general bound: need 0 < c^2 <= 1");
        const Real log2_Q = Ops::log2(Real(Q));
        const Real log2_boundary = Ops::log2(Real(Q - 1)) - log2_Q;
        const Real log2_c2 = Ops::log2(c2);
        Terms t = with_ladder(Q, log2_Q, log2_boundary, /*log2_scale=*/log2_c2);
        t.lattice = (log2_c2 + Ops::log2(Ops::pi() * Ops::euler_e()) -
                     Ops::log2(Real(2) * Ops::sqrt_(Real(3)))) / 2 - delta;
        t.codes = log2_Q / 2 *
                  code_sum(Q, log2_Q, log2_boundary, log2_c2 + Real(t.ell) * log2_Q, t.ell, false);
        t.lambda = t.lattice + t.codes;
        t.c = Ops::sqrt_(c2);
        t.has_c = true;
        return t;
    }

    /// Principal-lattice improvement; c^2 = 2/(q+1).
    static Terms principal(const QContext& ctx) {
        require_even(ctx);
        const Real log2_c2 = Real(1) - ctx.log2_qp1;
        Terms t = with_ladder(ctx.Q, ctx.log2_Q, ctx.log2_boundary, log2_c2);
        t.lattice = rt_principal(ctx) - Ops::log2(Real(3)) / 4;
        t.codes = ctx.log2_Q / 2 * code_sum(ctx.Q, ctx.log2_Q, ctx.log2_boundary,
                                            log2_c2 + Real(t.ell) * ctx.log2_Q, t.ell, false);
        t.lambda = t.lattice + t.codes;
        t.c = Ops::exp2(log2_c2 / 2);
        t.has_c = true;
        return t;
    }

    /// Congruence-lattice improvement with divisor density y/(2 ln q);
    /// c^2 = y/ln q.
    static Terms congruence(const QContext& ctx, const Real& y) {
        require_even(ctx);
        if (!(y > Real(0)) || y > Real(1))
            throw std::invalid_argument("congruence bound: need 0 < y <= 1");
        const Real log2_c2 = Ops::log2(y) - ctx.log2_ln_q;
        Terms t = with_ladder(ctx.Q, ctx.log2_Q, ctx.log2_boundary, log2_c2);
        t.lattice = rt_congruence(ctx, y) - Ops::log2(Real(3)) / 4;
        t.codes = ctx.log2_Q / 2 * code_sum(ctx.Q, ctx.log2_Q, ctx.log2_boundary,
                                            log2_c2 + Real(t.ell) * ctx.log2_Q, t.ell, false);
        t.lambda = t.lattice + t.codes;
        t.c = Ops::exp2(log2_c2 / 2);
        t.has_c = true;
        return t;
    }

    /// Lattice-only baseline from augmented principal lattices.
    static Real rt_principal(const QContext& ctx) {
        require_even(ctx);
        return Ops::log2(Ops::pi() * Ops::euler_e()) / 2 - (ctx.log2_qp1 / 2 - ctx.log2_qm1) -
               ctx.surd * ctx.log2_q;
    }

    /// Lattice-only baseline from augmented congruence lattices.
    static Real rt_congruence(const QContext& ctx, const Real& y) {
        require_even(ctx);
        if (!(y > Real(0)) || y > Real(1))
            throw std::invalid_argument("congruence baseline: need 0 < y <= 1");
        return Ops::log2(Ops::pi() / 2) / 2 - ctx.log2_ln_q / 2 - ctx.surd * ctx.log2_q +
               ctx.log2_qm1 + Ops::log2(y) / 2 + (Real(1) - y) / 2 * Ops::log2_e();
    }

private:
    static void require_even(const QContext& ctx) {
        if (ctx.r % 2 != 0)
            throw std::invalid_argument("curve-family bound: q must be an even power of a prime");
    }

    /// ell = floor(log_Q((Q-1)/(c^2 Q))) from log2(c^2), clamped to >= 0 and
    /// nudged down if roundoff pushed the top entropy argument past the
    /// boundary.
    static Terms with_ladder(std::int64_t /*Q*/, const Real& log2_Q, const Real& log2_boundary,
                             const Real& log2_c2) {
        Terms t;
        const Real ell_real = (log2_boundary - log2_c2) / log2_Q;
        long long ell = Ops::floor_ll(ell_real);
        bool clamped = false;
        if (ell < 0) {
            ell = 0;
            clamped = true;
        }
        while (ell > 0 &&
               log2_c2 + Real(ell) * log2_Q > log2_boundary + Real(Ops::from_decimal("1e-9")))
            --ell;
        t.ell = ell;
        t.ell_clamped = clamped;
        return t;
    }
};

}  // namespace eisenpack::detail
