#include "eisenpack/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "eisenpack/errors.hpp"

namespace eisenpack {

namespace {

constexpr double kSqrt3Over2 = 0.8660254037844386467637231707529362;
constexpr double kLn2 = 0.6931471805599453094172321214581766;

__int128 checked_mul_i128(__int128 a, __int128 b) {
    __int128 r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("lattice: 128-bit multiplication overflow");
    return r;
}

__int128 checked_sub_i128(__int128 a, __int128 b) {
    __int128 r;
    if (__builtin_sub_overflow(a, b, &r))
        throw std::overflow_error("lattice: 128-bit subtraction overflow");
    return r;
}

void check_basis_shape(const IntegerLattice& lattice) {
    if (lattice.ambient_dim <= 0) throw std::invalid_argument("lattice: ambient dimension must be positive");
    if (lattice.basis.empty()) throw std::invalid_argument("lattice: empty basis");
    if (lattice.rank() > lattice.ambient_dim)
        throw std::invalid_argument("lattice: rank exceeds ambient dimension");
    for (const auto& row : lattice.basis)
        if (static_cast<int>(row.size()) != lattice.ambient_dim)
            throw std::invalid_argument("lattice: basis row length mismatch");
}

std::vector<std::vector<double>> to_double_rows(const IntegerLattice& lattice) {
    std::vector<std::vector<double>> rows;
    rows.reserve(lattice.basis.size());
    for (const auto& row : lattice.basis) rows.emplace_back(row.begin(), row.end());
    return rows;
}

std::vector<std::vector<double>> gram_matrix(const std::vector<std::vector<double>>& basis) {
    const std::size_t r = basis.size();
    std::vector<std::vector<double>> g(r, std::vector<double>(r, 0.0));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = i; j < r; ++j)
            g[i][j] = g[j][i] = std::inner_product(basis[i].begin(), basis[i].end(), basis[j].begin(), 0.0);
    return g;
}

/// Cholesky factor diagonal product = sqrt(det G); throws on non-PD input.
double gram_det_from_gram(std::vector<std::vector<double>> g) {
    const std::size_t r = g.size();
    double det_sqrt = 1.0;
    for (std::size_t k = 0; k < r; ++k) {
        double pivot = g[k][k];
        for (std::size_t m = 0; m < k; ++m) pivot -= g[k][m] * g[k][m];
        if (!(pivot > 1e-12)) throw std::invalid_argument("lattice: degenerate basis (Gram not positive definite)");
        const double l = std::sqrt(pivot);
        g[k][k] = l;
        det_sqrt *= l;
        for (std::size_t i = k + 1; i < r; ++i) {
            double v = g[i][k];
            for (std::size_t m = 0; m < k; ++m) v -= g[i][m] * g[k][m];
            g[i][k] = v / l;
        }
    }
    return det_sqrt;
}

std::vector<std::vector<double>> invert_spd(std::vector<std::vector<double>> m) {
    const std::size_t r = m.size();
    std::vector<std::vector<double>> inv(r, std::vector<double>(r, 0.0));
    for (std::size_t i = 0; i < r; ++i) inv[i][i] = 1.0;
    for (std::size_t k = 0; k < r; ++k) {
        // partial pivot for robustness; Gram matrices are SPD so pivots stay positive
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < r; ++i)
            if (std::fabs(m[i][k]) > std::fabs(m[piv][k])) piv = i;
        if (std::fabs(m[piv][k]) < 1e-14) throw std::invalid_argument("lattice: singular Gram matrix");
        std::swap(m[k], m[piv]);
        std::swap(inv[k], inv[piv]);
        const double d = m[k][k];
        for (std::size_t j = 0; j < r; ++j) {
            m[k][j] /= d;
            inv[k][j] /= d;
        }
        for (std::size_t i = 0; i < r; ++i) {
            if (i == k) continue;
            const double f = m[i][k];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < r; ++j) {
                m[i][j] -= f * m[k][j];
                inv[i][j] -= f * inv[k][j];
            }
        }
    }
    return inv;
}

/// Minimum ||delta + sum c_i b_i||^2 over c in [-bound, bound]^rank,
/// excluding exact zero vectors. Returns +inf if everything was zero.
double enumerate_min_norm2(const std::vector<std::vector<double>>& basis,
                           const std::vector<double>& delta, int bound) {
    const std::size_t rank = basis.size();
    const std::size_t n = delta.size();
    std::vector<std::vector<double>> prefix(rank + 1, std::vector<double>(n, 0.0));
    prefix[0] = delta;
    double best = std::numeric_limits<double>::infinity();

    auto recurse = [&](auto&& self, std::size_t depth) -> void {
        if (depth == rank) {
            double norm2 = 0.0;
            for (double v : prefix[rank]) norm2 += v * v;
            if (norm2 > 1e-18 && norm2 < best) best = norm2;
            return;
        }
        for (int c = -bound; c <= bound; ++c) {
            for (std::size_t j = 0; j < n; ++j)
                prefix[depth + 1][j] = prefix[depth][j] + static_cast<double>(c) * basis[depth][j];
            self(self, depth + 1);
        }
    };
    recurse(recurse, 0);
    return best;
}

MinDistanceResult min_distance_impl(const std::vector<std::vector<double>>& basis,
                                    const std::vector<std::vector<double>>& coset_reps, int coeff_bound) {
    if (coeff_bound < 1) throw std::invalid_argument("min_distance: coefficient bound must be >= 1");
    const std::size_t n = basis.empty() ? coset_reps.front().size() : basis[0].size();

    double best2 = std::numeric_limits<double>::infinity();
    std::vector<double> delta(n, 0.0);
    for (std::size_t i = 0; i < coset_reps.size(); ++i) {
        for (std::size_t j = i; j < coset_reps.size(); ++j) {
            for (std::size_t c = 0; c < n; ++c) delta[c] = coset_reps[j][c] - coset_reps[i][c];
            best2 = std::min(best2, enumerate_min_norm2(basis, delta, coeff_bound));
        }
    }
    if (!std::isfinite(best2)) throw std::invalid_argument("min_distance: no nonzero point found");

    MinDistanceResult result;
    result.distance = std::sqrt(best2);
    const double dual = max_dual_row_norm(basis);
    const double slack = coset_reps.size() > 1 ? 1.0 : 0.0;
    result.required_bound = static_cast<int>(std::ceil(result.distance * dual + slack - 1e-9));
    result.required_bound = std::max(result.required_bound, 1);
    result.certified = coeff_bound >= result.required_bound;
    return result;
}

double log2_factorial(double x) { return std::lgamma(x + 1.0) / kLn2; }

}  // namespace

IntegerLattice root_lattice_A(int n) {
    if (n < 2) throw std::invalid_argument("root_lattice_A: need n >= 2");
    IntegerLattice lattice;
    lattice.ambient_dim = n;
    lattice.basis.assign(n - 1, std::vector<std::int64_t>(n, 0));
    for (int i = 0; i + 1 < n; ++i) {
        lattice.basis[i][i] = 1;
        lattice.basis[i][i + 1] = -1;
    }
    return lattice;
}

IntegerLattice augment(const IntegerLattice& lattice, std::int64_t chi) {
    check_basis_shape(lattice);
    if (chi == 0) throw std::invalid_argument("augment: chi must be nonzero");
    if (lattice.rank() != lattice.ambient_dim - 1)
        throw std::invalid_argument("augment: lattice must have rank n-1");
    for (const auto& row : lattice.basis) {
        std::int64_t sum = 0;
        for (std::int64_t v : row) sum += v;
        if (sum != 0) throw std::invalid_argument("augment: basis row with nonzero coordinate sum");
    }
    IntegerLattice out = lattice;
    std::vector<std::int64_t> extra(lattice.ambient_dim, 0);
    extra.back() = chi;
    out.basis.push_back(std::move(extra));
    return out;
}

__int128 gram_det_squared(const IntegerLattice& lattice) {
    check_basis_shape(lattice);
    const int r = lattice.rank();
    std::vector<std::vector<__int128>> m(r, std::vector<__int128>(r, 0));
    for (int i = 0; i < r; ++i)
        for (int j = i; j < r; ++j) {
            __int128 dot = 0;
            for (int c = 0; c < lattice.ambient_dim; ++c)
                dot += checked_mul_i128(lattice.basis[i][c], lattice.basis[j][c]);
            m[i][j] = m[j][i] = dot;
        }

    // Bareiss fraction-free elimination; Gram is PSD so pivots stay nonnegative
    // and vanish only when the basis is dependent.
    __int128 prev = 1;
    for (int k = 0; k + 1 < r; ++k) {
        if (m[k][k] == 0) throw std::invalid_argument("gram_det: degenerate basis");
        for (int i = k + 1; i < r; ++i)
            for (int j = k + 1; j < r; ++j) {
                const __int128 num =
                    checked_sub_i128(checked_mul_i128(m[i][j], m[k][k]), checked_mul_i128(m[i][k], m[k][j]));
                m[i][j] = num / prev;  // exact division by construction
            }
        prev = m[k][k];
    }
    const __int128 det = m[r - 1][r - 1];
    if (det <= 0) throw std::invalid_argument("gram_det: degenerate basis");
    return det;
}

double gram_det(const IntegerLattice& lattice) {
    return std::sqrt(static_cast<double>(gram_det_squared(lattice)));
}

double gram_det(const std::vector<std::vector<double>>& basis) {
    if (basis.empty()) throw std::invalid_argument("gram_det: empty basis");
    return gram_det_from_gram(gram_matrix(basis));
}

double max_dual_row_norm(const std::vector<std::vector<double>>& basis) {
    if (basis.empty()) throw std::invalid_argument("max_dual_row_norm: empty basis");
    const auto ginv = invert_spd(gram_matrix(basis));
    const std::size_t r = basis.size();
    const std::size_t n = basis[0].size();
    double best = 0.0;
    for (std::size_t i = 0; i < r; ++i) {
        double norm2 = 0.0;
        for (std::size_t c = 0; c < n; ++c) {
            double w = 0.0;
            for (std::size_t j = 0; j < r; ++j) w += ginv[i][j] * basis[j][c];
            norm2 += w * w;
        }
        best = std::max(best, std::sqrt(norm2));
    }
    return best;
}

MinDistanceResult min_distance(const IntegerLattice& lattice, int coeff_bound) {
    check_basis_shape(lattice);
    return min_distance_impl(to_double_rows(lattice), {std::vector<double>(lattice.ambient_dim, 0.0)},
                             coeff_bound);
}

MinDistanceResult min_distance(const EmbeddedPacking& packing, int coeff_bound) {
    return min_distance_impl(packing.period_basis, packing.coset_reps, coeff_bound);
}

namespace {

template <typename T>
MinDistanceResult certified_impl(const T& object, int initial_bound, int max_bound) {
    int bound = std::max(initial_bound, 1);
    while (true) {
        MinDistanceResult r = min_distance(object, bound);
        if (r.certified) return r;
        if (r.required_bound > max_bound)
            throw InfeasibleError("certified_min_distance: required coefficient bound " +
                                  std::to_string(r.required_bound) + " exceeds cap " + std::to_string(max_bound));
        bound = std::max(r.required_bound, bound + 1);
    }
}

}  // namespace

MinDistanceResult certified_min_distance(const IntegerLattice& lattice, int initial_bound, int max_bound) {
    return certified_impl(lattice, initial_bound, max_bound);
}

MinDistanceResult certified_min_distance(const EmbeddedPacking& packing, int initial_bound, int max_bound) {
    return certified_impl(packing, initial_bound, max_bound);
}

EmbeddedPacking complexify(const IntegerLattice& lattice) {
    check_basis_shape(lattice);
    const int n = lattice.ambient_dim;
    if (lattice.rank() != n) throw std::invalid_argument("complexify: lattice must be full rank");
    const double det_p = gram_det(lattice);  // also rejects rank-deficient input

    EmbeddedPacking packing;
    packing.real_dim = 2 * n;
    packing.complex_dim = n;
    packing.coset_reps = {std::vector<double>(2 * n, 0.0)};
    packing.period_basis.reserve(2 * static_cast<std::size_t>(n));
    // coordinate pairs (2j, 2j+1) hold the embedding of complex coordinate j
    for (const auto& row : lattice.basis) {
        std::vector<double> u(2 * n, 0.0);
        for (int j = 0; j < n; ++j) {
            const auto xy = embed(static_cast<double>(row[j]), 0.0);
            u[2 * j] = xy[0];
            u[2 * j + 1] = xy[1];
        }
        packing.period_basis.push_back(std::move(u));
    }
    for (const auto& row : lattice.basis) {
        std::vector<double> v(2 * n, 0.0);
        for (int j = 0; j < n; ++j) {
            const auto xy = embed(0.0, static_cast<double>(row[j]));
            v[2 * j] = xy[0];
            v[2 * j + 1] = xy[1];
        }
        packing.period_basis.push_back(std::move(v));
    }
    packing.det_per_point = std::pow(kSqrt3Over2, n) * det_p * det_p;
    return packing;
}

EmbeddedPacking scale_by(const EisensteinInt& t, const EmbeddedPacking& packing) {
    if (packing.complex_dim <= 0)
        throw std::invalid_argument("scale_by: packing has no complex coordinate structure");
    if (t.is_zero()) throw std::invalid_argument("scale_by: zero scalar");
    const auto tc = embed(t);  // complex value of t
    const double re = tc[0];
    const double im = tc[1];

    auto rotate = [&](const std::vector<double>& row) {
        std::vector<double> out(row.size());
        for (std::size_t j = 0; j + 1 < row.size(); j += 2) {
            out[j] = re * row[j] - im * row[j + 1];
            out[j + 1] = im * row[j] + re * row[j + 1];
        }
        return out;
    };

    EmbeddedPacking out = packing;
    for (auto& row : out.period_basis) row = rotate(row);
    for (auto& rep : out.coset_reps) rep = rotate(rep);
    const double nt = static_cast<double>(norm(t));
    out.det_per_point = packing.det_per_point * std::pow(nt, packing.complex_dim);
    if (packing.min_dist) out.min_dist = *packing.min_dist * std::sqrt(nt);
    return out;
}

double log2_unit_ball_volume(int N) {
    if (N < 1) throw std::invalid_argument("unit_ball_volume: N must be >= 1");
    const double half = 0.5 * N;
    return half * std::log2(M_PI) - log2_factorial(half);
}

double unit_ball_volume(int N) { return std::exp2(log2_unit_ball_volume(N)); }

double stirling_log2_unit_ball_volume(int N) {
    if (N < 1) throw std::invalid_argument("unit_ball_volume: N must be >= 1");
    const double n = N;
    return -0.5 * n * std::log2(n / (2.0 * M_PI * M_E)) - 0.5 * std::log2(n * M_PI);
}

DensityMetrics density_metrics(double d_E, double det, int N) {
    if (!(d_E > 0.0)) throw std::invalid_argument("density_metrics: d_E must be positive");
    if (!(det > 0.0)) throw std::invalid_argument("density_metrics: det must be positive");
    if (N < 1) throw std::invalid_argument("density_metrics: N must be >= 1");
    DensityMetrics m;
    const double log2_v = log2_unit_ball_volume(N);
    m.log2_density = N * std::log2(0.5 * d_E) + log2_v - std::log2(det);
    m.density = std::exp2(m.log2_density);
    m.center_density = std::exp2(m.log2_density - log2_v);
    m.lambda = m.log2_density / N;
    return m;
}

}  // namespace eisenpack
