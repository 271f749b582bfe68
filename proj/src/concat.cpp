#include "eisenpack/concat.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "eisenpack/errors.hpp"
#include "eisenpack/summation.hpp"

namespace eisenpack {

namespace {

/// Coefficients of v in the row basis B (v = alpha * B), full-rank square B.
std::vector<double> coefficients_in_basis(const std::vector<double>& v,
                                          const std::vector<std::vector<double>>& basis) {
    const std::size_t n = basis.size();
    // solve alpha * B = v by Gaussian elimination on B^T alpha^T = v^T
    std::vector<std::vector<double>> m(n, std::vector<double>(n + 1, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m[i][j] = basis[j][i];
        m[i][n] = v[i];
    }
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::fabs(m[i][k]) > std::fabs(m[piv][k])) piv = i;
        if (std::fabs(m[piv][k]) < 1e-12) throw std::invalid_argument("concat: singular period basis");
        std::swap(m[k], m[piv]);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k) continue;
            const double f = m[i][k] / m[k][k];
            if (f == 0.0) continue;
            for (std::size_t j = k; j <= n; ++j) m[i][j] -= f * m[k][j];
        }
    }
    std::vector<double> alpha(n);
    for (std::size_t k = 0; k < n; ++k) alpha[k] = m[k][n] / m[k][k];
    return alpha;
}

/// Translate rep by period-lattice vectors so its basis coefficients lie in
/// [0, 1); keeps pairwise difference enumeration windows small.
std::vector<double> reduce_into_cell(const std::vector<double>& rep,
                                     const std::vector<std::vector<double>>& basis) {
    const auto alpha = coefficients_in_basis(rep, basis);
    std::vector<double> out = rep;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        const double shift = std::floor(alpha[i]);
        if (shift == 0.0) continue;
        for (std::size_t j = 0; j < out.size(); ++j) out[j] -= shift * basis[i][j];
    }
    return out;
}

}  // namespace

std::vector<std::string> validate(const ConcatenationSpec& spec) {
    std::vector<std::string> violations;
    const int n = spec.base.ambient_dim;

    if (spec.levels != static_cast<int>(spec.codes.size())) {
        violations.push_back("level count " + std::to_string(spec.levels) + " does not match " +
                             std::to_string(spec.codes.size()) + " supplied codes");
        return violations;
    }
    if (spec.base.rank() != n) {
        violations.push_back("base lattice must be full rank");
        return violations;
    }

    double d2 = 0.0;
    if (spec.levels > 0) {
        // d_E(P + omega P) = d_E(P) by the degree-2 distance lemma
        d2 = std::pow(certified_min_distance(spec.base).distance, 2);
    }
    for (int i = 0; i < spec.levels; ++i) {
        const QaryCode& code = spec.codes[i];
        const std::string name = "C" + std::to_string(i);
        if (code.alphabet_size != spec.info.Q)
            violations.push_back(name + ": alphabet size " + std::to_string(code.alphabet_size) +
                                 " != Q = " + std::to_string(spec.info.Q));
        if (code.length != n)
            violations.push_back(name + ": length " + std::to_string(code.length) +
                                 " != n = " + std::to_string(n));
        if (!code.contains_zero) violations.push_back(name + ": missing zero codeword");

        const double required = std::pow(static_cast<double>(spec.info.Q), spec.levels - i) * d2;
        if (static_cast<double>(code.min_hamming_distance) < required - 1e-9) {
            std::ostringstream os;
            os << name << ": d_H " << code.min_hamming_distance << " < Q^(l-i) * d_E^2 = " << required;
            violations.push_back(os.str());
        }
    }
    return violations;
}

ConcatenatedPacking build(const ConcatenationSpec& spec, const BuildOptions& options) {
    const auto violations = validate(spec);
    if (!violations.empty())
        throw std::invalid_argument("concat build: invalid spec: " + violations.front());

    const int n = spec.base.ambient_dim;
    std::int64_t points = 1;
    for (const auto& code : spec.codes) {
        points *= static_cast<std::int64_t>(code.size());
        if (points > options.coset_cap)
            throw InfeasibleError("concat build: prod M_i exceeds coset cap " +
                                  std::to_string(options.coset_cap));
    }

    const EmbeddedPacking base_packing = complexify(spec.base);
    const double d_base =
        certified_min_distance(spec.base, 2, options.min_distance_cap).distance;

    EmbeddedPacking period = scale_by(pow(spec.info.t, spec.levels), base_packing);

    // all sums sum_i t^i c_i, as Eisenstein coordinate vectors, then embedded
    std::vector<std::vector<EisensteinInt>> sums{std::vector<EisensteinInt>(n)};
    for (int i = 0; i < spec.levels; ++i) {
        const EisensteinInt ti = pow(spec.info.t, i);
        std::vector<std::vector<EisensteinInt>> next;
        next.reserve(sums.size() * spec.codes[i].size());
        for (const auto& partial : sums) {
            for (const auto& word : spec.codes[i].codewords) {
                auto v = partial;
                for (int j = 0; j < n; ++j) v[j] = v[j] + ti * spec.info.reps[word[j]];
                next.push_back(std::move(v));
            }
        }
        sums = std::move(next);
    }

    std::vector<std::vector<double>> reps;
    reps.reserve(sums.size());
    for (const auto& v : sums) {
        std::vector<double> rep(2 * n);
        for (int j = 0; j < n; ++j) {
            const auto xy = embed(v[j]);
            rep[2 * j] = xy[0];
            rep[2 * j + 1] = xy[1];
        }
        reps.push_back(reduce_into_cell(rep, period.period_basis));
    }

    ConcatenatedPacking out;
    out.levels = spec.levels;
    out.Q = spec.info.Q;
    for (const auto& code : spec.codes) out.code_sizes.push_back(static_cast<std::int64_t>(code.size()));
    out.points_per_cell = points;
    out.base_min_distance = d_base;

    out.packing = std::move(period);
    out.packing.coset_reps = std::move(reps);
    out.packing.det_per_point /= static_cast<double>(points);
    out.packing.min_dist.reset();  // only the brute-force check may set it

    const double lambda_base =
        density_metrics(d_base, base_packing.det_per_point, 2 * n).lambda;
    CompensatedSum<double> log2m;
    for (const auto& code : spec.codes) log2m += std::log2(static_cast<double>(code.size()));
    out.lambda_lower = lambda_base + log2m.value() / (2.0 * n);
    return out;
}

DensityCheckReport brute_density_check(const EmbeddedPacking& packing, int window) {
    if (window < 1) throw std::invalid_argument("brute_density_check: window must be >= 1");
    const std::size_t n = static_cast<std::size_t>(packing.real_dim);

    // order rows by first nonzero coordinate so coordinates are finalized as
    // early as possible; the reach-based pruning below then cuts whole
    // subtrees instead of single leaves
    std::vector<std::vector<double>> basis = packing.period_basis;
    std::stable_sort(basis.begin(), basis.end(), [](const auto& a, const auto& b) {
        auto first_nonzero = [](const std::vector<double>& row) {
            for (std::size_t j = 0; j < row.size(); ++j)
                if (std::fabs(row[j]) > 1e-12) return j;
            return row.size();
        };
        return first_nonzero(a) < first_nonzero(b);
    });

    // coefficient range that covers the box: |alpha_i| <= (|x| + |rep|) |w_i|
    const double radius = std::sqrt(static_cast<double>(n)) * window;
    double max_rep = 0.0;
    for (const auto& rep : packing.coset_reps) {
        double norm2 = 0.0;
        for (double v : rep) norm2 += v * v;
        max_rep = std::max(max_rep, std::sqrt(norm2));
    }
    const double max_dual = max_dual_row_norm(basis);
    const int bound = static_cast<int>(std::ceil((radius + max_rep) * max_dual)) + 1;

    // remaining rows can move coordinate j by at most reach[d][j]; prune
    // partial points that already left the box by more than that
    std::vector<std::vector<double>> reach(basis.size() + 1, std::vector<double>(n, 0.0));
    for (std::size_t d = basis.size(); d-- > 0;)
        for (std::size_t j = 0; j < n; ++j)
            reach[d][j] = reach[d + 1][j] + bound * std::fabs(basis[d][j]);

    std::int64_t count = 0;
    std::vector<std::vector<double>> prefix(basis.size() + 1, std::vector<double>(n, 0.0));
    auto recurse = [&](auto&& self, std::size_t depth) -> void {
        if (depth == basis.size()) {
            bool inside = true;
            for (double v : prefix[depth])
                if (std::fabs(v) > static_cast<double>(window) + 1e-9) {
                    inside = false;
                    break;
                }
            if (inside) ++count;
            return;
        }
        for (std::size_t j = 0; j < n; ++j)
            if (std::fabs(prefix[depth][j]) > static_cast<double>(window) + reach[depth][j] + 1e-9)
                return;
        for (int c = -bound; c <= bound; ++c) {
            for (std::size_t j = 0; j < n; ++j)
                prefix[depth + 1][j] = prefix[depth][j] + static_cast<double>(c) * basis[depth][j];
            self(self, depth + 1);
        }
    };
    for (const auto& rep : packing.coset_reps) {
        prefix[0] = rep;
        recurse(recurse, 0);
    }

    DensityCheckReport report;
    report.points = count;
    report.box_volume = std::pow(2.0 * window, static_cast<double>(n));
    report.measured_density = static_cast<double>(count) / report.box_volume;
    report.expected_density = 1.0 / packing.det_per_point;
    report.relative_error =
        std::fabs(report.measured_density - report.expected_density) / report.expected_density;
    // boundary shell is O(1/window) of the box; constant covers diameter of the cell
    report.tolerance = 4.0 / window;
    report.within_tolerance = report.relative_error <= report.tolerance;
    return report;
}

ConcatenationSpec load_concat_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MalformedInputError("cannot open spec file: " + path);
    const auto dir_end = path.find_last_of('/');
    const std::string dir = dir_end == std::string::npos ? "" : path.substr(0, dir_end + 1);

    ConcatenationSpec spec;
    bool have_p = false, have_ell = false, have_base = false;
    std::vector<std::string> code_paths;

    std::string line;
    std::vector<std::string> tokens_pending;
    int base_rows_left = 0;
    int base_n = 0;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;

        if (base_rows_left > 0) {
            std::vector<std::int64_t> row;
            try {
                row.push_back(std::stoll(key));
            } catch (const std::exception&) {
                throw MalformedInputError(path + ": non-integer base row entry '" + key + "'");
            }
            std::int64_t v;
            while (ls >> v) row.push_back(v);
            if (static_cast<int>(row.size()) != base_n)
                throw MalformedInputError(path + ": base row needs " + std::to_string(base_n) + " entries");
            spec.base.basis.push_back(std::move(row));
            --base_rows_left;
            continue;
        }

        if (key == "p") {
            std::int64_t p;
            if (!(ls >> p)) throw MalformedInputError(path + ": bad 'p' line");
            spec.info = split_prime(p);
            have_p = true;
        } else if (key == "ell") {
            if (!(ls >> spec.levels) || spec.levels < 0) throw MalformedInputError(path + ": bad 'ell' line");
            have_ell = true;
        } else if (key == "base") {
            if (!(ls >> base_n) || base_n < 1) throw MalformedInputError(path + ": bad 'base' line");
            spec.base.ambient_dim = base_n;
            base_rows_left = base_n;
            have_base = true;
        } else if (key == "code") {
            std::string code_path;
            if (!(ls >> code_path)) throw MalformedInputError(path + ": bad 'code' line");
            code_paths.push_back(code_path.front() == '/' ? code_path : dir + code_path);
        } else {
            throw MalformedInputError(path + ": unknown directive '" + key + "'");
        }
    }
    if (!have_p || !have_ell || !have_base) throw MalformedInputError(path + ": missing p/ell/base");
    if (base_rows_left != 0) throw MalformedInputError(path + ": truncated base matrix");
    if (static_cast<int>(code_paths.size()) != spec.levels)
        throw MalformedInputError(path + ": expected " + std::to_string(spec.levels) + " code lines");

    for (const auto& cp : code_paths) {
        std::ifstream cin_(cp);
        if (!cin_) throw MalformedInputError("cannot open code file: " + cp);
        spec.codes.push_back(load_code(cin_));
    }
    return spec;
}

}  // namespace eisenpack
