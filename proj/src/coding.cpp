#include "eisenpack/coding.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "eisenpack/errors.hpp"

namespace eisenpack {

namespace {

constexpr double kLn2 = 0.6931471805599453094172321214581766;
constexpr std::int64_t kMaxWordSpace = 1 << 20;

void check_alphabet(int Q) {
    if (Q < 2) throw std::invalid_argument("coding: alphabet size must be >= 2");
}

std::int64_t checked_pow(std::int64_t base, int exp, std::int64_t cap) {
    std::int64_t r = 1;
    for (int i = 0; i < exp; ++i) {
        r *= base;
        if (r > cap) return cap + 1;
    }
    return r;
}

}  // namespace

int hamming_distance(const std::vector<int>& a, const std::vector<int>& b) {
    int d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
    return d;
}

int exhaustive_min_distance(const std::vector<std::vector<int>>& words, int n) {
    int best = n;
    for (std::size_t i = 0; i < words.size(); ++i)
        for (std::size_t j = i + 1; j < words.size(); ++j)
            best = std::min(best, hamming_distance(words[i], words[j]));
    return best;
}

QaryCode make_code(int n, int Q, std::vector<std::vector<int>> words) {
    check_alphabet(Q);
    if (n < 1) throw std::invalid_argument("make_code: length must be >= 1");
    if (words.empty()) throw std::invalid_argument("make_code: empty code");

    std::set<std::vector<int>> seen;
    bool has_zero = false;
    for (const auto& w : words) {
        if (static_cast<int>(w.size()) != n) throw std::invalid_argument("make_code: codeword length mismatch");
        for (int s : w)
            if (s < 0 || s >= Q) throw std::invalid_argument("make_code: symbol outside alphabet");
        if (!seen.insert(w).second) throw std::invalid_argument("make_code: duplicate codeword");
        has_zero = has_zero || std::all_of(w.begin(), w.end(), [](int s) { return s == 0; });
    }
    if (!has_zero) throw std::invalid_argument("make_code: code must contain the zero word");

    QaryCode code;
    code.length = n;
    code.alphabet_size = Q;
    code.codewords = std::move(words);
    code.min_hamming_distance = exhaustive_min_distance(code.codewords, n);
    code.contains_zero = true;
    return code;
}

double entropy(int Q, double rho) {
    check_alphabet(Q);
    if (rho < 0.0 || rho > 1.0) throw std::invalid_argument("entropy: rho outside [0, 1]");
    if (rho == 0.0) return 0.0;
    const double log2_q = std::log2(static_cast<double>(Q));
    if (rho == 1.0) return std::log2(static_cast<double>(Q - 1)) / log2_q;
    return entropy_with_log2(Q, rho, std::log2(rho));
}

double entropy_with_log2(int Q, double rho, double log2_rho) {
    check_alphabet(Q);
    if (rho == 0.0) return 0.0;  // continuous extension; caller's log may be -inf
    const double log2_q = std::log2(static_cast<double>(Q));
    const double head = rho * (std::log2(static_cast<double>(Q - 1)) - log2_rho);
    const double tail = -(1.0 - rho) * std::log1p(-rho) / kLn2;
    return (head + tail) / log2_q;
}

double clipped_entropy(int Q, double rho) {
    check_alphabet(Q);
    if (rho < 0.0 || rho > 1.0) throw std::invalid_argument("clipped_entropy: rho outside [0, 1]");
    const double boundary = static_cast<double>(Q - 1) / Q;
    return rho >= boundary ? 1.0 : entropy(Q, rho);
}

double gv_rate(int Q, double rho) {
    check_alphabet(Q);
    const double boundary = static_cast<double>(Q - 1) / Q;
    if (!(rho > 0.0) || !(rho < boundary))
        throw std::invalid_argument("gv_rate: rho outside (0, (Q-1)/Q)");
    return 1.0 - entropy(Q, rho);
}

double gv_size_lower_bound(int n, int Q, int d) {
    check_alphabet(Q);
    if (d < 1 || d > n) throw std::invalid_argument("gv_size_lower_bound: need 1 <= d <= n");
    double ball = 0.0;
    double binom = 1.0;  // C(n, j) (Q-1)^j
    for (int j = 0; j < d; ++j) {
        ball += binom;
        binom *= static_cast<double>(n - j) / (j + 1) * (Q - 1);
    }
    return std::pow(static_cast<double>(Q), n) / ball;
}

QaryCode greedy_gv_code(int n, int Q, int d) {
    check_alphabet(Q);
    if (n < 1) throw std::invalid_argument("greedy_gv_code: length must be >= 1");
    if (d < 1 || d > n) throw std::invalid_argument("greedy_gv_code: need 1 <= d <= n");
    const std::int64_t space = checked_pow(Q, n, kMaxWordSpace);
    if (space > kMaxWordSpace)
        throw InfeasibleError("greedy_gv_code: Q^n exceeds enumeration cap " + std::to_string(kMaxWordSpace));

    std::vector<std::vector<int>> chosen;
    std::vector<int> word(n, 0);
    // lexicographic scan, most significant digit first
    for (std::int64_t idx = 0; idx < space; ++idx) {
        std::int64_t v = idx;
        for (int pos = n - 1; pos >= 0; --pos) {
            word[pos] = static_cast<int>(v % Q);
            v /= Q;
        }
        bool ok = true;
        for (const auto& c : chosen) {
            if (hamming_distance(word, c) < d) {
                ok = false;
                break;
            }
        }
        if (ok) chosen.push_back(word);
    }
    QaryCode code = make_code(n, Q, std::move(chosen));
    if (code.min_hamming_distance < d && code.size() > 1)
        throw std::logic_error("greedy_gv_code: distance verification failed");
    return code;
}

QaryCode repetition_code(int n, int Q) {
    check_alphabet(Q);
    if (n < 1) throw std::invalid_argument("repetition_code: length must be >= 1");
    std::vector<std::vector<int>> words;
    words.reserve(Q);
    for (int s = 0; s < Q; ++s) words.emplace_back(n, s);
    return make_code(n, Q, std::move(words));
}

void save_code(const QaryCode& code, std::ostream& os) {
    os << code.length << ' ' << code.alphabet_size << ' ' << code.size() << ' '
       << code.min_hamming_distance << '\n';
    for (const auto& w : code.codewords) {
        for (int i = 0; i < code.length; ++i) os << (i ? " " : "") << w[i];
        os << '\n';
    }
}

QaryCode load_code(std::istream& is) {
    int n = 0, Q = 0, d = 0;
    std::size_t m = 0;
    if (!(is >> n >> Q >> m >> d)) throw MalformedInputError("code file: bad header (want 'n Q M d')");
    if (n < 1 || Q < 2 || m < 1) throw MalformedInputError("code file: invalid header values");
    std::vector<std::vector<int>> words(m, std::vector<int>(n));
    for (std::size_t i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j)
            if (!(is >> words[i][j])) throw MalformedInputError("code file: truncated codeword list");
    QaryCode code = make_code(n, Q, std::move(words));
    if (code.min_hamming_distance != d)
        throw MalformedInputError("code file: declared distance " + std::to_string(d) +
                                  " but recomputed " + std::to_string(code.min_hamming_distance));
    return code;
}

}  // namespace eisenpack
