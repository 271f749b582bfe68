#include "extended_report.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <sstream>
#include <stdexcept>

#include "eisenpack/bound_engine.hpp"

namespace eisenpack::cli {

namespace {

using Real = boost::multiprecision::cpp_bin_float_50;
using Engine = detail::BoundEngine<Real>;

std::string format30(const Real& x) {
    std::ostringstream os;
    os.precision(30);
    os << x;
    return os.str();
}

Real parse_y(const std::string& literal) {
    const auto slash = literal.find('/');
    if (slash == std::string::npos) return Real(literal);
    const Real num(literal.substr(0, slash));
    const Real den(literal.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("y: zero denominator");
    return num / den;
}

ExtendedBound from_terms(const Engine::Terms& terms) {
    ExtendedBound out;
    out.lattice_term = format30(terms.lattice);
    out.codes_term = format30(terms.codes);
    out.lambda_lower = format30(terms.lambda);
    if (terms.has_c) out.c = format30(terms.c);
    out.ell = terms.ell;
    return out;
}

}  // namespace

ExtendedBound extended_ring(std::int64_t Q, long long ell) {
    return from_terms(Engine::ring(Q, ell));
}

ExtendedBound extended_principal(std::int64_t Q, std::int64_t p, int r) {
    return from_terms(Engine::principal(Engine::make_context(Q, p, r)));
}

ExtendedBound extended_congruence(std::int64_t Q, std::int64_t p, int r,
                                  const std::string& y_literal) {
    return from_terms(Engine::congruence(Engine::make_context(Q, p, r), parse_y(y_literal)));
}

}  // namespace eisenpack::cli
