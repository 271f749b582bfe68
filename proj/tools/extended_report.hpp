#pragma once

#include <cstdint>
#include <string>

namespace eisenpack::cli {

/// Bound evaluation at 50-digit working precision, formatted to 30
/// significant digits (the source experiments print 30). Values are decimal
/// strings so the double JSON schema is never silently degraded.
struct ExtendedBound {
    std::string lattice_term;
    std::string codes_term;
    std::string lambda_lower;
    std::string c;  // empty when the family defines no coefficient
    long long ell{0};
};

ExtendedBound extended_ring(std::int64_t Q, long long ell);
ExtendedBound extended_principal(std::int64_t Q, std::int64_t p, int r);
/// y_literal is a decimal or "a/b" fraction, evaluated in extended precision.
ExtendedBound extended_congruence(std::int64_t Q, std::int64_t p, int r,
                                  const std::string& y_literal);

}  // namespace eisenpack::cli
