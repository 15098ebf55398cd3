#ifndef APERY_CLI_PARSE_HPP
#define APERY_CLI_PARSE_HPP

#include "apery/exact.hpp"

#include <gmpxx.h>

#include <complex>
#include <string>
#include <string_view>

namespace apery::cli {

/// Exact value of "7", "-0.125", "2.5e-3" or "1/8". Throws DomainError.
mpq_class parse_rational(std::string_view text);

/// "re" or "re,im", each part a rational literal.
exact::RationalComplex parse_complex(std::string_view text);

/// "p/q", or "p" when q = 1.
std::string format_rational(const mpq_class& q);

/// "re,im" with shortest round-trip decimals.
std::string format_complex(std::complex<double> z);

}  // namespace apery::cli

#endif  // APERY_CLI_PARSE_HPP
