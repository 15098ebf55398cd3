#include "parse.hpp"

#include "apery/errors.hpp"

#include <charconv>
#include <regex>

namespace apery::cli {

namespace {

// |exponent| beyond this is rejected rather than expanded into a huge integer
constexpr long kMaxExponent = 4000;

std::string trimmed(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

mpz_class pow10(long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, static_cast<unsigned long>(e));
  return r;
}

}  // namespace

mpq_class parse_rational(std::string_view text) {
  static const std::regex fraction(R"(([+-]?[0-9]+)/([0-9]+))");
  static const std::regex decimal(R"(([+-]?)([0-9]*)(?:\.([0-9]*))?(?:[eE]([+-]?[0-9]+))?)");
  const std::string s = trimmed(text);
  std::smatch m;
  if (std::regex_match(s, m, fraction)) {
    const mpz_class den(m[2].str());
    if (den == 0) throw DomainError("zero denominator in '" + s + "'");
    mpq_class q(mpz_class(m[1].str()), den);
    q.canonicalize();
    return q;
  }
  if (std::regex_match(s, m, decimal) && (m[2].length() > 0 || m[3].length() > 0)) {
    const std::string digits = m[2].str() + m[3].str();
    long exponent = -static_cast<long>(m[3].length());
    if (m[4].matched) {
      long e = 0;
      const std::string es = m[4].str();
      const char* first = es.data() + (es[0] == '+' ? 1 : 0);
      const auto [ptr, ec] = std::from_chars(first, es.data() + es.size(), e);
      if (ec != std::errc() || ptr != es.data() + es.size() || std::labs(e) > kMaxExponent) {
        throw DomainError("exponent out of range in '" + s + "'");
      }
      exponent += e;
    }
    mpq_class q(mpz_class(digits.empty() ? "0" : digits));
    if (exponent >= 0) {
      q *= pow10(exponent);
    } else {
      q /= pow10(-exponent);
    }
    q.canonicalize();
    if (m[1].str() == "-") q = -q;
    return q;
  }
  throw DomainError("not a rational literal: '" + s + "'");
}

exact::RationalComplex parse_complex(std::string_view text) {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) return exact::RationalComplex(parse_rational(text));
  return exact::RationalComplex(parse_rational(text.substr(0, comma)), parse_rational(text.substr(comma + 1)));
}

std::string format_rational(const mpq_class& q) { return q.get_str(); }

std::string format_complex(std::complex<double> z) {
  char buf[64];
  auto end = std::to_chars(buf, buf + sizeof buf, z.real()).ptr;
  *end++ = ',';
  end = std::to_chars(end, buf + sizeof buf, z.imag()).ptr;
  return std::string(buf, end);
}

}  // namespace apery::cli
