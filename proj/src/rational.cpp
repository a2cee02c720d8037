#include "rum/rational.hpp"

#include <cctype>

#include "rum/error.hpp"

namespace rum {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    throw Error(Errc::ParseError, "not an exact rational: '" + std::string(text) + "'");
  }
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw Error(Errc::ParseError, "zero denominator: '" + std::string(text) + "'");
  Rational value(n, d);
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& value) { return value.get_str(10); }

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::NegativeProbability: return "NegativeProbability";
    case Errc::SumNotOne: return "SumNotOne";
    case Errc::UnknownAlternative: return "UnknownAlternative";
    case Errc::DuplicateMenu: return "DuplicateMenu";
    case Errc::EmptyMenu: return "EmptyMenu";
    case Errc::TooLarge: return "TooLarge";
    case Errc::NotADistribution: return "NotADistribution";
    case Errc::IncompleteDomain: return "IncompleteDomain";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::DomainMismatch: return "DomainMismatch";
    case Errc::InvalidCertificate: return "InvalidCertificate";
    case Errc::DegenerateArrangement: return "DegenerateArrangement";
    case Errc::WrongDimension: return "WrongDimension";
    case Errc::CyclicOrder: return "CyclicOrder";
    case Errc::ParseError: return "ParseError";
    case Errc::MethodDisagreement: return "MethodDisagreement";
  }
  return "Unknown";
}

}  // namespace rum
