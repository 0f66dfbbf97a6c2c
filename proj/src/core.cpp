#include "ppwalk/errors.hpp"
#include "ppwalk/rational.hpp"

#include <cctype>

namespace ppwalk {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::EmptyPolynomial: return "EmptyPolynomial";
    case ErrorCode::NonUnitConstantTerm: return "NonUnitConstantTerm";
    case ErrorCode::InsufficientPrecision: return "InsufficientPrecision";
    case ErrorCode::ParityError: return "ParityError";
    case ErrorCode::UnsupportedOperator: return "UnsupportedOperator";
    case ErrorCode::DependentGenerators: return "DependentGenerators";
    case ErrorCode::ResidualNonzero: return "ResidualNonzero";
    case ErrorCode::NoUniqueSlope: return "NoUniqueSlope";
    case ErrorCode::IrrationalEigenvalue: return "IrrationalEigenvalue";
    case ErrorCode::RepeatedRoot: return "RepeatedRoot";
    case ErrorCode::CenterOfWeightSpace: return "CenterOfWeightSpace";
    case ErrorCode::NotInBoundary: return "NotInBoundary";
    case ErrorCode::NonIntegralIndex: return "NonIntegralIndex";
    case ErrorCode::NotPotentiallyCrystalline: return "NotPotentiallyCrystalline";
    case ErrorCode::SlopeOutOfRange: return "SlopeOutOfRange";
    case ErrorCode::ConstraintViolated: return "ConstraintViolated";
    case ErrorCode::FixtureMismatch: return "FixtureMismatch";
  }
  return "Unknown";
}

ErrorClass error_class(ErrorCode code) {
  switch (code) {
    case ErrorCode::DependentGenerators:
    case ErrorCode::ResidualNonzero:
      return ErrorClass::InvariantBreach;
    case ErrorCode::FixtureMismatch:
      return ErrorClass::Verification;
    default:
      return ErrorClass::Precondition;
  }
}

std::string to_string(const Rational& x) {
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw Error(ErrorCode::ParseError, "empty rational");

  auto valid_int = [](std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };

  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den.front() == '-' || den.front() == '+')
    throw Error(ErrorCode::ParseError, "not a rational: '" + std::string(text) + "'");
  if (num.front() == '+') num.remove_prefix(1);

  Integer d(std::string{den});
  if (d == 0) throw Error(ErrorCode::ParseError, "zero denominator");
  Rational r(Integer(std::string{num}), d);
  r.canonicalize();
  return r;
}

Rational rational_pow(unsigned long p, long e) {
  Integer q;
  mpz_ui_pow_ui(q.get_mpz_t(), p, static_cast<unsigned long>(e < 0 ? -e : e));
  if (e >= 0) return Rational(q);
  return Rational(Integer(1), q);
}

}  // namespace ppwalk
