#include "rational.hpp"

#include <cctype>

#include "error.hpp"

namespace flpart {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

[[noreturn]] void parse_fail(std::string_view text) {
  throw Error(ErrorCode::Parse, "not an exact rational: '" + std::string(text) + "'");
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) parse_fail(text);

  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) parse_fail(text);

  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view num = s.substr(0, slash);
    std::string_view den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) parse_fail(text);
    mpz_class d(std::string(den), 10);
    if (d == 0) parse_fail(text);
    value = Rational(mpz_class(std::string(num), 10), d);
    value.canonicalize();
  } else {
    std::string_view int_part = s;
    std::string_view frac_part;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
      int_part = s.substr(0, dot);
      frac_part = s.substr(dot + 1);
      if (frac_part.find('.') != std::string_view::npos) parse_fail(text);
    }
    if (int_part.empty() && frac_part.empty()) parse_fail(text);
    if (!int_part.empty() && !all_digits(int_part)) parse_fail(text);
    if (!frac_part.empty() && !all_digits(frac_part)) parse_fail(text);
    mpz_class digits(std::string(int_part) + std::string(frac_part), 10);
    mpz_class den = 1;
    for (size_t i = 0; i < frac_part.size(); ++i) den *= 10;
    value = Rational(digits, den);
    value.canonicalize();
  }
  if (negative) value = -value;
  return value;
}

std::string rational_str(const Rational& value) {
  return value.get_str();
}

std::string rational_decimal(const Rational& value, int digits) {
  if (digits < 0) throw Error(ErrorCode::InvalidArgument, "negative decimal precision");
  bool negative = value < 0;
  Rational v = negative ? Rational(-value) : value;
  mpz_class scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  mpz_class scaled_num = v.get_num() * scale;
  mpz_class q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), scaled_num.get_mpz_t(), v.get_den().get_mpz_t());
  if (2 * r >= v.get_den()) ++q;  // round half away from zero

  mpz_class int_part = q / scale;
  mpz_class frac_part = q % scale;
  std::string out;
  if (negative && (int_part != 0 || frac_part != 0)) out += '-';
  out += int_part.get_str();
  if (digits > 0) {
    std::string frac = frac_part.get_str();
    out += '.';
    out += std::string(static_cast<size_t>(digits) - frac.size(), '0');
    out += frac;
  }
  return out;
}

Rational grid_point(const Rational& lo, const Rational& hi, int steps, int index) {
  if (steps < 1) throw Error(ErrorCode::InvalidArgument, "steps must be >= 1");
  if (index < 0 || index >= steps) throw Error(ErrorCode::InvalidArgument, "grid index out of range");
  if (steps == 1) return lo;
  return lo + Rational(hi - lo) * index / (steps - 1);
}

}  // namespace flpart
