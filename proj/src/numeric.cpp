#include "pcx/numeric.hpp"

#include <cmath>

namespace pcx {

Rational parse_rational(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw Error("ParseError", "empty rational");
  auto dot = s.find('.');
  auto e = s.find_first_of("eE");
  if (dot != std::string::npos || e != std::string::npos) {
    // decimal literal, converted exactly from its decimal expansion
    std::string mant = e == std::string::npos ? s : s.substr(0, e);
    long exp10 = e == std::string::npos ? 0 : std::stol(s.substr(e + 1));
    bool neg = !mant.empty() && mant[0] == '-';
    if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) mant = mant.substr(1);
    auto d = mant.find('.');
    std::string digits = mant;
    if (d != std::string::npos) {
      digits = mant.substr(0, d) + mant.substr(d + 1);
      exp10 -= static_cast<long>(mant.size() - d - 1);
    }
    if (digits.empty()) throw Error("ParseError", "bad number '" + raw + "'");
    for (char c : digits)
      if (!std::isdigit(static_cast<unsigned char>(c))) throw Error("ParseError", "bad number '" + raw + "'");
    BigInt num(digits, 10);
    Rational q(num);
    BigInt p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exp10)));
    if (exp10 >= 0)
      q *= p10;
    else
      q /= p10;
    if (neg) q = -q;
    q.canonicalize();
    return q;
  }
  Rational q;
  if (q.set_str(s, 10) != 0) throw Error("ParseError", "bad rational '" + raw + "'");
  if (s.find('/') != std::string::npos && q.get_den() == 0) throw Error("ParseError", "zero denominator");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& raw) {
  Rational q = raw;
  q.canonicalize();
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_str();
}

double to_double(const Rational& q) { return q.get_d(); }

Rational from_double(double x) {
  Rational q(x);
  q.canonicalize();
  return q;
}

Rational rpow(const Rational& base, long exp) {
  Rational r(1), b(base);
  bool inv = exp < 0;
  unsigned long e = static_cast<unsigned long>(inv ? -exp : exp);
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  if (inv) r = 1 / r;
  return r;
}

Rational s_analog(long k, const Rational& s) {
  if (k < 0) throw Error("DomainError", "s-analog needs k >= 0");
  if (s < 1) throw Error("DomainError", "s-analog needs s >= 1");
  if (s == 1) return Rational(k);
  // [k]_s = s^{-(k-1)} (1 + s^2 + ... + s^{2(k-1)})
  Rational acc(0), s2 = s * s, term(1);
  for (long i = 0; i < k; ++i) {
    acc += term;
    term *= s2;
  }
  return acc / rpow(s, k - 1);
}

Rational s_factorial(long k, const Rational& s) {
  Rational r(1);
  for (long i = 1; i <= k; ++i) r *= s_analog(i, s);
  return r;
}

double s_analog(double k, double s) {
  if (s < 1) throw Error("DomainError", "s-analog needs s >= 1");
  if (std::abs(s - 1) < 1e-12) return k;
  return (std::pow(s, k) - std::pow(s, -k)) / (s - 1 / s);
}

double s_from_eps(double eps) {
  if (eps <= 0 || eps >= 0.5) throw Error("DomainError", "eps must lie in (0, 1/2)");
  return (1 + 2 * std::sqrt(eps - eps * eps)) / (1 - 2 * eps);
}

template <class T>
static bool lc_impl(const std::vector<T>& c, int* fail_at) {
  for (std::size_t k = 1; k + 1 < c.size(); ++k) {
    if (c[k] * c[k] < c[k - 1] * c[k + 1]) {
      if (fail_at) *fail_at = static_cast<int>(k);
      return false;
    }
  }
  if (fail_at) *fail_at = -1;
  return true;
}

bool log_concave(const std::vector<Rational>& c, int* fail_at) { return lc_impl(c, fail_at); }
bool log_concave(const std::vector<BigInt>& c, int* fail_at) { return lc_impl(c, fail_at); }

}  // namespace pcx
