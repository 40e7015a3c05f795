#ifndef PCX_NUMERIC_HPP
#define PCX_NUMERIC_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace pcx {

using Rational = mpq_class;
using BigInt = mpz_class;
using Mask = std::uint64_t;

// Domain error carrying a stable name (e.g. "CycleDetected") so callers and
// the CLI can report which contract was violated.
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& what)
      : std::runtime_error(name + ": " + what), name_(std::move(name)) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

// Canonical a/b (mpq_class(a, b) alone does not reduce).
inline Rational ratio(long a, long b) {
  Rational q(a, b);
  q.canonicalize();
  return q;
}
inline Rational ratio(const BigInt& a, const BigInt& b) {
  Rational q(a, b);
  q.canonicalize();
  return q;
}

// Parses "p/q", "p", or a decimal literal like "0.25" (exact).
Rational parse_rational(const std::string& s);
std::string to_string(const Rational& q);
double to_double(const Rational& q);
Rational from_double(double x);  // exact binary value of x

Rational rpow(const Rational& base, long exp);

// s-analog [k]_s = (s^k - s^-k)/(s - s^-1); [k]_1 = k.
Rational s_analog(long k, const Rational& s);
Rational s_factorial(long k, const Rational& s);
double s_analog(double k, double s);
// s = (1 + 2 sqrt(eps - eps^2)) / (1 - 2 eps), the s with 1/[2]_s = 1/2 - eps.
double s_from_eps(double eps);

inline int popcount(Mask m) { return __builtin_popcountll(m); }
inline bool subset(Mask a, Mask b) { return (a & ~b) == 0; }

bool log_concave(const std::vector<Rational>& c, int* fail_at = nullptr);
bool log_concave(const std::vector<BigInt>& c, int* fail_at = nullptr);

}  // namespace pcx

#endif
