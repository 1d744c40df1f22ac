#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rarewalk {

using BigInt = mpz_class;

// Exact rational in lowest terms with positive denominator. mpq_class keeps
// results canonical as long as inputs are canonical, which the helpers below
// guarantee.
using Rational = mpq_class;

inline Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::invalid_argument("make_rational: zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// num / 2^exp2, reduced.
inline Rational dyadic(const BigInt& num, std::uint64_t exp2) {
  Rational q;
  mpz_set(mpq_numref(q.get_mpq_t()), num.get_mpz_t());
  mpz_set_ui(mpq_denref(q.get_mpq_t()), 1);
  mpz_mul_2exp(mpq_denref(q.get_mpq_t()), mpq_denref(q.get_mpq_t()), exp2);
  q.canonicalize();
  return q;
}

inline Rational dyadic(std::uint64_t num, std::uint64_t exp2) {
  return dyadic(BigInt(static_cast<unsigned long>(num)), exp2);
}

// "p/q", with "/q" omitted for integers.
inline std::string to_fraction_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline double to_double(const Rational& q) { return mpq_get_d(q.get_mpq_t()); }

inline BigInt binomial(std::uint64_t n, std::uint64_t k) {
  BigInt b;
  if (k > n) return b;  // 0
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return b;
}

}  // namespace rarewalk
