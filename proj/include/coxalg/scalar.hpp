#pragma once

#include <Eigen/Dense>
#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <stdexcept>
#include <string>

namespace coxalg {

// Exact scalars. All linear algebra in this library runs over these; there is
// no floating point anywhere in the computational core. Expression templates
// are off so the types behave as plain values inside Eigen expressions.
using Integer =
    boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

using QMat = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using QVec = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using ZMat = Eigen::Matrix<Integer, Eigen::Dynamic, Eigen::Dynamic>;
using ZVec = Eigen::Matrix<Integer, Eigen::Dynamic, 1>;
using Index = Eigen::Index;

// Errors raised by mathematically invalid requests (non-Artinian input where
// an Artinian algebra is required, degenerate pairings, gradings without a
// positivity certificate, ...). The CLI maps these to exit code 2.
class math_error : public std::runtime_error {
 public:
  explicit math_error(const std::string& what) : std::runtime_error(what) {}
};

// GMP does not canonicalize rationals built from separate numerator and
// denominator; routing the construction through an exact division does.
inline Rational rat(const Integer& num, const Integer& den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  return Rational(num) / Rational(den);
}

inline Rational rat(long num, long den) { return rat(Integer(num), Integer(den)); }

// Parses "p" or "p/q" with optional sign.
inline Rational parse_rational(const std::string& text) {
  try {
    const auto slash = text.find('/');
    if (slash == std::string::npos) return Rational(Integer(text));
    return rat(Integer(text.substr(0, slash)), Integer(text.substr(slash + 1)));
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad rational literal: " + text);
  }
}

inline bool is_integer(const Rational& q) { return denominator(q) == 1; }

inline Integer factorial(Index n) {
  Integer r = 1;
  for (Index i = 2; i <= n; ++i) r *= i;
  return r;
}

// c! / (c - a)! for 0 <= a <= c.
inline Integer falling_factorial(Index c, Index a) {
  Integer r = 1;
  for (Index i = 0; i < a; ++i) r *= Integer(c - i);
  return r;
}

// Floor division (GMP's operator/ truncates toward zero).
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Integer mod_floor(const Integer& a, const Integer& b) {
  return a - floor_div(a, b) * b;
}

inline Integer floor_rat(const Rational& q) {
  return floor_div(numerator(q), denominator(q));
}

}  // namespace coxalg
