#pragma once

// Scalar and dense matrix vocabulary shared by every module.
//
// Exact arithmetic uses GMP through Boost.Multiprecision with expression
// templates disabled, which is the configuration Eigen accepts as a custom
// scalar type.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <string_view>

namespace qloop {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = Matrix<std::int64_t>;
using RationalMatrix = Matrix<Rational>;
using RationalVector = Vector<Rational>;

/// Parses "p/q" or "p" (no whitespace). Throws ParseError.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" rendering with q >= 1, e.g. "8/1", "-3/4".
std::string to_fraction_string(const Rational& value);

Integer floor(const Rational& value);
Integer ceil(const Rational& value);

inline Integer numerator(const Rational& value) {
  return boost::multiprecision::numerator(value);
}
inline Integer denominator(const Rational& value) {
  return boost::multiprecision::denominator(value);
}

Integer lcm(const Integer& a, const Integer& b);

/// Narrowing with an overflow check; throws std::overflow_error.
std::int64_t to_int64(const Integer& value);

template <typename To, typename From>
Matrix<To> matrix_cast(const Matrix<From>& m) {
  Matrix<To> out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = To(m(i, j));
  return out;
}

}  // namespace qloop
