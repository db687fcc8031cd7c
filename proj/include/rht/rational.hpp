#pragma once

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>
#include <Eigen/Dense>

#include <string>
#include <string_view>

namespace rht {

/// Exact rational scalar. Expression templates are disabled so the type
/// composes cleanly inside Eigen expressions.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

template <class Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Matrix = MatrixX<Rational>;
using Vector = VectorX<Rational>;

/// "p/q" with q omitted when 1.
std::string to_string(const Rational& q);

/// Accepts "p", "p/q", with optional sign; the result is canonicalized.
Rational parse_rational(std::string_view text);

inline bool is_zero(const Rational& q) { return q.is_zero(); }

/// n! as an exact rational.
Rational factorial(int n);

}  // namespace rht
