#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

#include <cstdint>
#include <string>

namespace laurentia {

namespace mp = boost::multiprecision;

/// Arbitrary-precision integer; expression templates are off so Eigen sees plain values.
using Integer = mp::number<mp::gmp_int, mp::et_off>;
using Rational = mp::number<mp::gmp_rational, mp::et_off>;

using Index = Eigen::Index;
using Mat = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using Vec = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using RowVec = Eigen::Matrix<Rational, 1, Eigen::Dynamic>;

/// Degree sentinel for "known through every degree".
inline constexpr int kUnbounded = 1 << 28;

inline bool is_unbounded(int degree) { return degree >= kUnbounded / 2; }

inline std::string to_string(const Rational& r) { return r.str(); }

}  // namespace laurentia
