#pragma once

#include "laurentia/scalar.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

namespace laurentia {

/// Integer Laurent polynomial known exactly through degree `valid_to`.
/// Coefficients above the horizon are unknown, not zero.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  explicit LaurentPoly(int valid_to) : valid_to_(valid_to) {}
  LaurentPoly(std::map<int, Integer> coeffs, int valid_to = kUnbounded);

  static LaurentPoly monomial(int degree, Integer c = 1, int valid_to = kUnbounded);
  static LaurentPoly one(int valid_to = kUnbounded) { return monomial(0, 1, valid_to); }

  const std::map<int, Integer>& coeffs() const { return coeffs_; }
  int valid_to() const { return valid_to_; }
  bool bounded() const { return !is_unbounded(valid_to_); }

  Integer coeff(int degree) const;
  void set(int degree, const Integer& c);
  void add_to(int degree, const Integer& c);

  bool is_zero() const { return coeffs_.empty(); }
  std::optional<int> lowdeg() const;
  std::optional<int> highdeg() const;
  /// Lowest degree, or valid_to + 1 for a zero series with a finite horizon.
  int low_bound() const;

  LaurentPoly truncated(int valid_to) const;
  LaurentPoly shifted(int k) const;
  /// f(q) -> f(q^{-1}); only meaningful for exact polynomials.
  LaurentPoly inverted() const;
  Integer at_one() const;

  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  LaurentPoly& operator+=(const LaurentPoly& b) { return *this = *this + b; }

  /// Same coefficients and same horizon.
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) = default;
  /// Coefficients agree in every degree known to both.
  bool agrees_with(const LaurentPoly& b) const;

  std::string str() const;

 private:
  void normalize();
  std::map<int, Integer> coeffs_;
  int valid_to_ = kUnbounded;
};

enum class ArithKind { add, sub, mul };
LaurentPoly arith(const LaurentPoly& a, const LaurentPoly& b, ArithKind kind);

struct NotDivisible {
  int degree;
};
struct ZeroDivisor : std::runtime_error {
  ZeroDivisor() : std::runtime_error("division by the zero series") {}
};

std::variant<LaurentPoly, NotDivisible> exact_divide(const LaurentPoly& num, const LaurentPoly& den);

bool is_nonnegative(const LaurentPoly& a);

/// Parses the text rendering produced by str(), e.g. "1 + 2*q^-3 + O(q^9)".
LaurentPoly parse_laurent(const std::string& text);

}  // namespace laurentia
