#include "laurentia/laurent.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace laurentia {

namespace {

int sat_add(int a, int b) {
  if (is_unbounded(a) || is_unbounded(b)) return kUnbounded;
  return a + b;
}

}  // namespace

LaurentPoly::LaurentPoly(std::map<int, Integer> coeffs, int valid_to)
    : coeffs_(std::move(coeffs)), valid_to_(valid_to) {
  normalize();
}

LaurentPoly LaurentPoly::monomial(int degree, Integer c, int valid_to) {
  LaurentPoly p(valid_to);
  p.set(degree, c);
  p.normalize();
  return p;
}

void LaurentPoly::normalize() {
  if (is_unbounded(valid_to_)) valid_to_ = kUnbounded;
  for (auto it = coeffs_.begin(); it != coeffs_.end();) {
    if (it->second == 0 || it->first > valid_to_)
      it = coeffs_.erase(it);
    else
      ++it;
  }
}

Integer LaurentPoly::coeff(int degree) const {
  auto it = coeffs_.find(degree);
  return it == coeffs_.end() ? Integer(0) : it->second;
}

void LaurentPoly::set(int degree, const Integer& c) {
  if (degree > valid_to_ || c == 0)
    coeffs_.erase(degree);
  else
    coeffs_[degree] = c;
}

void LaurentPoly::add_to(int degree, const Integer& c) {
  if (degree > valid_to_ || c == 0) return;
  set(degree, coeff(degree) + c);
}

std::optional<int> LaurentPoly::lowdeg() const {
  if (coeffs_.empty()) return std::nullopt;
  return coeffs_.begin()->first;
}

std::optional<int> LaurentPoly::highdeg() const {
  if (coeffs_.empty()) return std::nullopt;
  return coeffs_.rbegin()->first;
}

int LaurentPoly::low_bound() const {
  if (!coeffs_.empty()) return coeffs_.begin()->first;
  return bounded() ? valid_to_ + 1 : kUnbounded;
}

LaurentPoly LaurentPoly::truncated(int valid_to) const {
  return LaurentPoly(coeffs_, std::min(valid_to_, valid_to));
}

LaurentPoly LaurentPoly::shifted(int k) const {
  std::map<int, Integer> c;
  for (const auto& [d, v] : coeffs_) c.emplace(d + k, v);
  return LaurentPoly(std::move(c), sat_add(valid_to_, k));
}

LaurentPoly LaurentPoly::inverted() const {
  std::map<int, Integer> c;
  for (const auto& [d, v] : coeffs_) c.emplace(-d, v);
  return LaurentPoly(std::move(c), kUnbounded);
}

Integer LaurentPoly::at_one() const {
  Integer s = 0;
  for (const auto& [d, v] : coeffs_) s += v;
  return s;
}

LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) { return arith(a, b, ArithKind::add); }
LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return arith(a, b, ArithKind::sub); }
LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) { return arith(a, b, ArithKind::mul); }

bool LaurentPoly::agrees_with(const LaurentPoly& b) const {
  int h = std::min(valid_to_, b.valid_to_);
  return truncated(h).coeffs_ == b.truncated(h).coeffs_;
}

LaurentPoly arith(const LaurentPoly& a, const LaurentPoly& b, ArithKind kind) {
  if (kind != ArithKind::mul) {
    LaurentPoly r(std::min(a.valid_to(), b.valid_to()));
    for (const auto& [d, v] : a.coeffs()) r.add_to(d, v);
    for (const auto& [d, v] : b.coeffs()) r.add_to(d, kind == ArithKind::add ? v : Integer(-v));
    return r;
  }
  int vt = std::min(sat_add(a.valid_to(), b.low_bound()), sat_add(b.valid_to(), a.low_bound()));
  LaurentPoly r(vt);
  for (const auto& [da, va] : a.coeffs())
    for (const auto& [db, vb] : b.coeffs())
      if (da + db <= vt) r.add_to(da + db, va * vb);
  return r;
}

std::variant<LaurentPoly, NotDivisible> exact_divide(const LaurentPoly& num, const LaurentPoly& den) {
  if (den.is_zero()) throw ZeroDivisor();
  const int ldd = *den.lowdeg();
  const Integer lead = den.coeff(ldd);
  const bool exact = !num.bounded() && !den.bounded();
  if (num.is_zero() && !num.bounded()) return LaurentPoly();
  const int lq = num.low_bound() - ldd;

  int top;
  int qvt;
  if (exact) {
    top = std::max(lq, *num.highdeg() - *den.highdeg());
    qvt = kUnbounded;
  } else {
    qvt = std::min(sat_add(num.valid_to(), -ldd), sat_add(den.valid_to(), lq - ldd));
    top = qvt;
  }

  // rem tracks num - quotient*den in degrees >= current.
  std::map<int, Integer> rem = num.coeffs();
  LaurentPoly q(qvt);
  for (int k = lq; k <= top; ++k) {
    Integer c = 0;
    if (auto it = rem.find(k + ldd); it != rem.end()) c = it->second;
    if (c == 0) continue;
    if (c % lead != 0) return NotDivisible{k + ldd};
    Integer qk = c / lead;
    q.set(k, qk);
    for (const auto& [dd, vd] : den.coeffs()) {
      Integer& slot = rem[k + dd];
      slot -= qk * vd;
    }
  }
  if (exact) {
    for (const auto& [d, v] : rem)
      if (v != 0) return NotDivisible{d};
  }
  return q;
}

bool is_nonnegative(const LaurentPoly& a) {
  return std::all_of(a.coeffs().begin(), a.coeffs().end(), [](const auto& kv) { return kv.second >= 0; });
}

std::string LaurentPoly::str() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [d, v] : coeffs_) {
    Integer mag = v < 0 ? Integer(-v) : v;
    if (first)
      os << (v < 0 ? "-" : "");
    else
      os << (v < 0 ? " - " : " + ");
    first = false;
    if (d == 0) {
      os << mag;
      continue;
    }
    if (mag != 1) os << mag << "*";
    os << "q";
    if (d != 1) os << "^" << d;
  }
  if (bounded()) {
    os << (first ? "" : " + ") << "O(q^" << valid_to_ + 1 << ")";
  } else if (first) {
    os << "0";
  }
  return os.str();
}

LaurentPoly parse_laurent(const std::string& text) {
  std::map<int, Integer> coeffs;
  int vt = kUnbounded;
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  size_t i = 0;
  auto fail = [&] { throw std::invalid_argument("malformed Laurent polynomial: " + text); };
  auto read_int = [&](size_t& j) {
    size_t st = j;
    if (j < s.size() && (s[j] == '-' || s[j] == '+')) ++j;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    if (j == st || (j == st + 1 && !std::isdigit(static_cast<unsigned char>(s[st])))) fail();
    return s.substr(st, j - st);
  };
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    }
    if (s.compare(i, 4, "O(q^") == 0) {
      i += 4;
      vt = std::stoi(read_int(i)) - 1;
      if (i >= s.size() || s[i] != ')') fail();
      ++i;
      continue;
    }
    Integer c = 1;
    if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      c = Integer(read_int(i));
      if (i < s.size() && s[i] == '*') ++i;
    }
    int d = 0;
    if (i < s.size() && s[i] == 'q') {
      ++i;
      d = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        d = std::stoi(read_int(i));
      }
    }
    coeffs[d] += sign * c;
  }
  return LaurentPoly(std::move(coeffs), vt);
}

}  // namespace laurentia
