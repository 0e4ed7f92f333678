#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qlab/errors.hpp"
#include "qlab/vertex_set.hpp"

namespace qlab {

using Integer = boost::multiprecision::cpp_int;

/// Exponent record of one term: x-exponents (any sign) followed by
/// y-exponents, 2n entries. Lexicographic order on this record is the
/// canonical term order.
using Exponent = std::vector<std::int64_t>;

/// Sparse polynomial in Z[x_1^{+-1}, ..., x_n^{+-1}, y_1^{+-1}, ..., y_n^{+-1}]
/// with arbitrary-precision coefficients. Zero coefficients are never stored.
/// Cluster variables live in the subring with y-exponents >= 0; that
/// containment is checked by the oracle, not enforced here.
class LaurentPoly {
 public:
  using Terms = std::map<Exponent, Integer>;

  explicit LaurentPoly(std::size_t rank) : rank_(rank) {}

  static LaurentPoly constant(std::size_t rank, Integer c) {
    LaurentPoly p(rank);
    p.add_term(Exponent(2 * rank, 0), std::move(c));
    return p;
  }

  static LaurentPoly monomial(std::size_t rank, Exponent e, Integer c = 1) {
    if (e.size() != 2 * rank) throw std::invalid_argument("exponent record has wrong length");
    LaurentPoly p(rank);
    p.add_term(std::move(e), std::move(c));
    return p;
  }

  static LaurentPoly x(std::size_t rank, Index i, std::int64_t power = 1) {
    Exponent e(2 * rank, 0);
    e.at(i) = power;
    return monomial(rank, std::move(e));
  }

  static LaurentPoly y(std::size_t rank, Index j, std::int64_t power = 1) {
    Exponent e(2 * rank, 0);
    e.at(rank + j) = power;
    return monomial(rank, std::move(e));
  }

  std::size_t rank() const noexcept { return rank_; }
  const Terms& terms() const noexcept { return terms_; }
  std::size_t term_count() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    check_rank(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }

  LaurentPoly& operator-=(const LaurentPoly& o) {
    check_rank(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }

  friend LaurentPoly operator-(LaurentPoly a) {
    for (auto& [e, c] : a.terms_) c = -c;
    return a;
  }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    a.check_rank(b);
    LaurentPoly r(a.rank_);
    Exponent e(2 * a.rank_);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    }
    return r;
  }

  LaurentPoly pow(unsigned exponent) const {
    LaurentPoly result = constant(rank_, 1);
    LaurentPoly base = *this;
    while (exponent) {
      if (exponent & 1u) result = result * base;
      exponent >>= 1;
      if (exponent) base = base * base;
    }
    return result;
  }

  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

  /// Renders with 1-based positional variable names, e.g. "(y1+x2)*x1^-1".
  /// The common x-denominator is factored out; numerator terms appear in
  /// ascending (x-exponents, y-exponents) order.
  std::string to_string() const;

 private:
  void check_rank(const LaurentPoly& o) const {
    if (o.rank_ != rank_) throw std::invalid_argument("polynomials over different rings");
  }

  void add_term(const Exponent& e, const Integer& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  friend LaurentPoly exact_div(const LaurentPoly& p, const LaurentPoly& q);

  std::size_t rank_;
  Terms terms_;
};

namespace detail {

inline std::string render_factor(char var, Index i, std::int64_t power) {
  std::string s(1, var);
  s += std::to_string(i + 1);
  if (power != 1) s += "^" + std::to_string(power);
  return s;
}

/// "3*x1*y2", "-x2", "1".
inline std::string render_term(std::size_t rank, const Exponent& e, const Integer& c) {
  std::vector<std::string> factors;
  for (Index i = 0; i < rank; ++i)
    if (e[i] != 0) factors.push_back(render_factor('x', i, e[i]));
  for (Index j = 0; j < rank; ++j)
    if (e[rank + j] != 0) factors.push_back(render_factor('y', j, e[rank + j]));
  Integer mag = c < 0 ? Integer(-c) : c;
  std::string out = c < 0 ? "-" : "";
  if (factors.empty()) return out + mag.str();
  if (mag != 1) out += mag.str() + "*";
  for (std::size_t f = 0; f < factors.size(); ++f) {
    if (f) out += '*';
    out += factors[f];
  }
  return out;
}

}  // namespace detail

inline std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  // Denominator x^{-shift} with shift_i = max(0, -min_i exponent).
  Exponent shift(2 * rank_, 0);
  for (const auto& [e, c] : terms_)
    for (Index i = 0; i < rank_; ++i) shift[i] = std::max(shift[i], -e[i]);

  std::string numerator;
  bool first = true;
  Exponent shifted(2 * rank_);
  for (const auto& [e, c] : terms_) {
    for (std::size_t i = 0; i < e.size(); ++i) shifted[i] = e[i] + shift[i];
    std::string t = detail::render_term(rank_, shifted, c);
    if (!first && t.front() != '-') numerator += '+';
    numerator += t;
    first = false;
  }

  std::string denominator;
  for (Index i = 0; i < rank_; ++i) {
    if (shift[i] == 0) continue;
    if (!denominator.empty()) denominator += '*';
    denominator += detail::render_factor('x', i, -shift[i]);
  }
  if (denominator.empty()) return numerator;
  if (terms_.size() == 1) {
    // Single term: drop a bare unit numerator.
    if (numerator == "1") return denominator;
    if (numerator == "-1") return "-" + denominator;
    return numerator + "*" + denominator;
  }
  return "(" + numerator + ")*" + denominator;
}

/// Exact quotient p / q in the Laurent ring. Throws InexactDivision naming
/// the remainder when q does not divide p.
///
/// Leading terms (greatest exponent record) multiply, so the quotient is
/// built term by term. Every quotient exponent must lie in the box
/// [min(p) - min(q), max(p) - max(q)] coordinatewise; a candidate outside it
/// proves inexactness, which bounds the loop.
inline LaurentPoly exact_div(const LaurentPoly& p, const LaurentPoly& q) {
  p.check_rank(q);
  if (q.is_zero()) throw std::domain_error("division by the zero polynomial");
  LaurentPoly quotient(p.rank_);
  if (p.is_zero()) return quotient;

  const std::size_t m = 2 * p.rank_;
  auto bounds = [m](const LaurentPoly& f) {
    Exponent lo(m), hi(m);
    bool first = true;
    for (const auto& [e, c] : f.terms_) {
      for (std::size_t i = 0; i < m; ++i) {
        lo[i] = first ? e[i] : std::min(lo[i], e[i]);
        hi[i] = first ? e[i] : std::max(hi[i], e[i]);
      }
      first = false;
    }
    return std::pair{lo, hi};
  };
  const auto [plo, phi] = bounds(p);
  const auto [qlo, qhi] = bounds(q);

  LaurentPoly rest = p;
  const auto& [lead_e, lead_c] = *q.terms_.rbegin();
  Exponent e(m);
  while (!rest.is_zero()) {
    const auto& [re, rc] = *rest.terms_.rbegin();
    bool in_box = true;
    for (std::size_t i = 0; i < m; ++i) {
      e[i] = re[i] - lead_e[i];
      if (e[i] < plo[i] - qlo[i] || e[i] > phi[i] - qhi[i]) in_box = false;
    }
    if (!in_box || rc % lead_c != 0) throw InexactDivision(rest.to_string());
    LaurentPoly t = LaurentPoly::monomial(p.rank_, e, rc / lead_c);
    rest -= t * q;
    quotient += t;
  }
  return quotient;
}

}  // namespace qlab
