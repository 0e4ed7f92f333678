#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qlab/gvector.hpp"
#include "qlab/laurent.hpp"
#include "qlab/skew_matrix.hpp"

namespace qlab {

/// Z^n-grading of Z[x^{+-1}, y]: deg(x_i) = e_i, deg(y_j) = -sum_i b_ij e_i,
/// fixed by the initial matrix.
class Grading {
 public:
  explicit Grading(const SkewMatrix& b0) : rank_(b0.size()) {
    for (Index j = 0; j < rank_; ++j) {
      GVector d(rank_);
      for (Index i = 0; i < rank_; ++i) d[i] = -b0(i, j);
      y_degrees_.push_back(std::move(d));
    }
  }

  std::size_t rank() const noexcept { return rank_; }
  const GVector& y_degree(Index j) const { return y_degrees_.at(j); }

  GVector degree_of(const Exponent& e) const {
    GVector d(rank_);
    for (Index i = 0; i < rank_; ++i) d[i] = e[i];
    for (Index j = 0; j < rank_; ++j)
      if (e[rank_ + j] != 0) d = d + e[rank_ + j] * y_degrees_[j];
    return d;
  }

 private:
  std::size_t rank_;
  std::vector<GVector> y_degrees_;
};

/// Common degree of all terms; throws Inhomogeneous naming two terms that
/// disagree.
inline GVector degree(const LaurentPoly& p, const Grading& grading) {
  if (p.is_zero()) throw std::invalid_argument("degree of the zero polynomial");
  if (p.rank() != grading.rank()) throw std::invalid_argument("grading rank mismatch");
  const auto& terms = p.terms();
  auto it = terms.begin();
  const GVector d = grading.degree_of(it->first);
  for (auto jt = std::next(it); jt != terms.end(); ++jt) {
    if (grading.degree_of(jt->first) != d) {
      auto single = [&](const auto& term) {
        return LaurentPoly::monomial(p.rank(), term.first, term.second).to_string();
      };
      throw Inhomogeneous(single(*it), single(*jt));
    }
  }
  return d;
}

/// Seed of the cluster algebra with principal coefficients. Coefficients
/// are tropical: column c[k] is the exponent vector of the coefficient y-hat
/// of slot k.
struct ExtendedSeed {
  SkewMatrix b;
  std::vector<GVector> c;
  std::vector<LaurentPoly> xs;

  static ExtendedSeed initial(const SkewMatrix& b0) {
    const std::size_t n = b0.size();
    ExtendedSeed s{b0, {}, {}};
    for (Index k = 0; k < n; ++k) {
      s.c.push_back(GVector::basis(n, k));
      s.xs.push_back(LaurentPoly::x(n, k));
    }
    return s;
  }

  friend bool operator==(const ExtendedSeed&, const ExtendedSeed&) = default;
};

namespace detail {
inline int column_sign(const GVector& col) {
  bool pos = false, neg = false;
  for (auto v : col) {
    pos = pos || v > 0;
    neg = neg || v < 0;
  }
  if (pos && neg) return 0;
  return neg ? -1 : 1;
}
}  // namespace detail

/// Principal-coefficient seed mutation at k:
///   x'_k = ( y^{[c_k]_+} prod_i x_i^{[b_ik]_+} + y^{[-c_k]_+} prod_i x_i^{[-b_ik]_+} ) / x_k
///   c'_k = -c_k,  c'_j = c_j + [ s b_kj ]_+ c_k  for j != k, s = sign of c_k
///   b'   = mutate(b, k)
/// Throws InvariantViolation on a sign-incoherent c_k and InexactDivision
/// when the exchange quotient is not a Laurent polynomial.
inline ExtendedSeed seed_mutate(const ExtendedSeed& s, Index k) {
  const std::size_t n = s.b.size();
  if (k >= n) throw std::out_of_range("mutation index out of range");
  const GVector& ck = s.c[k];
  const int ck_sign = detail::column_sign(ck);
  if (ck_sign == 0)
    throw InvariantViolation("sign-incoherent C-matrix column " + std::to_string(k + 1) + ": " +
                             to_json_text(ck));

  Exponent y_plus(2 * n, 0), y_minus(2 * n, 0);
  for (Index i = 0; i < n; ++i) {
    y_plus[n + i] = positive_part(ck[i]);
    y_minus[n + i] = positive_part(-ck[i]);
  }
  LaurentPoly out_term = LaurentPoly::monomial(n, std::move(y_plus));
  LaurentPoly in_term = LaurentPoly::monomial(n, std::move(y_minus));
  for (Index i = 0; i < n; ++i) {
    const std::int64_t bik = s.b(i, k);
    if (bik > 0) out_term = out_term * s.xs[i].pow(static_cast<unsigned>(bik));
    if (bik < 0) in_term = in_term * s.xs[i].pow(static_cast<unsigned>(-bik));
  }

  ExtendedSeed next{mutate(s.b, k), s.c, s.xs};
  next.xs[k] = exact_div(out_term + in_term, s.xs[k]);
  for (Index j = 0; j < n; ++j) {
    if (j == k) continue;
    const std::int64_t coeff = positive_part(ck_sign > 0 ? s.b(k, j) : -s.b(k, j));
    if (coeff != 0) next.c[j] = s.c[j] + coeff * ck;
  }
  next.c[k] = -1 * ck;
  return next;
}

inline ExtendedSeed seed_mutate(const ExtendedSeed& s, std::string_view k) {
  return seed_mutate(s, s.b.vertices().index_of(k));
}

/// Principal-coefficient cluster algebra over a fixed initial matrix, with
/// seeds memoized by walk prefix. The memo is insert-only and guarded, so
/// one oracle may be shared across threads.
class PrincipalOracle {
 public:
  explicit PrincipalOracle(SkewMatrix b0) : b0_(std::move(b0)), grading_(b0_) {}

  const SkewMatrix& initial_matrix() const noexcept { return b0_; }
  const Grading& grading() const noexcept { return grading_; }

  std::shared_ptr<const ExtendedSeed> seed(std::span<const Index> steps) const {
    std::vector<Index> key(steps.begin(), steps.end());
    {
      std::lock_guard lock(mutex_);
      if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    }
    std::shared_ptr<const ExtendedSeed> value;
    if (steps.empty()) {
      value = std::make_shared<const ExtendedSeed>(ExtendedSeed::initial(b0_));
    } else {
      auto parent = seed(steps.first(steps.size() - 1));
      value = std::make_shared<const ExtendedSeed>(seed_mutate(*parent, steps.back()));
    }
    std::lock_guard lock(mutex_);
    return memo_.try_emplace(std::move(key), std::move(value)).first->second;
  }

  std::shared_ptr<const ExtendedSeed> seed(const MutationPath& path) const {
    const auto steps = path.resolve(b0_.vertices());
    return seed(std::span<const Index>(steps));
  }

  /// Cluster variable in slot l at the end of `path`; throws
  /// InvariantViolation if a negative y-exponent appears.
  LaurentPoly cluster_variable(const MutationPath& path, std::string_view l) const {
    const Index slot = b0_.vertices().index_of(l);
    LaurentPoly x = seed(path)->xs[slot];
    check_y_containment(x);
    return x;
  }

  GVector g_vector(const MutationPath& path, std::string_view l) const {
    return degree(cluster_variable(path, l), grading_);
  }

  static void check_y_containment(const LaurentPoly& x) {
    const std::size_t n = x.rank();
    for (const auto& [e, c] : x.terms())
      for (Index j = 0; j < n; ++j)
        if (e[n + j] < 0)
          throw InvariantViolation("cluster variable has a negative y-exponent: " + x.to_string());
  }

 private:
  SkewMatrix b0_;
  Grading grading_;
  mutable std::mutex mutex_;
  mutable std::map<std::vector<Index>, std::shared_ptr<const ExtendedSeed>> memo_;
};

inline LaurentPoly cluster_variable(const SkewMatrix& b0, const MutationPath& path,
                                    std::string_view l) {
  return PrincipalOracle(b0).cluster_variable(path, l);
}

/// g-vector of a cluster variable: its degree under the principal grading.
inline GVector g_oracle(const SkewMatrix& b0, const MutationPath& path, std::string_view l) {
  return PrincipalOracle(b0).g_vector(path, l);
}

}  // namespace qlab
