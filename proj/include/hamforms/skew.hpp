#pragma once

#include <cstddef>
#include <vector>

#include "hamforms/altform.hpp"
#include "hamforms/errors.hpp"
#include "hamforms/matrix.hpp"

namespace hamforms {

// Skew-symmetric n×n matrix stored by its strict upper triangle, 0-based.
template <class S>
class SkewMatrix {
 public:
  SkewMatrix() = default;
  explicit SkewMatrix(std::size_t n) : n_(n), upper_(n * (n > 0 ? n - 1 : 0) / 2) {}

  // Entries s_ij = φ_{i+1,j+1} of a two-form.
  static SkewMatrix from_form(const AltForm<S>& phi) {
    if (phi.degree() != 2) throw DimensionMismatch("skew matrix needs a two-form");
    SkewMatrix m(static_cast<std::size_t>(phi.dim()));
    for (const auto& [idx, c] : phi.terms())
      m.set(static_cast<std::size_t>(idx[0] - 1), static_cast<std::size_t>(idx[1] - 1), c);
    return m;
  }

  // Throws ValidationError unless `m` is skew with zero diagonal.
  static SkewMatrix from_matrix(const Matrix<S>& m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("skew matrix must be square");
    SkewMatrix s(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (!m(i, i).is_zero()) throw ValidationError("nonzero diagonal in skew matrix");
      for (std::size_t j = i + 1; j < m.rows(); ++j) {
        if (!(m(i, j) + m(j, i)).is_zero()) throw ValidationError("matrix is not skew-symmetric");
        s.set(i, j, m(i, j));
      }
    }
    return s;
  }

  std::size_t n() const { return n_; }

  S at(std::size_t i, std::size_t j) const {
    if (i == j) return S(0);
    if (i < j) return upper_[slot(i, j)];
    return -upper_[slot(j, i)];
  }
  void set(std::size_t i, std::size_t j, const S& v) {
    if (i == j) {
      if (!v.is_zero()) throw ValidationError("nonzero diagonal in skew matrix");
      return;
    }
    if (i < j) upper_[slot(i, j)] = v;
    else upper_[slot(j, i)] = -v;
  }

  Matrix<S> to_matrix() const {
    Matrix<S> m(n_, n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) m(i, j) = at(i, j);
    return m;
  }

  AltForm<S> to_form() const {
    AltForm<S> f(2, static_cast<int>(n_));
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        f.set({static_cast<int>(i + 1), static_cast<int>(j + 1)}, at(i, j));
    return f;
  }

  template <class F>
  auto map(F&& f) const -> SkewMatrix<decltype(f(std::declval<const S&>()))> {
    SkewMatrix<decltype(f(std::declval<const S&>()))> out(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j) out.set(i, j, f(at(i, j)));
    return out;
  }

  friend bool operator==(const SkewMatrix& a, const SkewMatrix& b) {
    return a.n_ == b.n_ && a.upper_ == b.upper_;
  }

 private:
  std::size_t slot(std::size_t i, std::size_t j) const {
    if (j >= n_) throw DimensionMismatch("skew matrix index out of range");
    return pair_position(static_cast<int>(i + 1), static_cast<int>(j + 1), static_cast<int>(n_));
  }

  std::size_t n_ = 0;
  std::vector<S> upper_;
};

namespace detail {

// Pfaffian of the principal submatrix on `keep`, by first-row expansion.
template <class S>
S pfaffian_on(const SkewMatrix<S>& s, const std::vector<std::size_t>& keep) {
  if (keep.empty()) return S(1);
  S total(0);
  std::vector<std::size_t> rest;
  rest.reserve(keep.size());
  for (std::size_t j = 1; j < keep.size(); ++j) {
    const S entry = s.at(keep[0], keep[j]);
    if (entry.is_zero()) continue;
    rest.clear();
    for (std::size_t m = 1; m < keep.size(); ++m)
      if (m != j) rest.push_back(keep[m]);
    const S term = entry * pfaffian_on(s, rest);
    // 0-based position j corresponds to the sign (-1)^{j+1} of the 1-based rule.
    if (j % 2 == 1) total += term;
    else total -= term;
  }
  return total;
}

inline std::vector<std::size_t> all_but(std::size_t n, std::size_t a, std::size_t b) {
  std::vector<std::size_t> keep;
  for (std::size_t k = 0; k < n; ++k)
    if (k != a && k != b) keep.push_back(k);
  return keep;
}

}  // namespace detail

template <class S>
S pfaffian(const SkewMatrix<S>& s) {
  if (s.n() % 2 != 0) throw OddDimension("Pfaffian of an odd-dimensional skew matrix");
  std::vector<std::size_t> keep(s.n());
  for (std::size_t k = 0; k < s.n(); ++k) keep[k] = k;
  return detail::pfaffian_on(s, keep);
}

// S♯ with S·S♯ = Pf(S)·I. Entry (j,i) is (-1)^{i+j+1+[i>j]} times the
// Pfaffian of S with rows and columns i, j removed (1-based i, j).
template <class S>
SkewMatrix<S> pfaffian_adjugate(const SkewMatrix<S>& s) {
  const std::size_t n = s.n();
  if (n % 2 != 0) throw OddDimension("Pfaffian adjugate of an odd-dimensional skew matrix");
  SkewMatrix<S> adj(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const S minor = detail::pfaffian_on(s, detail::all_but(n, i, j));
      // 0-based i<j: exponent (i+1)+(j+1)+1 has the parity of i+j+1.
      const S c_ij = ((i + j + 1) % 2 == 0) ? minor : -minor;
      adj.set(j, i, c_ij);
    }
  return adj;
}

// Exact inverse S♯ / Pf(S); throws SingularMatrix when Pf(S) vanishes.
template <class S>
Matrix<S> skew_inverse(const SkewMatrix<S>& s) {
  const S pf = pfaffian(s);
  if (pf.is_zero()) throw SingularMatrix("Pfaffian vanishes identically");
  const S inv = S(1) / pf;
  return pfaffian_adjugate(s).to_matrix().map([&](const S& x) { return x * inv; });
}

// η = du¹∧du² + du³∧du⁴.
template <class S>
AltForm<S> eta_form() {
  AltForm<S> eta(2, 4);
  eta.set({1, 2}, S(1));
  eta.set({3, 4}, S(1));
  return eta;
}

// Q(θ) with θ∧θ = Q(θ) du¹∧du²∧du³∧du⁴; θ must satisfy η∧θ = 0.
template <class S>
S q_form(const AltForm<S>& theta) {
  if (theta.degree() != 2 || theta.dim() != 4) throw DimensionMismatch("Q is defined on two-forms in dimension 4");
  if (!wedge(eta_form<S>(), theta).is_zero()) throw NotInThetaEta("η∧θ does not vanish");
  return wedge(theta, theta).at({1, 2, 3, 4});
}

}  // namespace hamforms
