#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hamforms/errors.hpp"
#include "hamforms/matrix.hpp"

namespace hamforms {

// 1-based index tuple of a form component.
using FormIndex = std::vector<int>;

// Sorts `idx` in place and returns the permutation sign, or 0 when an index
// repeats.
inline int sort_with_sign(FormIndex& idx) {
  int sign = 1;
  for (std::size_t i = 1; i < idx.size(); ++i)
    for (std::size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
      if (idx[j - 1] == idx[j]) return 0;
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
    }
  for (std::size_t i = 1; i < idx.size(); ++i)
    if (idx[i - 1] == idx[i]) return 0;
  return sign;
}

// Sparse alternating k-form on a `dim`-dimensional space, 1 <= k <= 4.
// Components are stored once per strictly increasing index tuple; reads and
// writes in any other order pick up the permutation sign.
template <class S>
class AltForm {
 public:
  AltForm() = default;
  AltForm(int degree, int dim) : degree_(degree), dim_(dim) {
    if (degree < 1 || degree > 4) throw DimensionMismatch("form degree must lie in [1,4]");
    if (dim < 0) throw DimensionMismatch("negative form dimension");
  }

  // du^{i1} ∧ ... ∧ du^{ik} scaled by `c`.
  static AltForm basis(int dim, FormIndex idx, const S& c = S(1)) {
    AltForm f(static_cast<int>(idx.size()), dim);
    f.add(std::move(idx), c);
    return f;
  }

  int degree() const { return degree_; }
  int dim() const { return dim_; }
  const std::map<FormIndex, S>& terms() const { return comps_; }
  bool is_zero() const { return comps_.empty(); }

  S at(FormIndex idx) const {
    check_index(idx);
    const int sign = sort_with_sign(idx);
    if (sign == 0) return S(0);
    const auto it = comps_.find(idx);
    if (it == comps_.end()) return S(0);
    return sign > 0 ? it->second : -it->second;
  }
  S at(std::initializer_list<int> idx) const { return at(FormIndex(idx)); }

  void set(FormIndex idx, const S& value) {
    check_index(idx);
    const int sign = sort_with_sign(idx);
    if (sign == 0) {
      if (!value.is_zero()) throw ValidationError("nonzero value on a repeated form index");
      return;
    }
    if (value.is_zero()) comps_.erase(idx);
    else comps_[idx] = sign > 0 ? value : -value;
  }

  void add(FormIndex idx, const S& value) {
    check_index(idx);
    const int sign = sort_with_sign(idx);
    if (sign == 0 || value.is_zero()) return;
    auto it = comps_.find(idx);
    const S v = sign > 0 ? value : -value;
    if (it == comps_.end()) {
      comps_.emplace(std::move(idx), v);
      return;
    }
    it->second += v;
    if (it->second.is_zero()) comps_.erase(it);
  }

  // Same components viewed in a larger space.
  AltForm extended(int dim) const {
    if (dim < dim_) throw DimensionMismatch("cannot shrink a form");
    AltForm out(degree_, dim);
    out.comps_ = comps_;
    return out;
  }

  template <class F>
  auto map(F&& f) const -> AltForm<decltype(f(std::declval<const S&>()))> {
    AltForm<decltype(f(std::declval<const S&>()))> out(degree_, dim_);
    for (const auto& [idx, c] : comps_) out.set(idx, f(c));
    return out;
  }

  AltForm operator-() const {
    AltForm out(*this);
    for (auto& [idx, c] : out.comps_) c = -c;
    return out;
  }
  AltForm& operator+=(const AltForm& o) {
    check_same(o);
    for (const auto& [idx, c] : o.comps_) add(idx, c);
    return *this;
  }
  AltForm& operator-=(const AltForm& o) { return *this += -o; }
  friend AltForm operator+(AltForm a, const AltForm& b) { return a += b; }
  friend AltForm operator-(AltForm a, const AltForm& b) { return a -= b; }
  friend AltForm operator*(const S& s, const AltForm& a) {
    AltForm out(a.degree_, a.dim_);
    if (s.is_zero()) return out;
    for (const auto& [idx, c] : a.comps_) out.set(idx, s * c);
    return out;
  }
  friend bool operator==(const AltForm& a, const AltForm& b) {
    return a.degree_ == b.degree_ && a.dim_ == b.dim_ && a.comps_ == b.comps_;
  }

 private:
  void check_index(const FormIndex& idx) const {
    if (static_cast<int>(idx.size()) != degree_)
      throw DimensionMismatch("form index has wrong length");
    for (int i : idx)
      if (i < 1 || i > dim_)
        throw DimensionMismatch("form index " + std::to_string(i) + " outside [1," +
                                std::to_string(dim_) + "]");
  }
  void check_same(const AltForm& o) const {
    if (degree_ != o.degree_ || dim_ != o.dim_) throw DimensionMismatch("form shape mismatch");
  }

  int degree_ = 1;
  int dim_ = 0;
  std::map<FormIndex, S> comps_;
};

// Position of the pair (j,k), 1 <= j < k <= dim, in lexicographic order.
inline std::size_t pair_position(int j, int k, int dim) {
  // Pairs starting with 1..j-1 come first.
  const int before = (j - 1) * dim - (j - 1) * j / 2;
  return static_cast<std::size_t>(before + (k - j - 1));
}

// Plücker coordinates p^{jk}, 1 <= j < k <= dim, stored in lexicographic
// pair order; p^{kj} = -p^{jk}.
template <class S>
class PluckerVector {
 public:
  PluckerVector() = default;
  explicit PluckerVector(int dim)
      : dim_(dim), entries_(static_cast<std::size_t>(dim * (dim - 1) / 2)) {}

  // Coordinates of the line through points `a` and `b`: p^{jk} = a_j b_k - a_k b_j.
  static PluckerVector from_points(const std::vector<S>& a, const std::vector<S>& b) {
    if (a.size() != b.size()) throw DimensionMismatch("points of different dimension");
    const int dim = static_cast<int>(a.size());
    PluckerVector p(dim);
    for (int j = 1; j <= dim; ++j)
      for (int k = j + 1; k <= dim; ++k)
        p.set(j, k, a[j - 1] * b[k - 1] - a[k - 1] * b[j - 1]);
    return p;
  }

  int dim() const { return dim_; }
  std::size_t size() const { return entries_.size(); }
  const std::vector<S>& entries() const { return entries_; }
  std::vector<S>& entries() { return entries_; }

  S at(int j, int k) const {
    check(j, k);
    if (j == k) return S(0);
    if (j < k) return entries_[pair_position(j, k, dim_)];
    return -entries_[pair_position(k, j, dim_)];
  }
  void set(int j, int k, const S& v) {
    check(j, k);
    if (j == k) throw ValidationError("diagonal Plücker coordinate");
    if (j < k) entries_[pair_position(j, k, dim_)] = v;
    else entries_[pair_position(k, j, dim_)] = -v;
  }

  template <class F>
  auto map(F&& f) const -> PluckerVector<decltype(f(std::declval<const S&>()))> {
    PluckerVector<decltype(f(std::declval<const S&>()))> out(dim_);
    for (std::size_t i = 0; i < entries_.size(); ++i) out.entries()[i] = f(entries_[i]);
    return out;
  }

  friend bool operator==(const PluckerVector& a, const PluckerVector& b) {
    return a.dim_ == b.dim_ && a.entries_ == b.entries_;
  }

 private:
  void check(int j, int k) const {
    if (j < 1 || k < 1 || j > dim_ || k > dim_) throw DimensionMismatch("Plücker index out of range");
  }

  int dim_ = 0;
  std::vector<S> entries_;
};

template <class S>
AltForm<S> wedge(const AltForm<S>& a, const AltForm<S>& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("wedge of forms on different spaces");
  if (a.degree() + b.degree() > 4) throw DimensionMismatch("wedge result degree exceeds 4");
  AltForm<S> out(a.degree() + b.degree(), a.dim());
  for (const auto& [ia, ca] : a.terms())
    for (const auto& [ib, cb] : b.terms()) {
      FormIndex idx(ia);
      idx.insert(idx.end(), ib.begin(), ib.end());
      out.add(std::move(idx), ca * cb);
    }
  return out;
}

// (Ω^* L)_i = Σ_{j<k} ω_{ijk} p^{jk}; each unordered pair is summed once.
template <class S>
std::vector<S> contract_bivector(const AltForm<S>& omega, const PluckerVector<S>& p) {
  if (omega.degree() != 3) throw DimensionMismatch("bivector contraction needs a three-form");
  if (omega.dim() != p.dim()) throw DimensionMismatch("three-form and bivector dimensions differ");
  std::vector<S> out(static_cast<std::size_t>(omega.dim()));
  for (const auto& [idx, c] : omega.terms()) {
    const int a = idx[0], b = idx[1], d = idx[2];
    // ω_{abd} appears in rows a, b, d with the remaining pair.
    out[a - 1] += c * p.at(b, d);
    out[b - 1] -= c * p.at(a, d);
    out[d - 1] += c * p.at(a, b);
  }
  return out;
}

namespace detail {

template <class S>
S minor_det(const Matrix<S>& m, const FormIndex& rows, const FormIndex& cols) {
  const std::size_t k = rows.size();
  std::vector<std::size_t> perm(k);
  for (std::size_t i = 0; i < k; ++i) perm[i] = i;
  S total(0);
  do {
    S term(1);
    for (std::size_t i = 0; i < k && !term.is_zero(); ++i)
      term = term * m(static_cast<std::size_t>(rows[i] - 1), static_cast<std::size_t>(cols[perm[i]] - 1));
    if (term.is_zero()) continue;
    int inversions = 0;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j)
        if (perm[i] > perm[j]) ++inversions;
    total += (inversions % 2 == 0) ? term : -term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

inline void increasing_tuples(int k, int n, FormIndex& cur, std::vector<FormIndex>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  const int start = cur.empty() ? 1 : cur.back() + 1;
  for (int i = start; i <= n; ++i) {
    cur.push_back(i);
    increasing_tuples(k, n, cur, out);
    cur.pop_back();
  }
}

}  // namespace detail

// All strictly increasing k-tuples in [1, n].
inline std::vector<FormIndex> increasing_tuples(int k, int n) {
  std::vector<FormIndex> out;
  FormIndex cur;
  detail::increasing_tuples(k, n, cur, out);
  return out;
}

// Pullback M^*φ for a linear map M: K^{cols} -> K^{rows} with rows = φ.dim():
// (M^*φ)_{i1..ik} = φ_{a1..ak} M^{a1}_{i1} ... M^{ak}_{ik}.
template <class S>
AltForm<S> pullback_linear(const AltForm<S>& phi, const Matrix<S>& m) {
  if (static_cast<int>(m.rows()) != phi.dim())
    throw DimensionMismatch("linear map codomain does not match form dimension");
  const int dim_in = static_cast<int>(m.cols());
  AltForm<S> out(phi.degree(), dim_in);
  const auto targets = increasing_tuples(phi.degree(), dim_in);
  for (const auto& [src, c] : phi.terms())
    for (const auto& dst : targets) {
      const S d = detail::minor_det(m, src, dst);
      if (!d.is_zero()) out.add(dst, c * d);
    }
  return out;
}

}  // namespace hamforms
