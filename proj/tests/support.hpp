#pragma once

#include <vector>

#include "hamforms/lcg.hpp"
#include "hamforms/poly.hpp"
#include "hamforms/ratfunc.hpp"

namespace testsupport {

using hamforms::Lcg;
using hamforms::Poly;
using hamforms::RatFunc;
using hamforms::Rational;

inline Poly random_poly(Lcg& rng, std::size_t nvars, unsigned max_deg, int max_terms) {
  Poly p;
  const int terms = static_cast<int>(rng.uniform(1, max_terms));
  for (int t = 0; t < terms; ++t) {
    Poly::Exponents e(nvars);
    unsigned budget = static_cast<unsigned>(rng.uniform(0, max_deg));
    for (auto& x : e) {
      x = static_cast<unsigned>(rng.uniform(0, budget));
      budget -= x;
    }
    p += Poly::monomial(e, rng.rational(5));
  }
  return p;
}

inline Poly random_nonzero_poly(Lcg& rng, std::size_t nvars, unsigned max_deg, int max_terms) {
  for (;;) {
    Poly p = random_poly(rng, nvars, max_deg, max_terms);
    if (!p.is_zero()) return p;
  }
}

inline RatFunc random_ratfunc(Lcg& rng, std::size_t nvars) {
  return RatFunc(random_poly(rng, nvars, 2, 3), random_nonzero_poly(rng, nvars, 2, 3));
}

inline std::vector<Rational> random_point(Lcg& rng, std::size_t n) {
  std::vector<Rational> p;
  for (std::size_t i = 0; i < n; ++i) p.push_back(rng.rational(9));
  return p;
}

inline RatFunc u(std::size_t k) { return RatFunc::variable(k - 1); }

}  // namespace testsupport

#include "hamforms/altform.hpp"
#include "hamforms/matrix.hpp"

namespace testsupport {

inline hamforms::AltForm<Rational> random_form(Lcg& rng, int degree, int dim, long long bound = 4) {
  hamforms::AltForm<Rational> f(degree, dim);
  for (const auto& idx : hamforms::increasing_tuples(degree, dim)) f.set(idx, Rational(rng.uniform(-bound, bound)));
  return f;
}

inline hamforms::Matrix<Rational> random_matrix(Lcg& rng, std::size_t rows, std::size_t cols, long long bound = 3) {
  hamforms::Matrix<Rational> m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = Rational(rng.uniform(-bound, bound));
  return m;
}

inline hamforms::Matrix<Rational> random_invertible(Lcg& rng, std::size_t n, long long bound = 3) {
  for (;;) {
    auto m = random_matrix(rng, n, n, bound);
    if (!hamforms::determinant(m).is_zero()) return m;
  }
}

template <class S>
hamforms::AltForm<RatFunc> lift(const hamforms::AltForm<S>& f) {
  return f.map([](const S& c) { return RatFunc(c); });
}

}  // namespace testsupport

#include "hamforms/errors.hpp"
#include "hamforms/hampair.hpp"

namespace testsupport {

// Random pair with small integer tensors; retries until Pf(g) ≢ 0.
inline hamforms::HamPair random_pair(Lcg& rng, int n, long long bound = 3) {
  for (;;) {
    std::vector<Rational> b;
    for (int i = 0; i < n; ++i) b.push_back(Rational(rng.uniform(-bound, bound)));
    try {
      return hamforms::HamPair(n, random_form(rng, 3, n, bound), random_form(rng, 2, n, bound),
                               random_form(rng, 2, n, bound), b);
    } catch (const hamforms::DegenerateMetric&) {
    }
  }
}

}  // namespace testsupport
