#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hamforms/poly.hpp"
#include "hamforms/rational.hpp"

namespace hamforms {

// Multivariate rational function over Q in canonical form: numerator and
// denominator coprime, denominator monic in graded-lex order, zero is 0/1.
// Variable k (0-based) stands for u^{k+1}; extra variables beyond the field
// coordinates are free symbolic parameters.
class RatFunc {
 public:
  RatFunc() : den_(1) {}
  RatFunc(int c) : num_(c), den_(1) {}                  // NOLINT
  RatFunc(const Rational& c) : num_(c), den_(1) {}      // NOLINT
  RatFunc(const Poly& p) : num_(p), den_(1) {}          // NOLINT
  // Throws DivisionByZero when `den` is the zero polynomial.
  RatFunc(const Poly& num, const Poly& den);

  static RatFunc variable(std::size_t index) { return RatFunc(Poly::variable(index)); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  std::size_t num_vars() const { return std::max(num_.num_vars(), den_.num_vars()); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return den_.is_constant() && num_ == Poly(1); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  bool is_polynomial() const { return den_.is_constant(); }
  // Independent of variables [0, count).
  bool free_of_first(std::size_t count) const {
    return num_.free_of_first(count) && den_.free_of_first(count);
  }
  // Throws Error when not constant.
  Rational to_rational() const;

  RatFunc operator-() const;
  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  RatFunc& operator/=(const RatFunc& o);
  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  RatFunc pow(int e) const;
  RatFunc inverse() const;

  std::string to_string(const VarNames* names = nullptr) const;

 private:
  struct Reduced {};
  RatFunc(Poly num, Poly den, Reduced) : num_(std::move(num)), den_(std::move(den)) {}
  static RatFunc make_monic(Poly num, Poly den);
  static RatFunc add_reduced(const Poly& a, const Poly& b, const Poly& c, const Poly& d,
                             bool subtract);

  Poly num_;
  Poly den_;
};

// ∂f/∂u^{var+1}, canonical.
RatFunc differentiate(const RatFunc& f, std::size_t var);

// Exact value at `point`; throws PoleError when the denominator vanishes.
Rational evaluate(const RatFunc& f, std::span<const Rational> point);

inline bool is_zero(const RatFunc& f) { return f.is_zero(); }

// Value, gradient and Hessian at a point, computed from derivatives of the
// numerator and denominator without symbolic reduction.
struct Jet2 {
  Rational value;
  std::vector<Rational> grad;
  std::vector<std::vector<Rational>> hess;
};
Jet2 evaluate_jet(const RatFunc& f, std::span<const Rational> point, std::size_t nvars);

// Replaces variables [0, values.size()) by the given rational functions;
// later variables are left untouched.
RatFunc substitute(const RatFunc& f, const std::vector<RatFunc>& values);

}  // namespace hamforms
