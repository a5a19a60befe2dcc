#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hamforms/rational.hpp"

namespace hamforms {

// Display names for variables; index k falls back to "u{k+1}" when absent.
using VarNames = std::vector<std::string>;

std::string var_name(std::size_t index, const VarNames* names);

// Sparse multivariate polynomial over Q.
//
// Terms are kept sorted by descending graded-lexicographic order with no zero
// coefficients. Exponent vectors are trimmed to the highest variable that
// actually occurs, so num_vars() is canonical and equality is structural.
class Poly {
 public:
  using Exponents = std::vector<unsigned>;
  struct Term {
    Exponents exp;
    Rational coeff;
  };

  Poly() = default;
  Poly(const Rational& c);  // NOLINT(google-explicit-constructor)
  Poly(int c) : Poly(Rational(c)) {}  // NOLINT(google-explicit-constructor)

  static Poly variable(std::size_t index);
  static Poly monomial(Exponents exp, const Rational& coeff);

  std::size_t num_vars() const { return nvars_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return nvars_ == 0; }
  // Only valid when is_constant().
  Rational constant_value() const;
  Rational constant_term() const;

  // -1 for the zero polynomial.
  int total_degree() const;
  unsigned degree_in(std::size_t var) const;
  // Total degree restricted to variables [0, count).
  int degree_in_first(std::size_t count) const;
  bool depends_on(std::size_t var) const { return degree_in(var) > 0; }
  // True when no variable below `count` occurs.
  bool free_of_first(std::size_t count) const { return degree_in_first(count) <= 0; }

  const Term& leading_term() const { return terms_.front(); }
  const Rational& leading_coeff() const { return terms_.front().coeff; }

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rational& c);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
  friend bool operator==(const Poly& a, const Poly& b);

  Poly pow(unsigned e) const;
  Poly derivative(std::size_t var) const;
  Rational evaluate(std::span<const Rational> point) const;

  // Exact quotient, or nullopt when `d` does not divide *this.
  std::optional<Poly> divide_exact(const Poly& d) const;

  // Scaled so the leading coefficient is 1 (zero stays zero).
  Poly monic() const;

  // Splits into coefficients of powers of `var`: result[k] multiplies var^k.
  std::vector<Poly> coefficients_in(std::size_t var) const;
  static Poly from_coefficients(const std::vector<Poly>& coeffs, std::size_t var);

  // Smallest exponent of every variable across all terms.
  Exponents min_exponents() const;
  // Divides every term by the monomial with exponents `m` (must divide).
  Poly divided_by_monomial(const Exponents& m) const;

  std::string to_string(const VarNames* names = nullptr) const;

 private:
  void trim();

  std::size_t nvars_ = 0;
  std::vector<Term> terms_;
};

// Monic greatest common divisor; gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);

// Graded-lexicographic comparison of padded exponent vectors.
int grlex_compare(const Poly::Exponents& a, const Poly::Exponents& b);

}  // namespace hamforms
