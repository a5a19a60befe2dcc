#include "hamforms/ratfunc.hpp"

#include "hamforms/errors.hpp"

namespace hamforms {

RatFunc RatFunc::make_monic(Poly num, Poly den) {
  if (num.is_zero()) return RatFunc();
  const Rational lc = den.leading_coeff();
  if (!lc.is_one()) {
    const Rational inv = lc.inverse();
    num *= inv;
    den *= inv;
  }
  return RatFunc(std::move(num), std::move(den), Reduced{});
}

RatFunc::RatFunc(const Poly& num, const Poly& den) {
  if (den.is_zero()) throw DivisionByZero("rational function with zero denominator");
  if (num.is_zero()) {
    den_ = Poly(1);
    return;
  }
  const Poly g = gcd(num, den);
  Poly n = g.is_constant() ? num : *num.divide_exact(g);
  Poly d = g.is_constant() ? den : *den.divide_exact(g);
  *this = make_monic(std::move(n), std::move(d));
}

Rational RatFunc::to_rational() const {
  if (!is_constant()) throw Error("rational function is not constant: " + to_string());
  return num_.constant_value() / den_.constant_value();
}

RatFunc RatFunc::operator-() const { return RatFunc(-num_, den_, Reduced{}); }

// Henrici-style sum of a/b + c/d with both inputs reduced.
RatFunc RatFunc::add_reduced(const Poly& a, const Poly& b, const Poly& c, const Poly& d,
                             bool subtract) {
  const Poly cc = subtract ? -c : c;
  if (b == d) {
    Poly n = a + cc;
    if (n.is_zero()) return RatFunc();
    if (b.is_constant()) return RatFunc(n * b.constant_value().inverse());
    return RatFunc(n, b);
  }
  if (b.is_constant() && d.is_constant())
    return RatFunc(a * b.constant_value().inverse() + cc * d.constant_value().inverse());
  if (b.is_constant()) return make_monic(a * d * b.constant_value().inverse() + cc, d);
  if (d.is_constant()) return make_monic(a + cc * b * d.constant_value().inverse(), b);
  const Poly g = gcd(b, d);
  const Poly bg = *b.divide_exact(g);
  const Poly dg = *d.divide_exact(g);
  Poly n = a * dg + cc * bg;
  if (n.is_zero()) return RatFunc();
  // gcd(n, b*d/g) = gcd(n, g), so only factors of g can cancel.
  const Poly h = g.is_constant() ? Poly(1) : gcd(n, g);
  if (!h.is_constant()) return make_monic(*n.divide_exact(h), bg * *g.divide_exact(h) * dg);
  return make_monic(std::move(n), b * dg);
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  return *this = add_reduced(num_, den_, o.num_, o.den_, false);
}

RatFunc& RatFunc::operator-=(const RatFunc& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = -o;
  return *this = add_reduced(num_, den_, o.num_, o.den_, true);
}

RatFunc& RatFunc::operator*=(const RatFunc& o) {
  if (is_zero() || o.is_zero()) return *this = RatFunc();
  if (is_polynomial() && o.is_polynomial()) {
    return *this = RatFunc(num_ * o.num_ * (den_.constant_value() * o.den_.constant_value()).inverse());
  }
  // Cross-cancel; each quotient stays reduced.
  const Poly g1 = gcd(num_, o.den_);
  const Poly g2 = gcd(o.num_, den_);
  Poly n1 = g1.is_constant() ? num_ : *num_.divide_exact(g1);
  Poly d2 = g1.is_constant() ? o.den_ : *o.den_.divide_exact(g1);
  Poly n2 = g2.is_constant() ? o.num_ : *o.num_.divide_exact(g2);
  Poly d1 = g2.is_constant() ? den_ : *den_.divide_exact(g2);
  return *this = make_monic(n1 * n2, d1 * d2);
}

RatFunc& RatFunc::operator/=(const RatFunc& o) { return *this *= o.inverse(); }

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero rational function");
  return make_monic(den_, num_);
}

RatFunc RatFunc::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  // Powers of a reduced fraction stay reduced.
  return make_monic(num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e)));
}

std::string RatFunc::to_string(const VarNames* names) const {
  if (den_.is_constant()) {
    if (den_ == Poly(1)) return num_.to_string(names);
    return (num_ * den_.constant_value().inverse()).to_string(names);
  }
  return "(" + num_.to_string(names) + ")/(" + den_.to_string(names) + ")";
}

RatFunc differentiate(const RatFunc& f, std::size_t var) {
  if (f.is_polynomial()) return RatFunc(f.num().derivative(var) * f.den().constant_value().inverse());
  const Poly dn = f.num().derivative(var);
  const Poly dd = f.den().derivative(var);
  if (dd.is_zero()) return RatFunc(dn, f.den());
  return RatFunc(dn * f.den() - f.num() * dd, f.den() * f.den());
}

Rational evaluate(const RatFunc& f, std::span<const Rational> point) {
  const Rational d = f.den().evaluate(point);
  if (d.is_zero()) throw PoleError("denominator vanishes at evaluation point");
  return f.num().evaluate(point) / d;
}

Jet2 evaluate_jet(const RatFunc& f, std::span<const Rational> point, std::size_t nvars) {
  const Poly& n = f.num();
  const Poly& d = f.den();
  const Rational dv = d.evaluate(point);
  if (dv.is_zero()) throw PoleError("denominator vanishes at evaluation point");
  const Rational nv = n.evaluate(point);
  Jet2 jet;
  jet.value = nv / dv;
  std::vector<Poly> dn(nvars), ddp(nvars);
  std::vector<Rational> nd(nvars), dd(nvars);
  for (std::size_t p = 0; p < nvars; ++p) {
    dn[p] = n.derivative(p);
    ddp[p] = d.derivative(p);
    nd[p] = dn[p].evaluate(point);
    dd[p] = ddp[p].evaluate(point);
  }
  // f = n/d: f_p = (n_p - f d_p)/d, f_pl = (n_pl - f_l d_p - f_p d_l - f d_pl)/d.
  jet.grad.resize(nvars);
  for (std::size_t p = 0; p < nvars; ++p) jet.grad[p] = (nd[p] - jet.value * dd[p]) / dv;
  jet.hess.assign(nvars, std::vector<Rational>(nvars));
  for (std::size_t p = 0; p < nvars; ++p) {
    for (std::size_t l = p; l < nvars; ++l) {
      const Rational npl = dn[p].derivative(l).evaluate(point);
      const Rational dpl = ddp[p].derivative(l).evaluate(point);
      const Rational v =
          (npl - jet.grad[l] * dd[p] - jet.grad[p] * dd[l] - jet.value * dpl) / dv;
      jet.hess[p][l] = v;
      jet.hess[l][p] = v;
    }
  }
  return jet;
}

namespace {

// Evaluates a polynomial at rational-function arguments sharing one
// denominator D: sum c * prod n_k^{e_k} * D^{deg - |e|}, over D^deg.
RatFunc substitute_common(const Poly& p, const std::vector<Poly>& nums, const Poly& den,
                          const std::vector<RatFunc>& values) {
  const std::size_t m = values.size();
  const int deg = p.degree_in_first(m);
  if (deg <= 0) return RatFunc(p);
  std::vector<Poly> den_pow(static_cast<std::size_t>(deg) + 1);
  den_pow[0] = Poly(1);
  for (int k = 1; k <= deg; ++k) den_pow[k] = den_pow[k - 1] * den;
  Poly total;
  for (const auto& t : p.terms()) {
    Poly term = Poly::monomial(
        [&] {
          Poly::Exponents e = t.exp;
          for (std::size_t i = 0; i < std::min(m, e.size()); ++i) e[i] = 0;
          return e;
        }(),
        t.coeff);
    int used = 0;
    for (std::size_t i = 0; i < std::min(m, t.exp.size()); ++i) {
      if (t.exp[i] == 0) continue;
      term = term * nums[i].pow(t.exp[i]);
      used += static_cast<int>(t.exp[i]);
    }
    total += term * den_pow[static_cast<std::size_t>(deg - used)];
  }
  return RatFunc(total, den_pow[static_cast<std::size_t>(deg)]);
}

RatFunc substitute_poly(const Poly& p, const std::vector<RatFunc>& values) {
  const std::size_t m = values.size();
  if (p.free_of_first(m)) return RatFunc(p);
  bool common = true;
  for (std::size_t i = 1; i < m && common; ++i) common = values[i].den() == values[0].den();
  if (common && m > 0) {
    std::vector<Poly> nums;
    nums.reserve(m);
    for (const auto& v : values) nums.push_back(v.num());
    return substitute_common(p, nums, values[0].den(), values);
  }
  RatFunc total;
  for (const auto& t : p.terms()) {
    Poly::Exponents rest = t.exp;
    for (std::size_t i = 0; i < std::min(m, rest.size()); ++i) rest[i] = 0;
    RatFunc term(Poly::monomial(rest, t.coeff));
    for (std::size_t i = 0; i < std::min(m, t.exp.size()); ++i)
      if (t.exp[i] != 0) term *= values[i].pow(static_cast<int>(t.exp[i]));
    total += term;
  }
  return total;
}

}  // namespace

RatFunc substitute(const RatFunc& f, const std::vector<RatFunc>& values) {
  const RatFunc n = substitute_poly(f.num(), values);
  if (f.is_polynomial()) return n * RatFunc(f.den().constant_value().inverse());
  return n / substitute_poly(f.den(), values);
}

}  // namespace hamforms
