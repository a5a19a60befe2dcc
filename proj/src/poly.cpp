#include "hamforms/poly.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>

#include "hamforms/errors.hpp"

namespace hamforms {

std::string var_name(std::size_t index, const VarNames* names) {
  if (names != nullptr && index < names->size()) return (*names)[index];
  return "u" + std::to_string(index + 1);
}

namespace {

using Exponents = Poly::Exponents;

unsigned exp_at(const Exponents& e, std::size_t i) { return i < e.size() ? e[i] : 0; }

Exponents padded(const Exponents& e, std::size_t width) {
  Exponents out(e);
  out.resize(std::max(width, e.size()), 0);
  return out;
}

unsigned degree_of(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0u); }

struct GrlexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const {
    return grlex_compare(a, b) > 0;
  }
};

}  // namespace

int grlex_compare(const Exponents& a, const Exponents& b) {
  const unsigned da = degree_of(a), db = degree_of(b);
  if (da != db) return da < db ? -1 : 1;
  const std::size_t n = std::max(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    const unsigned x = exp_at(a, i), y = exp_at(b, i);
    if (x != y) return x < y ? -1 : 1;
  }
  return 0;
}

Poly::Poly(const Rational& c) {
  if (!c.is_zero()) terms_.push_back({{}, c});
}

Poly Poly::variable(std::size_t index) {
  Exponents e(index + 1, 0);
  e[index] = 1;
  return monomial(std::move(e), Rational(1));
}

Poly Poly::monomial(Exponents exp, const Rational& coeff) {
  Poly p;
  if (coeff.is_zero()) return p;
  p.terms_.push_back({std::move(exp), coeff});
  p.trim();
  return p;
}

void Poly::trim() {
  std::size_t width = 0;
  for (const auto& t : terms_)
    for (std::size_t i = t.exp.size(); i > width; --i)
      if (t.exp[i - 1] != 0) {
        width = i;
        break;
      }
  for (auto& t : terms_) t.exp.resize(width, 0);
  nvars_ = width;
}

Rational Poly::constant_value() const {
  if (!is_constant()) throw Error("polynomial is not constant: " + to_string());
  return terms_.empty() ? Rational(0) : terms_.front().coeff;
}

Rational Poly::constant_term() const {
  if (terms_.empty()) return Rational(0);
  const auto& last = terms_.back();
  return degree_of(last.exp) == 0 ? last.coeff : Rational(0);
}

int Poly::total_degree() const {
  if (terms_.empty()) return -1;
  return static_cast<int>(degree_of(terms_.front().exp));
}

unsigned Poly::degree_in(std::size_t var) const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, exp_at(t.exp, var));
  return d;
}

int Poly::degree_in_first(std::size_t count) const {
  if (terms_.empty()) return -1;
  int best = 0;
  for (const auto& t : terms_) {
    int d = 0;
    for (std::size_t i = 0; i < std::min(count, t.exp.size()); ++i) d += static_cast<int>(t.exp[i]);
    best = std::max(best, d);
  }
  return best;
}

Poly Poly::operator-() const {
  Poly r(*this);
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

namespace {

// Merge two sorted term lists with b scaled by `sign`.
std::vector<Poly::Term> merge_terms(const std::vector<Poly::Term>& a,
                                    const std::vector<Poly::Term>& b, bool subtract,
                                    std::size_t width) {
  std::vector<Poly::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int c;
    if (i == a.size()) c = -1;
    else if (j == b.size()) c = 1;
    else c = grlex_compare(a[i].exp, b[j].exp);
    if (c > 0) {
      out.push_back({padded(a[i].exp, width), a[i].coeff});
      ++i;
    } else if (c < 0) {
      out.push_back({padded(b[j].exp, width), subtract ? -b[j].coeff : b[j].coeff});
      ++j;
    } else {
      Rational s = subtract ? a[i].coeff - b[j].coeff : a[i].coeff + b[j].coeff;
      if (!s.is_zero()) out.push_back({padded(a[i].exp, width), std::move(s)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Poly& Poly::operator+=(const Poly& o) {
  if (o.is_zero()) return *this;
  terms_ = merge_terms(terms_, o.terms_, false, std::max(nvars_, o.nvars_));
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.is_zero()) return *this;
  terms_ = merge_terms(terms_, o.terms_, true, std::max(nvars_, o.nvars_));
  trim();
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    nvars_ = 0;
    return *this;
  }
  for (auto& t : terms_) t.coeff *= c;
  return *this;
}

Poly& Poly::operator*=(const Poly& o) {
  *this = *this * o;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  const std::size_t width = std::max(a.nvars_, b.nvars_);
  Poly r;
  // A monomial factor preserves the term order.
  if (a.terms_.size() == 1 || b.terms_.size() == 1) {
    const Poly& single = a.terms_.size() == 1 ? a : b;
    const Poly& other = a.terms_.size() == 1 ? b : a;
    const auto& m = single.terms_.front();
    r.terms_.reserve(other.terms_.size());
    for (const auto& t : other.terms_) {
      Exponents e = padded(t.exp, width);
      for (std::size_t i = 0; i < m.exp.size(); ++i) e[i] += m.exp[i];
      r.terms_.push_back({std::move(e), t.coeff * m.coeff});
    }
    r.trim();
    return r;
  }
  std::map<Exponents, Rational, GrlexGreater> acc;
  for (const auto& x : a.terms_) {
    for (const auto& y : b.terms_) {
      Exponents e = padded(x.exp, width);
      for (std::size_t i = 0; i < y.exp.size(); ++i) e[i] += y.exp[i];
      auto [it, inserted] = acc.try_emplace(std::move(e), x.coeff * y.coeff);
      if (!inserted) it->second += x.coeff * y.coeff;
    }
  }
  for (auto& [e, c] : acc)
    if (!c.is_zero()) r.terms_.push_back({e, c});
  r.trim();
  return r;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.nvars_ != b.nvars_ || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].exp != b.terms_[i].exp || a.terms_[i].coeff != b.terms_[i].coeff)
      return false;
  return true;
}

Poly Poly::pow(unsigned e) const {
  Poly result(1), base(*this);
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e > 0) base = base * base;
  }
  return result;
}

Poly Poly::derivative(std::size_t var) const {
  Poly r;
  for (const auto& t : terms_) {
    const unsigned k = exp_at(t.exp, var);
    if (k == 0) continue;
    Exponents e = t.exp;
    e[var] -= 1;
    r.terms_.push_back({std::move(e), t.coeff * Rational(static_cast<long>(k))});
  }
  // Lowering one exponent can reorder terms, so resort.
  std::sort(r.terms_.begin(), r.terms_.end(),
            [](const Term& x, const Term& y) { return grlex_compare(x.exp, y.exp) > 0; });
  r.trim();
  return r;
}

Rational Poly::evaluate(std::span<const Rational> point) const {
  if (point.size() < nvars_)
    throw DimensionMismatch("evaluation point has " + std::to_string(point.size()) +
                            " coordinates, polynomial uses " + std::to_string(nvars_));
  std::vector<std::vector<Rational>> powers(nvars_);
  for (std::size_t i = 0; i < nvars_; ++i) {
    const unsigned d = degree_in(i);
    powers[i].reserve(d + 1);
    powers[i].push_back(Rational(1));
    for (unsigned k = 1; k <= d; ++k) powers[i].push_back(powers[i].back() * point[i]);
  }
  Rational sum(0);
  for (const auto& t : terms_) {
    Rational v = t.coeff;
    for (std::size_t i = 0; i < t.exp.size(); ++i)
      if (t.exp[i] != 0) v *= powers[i][t.exp[i]];
    sum += v;
  }
  return sum;
}

std::optional<Poly> Poly::divide_exact(const Poly& d) const {
  if (d.is_zero()) throw DivisionByZero("polynomial division by zero");
  if (is_zero()) return Poly();
  if (d.is_constant()) return *this * d.constant_value().inverse();
  if (d.total_degree() > total_degree()) return std::nullopt;
  for (std::size_t i = 0; i < d.nvars_; ++i)
    if (d.degree_in(i) > degree_in(i)) return std::nullopt;
  Poly r(*this), q;
  const Term& ld = d.terms_.front();
  while (!r.is_zero()) {
    const Term& lr = r.terms_.front();
    Exponents e = padded(lr.exp, ld.exp.size());
    for (std::size_t i = 0; i < ld.exp.size(); ++i) {
      if (e[i] < ld.exp[i]) return std::nullopt;
      e[i] -= ld.exp[i];
    }
    Poly t = monomial(std::move(e), lr.coeff / ld.coeff);
    r -= t * d;
    q += t;
  }
  return q;
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return *this * leading_coeff().inverse();
}

std::vector<Poly> Poly::coefficients_in(std::size_t var) const {
  std::vector<Poly> out(degree_in(var) + 1);
  std::vector<std::vector<Term>> buckets(out.size());
  for (const auto& t : terms_) {
    const unsigned k = exp_at(t.exp, var);
    Exponents e = t.exp;
    if (var < e.size()) e[var] = 0;
    buckets[k].push_back({std::move(e), t.coeff});
  }
  for (std::size_t k = 0; k < out.size(); ++k) {
    // Zeroing one variable's exponent can reorder terms.
    std::sort(buckets[k].begin(), buckets[k].end(),
              [](const Term& x, const Term& y) { return grlex_compare(x.exp, y.exp) > 0; });
    out[k].terms_ = std::move(buckets[k]);
    out[k].trim();
  }
  return out;
}

Poly Poly::from_coefficients(const std::vector<Poly>& coeffs, std::size_t var) {
  Poly r;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k].is_zero()) continue;
    Exponents e(var + 1, 0);
    e[var] = static_cast<unsigned>(k);
    r += coeffs[k] * monomial(std::move(e), Rational(1));
  }
  return r;
}

Exponents Poly::min_exponents() const {
  Exponents m(nvars_, 0);
  if (terms_.empty()) return m;
  m = terms_.front().exp;
  for (const auto& t : terms_)
    for (std::size_t i = 0; i < nvars_; ++i) m[i] = std::min(m[i], t.exp[i]);
  return m;
}

Poly Poly::divided_by_monomial(const Exponents& m) const {
  Poly r(*this);
  for (auto& t : r.terms_)
    for (std::size_t i = 0; i < m.size() && i < t.exp.size(); ++i) {
      if (t.exp[i] < m[i]) throw Error("monomial does not divide polynomial");
      t.exp[i] -= m[i];
    }
  r.trim();
  return r;
}

std::string Poly::to_string(const VarNames* names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    Rational c = t.coeff;
    const bool negative = c.sign() < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    const bool constant = degree_of(t.exp) == 0;
    if (constant || !c.is_one()) {
      if (!c.is_integer() && !constant) os << "(" << c.to_string() << ")";
      else os << c.to_string();
      if (!constant) os << "*";
    }
    bool first_factor = true;
    for (std::size_t i = 0; i < t.exp.size(); ++i) {
      if (t.exp[i] == 0) continue;
      if (!first_factor) os << "*";
      first_factor = false;
      os << var_name(i, names);
      if (t.exp[i] > 1) os << "^" << t.exp[i];
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// GCD
// ---------------------------------------------------------------------------

namespace {

using UPoly = std::vector<Rational>;  // low -> high, no trailing zeros

void strip(UPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

UPoly upoly_rem(UPoly a, const UPoly& b) {
  const Rational inv = b.back().inverse();
  while (a.size() >= b.size() && !a.empty()) {
    const Rational f = a.back() * inv;
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
    a.pop_back();
    strip(a);
  }
  return a;
}

std::size_t upoly_gcd_degree(UPoly a, UPoly b) {
  strip(a);
  strip(b);
  while (!b.empty()) {
    UPoly r = upoly_rem(std::move(a), b);
    a = std::move(b);
    b = std::move(r);
  }
  return a.empty() ? 0 : a.size() - 1;
}

// Deterministic small-integer stream for specialization points.
struct PointStream {
  std::uint64_t state = 0x9E3779B97F4A7C15ull;
  long next() {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    return static_cast<long>((state >> 33) % 89) + 2;
  }
};

UPoly specialize(const Poly& p, std::size_t var, const std::vector<Rational>& values) {
  UPoly out(p.degree_in(var) + 1, Rational(0));
  for (const auto& t : p.terms()) {
    Rational v = t.coeff;
    unsigned k = 0;
    for (std::size_t i = 0; i < t.exp.size(); ++i) {
      if (t.exp[i] == 0) continue;
      if (i == var) k = t.exp[i];
      else v *= values[i].pow(static_cast<int>(t.exp[i]));
    }
    out[k] += v;
  }
  return out;
}

// Sound coprimality certificate: if for every shared variable x a
// specialization of the other variables keeps both x-degrees and yields a
// constant univariate gcd, then the true gcd has x-degree zero for every x.
bool coprime_by_specialization(const Poly& a, const Poly& b) {
  const std::size_t width = std::max(a.num_vars(), b.num_vars());
  PointStream stream;
  for (std::size_t x = 0; x < width; ++x) {
    const unsigned da = a.degree_in(x), db = b.degree_in(x);
    if (da == 0 || db == 0) continue;
    bool certified = false;
    for (int attempt = 0; attempt < 3 && !certified; ++attempt) {
      std::vector<Rational> values(width);
      for (auto& v : values) v = Rational(stream.next());
      UPoly ua = specialize(a, x, values), ub = specialize(b, x, values);
      if (ua.back().is_zero() || ub.back().is_zero()) continue;
      if (upoly_gcd_degree(std::move(ua), std::move(ub)) == 0) certified = true;
      else break;  // most likely a genuine common factor in x
    }
    if (!certified) return false;
  }
  return true;
}

Poly shift_down(const Poly& p, const Exponents& m) { return p.divided_by_monomial(m); }

using CoeffVec = std::vector<Poly>;  // coefficients in the main variable

void strip(CoeffVec& v) {
  while (!v.empty() && v.back().is_zero()) v.pop_back();
}

Poly content_of(const CoeffVec& v) {
  Poly c;
  for (const auto& x : v) {
    if (x.is_zero()) continue;
    c = c.is_zero() ? x.monic() : gcd(c, x);
    if (c.is_constant()) return Poly(1);
  }
  return c;
}

CoeffVec primitive_part(const CoeffVec& v) {
  const Poly c = content_of(v);
  CoeffVec out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(*x.divide_exact(c));
  return out;
}

CoeffVec pseudo_remainder(CoeffVec r, const CoeffVec& b) {
  const Poly& lb = b.back();
  while (r.size() >= b.size() && !r.empty()) {
    const Poly lr = r.back();
    const std::size_t shift = r.size() - b.size();
    for (auto& x : r) x = x * lb;
    for (std::size_t i = 0; i < b.size(); ++i) r[i + shift] -= lr * b[i];
    strip(r);
  }
  return r;
}

Poly gcd_recursive(const Poly& a, const Poly& b) {
  // Main variable: the last one occurring in either input.
  const std::size_t x = std::max(a.num_vars(), b.num_vars()) - 1;
  if (a.degree_in(x) == 0) return gcd(content_of(b.coefficients_in(x)), a);
  if (b.degree_in(x) == 0) return gcd(content_of(a.coefficients_in(x)), b);

  CoeffVec ca = a.coefficients_in(x), cb = b.coefficients_in(x);
  const Poly cont = gcd(content_of(ca), content_of(cb));
  CoeffVec pa = primitive_part(ca), pb = primitive_part(cb);
  if (pa.size() < pb.size()) std::swap(pa, pb);
  while (!pb.empty()) {
    if (pb.size() == 1) {
      pa = {Poly(1)};
      break;
    }
    CoeffVec r = pseudo_remainder(pa, pb);
    pa = std::move(pb);
    pb = r.empty() ? CoeffVec{} : primitive_part(r);
  }
  return (cont * Poly::from_coefficients(pa, x)).monic();
}

Poly gcd_core(const Poly& a, const Poly& b) {
  if (a.is_constant() || b.is_constant()) return Poly(1);
  if (a.size() >= b.size()) {
    if (a.divide_exact(b)) return b.monic();
  }
  if (b.size() >= a.size()) {
    if (b.divide_exact(a)) return a.monic();
  }
  if (coprime_by_specialization(a, b)) return Poly(1);
  return gcd_recursive(a, b);
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Poly(1);
  const Exponents ma = a.min_exponents(), mb = b.min_exponents();
  Exponents m(std::min(ma.size(), mb.size()), 0);
  bool has_monomial = false;
  for (std::size_t i = 0; i < m.size(); ++i) {
    m[i] = std::min(ma[i], mb[i]);
    has_monomial = has_monomial || m[i] != 0;
  }
  const bool strip_a = std::any_of(ma.begin(), ma.end(), [](unsigned e) { return e != 0; });
  const bool strip_b = std::any_of(mb.begin(), mb.end(), [](unsigned e) { return e != 0; });
  const Poly core = gcd_core(strip_a ? shift_down(a, ma) : a, strip_b ? shift_down(b, mb) : b);
  if (!has_monomial) return core;
  return core * Poly::monomial(m, Rational(1));
}

}  // namespace hamforms
