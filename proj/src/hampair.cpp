#include "hamforms/hampair.hpp"

#include <algorithm>

#include "hamforms/errors.hpp"
#include "hamforms/lcg.hpp"

namespace hamforms {

namespace {

void check_constant(const RatFunc& c, int n, const char* what) {
  if (!c.free_of_first(static_cast<std::size_t>(n + 2)))
    throw ValidationError(std::string(what) + " must not depend on the field variables");
}

// Numerator and denominator degrees in u¹..u^n.
int field_degree(const Poly& p, int n) { return p.degree_in_first(static_cast<std::size_t>(n)); }

}  // namespace

SymbolicData symbolic_data(int n) {
  SymbolicData d{AltForm<RatFunc>(2, n), AltForm<RatFunc>(2, n), {}, {}};
  for (std::size_t k = 0; k < kParamBase; ++k) d.names.push_back("u" + std::to_string(k + 1));
  std::size_t slot = 0;
  auto fresh = [&](const std::string& name) {
    d.names.push_back(name);
    return parameter(slot++);
  };
  const auto pairs = increasing_tuples(2, n);
  for (const auto& idx : pairs) d.g0.set(idx, fresh("g" + std::to_string(idx[0]) + std::to_string(idx[1])));
  for (const auto& idx : pairs) d.A.set(idx, fresh("A" + std::to_string(idx[0]) + std::to_string(idx[1])));
  for (int i = 1; i <= n; ++i) d.B.push_back(fresh("B" + std::to_string(i)));
  return d;
}

SkewMatrix<RatFunc> build_metric(const AltForm<RatFunc>& T, const AltForm<RatFunc>& g0, bool homogenize) {
  const int n = g0.dim();
  if (T.degree() != 3 || g0.degree() != 2 || T.dim() != n)
    throw DimensionMismatch("metric needs a three-form and a two-form on the same space");
  SkewMatrix<RatFunc> g(static_cast<std::size_t>(n));
  const RatFunc scale = homogenize ? field_var(n + 1) : RatFunc(1);
  for (const auto& [idx, c] : g0.terms())
    g.set(static_cast<std::size_t>(idx[0] - 1), static_cast<std::size_t>(idx[1] - 1), c * scale);
  auto bump = [&](int a, int b, const RatFunc& v) {
    const auto ia = static_cast<std::size_t>(a - 1), ib = static_cast<std::size_t>(b - 1);
    g.set(ia, ib, g.at(ia, ib) + v);
  };
  // T_ijk u^k summed over every k: each stored component feeds three entries.
  for (const auto& [idx, c] : T.terms()) {
    const int i = idx[0], j = idx[1], k = idx[2];
    bump(i, j, c * field_var(k));
    bump(i, k, -c * field_var(j));
    bump(j, k, c * field_var(i));
  }
  return g;
}

std::vector<RatFunc> build_covector(const AltForm<RatFunc>& A, const std::vector<RatFunc>& B, bool homogenize) {
  const int n = A.dim();
  if (A.degree() != 2 || static_cast<int>(B.size()) != n)
    throw DimensionMismatch("covector needs a two-form and a vector of the same dimension");
  const RatFunc scale = homogenize ? field_var(n + 1) : RatFunc(1);
  std::vector<RatFunc> w(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) w[j] = B[j] * scale;
  for (const auto& [idx, c] : A.terms()) {
    const int i = idx[0], j = idx[1];
    w[i - 1] += c * field_var(j);
    w[j - 1] -= c * field_var(i);
  }
  return w;
}

std::vector<RatFunc> build_flux(const SkewMatrix<RatFunc>& g, const AltForm<RatFunc>& A,
                                const std::vector<RatFunc>& B, bool homogenize) {
  const std::size_t n = g.n();
  if (static_cast<std::size_t>(A.dim()) != n) throw DimensionMismatch("flux data dimension mismatch");
  const RatFunc pf = pfaffian(g);
  if (pf.is_zero()) throw SingularMatrix("Pfaffian of the metric vanishes identically");
  const auto w = build_covector(A, B, homogenize);
  const auto adj = pfaffian_adjugate(g);
  std::vector<RatFunc> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    RatFunc s;
    for (std::size_t j = 0; j < n; ++j) {
      const RatFunc e = adj.at(i, j);
      if (!e.is_zero() && !w[j].is_zero()) s += e * w[j];
    }
    v[i] = s / pf;
  }
  return v;
}

HamPair::HamPair(int n, AltForm<RatFunc> T, AltForm<RatFunc> g0, AltForm<RatFunc> A, std::vector<RatFunc> B)
    : n_(n), T_(std::move(T)), g0_(std::move(g0)), A_(std::move(A)), B_(std::move(B)) {
  if (n < 2 || n % 2 != 0) throw ValidationError("N must be even and at least 2");
  if (T_.degree() != 3 || T_.dim() != n || g0_.degree() != 2 || g0_.dim() != n || A_.degree() != 2 ||
      A_.dim() != n || static_cast<int>(B_.size()) != n)
    throw DimensionMismatch("pair tensors must live on a space of dimension N");
  for (const auto* f : {&T_, &g0_, &A_})
    for (const auto& [idx, c] : f->terms()) check_constant(c, n, "pair tensor entry");
  for (const auto& b : B_) check_constant(b, n, "B entry");

  g_ = build_metric(T_, g0_);
  pf_ = hamforms::pfaffian(g_);
  if (pf_.is_zero()) throw DegenerateMetric("Pf(g) vanishes identically");
  W_ = build_covector(A_, B_);
  V_ = build_flux(g_, A_, B_);
}

HamPair::HamPair(int n, const AltForm<Rational>& T, const AltForm<Rational>& g0, const AltForm<Rational>& A,
                 const std::vector<Rational>& B)
    : HamPair(n, T.map([](const Rational& c) { return RatFunc(c); }),
              g0.map([](const Rational& c) { return RatFunc(c); }),
              A.map([](const Rational& c) { return RatFunc(c); }), std::vector<RatFunc>(B.begin(), B.end())) {}

bool HamPair::is_null_system() const {
  return A_.is_zero() && std::all_of(B_.begin(), B_.end(), [](const RatFunc& b) { return b.is_zero(); });
}

bool HamPair::is_constant() const {
  for (const auto* f : {&T_, &g0_, &A_})
    for (const auto& [idx, c] : f->terms())
      if (!c.is_constant()) return false;
  return std::all_of(B_.begin(), B_.end(), [](const RatFunc& b) { return b.is_constant(); });
}

CompatReport check_compat(const SkewMatrix<RatFunc>& g, const std::vector<RatFunc>& V) {
  const std::size_t n = g.n();
  if (V.size() != n) throw DimensionMismatch("flux count differs from metric size");
  CompatReport r;
  r.n = static_cast<int>(n);
  r.symbolic = true;

  // dV[k][p] = V^k_{,p}, ddV[k][p][l] = V^k_{,pl}, dg[p][q][k] = g_pq,k.
  std::vector<std::vector<RatFunc>> dV(n, std::vector<RatFunc>(n));
  std::vector<std::vector<std::vector<RatFunc>>> ddV(n, std::vector<std::vector<RatFunc>>(n, std::vector<RatFunc>(n)));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t p = 0; p < n; ++p) dV[k][p] = differentiate(V[k], p);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t l = p; l < n; ++l) {
        ddV[k][p][l] = differentiate(dV[k][p], l);
        ddV[k][l][p] = ddV[k][p][l];
      }
  std::vector<std::vector<std::vector<RatFunc>>> dg(n, std::vector<std::vector<RatFunc>>(n, std::vector<RatFunc>(n)));
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      for (std::size_t k = 0; k < n; ++k) dg[p][q][k] = differentiate(g.at(p, q), k);

  r.residual_a.resize(n * n);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) {
      RatFunc s;
      for (std::size_t j = 0; j < n; ++j) s += g.at(q, j) * dV[j][p] + g.at(p, j) * dV[j][q];
      if (!s.is_zero()) ++r.nonzero_a;
      r.residual_a[p * n + q] = std::move(s);
    }
  r.residual_b.resize(n * n * n);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      for (std::size_t l = 0; l < n; ++l) {
        RatFunc s;
        for (std::size_t k = 0; k < n; ++k)
          s += g.at(q, k) * ddV[k][p][l] + dg[p][q][k] * dV[k][l] + dg[q][k][l] * dV[k][p];
        if (!s.is_zero()) ++r.nonzero_b;
        r.residual_b[(p * n + q) * n + l] = std::move(s);
      }
  r.all_zero = r.nonzero_a == 0 && r.nonzero_b == 0;
  return r;
}

CompatReport check_compat(const HamPair& pair) { return check_compat(pair.metric(), pair.flux()); }

CompatReport check_compat_sampled(const SkewMatrix<RatFunc>& g, const std::vector<RatFunc>& V,
                                  std::size_t samples, std::uint64_t seed) {
  const std::size_t n = g.n();
  if (V.size() != n) throw DimensionMismatch("flux count differs from metric size");
  CompatReport r;
  r.n = static_cast<int>(n);
  r.symbolic = false;
  r.seed = seed;
  Lcg rng(seed);
  // The metric is affine in u, so g_pq,k is constant.
  std::vector<std::vector<std::vector<Rational>>> dg(n, std::vector<std::vector<Rational>>(n, std::vector<Rational>(n)));
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      for (std::size_t k = 0; k < n; ++k) dg[p][q][k] = differentiate(g.at(p, q), k).to_rational();

  std::size_t attempts = 0;
  while (r.samples < samples && attempts < samples * 20) {
    ++attempts;
    std::vector<Rational> pt(n);
    for (auto& x : pt) x = rng.rational(12);
    std::vector<Jet2> jets;
    try {
      for (const auto& v : V) jets.push_back(evaluate_jet(v, pt, n));
    } catch (const PoleError&) {
      ++r.skipped_poles;
      continue;
    }
    Matrix<Rational> gp(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) gp(i, j) = evaluate(g.at(i, j), pt);
    bool bad_a = false, bad_b = false;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q) {
        Rational s(0);
        for (std::size_t j = 0; j < n; ++j) s += gp(q, j) * jets[j].grad[p] + gp(p, j) * jets[j].grad[q];
        if (!s.is_zero()) bad_a = true;
        for (std::size_t l = 0; l < n; ++l) {
          Rational t(0);
          for (std::size_t k = 0; k < n; ++k)
            t += gp(q, k) * jets[k].hess[p][l] + dg[p][q][k] * jets[k].grad[l] + dg[q][k][l] * jets[k].grad[p];
          if (!t.is_zero()) bad_b = true;
        }
      }
    if (bad_a) ++r.nonzero_a;
    if (bad_b) ++r.nonzero_b;
    ++r.samples;
  }
  r.all_zero = r.samples == samples && r.nonzero_a == 0 && r.nonzero_b == 0;
  return r;
}

CompatReport check_compat_sampled(const HamPair& pair, std::size_t samples, std::uint64_t seed) {
  return check_compat_sampled(pair.metric(), pair.flux(), samples, seed);
}

std::vector<RatFunc> linear_system_residual(const HamPair& pair) {
  const auto n = static_cast<std::size_t>(pair.N());
  std::vector<RatFunc> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    RatFunc s = -pair.covector()[j];
    for (std::size_t k = 0; k < n; ++k) s += pair.metric().at(j, k) * pair.flux()[k];
    out[j] = s;
  }
  return out;
}

DegreeReport degree_report(const HamPair& pair) {
  const int n = pair.N();
  DegreeReport r;
  const Poly& pf = pair.pfaffian().num();
  r.pf_degree = field_degree(pf, n);
  for (const auto& v : pair.flux()) {
    const int d = v.is_zero() ? 0 : field_degree(v.num(), n);
    r.numerator_degree.push_back(d);
    if (d > n / 2) r.flux_bound_ok = false;
    const bool same = v.den() == pf.monic();
    r.denominator_is_pf.push_back(same);
    if (!pf.divide_exact(v.den()).has_value()) r.denominators_divide_pf = false;
  }
  const auto adj = pfaffian_adjugate(pair.metric());
  for (std::size_t i = 0; i < adj.n(); ++i)
    for (std::size_t j = 0; j < adj.n(); ++j) {
      const RatFunc& e = adj.at(i, j);
      if (e.is_zero()) continue;
      r.max_inverse_numerator_degree = std::max(r.max_inverse_numerator_degree, field_degree(e.num(), n));
    }
  if (r.max_inverse_numerator_degree > (n - 2) / 2) r.inverse_bound_ok = false;
  return r;
}

}  // namespace hamforms
