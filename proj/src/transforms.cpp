#include "hamforms/transforms.hpp"

#include "hamforms/errors.hpp"

namespace hamforms {

namespace {

// Reads T and g⁰ off an affine skew matrix in the field variables.
void match_metric(const SkewMatrix<RatFunc>& g, int n, AltForm<RatFunc>& T, AltForm<RatFunc>& g0) {
  T = AltForm<RatFunc>(3, n);
  g0 = AltForm<RatFunc>(2, n);
  const auto nn = static_cast<std::size_t>(n);
  for (std::size_t i = 0; i < nn; ++i)
    for (std::size_t j = i + 1; j < nn; ++j) {
      const RatFunc& e = g.at(i, j);
      if (!e.is_polynomial() || e.num().degree_in_first(nn + 2) > 1)
        throw ShapeError("transformed metric entry is not affine: " + e.to_string());
      RatFunc rest = e;
      for (std::size_t k = 0; k < nn; ++k) {
        const RatFunc c = differentiate(e, k);
        rest -= c * RatFunc::variable(k);
        if (c.is_zero()) continue;
        const int ii = static_cast<int>(i + 1), jj = static_cast<int>(j + 1), kk = static_cast<int>(k + 1);
        if (kk == ii || kk == jj) throw ShapeError("transformed metric has a diagonal T component");
        const RatFunc prev = T.at({ii, jj, kk});
        if (!prev.is_zero() && !(prev == c)) throw ShapeError("transformed T is not alternating");
        T.set({ii, jj, kk}, c);
      }
      if (!rest.free_of_first(nn + 2)) throw ShapeError("transformed metric depends on extra variables");
      g0.set({static_cast<int>(i + 1), static_cast<int>(j + 1)}, rest);
    }
  // Every entry must agree with the alternating T read off so far.
  const auto check = build_metric(T, g0);
  if (!(check == g)) throw ShapeError("transformed metric is not of the form T u + g⁰");
}

void match_covector(const std::vector<RatFunc>& w, int n, AltForm<RatFunc>& A, std::vector<RatFunc>& B) {
  A = AltForm<RatFunc>(2, n);
  B.assign(static_cast<std::size_t>(n), RatFunc());
  const auto nn = static_cast<std::size_t>(n);
  for (std::size_t j = 0; j < nn; ++j) {
    const RatFunc& e = w[j];
    if (!e.is_polynomial() || e.num().degree_in_first(nn + 2) > 1)
      throw ShapeError("transformed covector entry is not affine: " + e.to_string());
    RatFunc rest = e;
    for (std::size_t l = 0; l < nn; ++l) {
      const RatFunc c = differentiate(e, l);
      rest -= c * RatFunc::variable(l);
      if (j < l) A.set({static_cast<int>(j + 1), static_cast<int>(l + 1)}, c);
    }
    if (!rest.free_of_first(nn + 2)) throw ShapeError("transformed covector depends on extra variables");
    B[j] = rest;
  }
  if (!(build_covector(A, B) == w)) throw ShapeError("transformed covector is not of the form A u + B with A skew");
}

HamPair make_image(int n, AltForm<RatFunc> T, AltForm<RatFunc> g0, AltForm<RatFunc> A, std::vector<RatFunc> B) {
  try {
    return HamPair(n, std::move(T), std::move(g0), std::move(A), std::move(B));
  } catch (const DegenerateMetric& e) {
    throw DegenerateImage(std::string("image metric is degenerate: ") + e.what());
  }
}

HamPair phi_image(const OmegaForm& om) {
  try {
    return phi(om);
  } catch (const DegenerateMetric& e) {
    throw DegenerateImage(std::string("image metric is degenerate: ") + e.what());
  }
}

// Jacobian ∂y/∂x of y_i(x) over the first n variables.
Matrix<RatFunc> jacobian(const std::vector<RatFunc>& y, std::size_t n) {
  Matrix<RatFunc> j(y.size(), n);
  for (std::size_t i = 0; i < y.size(); ++i)
    for (std::size_t k = 0; k < n; ++k) j(i, k) = differentiate(y[i], k);
  return j;
}

// Affine images (M U)_i / (M U)_{N+1}, U = (u, 1), and the denominator.
std::vector<RatFunc> projective_images(const Matrix<Rational>& m, std::size_t n, RatFunc& denom) {
  std::vector<RatFunc> lin(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    RatFunc s(m(i, n));
    for (std::size_t l = 0; l < n; ++l)
      if (!m(i, l).is_zero()) s += RatFunc(m(i, l)) * RatFunc::variable(l);
    lin[i] = s;
  }
  denom = lin[n];
  if (denom.is_zero()) throw SingularMatrix("projective map sends every point to infinity");
  std::vector<RatFunc> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = lin[i] / denom;
  return out;
}

}  // namespace

ProjectiveResult apply_projective(const HamPair& pair, const ProjectiveMap& map) {
  const int n = pair.N();
  const auto nn = static_cast<std::size_t>(n);
  if (map.a.rows() != nn + 1 || map.a.cols() != nn + 1) throw DimensionMismatch("projective map must be (N+1)×(N+1)");
  const Matrix<Rational> b = inverse(map.a);

  // u as a function of ũ, and L(ũ) = (b Ũ)_{N+1}.
  RatFunc L;
  const std::vector<RatFunc> u_of = projective_images(b, nn, L);
  const Matrix<RatFunc> J = jacobian(u_of, nn);
  const Matrix<RatFunc> Jt = J.transpose();

  Matrix<RatFunc> g_sub(nn, nn);
  for (std::size_t i = 0; i < nn; ++i)
    for (std::size_t j = i + 1; j < nn; ++j) {
      g_sub(i, j) = substitute(pair.metric().at(i, j), u_of);
      g_sub(j, i) = -g_sub(i, j);
    }
  const RatFunc L3 = L.pow(3), L2 = L.pow(2);
  const Matrix<RatFunc> gbar_m = L3 * (Jt * g_sub * J);
  SkewMatrix<RatFunc> gbar(nn);
  for (std::size_t i = 0; i < nn; ++i)
    for (std::size_t j = i + 1; j < nn; ++j) gbar.set(i, j, gbar_m(i, j));

  std::vector<RatFunc> w_sub(nn);
  for (std::size_t j = 0; j < nn; ++j) w_sub[j] = substitute(pair.covector()[j], u_of);
  std::vector<RatFunc> wbar = Jt.apply(w_sub);
  for (auto& x : wbar) x = L2 * x;

  AltForm<RatFunc> T, g0, A;
  std::vector<RatFunc> B;
  match_metric(gbar, n, T, g0);
  match_covector(wbar, n, A, B);

  ProjectiveResult res{make_image(n, std::move(T), std::move(g0), std::move(A), std::move(B)), RatFunc(), false, false};

  // Conformal laws, pulled back along ũ(u).
  RatFunc denom;
  const std::vector<RatFunc> ut_of = projective_images(map.a, nn, denom);
  res.denominator = denom;
  const Matrix<RatFunc> K = jacobian(ut_of, nn);
  Matrix<RatFunc> gb_sub(nn, nn);
  for (std::size_t i = 0; i < nn; ++i)
    for (std::size_t j = 0; j < nn; ++j) gb_sub(i, j) = substitute(res.pair.metric().at(i, j), ut_of);
  const Matrix<RatFunc> pulled = K.transpose() * gb_sub * K;
  res.metric_conformal = pulled == denom.pow(-3) * pair.metric().to_matrix();
  std::vector<RatFunc> wb_sub(nn);
  for (std::size_t j = 0; j < nn; ++j) wb_sub[j] = substitute(res.pair.covector()[j], ut_of);
  const auto wpulled = K.transpose().apply(wb_sub);
  res.covector_conformal = true;
  const RatFunc dm2 = denom.pow(-2);
  for (std::size_t j = 0; j < nn; ++j)
    if (!(wpulled[j] == dm2 * pair.covector()[j])) res.covector_conformal = false;
  return res;
}

ExchangeResult apply_xt_exchange(const HamPair& pair, bool verify) {
  const int n = pair.N();
  std::vector<RatFunc> nb;
  for (const auto& b : pair.B()) nb.push_back(-b);
  ExchangeResult res{make_image(n, pair.T(), pair.A(), pair.g0(), std::move(nb)), false, false, false};
  if (!verify) return res;
  res.identities_checked = true;
  const auto nn = static_cast<std::size_t>(n);
  const auto& V = pair.flux();

  // g_is V^s_{,j} against the rebuilt metric at ū = V.
  res.metric_identity = true;
  for (std::size_t i = 0; i < nn && res.metric_identity; ++i)
    for (std::size_t j = 0; j < nn; ++j) {
      RatFunc lhs;
      for (std::size_t s = 0; s < nn; ++s) lhs += pair.metric().at(i, s) * differentiate(V[s], j);
      if (!(lhs == substitute(res.pair.metric().at(i, j), V))) {
        res.metric_identity = false;
        break;
      }
    }
  res.inverse_identity = true;
  for (std::size_t i = 0; i < nn; ++i)
    if (!(substitute(res.pair.flux()[i], V) == RatFunc::variable(i))) res.inverse_identity = false;
  return res;
}

Matrix<RatFunc> reciprocal_matrix(const ReciprocalMap& r, int n) {
  const auto nn = static_cast<std::size_t>(n);
  if (r.alpha.size() != nn || r.beta_i.size() != nn) throw DimensionMismatch("reciprocal constants need N entries");
  Matrix<RatFunc> l = Matrix<RatFunc>::identity(nn + 2);
  for (std::size_t i = 0; i < nn; ++i) {
    l(nn, i) = RatFunc(r.alpha[i]);
    l(nn + 1, i) = RatFunc(r.beta_i[i]);
  }
  l(nn, nn) = RatFunc(r.alpha0);
  l(nn, nn + 1) = RatFunc(r.beta);
  l(nn + 1, nn) = RatFunc(r.c);
  l(nn + 1, nn + 1) = RatFunc(r.d);
  return l;
}

Matrix<RatFunc> x_transformation(const std::vector<RatFunc>& row) {
  const std::size_t m = row.size();
  Matrix<RatFunc> x = Matrix<RatFunc>::identity(m);
  for (std::size_t j = 0; j < m; ++j) x(m - 2, j) = row[j];
  return x;
}

Matrix<RatFunc> exchange_matrix(int n) {
  const auto m = static_cast<std::size_t>(n + 2);
  Matrix<RatFunc> s = Matrix<RatFunc>::identity(m);
  s(m - 2, m - 2) = s(m - 1, m - 1) = RatFunc(0);
  s(m - 2, m - 1) = s(m - 1, m - 2) = RatFunc(1);
  return s;
}

OmegaForm act_on_omega(const OmegaForm& om, const Matrix<RatFunc>& l) {
  return {om.N, pullback_linear(om.omega, inverse(l))};
}

namespace {

struct Factor {
  Matrix<RatFunc> m;
  bool exchange;
  std::string label;
};

std::vector<RatFunc> row_of(const Matrix<RatFunc>& l, std::size_t r) {
  std::vector<RatFunc> out(l.cols());
  for (std::size_t j = 0; j < l.cols(); ++j) out[j] = l(r, j);
  return out;
}

std::string describe(const std::vector<RatFunc>& row) {
  std::string s = "x-transformation(";
  for (std::size_t j = 0; j < row.size(); ++j) s += (j ? "," : "") + row[j].to_string();
  return s + ")";
}

// L = F_k ... F_1 with each F an x-transformation or the exchange; F_1 first.
std::vector<Factor> factorize(const Matrix<RatFunc>& l, int n) {
  const auto m = static_cast<std::size_t>(n + 2);
  const auto alpha = row_of(l, m - 2), gamma = row_of(l, m - 1);
  bool gamma_is_unit = true;
  for (std::size_t j = 0; j < m; ++j)
    if (!(gamma[j] == RatFunc(j == m - 1 ? 1 : 0))) gamma_is_unit = false;
  if (gamma_is_unit) {
    if (alpha[m - 2].is_zero()) throw SingularMatrix("reciprocal map is not invertible");
    return {{x_transformation(alpha), false, describe(alpha)}};
  }
  const RatFunc c = gamma[m - 2];
  if (c.is_zero()) {
    // L = (L S) S, and L S has c' = d.
    const Matrix<RatFunc> s = exchange_matrix(n);
    auto inner = factorize(l * s, n);
    inner.insert(inner.begin(), Factor{s, true, "x<->t exchange"});
    return inner;
  }
  const RatFunc sc = alpha[m - 2] / c;
  std::vector<RatFunc> a2(m);
  for (std::size_t j = 0; j + 2 < m; ++j) a2[j] = alpha[j] - sc * gamma[j];
  a2[m - 2] = alpha[m - 1] - sc * gamma[m - 1];
  a2[m - 1] = sc;
  if (a2[m - 2].is_zero()) throw SingularMatrix("reciprocal map is not invertible");
  return {{x_transformation(gamma), false, describe(gamma)},
          {exchange_matrix(n), true, "x<->t exchange"},
          {x_transformation(a2), false, describe(a2)}};
}

}  // namespace

ReciprocalResult apply_reciprocal(const HamPair& pair, const ReciprocalMap& r) {
  const int n = pair.N();
  const Matrix<RatFunc> l = reciprocal_matrix(r, n);
  if (determinant(l).is_zero()) throw SingularMatrix("reciprocal map is not invertible");
  const auto factors = factorize(l, n);

  ReciprocalResult res;
  Matrix<RatFunc> product = Matrix<RatFunc>::identity(static_cast<std::size_t>(n + 2));
  HamPair current = pair;
  for (const auto& f : factors) {
    product = f.m * product;
    res.factors.push_back(f.label);
    if (f.exchange) current = apply_xt_exchange(current, false).pair;
    else current = phi_image(act_on_omega(phi_inv(current), f.m));
  }
  res.factorization_ok = product == l;
  res.direct_agrees = current == phi_image(act_on_omega(phi_inv(pair), l));
  res.compatible = n <= 4 ? check_compat(current).all_zero : check_compat_sampled(current, 20, 1).all_zero;
  res.pair = std::move(current);
  return res;
}

}  // namespace hamforms
