#include "hamforms/bridge.hpp"

#include "hamforms/errors.hpp"

namespace hamforms {

namespace {

std::size_t binomial(int n, int k) {
  if (k < 0 || n < k) return 0;
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return r;
}

}  // namespace

AltForm<RatFunc> tilde_T(const AltForm<RatFunc>& T, const AltForm<RatFunc>& g0) {
  const int n = g0.dim();
  if (T.dim() != n) throw DimensionMismatch("T and g⁰ live on different spaces");
  return T.extended(n + 1) + wedge(g0.extended(n + 1), AltForm<RatFunc>::basis(n + 1, {n + 1}));
}

AltForm<RatFunc> tilde_A(const AltForm<RatFunc>& A, const std::vector<RatFunc>& B) {
  const int n = A.dim();
  if (static_cast<int>(B.size()) != n) throw DimensionMismatch("B has the wrong length");
  AltForm<RatFunc> out = A.extended(n + 1);
  for (int i = 1; i <= n; ++i) out.add({i, n + 1}, RatFunc(kBSign) * B[i - 1]);
  return out;
}

AltForm<RatFunc> assemble_omega(const AltForm<RatFunc>& tT, const AltForm<RatFunc>& tA) {
  const int m = tT.dim() + 1;
  return tT.extended(m) + wedge(tA.extended(m), AltForm<RatFunc>::basis(m, {m}));
}

OmegaForm phi_inv(const HamPair& pair) {
  return {pair.N(), assemble_omega(tilde_T(pair.T(), pair.g0()), tilde_A(pair.A(), pair.B()))};
}

HamPair phi(const OmegaForm& om) {
  const int n = om.N;
  if (om.omega.degree() != 3 || om.omega.dim() != n + 2) throw DimensionMismatch("Ω must be a three-form on K^{N+2}");
  AltForm<RatFunc> T(3, n), g0(2, n), A(2, n);
  std::vector<RatFunc> B(static_cast<std::size_t>(n));
  for (const auto& [idx, c] : om.omega.terms()) {
    const int i = idx[0], j = idx[1], k = idx[2];
    if (k <= n) T.set({i, j, k}, c);
    else if (k == n + 1) g0.set({i, j}, c);
    else if (j <= n) A.set({i, j}, c);
    else B[i - 1] = RatFunc(kBSign) * c;
  }
  return HamPair(n, std::move(T), std::move(g0), std::move(A), std::move(B));
}

DimensionAudit dimension_audit(int n) {
  if (n < 2 || n % 2 != 0) throw ValidationError("dimension audit needs an even N ≥ 2");
  DimensionAudit a;
  a.N = n;
  a.omega = binomial(n + 2, 3);
  a.tilde_T = binomial(n + 1, 3);
  a.T = binomial(n, 3);
  a.g0 = binomial(n, 2);
  a.A = binomial(n, 2);
  a.B = static_cast<std::size_t>(n);
  a.tilde_A = binomial(n + 1, 2);
  a.omega_split_ok = a.omega == a.tilde_T + a.A + a.B;
  a.tilde_T_split_ok = a.tilde_T == a.T + a.g0;
  a.tilde_A_split_ok = a.tilde_A == a.A + a.B;

  // Fill every component with a distinct nonzero value and count what is stored.
  auto full = [](int degree, int dim) {
    AltForm<RatFunc> f(degree, dim);
    int v = 1;
    for (const auto& idx : increasing_tuples(degree, dim)) f.set(idx, RatFunc(v++));
    return f;
  };
  const auto T = full(3, n), g0 = full(2, n), A = full(2, n);
  std::vector<RatFunc> B;
  for (int i = 1; i <= n; ++i) B.emplace_back(i);
  const auto tT = tilde_T(T, g0);
  const auto tA = tilde_A(A, B);
  const auto om = assemble_omega(tT, tA);
  a.stored_counts_ok = T.terms().size() == a.T && g0.terms().size() == a.g0 && A.terms().size() == a.A &&
                       tT.terms().size() == a.tilde_T && tA.terms().size() == a.tilde_A &&
                       om.terms().size() == a.omega;
  return a;
}

}  // namespace hamforms
