#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "hamforms/altform.hpp"
#include "hamforms/ratfunc.hpp"
#include "hamforms/skew.hpp"

namespace hamforms {

// Symbolic parameters live above the field coordinates u¹..u^{N+2}.
inline constexpr std::size_t kParamBase = 16;
inline RatFunc parameter(std::size_t k) { return RatFunc::variable(kParamBase + k); }

// u^{k}, 1-based.
inline RatFunc field_var(int k) { return RatFunc::variable(static_cast<std::size_t>(k - 1)); }

// Generic constant data: g⁰_ij, A_ij and B_i as independent parameters,
// named g12.., A12.., B1.. for printing.
struct SymbolicData {
  AltForm<RatFunc> g0, A;
  std::vector<RatFunc> B;
  VarNames names;
};
SymbolicData symbolic_data(int n);

// g_ij = T_ijk u^k + g⁰_ij, or with g⁰_ij u^{N+1} when homogenized.
SkewMatrix<RatFunc> build_metric(const AltForm<RatFunc>& T, const AltForm<RatFunc>& g0,
                                 bool homogenize = false);

// W_j = A_jl u^l + B_j, or with B_j u^{N+1} when homogenized.
std::vector<RatFunc> build_covector(const AltForm<RatFunc>& A, const std::vector<RatFunc>& B,
                                    bool homogenize = false);

// V = g⁻¹ W. Throws SingularMatrix when Pf(g) vanishes.
std::vector<RatFunc> build_flux(const SkewMatrix<RatFunc>& g, const AltForm<RatFunc>& A,
                                const std::vector<RatFunc>& B, bool homogenize = false);

// Operator (through its metric) together with the system it makes Hamiltonian.
class HamPair {
 public:
  HamPair() = default;
  // Builds g, Pf(g) and V; throws DegenerateMetric when Pf(g) ≡ 0.
  HamPair(int n, AltForm<RatFunc> T, AltForm<RatFunc> g0, AltForm<RatFunc> A, std::vector<RatFunc> B);
  HamPair(int n, const AltForm<Rational>& T, const AltForm<Rational>& g0, const AltForm<Rational>& A,
          const std::vector<Rational>& B);

  int N() const { return n_; }
  const AltForm<RatFunc>& T() const { return T_; }
  const AltForm<RatFunc>& g0() const { return g0_; }
  const AltForm<RatFunc>& A() const { return A_; }
  const std::vector<RatFunc>& B() const { return B_; }

  const SkewMatrix<RatFunc>& metric() const { return g_; }
  const RatFunc& pfaffian() const { return pf_; }
  const std::vector<RatFunc>& covector() const { return W_; }
  const std::vector<RatFunc>& flux() const { return V_; }

  // A = 0 and B = 0.
  bool is_null_system() const;
  // All tensor entries are rational numbers.
  bool is_constant() const;

  friend bool operator==(const HamPair& a, const HamPair& b) {
    return a.n_ == b.n_ && a.T_ == b.T_ && a.g0_ == b.g0_ && a.A_ == b.A_ && a.B_ == b.B_;
  }

 private:
  int n_ = 0;
  AltForm<RatFunc> T_, g0_, A_;
  std::vector<RatFunc> B_;
  SkewMatrix<RatFunc> g_;
  RatFunc pf_;
  std::vector<RatFunc> W_, V_;
};

// Residuals of
//   (a) g_qj V^j_{,p} + g_pj V^j_{,q}
//   (b) g_qk V^k_{,pl} + g_pq,k V^k_{,l} + g_qk,l V^k_{,p}
// Symbolic mode keeps the full arrays; sampled mode counts failing points.
struct CompatReport {
  int n = 0;
  bool symbolic = true;
  std::vector<RatFunc> residual_a;  // index p*n + q
  std::vector<RatFunc> residual_b;  // index (p*n + q)*n + l
  std::size_t nonzero_a = 0;
  std::size_t nonzero_b = 0;
  std::size_t samples = 0;
  std::size_t skipped_poles = 0;
  std::uint64_t seed = 0;
  bool all_zero = false;
};

CompatReport check_compat(const SkewMatrix<RatFunc>& g, const std::vector<RatFunc>& V);
CompatReport check_compat(const HamPair& pair);
// The metric must be affine in u.
CompatReport check_compat_sampled(const SkewMatrix<RatFunc>& g, const std::vector<RatFunc>& V,
                                  std::size_t samples, std::uint64_t seed);
CompatReport check_compat_sampled(const HamPair& pair, std::size_t samples, std::uint64_t seed);

// g_jk V^k − W_j, which must vanish identically.
std::vector<RatFunc> linear_system_residual(const HamPair& pair);

struct DegreeReport {
  std::vector<int> numerator_degree;       // per flux, in u¹..u^N
  std::vector<bool> denominator_is_pf;     // equal to Pf(g) up to a rational unit
  bool denominators_divide_pf = true;
  int pf_degree = 0;
  int max_inverse_numerator_degree = 0;    // over entries of Pf(g)·g⁻¹
  bool flux_bound_ok = true;               // numerator degree ≤ N/2
  bool inverse_bound_ok = true;            // ≤ (N−2)/2
};

DegreeReport degree_report(const HamPair& pair);

}  // namespace hamforms
