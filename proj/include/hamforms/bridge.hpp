#pragma once

#include <cstddef>
#include <vector>

#include "hamforms/altform.hpp"
#include "hamforms/hampair.hpp"

namespace hamforms {

// Three-form on K^{N+2} encoding a pair.
struct OmegaForm {
  int N = 0;
  AltForm<RatFunc> omega;

  friend bool operator==(const OmegaForm& a, const OmegaForm& b) { return a.N == b.N && a.omega == b.omega; }
};

// Sign with which B_i enters ω_{i,N+1,N+2} and Ã_{i,N+1}.
inline constexpr int kBSign = +1;

// T̃ = T + g⁰∧du^{N+1} on K^{N+1}.
AltForm<RatFunc> tilde_T(const AltForm<RatFunc>& T, const AltForm<RatFunc>& g0);
// Ã = A + B_s du^s∧du^{N+1} on K^{N+1}.
AltForm<RatFunc> tilde_A(const AltForm<RatFunc>& A, const std::vector<RatFunc>& B);

// ω_ijk = T_ijk, ω_{ij,N+1} = g⁰_ij, ω_{ij,N+2} = A_ij, ω_{i,N+1,N+2} = B_i.
OmegaForm phi_inv(const HamPair& pair);
// Throws DegenerateMetric when the metric block has Pf ≡ 0. A null system
// is reported through HamPair::is_null_system().
HamPair phi(const OmegaForm& om);

// Ω = T̃ + Ã∧du^{N+2}, both lifted to K^{N+2}.
AltForm<RatFunc> assemble_omega(const AltForm<RatFunc>& tT, const AltForm<RatFunc>& tA);

struct DimensionAudit {
  int N = 0;
  std::size_t omega = 0, tilde_T = 0, T = 0, g0 = 0, A = 0, B = 0, tilde_A = 0;
  bool omega_split_ok = false;    // C(N+2,3) = C(N+1,3) + C(N,2) + N
  bool tilde_T_split_ok = false;  // C(N+1,3) = C(N,3) + C(N,2)
  bool tilde_A_split_ok = false;  // C(N+1,2) = C(N,2) + N
  bool stored_counts_ok = false;  // generic forms store exactly these many components
};

DimensionAudit dimension_audit(int n);

}  // namespace hamforms
