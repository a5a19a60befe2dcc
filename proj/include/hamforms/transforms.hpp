#pragma once

#include <string>
#include <vector>

#include "hamforms/bridge.hpp"
#include "hamforms/hampair.hpp"
#include "hamforms/matrix.hpp"

namespace hamforms {

// ũ^i = (a^i_l u^l + a^i_{N+1}) / (a^{N+1}_l u^l + a^{N+1}_{N+1}).
struct ProjectiveMap {
  Matrix<Rational> a;  // (N+1)×(N+1), invertible
};

struct ProjectiveResult {
  HamPair pair;
  RatFunc denominator;          // A(u) = a^{N+1}_k u^k + a^{N+1}_{N+1}
  bool metric_conformal = false;  // ρ*(ḡ) = A(u)⁻³ g
  bool covector_conformal = false;  // ρ*(W̄) = A(u)⁻² W
};

// Throws DegenerateImage when the image metric is degenerate and ShapeError
// when the transformed tensors are not of affine shape.
ProjectiveResult apply_projective(const HamPair& pair, const ProjectiveMap& map);

struct ExchangeResult {
  HamPair pair;
  bool identities_checked = false;
  bool metric_identity = false;  // g_is V^s_{,j} = ḡ_ij(V)
  bool inverse_identity = false;  // V̄(V(u)) = u
};

// x↔t: T̄ = T, ḡ⁰ = A, Ā = g⁰, B̄ = −B. Throws DegenerateImage.
ExchangeResult apply_xt_exchange(const HamPair& pair, bool verify = true);

// Constants of a reciprocal change of independent variables.
struct ReciprocalMap {
  std::vector<Rational> alpha;  // α⁰_i
  Rational alpha0{1};           // α⁰_0
  Rational beta{0};
  std::vector<Rational> beta_i;
  Rational c{0};
  Rational d{1};
};

// Identity on u¹..u^N; rows N+1 and N+2 are (α⁰_i, α⁰_0, β) and (β_i, c, d).
Matrix<RatFunc> reciprocal_matrix(const ReciprocalMap& r, int n);

// x-transformation: identity with row N+1 replaced by `row`.
Matrix<RatFunc> x_transformation(const std::vector<RatFunc>& row);
// Swap of coordinates N+1 and N+2.
Matrix<RatFunc> exchange_matrix(int n);

struct ReciprocalResult {
  HamPair pair;
  std::vector<std::string> factors;  // applied first to last
  bool factorization_ok = false;     // product of factors equals the matrix
  bool direct_agrees = false;        // matches phi((L⁻¹)^*Ω)
  bool compatible = false;
};

// Throws DegenerateImage when any intermediate image is degenerate and
// SingularMatrix when the map is not invertible.
ReciprocalResult apply_reciprocal(const HamPair& pair, const ReciprocalMap& r);

// Ω-level action (L⁻¹)^*Ω.
OmegaForm act_on_omega(const OmegaForm& om, const Matrix<RatFunc>& l);

}  // namespace hamforms
