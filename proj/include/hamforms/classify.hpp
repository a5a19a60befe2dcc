#pragma once

#include <string>
#include <vector>

#include "hamforms/bridge.hpp"
#include "hamforms/hampair.hpp"
#include "hamforms/matrix.hpp"

namespace hamforms {

// A = θ_η η + θ with η∧θ = 0.
struct SymplecticSplit {
  Rational theta_eta;
  AltForm<Rational> theta{2, 4};
  // θ₀ (du¹² − du³⁴) + θ₁₃ du¹³ + θ₁₄ du¹⁴ + θ₂₃ du²³ + θ₂₄ du²⁴
  Rational theta0() const { return theta.at({1, 2}); }
};

SymplecticSplit symplectic_split(const AltForm<Rational>& A);

struct ClassificationResult {
  int N = 0;
  Rational theta_eta, q, theta13;  // N=4 only
  OmegaForm canonical_omega;
  HamPair canonical_pair;
  Matrix<RatFunc> system;          // ∂V^i/∂u^j of the canonical pair
  Matrix<Rational> transform;      // N=2: pulling the input back by this gives the canonical form
  std::vector<std::string> log;
};

// Ω₂ → ω₁₂₃ = ω₁₂₄ = ω₁₃₄ = 1, ω₂₃₄ = 0. Throws NullSystemOrbit when A₁₂ = 0.
ClassificationResult classify_n2(const OmegaForm& om);

// T̃ block must be du¹²⁵ + du³⁴⁵; throws WrongTBlock otherwise.
ClassificationResult classify_n4(const OmegaForm& om);

// du¹∧du²∧du⁵ + du³∧du⁴∧du⁵
AltForm<Rational> tilde_T4();

// (C, 0; xᵀ, 1), acting on the coordinate covectors.
Matrix<Rational> stabilizer_element(const Matrix<Rational>& C, const std::vector<Rational>& x);

// I + t v vᵀ J with J the matrix of η.
Matrix<Rational> transvection(const std::vector<Rational>& v, const Rational& t);

Matrix<RatFunc> flux_jacobian(const HamPair& pair);
std::string format_system(const Matrix<RatFunc>& jac, const VarNames* names = nullptr);

struct StabilizerAudit {
  std::vector<std::string> generators;
  std::vector<bool> first_order_ok;
  std::size_t independent = 0;
  bool transvections_exact = false;
  bool shears_exact = false;
  bool negative_control_detected = false;
  bool all_ok = false;
};

StabilizerAudit stabilizer_audit(int n = 4);

}  // namespace hamforms
