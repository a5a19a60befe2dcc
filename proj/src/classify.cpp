#include "hamforms/classify.hpp"

#include <sstream>

#include "hamforms/errors.hpp"

namespace hamforms {

namespace {

AltForm<Rational> constant_form(const AltForm<RatFunc>& f) {
  return f.map([](const RatFunc& c) {
    if (!c.is_constant()) throw ValidationError("classification needs constant coefficients");
    return c.to_rational();
  });
}

AltForm<RatFunc> lifted(const AltForm<Rational>& f) {
  return f.map([](const Rational& c) { return RatFunc(c); });
}

Matrix<Rational> eta_matrix() { return SkewMatrix<Rational>::from_form(eta_form<Rational>()).to_matrix(); }

Matrix<Rational> block_diag(const Matrix<Rational>& c, std::size_t extra) {
  const std::size_t n = c.rows();
  auto m = Matrix<Rational>::identity(n + extra);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = c(i, j);
  return m;
}

}  // namespace

SymplecticSplit symplectic_split(const AltForm<Rational>& A) {
  if (A.degree() != 2 || A.dim() != 4) throw DimensionMismatch("split is defined on two-forms in dimension 4");
  const auto eta = eta_form<Rational>();
  SymplecticSplit s;
  s.theta_eta = wedge(A, eta).at({1, 2, 3, 4}) / wedge(eta, eta).at({1, 2, 3, 4});
  s.theta = A - s.theta_eta * eta;
  return s;
}

ClassificationResult classify_n2(const OmegaForm& om) {
  if (om.N != 2 || om.omega.dim() != 4) throw DimensionMismatch("classify_n2 needs N = 2");
  const auto w = constant_form(om.omega);
  const Rational g0 = w.at({1, 2, 3});
  if (g0.is_zero()) throw DegenerateMetric("ω₁₂₃ = 0");
  if (w.at({1, 2, 4}).is_zero()) throw NullSystemOrbit("A₁₂ = 0 gives the null system");

  // Ã on K³, with kernel k.
  Matrix<Rational> at(3, 3);
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) at(i - 1, j - 1) = w.at({i, j, 4});
  const auto ker = null_space(at);
  if (ker.size() != 1) throw ValidationError("Ã must have rank two");
  const auto& k = ker[0];

  // A₁₂ ≠ 0, so (u¹, u²) is a pair with Ã(c₁, c₂) = 1 after scaling.
  const std::size_t i = 0, j = 1;
  Matrix<Rational> c(3, 3);
  c(i, 0) = Rational(1);
  c(j, 1) = Rational(1) / at(i, j);
  Matrix<Rational> probe = c;
  for (std::size_t r = 0; r < 3; ++r) probe(r, 2) = k[r];
  const Rational lambda = Rational(1) / (g0 * determinant(probe));
  for (std::size_t r = 0; r < 3; ++r) c(r, 2) = c(r, 1) + lambda * k[r];

  ClassificationResult res;
  res.N = 2;
  res.transform = block_diag(c, 1);
  res.canonical_omega = {2, lifted(pullback_linear(w, res.transform))};
  res.canonical_pair = phi(res.canonical_omega);
  res.system = flux_jacobian(res.canonical_pair);
  std::ostringstream os;
  os << "basis change on u1..u3 with det " << determinant(c).to_string();
  res.log.push_back(os.str());
  if (c == Matrix<Rational>::identity(3)) res.log.push_back("already canonical");
  return res;
}

AltForm<Rational> tilde_T4() {
  return AltForm<Rational>::basis(5, {1, 2, 5}) + AltForm<Rational>::basis(5, {3, 4, 5});
}

ClassificationResult classify_n4(const OmegaForm& om) {
  if (om.N != 4 || om.omega.dim() != 6) throw DimensionMismatch("classify_n4 needs N = 4");
  const auto w = constant_form(om.omega);
  const auto t4 = tilde_T4();
  for (const auto& idx : increasing_tuples(3, 5))
    if (!(w.at(idx) == t4.at(idx))) throw WrongTBlock("T̃ block is not du¹²⁵ + du³⁴⁵");

  AltForm<Rational> a(2, 4);
  for (const auto& idx : increasing_tuples(2, 4)) a.set(idx, w.at({idx[0], idx[1], 6}));
  const auto split = symplectic_split(a);

  ClassificationResult res;
  res.N = 4;
  res.theta_eta = split.theta_eta;
  res.q = q_form(split.theta);
  res.theta13 = -res.q / Rational(2);
  const auto can_a = res.theta_eta * eta_form<Rational>() + AltForm<Rational>::basis(4, {1, 3}, res.theta13) +
                     AltForm<Rational>::basis(4, {2, 4});
  auto can = t4.extended(6);
  for (const auto& [idx, v] : can_a.terms()) can.set({idx[0], idx[1], 6}, v);
  res.canonical_omega = {4, lifted(can)};
  res.canonical_pair = phi(res.canonical_omega);
  res.system = flux_jacobian(res.canonical_pair);
  res.log.push_back("theta_eta = " + res.theta_eta.to_string() + ", Q = " + res.q.to_string() +
                    ", theta13 = " + res.theta13.to_string());
  bool had_b = false;
  for (int i = 1; i <= 4; ++i) had_b = had_b || !w.at({i, 5, 6}).is_zero();
  if (had_b) res.log.push_back("B dropped");
  return res;
}

Matrix<Rational> stabilizer_element(const Matrix<Rational>& C, const std::vector<Rational>& x) {
  if (C.rows() != 4 || C.cols() != 4 || x.size() != 4) throw DimensionMismatch("stabilizer element needs C 4x4, x in K^4");
  auto m = block_diag(C, 1);
  for (std::size_t j = 0; j < 4; ++j) m(4, j) = x[j];
  return m;
}

Matrix<Rational> transvection(const std::vector<Rational>& v, const Rational& t) {
  if (v.size() != 4) throw DimensionMismatch("transvection needs v in K^4");
  const auto j = eta_matrix();
  auto m = Matrix<Rational>::identity(4);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) {
      Rational vj;
      for (std::size_t k = 0; k < 4; ++k) vj += v[k] * j(k, c);
      m(r, c) += t * v[r] * vj;
    }
  return m;
}

Matrix<RatFunc> flux_jacobian(const HamPair& pair) {
  const auto n = static_cast<std::size_t>(pair.N());
  Matrix<RatFunc> jac(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) jac(i, j) = differentiate(pair.flux()[i], j);
  return jac;
}

std::string format_system(const Matrix<RatFunc>& jac, const VarNames* names) {
  std::ostringstream os;
  for (std::size_t i = 0; i < jac.rows(); ++i) {
    os << "u" << i + 1 << "_t =";
    bool first = true;
    for (std::size_t j = 0; j < jac.cols(); ++j) {
      const auto& c = jac(i, j);
      if (c.is_zero()) continue;
      const std::string var = "u" + std::to_string(j + 1) + "_x";
      std::string cs = c.to_string(names);
      bool neg = false;
      if (c.is_constant() && c.to_rational().sign() < 0) {
        neg = true;
        cs = (-c).to_string(names);
      }
      os << (first ? (neg ? " -" : " ") : (neg ? " - " : " + "));
      if (cs != "1") os << (c.is_constant() ? cs : "(" + cs + ")") << "*";
      os << var;
      first = false;
    }
    if (first) os << " 0";
    os << "\n";
  }
  return os.str();
}

StabilizerAudit stabilizer_audit(int n) {
  if (n != 4) throw ValidationError("stabilizer audit is implemented for N = 4");
  StabilizerAudit r;
  const auto t4 = tilde_T4();
  const auto t4r = lifted(t4);
  const RatFunc eps = RatFunc::variable(0);

  // The block matrix acts on covectors: pull back by its transpose.
  auto preserved = [&](const Matrix<Rational>& m) { return pullback_linear(t4, m.transpose()) == t4; };

  std::vector<Matrix<Rational>> gens;
  const auto j = eta_matrix();
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = a; b < 4; ++b) {
      Matrix<Rational> s(4, 4);
      s(a, b) = s(b, a) = Rational(1);
      const auto js = j * s;
      Matrix<Rational> x(5, 5);
      for (std::size_t r1 = 0; r1 < 4; ++r1)
        for (std::size_t c1 = 0; c1 < 4; ++c1) x(r1, c1) = js(r1, c1);
      gens.push_back(x);
      r.generators.push_back("sp: J*S(" + std::to_string(a + 1) + "," + std::to_string(b + 1) + ")");
    }
  for (std::size_t a = 0; a < 4; ++a) {
    Matrix<Rational> x(5, 5);
    x(4, a) = Rational(1);
    gens.push_back(x);
    r.generators.push_back("shear x = e" + std::to_string(a + 1));
  }
  Matrix<Rational> flat(gens.size(), 25);
  for (std::size_t k = 0; k < gens.size(); ++k) {
    Matrix<RatFunc> m(5, 5);
    for (std::size_t a = 0; a < 5; ++a)
      for (std::size_t b = 0; b < 5; ++b) {
        m(a, b) = (a == b ? RatFunc(1) : RatFunc()) + eps * RatFunc(gens[k](a, b));
        flat(k, a * 5 + b) = gens[k](a, b);
      }
    const auto diff = pullback_linear(t4r, m.transpose()) - t4r;
    bool ok = true;
    for (const auto& [idx, v] : diff.terms()) {
      const auto cs = v.num().coefficients_in(0);
      if (cs.size() > 1 && !cs[1].is_zero()) ok = false;
      if (!cs.empty() && !cs[0].is_zero()) ok = false;
    }
    r.first_order_ok.push_back(ok);
  }
  r.independent = rank(flat);

  const std::vector<std::vector<Rational>> dirs = {
      {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {1, 0, 1, 0}, {1, 1, 0, 0}, {0, 1, 0, 1}, {1, 2, 3, 4}};
  const std::vector<Rational> zero(4);
  r.transvections_exact = true;
  for (const auto& v : dirs)
    r.transvections_exact = r.transvections_exact && preserved(stabilizer_element(transvection(v, Rational(3)), zero));
  r.shears_exact = true;
  for (const auto& x : dirs)
    r.shears_exact = r.shears_exact && preserved(stabilizer_element(Matrix<Rational>::identity(4), x));

  auto bad = Matrix<Rational>::identity(4);
  bad(0, 0) = Rational(2);
  bad(2, 2) = Rational(1, 2);
  Matrix<RatFunc> inf(5, 5);
  for (std::size_t a = 0; a < 5; ++a) inf(a, a) = RatFunc(1);
  inf(0, 0) += eps;
  inf(2, 2) -= eps;
  r.negative_control_detected = !preserved(stabilizer_element(bad, dirs[7])) &&
                                !(pullback_linear(t4r, inf.transpose()) - t4r).is_zero();

  r.all_ok = r.generators.size() == 14 && r.independent == 14 && r.transvections_exact && r.shears_exact &&
             r.negative_control_detected &&
             std::all_of(r.first_order_ok.begin(), r.first_order_ok.end(), [](bool b) { return b; });
  return r;
}

}  // namespace hamforms
