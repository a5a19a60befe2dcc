#include "hamforms/congruence.hpp"

#include <algorithm>
#include <sstream>

#include "hamforms/errors.hpp"
#include "hamforms/lcg.hpp"

namespace hamforms {

PluckerVector<RatFunc> plucker_line(const HamPair& pair) {
  const int n = pair.N();
  std::vector<RatFunc> p(static_cast<std::size_t>(n + 2)), q(static_cast<std::size_t>(n + 2));
  for (int i = 0; i < n; ++i) {
    p[i] = RatFunc::variable(static_cast<std::size_t>(i));
    q[i] = pair.flux()[i];
  }
  p[n] = RatFunc(1);
  q[n + 1] = RatFunc(1);
  return PluckerVector<RatFunc>::from_points(p, q);
}

HomogeneousLine plucker_line_homogeneous(const HamPair& pair) {
  const int n = pair.N();
  const auto nn = static_cast<std::size_t>(n);
  const auto G = build_metric(pair.T(), pair.g0(), true);
  const auto w = build_covector(pair.A(), pair.B(), true);
  const auto adj = pfaffian_adjugate(G);
  std::vector<RatFunc> p(nn + 2), q(nn + 2);
  for (std::size_t i = 0; i <= nn; ++i) p[i] = RatFunc::variable(i);
  for (std::size_t i = 0; i < nn; ++i)
    for (std::size_t j = 0; j < nn; ++j) q[i] += adj.at(i, j) * w[j];
  q[nn + 1] = pfaffian(G);

  HomogeneousLine out;
  out.p = PluckerVector<RatFunc>::from_points(p, q);
  // Largest power of u^{N+1} dividing every entry.
  unsigned common = ~0u;
  for (const auto& e : out.p.entries()) {
    if (e.is_zero()) continue;
    const auto mins = e.num().min_exponents();
    common = std::min(common, nn < mins.size() ? mins[nn] : 0u);
  }
  if (common == ~0u) common = 0;
  out.removed_power = common;
  if (common > 0) {
    Poly::Exponents m(nn + 1, 0);
    m[nn] = common;
    for (auto& e : out.p.entries())
      if (!e.is_zero()) e = RatFunc(e.num().divided_by_monomial(m), e.den());
  }
  // Homogeneity in u¹..u^{N+1}.
  int deg = -2;
  for (const auto& e : out.p.entries()) {
    if (e.is_zero()) continue;
    for (const auto& t : e.num().terms()) {
      int d = 0;
      for (std::size_t k = 0; k < std::min(t.exp.size(), nn + 1); ++k) d += static_cast<int>(t.exp[k]);
      if (deg == -2) deg = d;
      else if (deg != d) deg = -1;
    }
  }
  out.degree = deg == -2 ? -1 : deg;
  return out;
}

Matrix<RatFunc> congruence_matrix(const OmegaForm& om) {
  const int m = om.N + 2;
  if (om.omega.dim() != m || om.omega.degree() != 3) throw DimensionMismatch("Ω must be a three-form on K^{N+2}");
  const auto pairs = increasing_tuples(2, m);
  Matrix<RatFunc> out(static_cast<std::size_t>(m), pairs.size());
  for (int i = 1; i <= m; ++i)
    for (std::size_t c = 0; c < pairs.size(); ++c) {
      const int j = pairs[c][0], k = pairs[c][1];
      if (i != j && i != k) out(static_cast<std::size_t>(i - 1), c) = om.omega.at({i, j, k});
    }
  return out;
}

std::vector<RatFunc> annihilation_check(const OmegaForm& om, const HamPair& pair, bool homogeneous) {
  if (om.N != pair.N()) throw DimensionMismatch("Ω and pair have different N");
  if (homogeneous) return contract_bivector(om.omega, plucker_line_homogeneous(pair).p);
  return contract_bivector(om.omega, plucker_line(pair));
}

SampledAnnihilation annihilation_check_sampled(const OmegaForm& om, const HamPair& pair, std::size_t samples,
                                               std::uint64_t seed) {
  const int n = pair.N();
  if (om.N != n) throw DimensionMismatch("Ω and pair have different N");
  const auto omega = om.omega.map([](const RatFunc& c) { return c.to_rational(); });
  SampledAnnihilation r;
  r.seed = seed;
  Lcg rng(seed);
  std::size_t attempts = 0;
  while (r.samples < samples && attempts < samples * 20) {
    ++attempts;
    std::vector<Rational> pt(static_cast<std::size_t>(n));
    for (auto& x : pt) x = rng.rational(12);
    std::vector<Rational> p(static_cast<std::size_t>(n + 2)), q(static_cast<std::size_t>(n + 2));
    try {
      for (int i = 0; i < n; ++i) q[i] = evaluate(pair.flux()[i], pt);
    } catch (const PoleError&) {
      ++r.skipped_poles;
      continue;
    }
    for (int i = 0; i < n; ++i) p[i] = pt[i];
    p[n] = Rational(1);
    q[n + 1] = Rational(1);
    const auto res = contract_bivector(omega, PluckerVector<Rational>::from_points(p, q));
    if (std::any_of(res.begin(), res.end(), [](const Rational& x) { return !x.is_zero(); })) ++r.failures;
    ++r.samples;
  }
  r.all_zero = r.samples == samples && r.failures == 0;
  return r;
}

RankReport congruence_rank(const Matrix<RatFunc>& m) {
  RankReport r;
  r.rank = rank(m);
  for (auto y : null_space(m.transpose())) {
    std::size_t last = y.size();
    while (last > 0 && y[last - 1].is_zero()) --last;
    if (last == 0) continue;
    const RatFunc scale = RatFunc(-1) / y[last - 1];
    for (auto& x : y) x = x * scale;
    r.certificates.push_back(std::move(y));
  }
  return r;
}

RatFunc plucker_symbol(int j, int k, int dim) {
  if (j == k) return RatFunc();
  if (j > k) return -plucker_symbol(k, j, dim);
  return RatFunc::variable(kPluckerBase + pair_position(j, k, dim));
}

RatFunc quadric_cut_n2(const OmegaForm& om) {
  if (om.N != 2) throw DimensionMismatch("quadric cut is defined for N = 2");
  auto p = [](int j, int k) { return plucker_symbol(j, k, 4); };
  const auto& w = om.omega;
  // Row 1: ω₁₂₃p²³ + ω₁₂₄p²⁴ + ω₁₃₄p³⁴ = 0; row 2: ω₂₁₃p¹³ + ω₂₁₄p¹⁴ + ω₂₃₄p³⁴ = 0.
  const RatFunc c23 = w.at({1, 2, 3}), c13 = w.at({2, 1, 3});
  if (c23.is_zero() || c13.is_zero()) throw SingularMatrix("first two equations cannot be solved for p¹³, p²³");
  const RatFunc p23 = -(w.at({1, 2, 4}) * p(2, 4) + w.at({1, 3, 4}) * p(3, 4)) / c23;
  const RatFunc p13 = -(w.at({2, 1, 4}) * p(1, 4) + w.at({2, 3, 4}) * p(3, 4)) / c13;
  return p(1, 2) * p(3, 4) - p13 * p(2, 4) + p(1, 4) * p23;
}

Matrix<RatFunc> normalize_row_signs(const Matrix<RatFunc>& m) {
  Matrix<RatFunc> out = m;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::size_t j = 0;
    while (j < m.cols() && m(i, j).is_zero()) ++j;
    if (j == m.cols() || m(i, j).num().leading_coeff().sign() > 0) continue;
    for (std::size_t k = 0; k < m.cols(); ++k) out(i, k) = -m(i, k);
  }
  return out;
}

std::vector<std::string> plucker_labels(int dim) {
  std::vector<std::string> out;
  for (const auto& idx : increasing_tuples(2, dim)) {
    std::string s = "p" + std::to_string(idx[0]);
    if (dim >= 10) s += "_";
    s += std::to_string(idx[1]);
    out.push_back(s);
  }
  return out;
}

std::string format_table(const Matrix<RatFunc>& m, const VarNames* names) {
  const auto labels = plucker_labels(static_cast<int>(m.rows()));
  std::vector<std::vector<std::string>> cells(m.rows() + 1);
  cells[0].push_back("");
  for (const auto& l : labels) cells[0].push_back(l);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    cells[i + 1].push_back("du" + std::to_string(i + 1));
    for (std::size_t j = 0; j < m.cols(); ++j) cells[i + 1].push_back(m(i, j).to_string(names));
  }
  std::vector<std::size_t> width(m.cols() + 1, 0);
  for (const auto& row : cells)
    for (std::size_t j = 0; j < row.size(); ++j) width[j] = std::max(width[j], row[j].size());
  std::ostringstream os;
  for (const auto& row : cells) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      os << std::string(width[j] - row[j].size(), ' ') << row[j];
      os << (j + 1 < row.size() ? "  " : "\n");
    }
  }
  return os.str();
}

std::string format_table_csv(const Matrix<RatFunc>& m, const VarNames* names) {
  std::ostringstream os;
  os << "row";
  for (const auto& l : plucker_labels(static_cast<int>(m.rows()))) os << ',' << l;
  os << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << "du" << (i + 1);
    for (std::size_t j = 0; j < m.cols(); ++j) os << ',' << m(i, j).to_string(names);
    os << '\n';
  }
  return os.str();
}

Matrix<RatFunc> read_table(std::istream& in, const VarNames& names) {
  std::vector<std::string> header;
  std::vector<std::vector<RatFunc>> rows;
  std::string line;
  auto entry = [&](std::string tok) {
    RatFunc sign(1);
    if (!tok.empty() && (tok[0] == '-' || tok[0] == '+')) {
      if (tok[0] == '-') sign = RatFunc(-1);
      tok.erase(0, 1);
    }
    if (tok == "0") return RatFunc();
    if (tok == "1") return sign;
    const auto it = std::find(names.begin(), names.end(), tok);
    if (it == names.end()) throw ParseError("unknown table entry '" + tok + "'");
    return sign * RatFunc::variable(static_cast<std::size_t>(it - names.begin()));
  };
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> toks;
    for (std::string t; ls >> t;) toks.push_back(t);
    if (toks.empty()) continue;
    if (header.empty()) {
      header = toks;
      continue;
    }
    if (toks.size() != header.size() + 1) throw ParseError("table row '" + toks[0] + "' has the wrong width");
    std::vector<RatFunc> row;
    for (std::size_t j = 1; j < toks.size(); ++j) row.push_back(entry(toks[j]));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("empty table");
  if (header != plucker_labels(static_cast<int>(rows.size())))
    throw ParseError("table columns are not the lexicographic p^{jk}");
  Matrix<RatFunc> m(rows.size(), header.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < header.size(); ++j) m(i, j) = rows[i][j];
  return m;
}

std::vector<CellMismatch> table_mismatches(const Matrix<RatFunc>& expected, const Matrix<RatFunc>& actual) {
  if (expected.rows() != actual.rows() || expected.cols() != actual.cols())
    throw DimensionMismatch("tables have different shapes");
  const auto a = normalize_row_signs(expected), b = normalize_row_signs(actual);
  std::vector<CellMismatch> out;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!(a(i, j) == b(i, j))) out.push_back({i, j, a(i, j), b(i, j)});
  return out;
}

}  // namespace hamforms
