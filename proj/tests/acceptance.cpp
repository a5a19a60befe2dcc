// Acceptance run: one PASS/FAIL line per criterion.
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "hamforms/classify.hpp"
#include "hamforms/congruence.hpp"
#include "hamforms/errors.hpp"
#include "hamforms/transforms.hpp"
#include "support.hpp"

using namespace hamforms;
using testsupport::u;
using RF = AltForm<RatFunc>;
using QF = AltForm<Rational>;

namespace {

struct Outcome {
  bool pass = false;
  // Failure traced to a misprint; reported as FAIL but not counted as a regression.
  bool known_erratum = false;
  std::vector<std::string> notes;
};

bool all_zero(const std::vector<RatFunc>& v) {
  return std::all_of(v.begin(), v.end(), [](const RatFunc& x) { return x.is_zero(); });
}

OmegaForm omega_two(const RatFunc& a12, const RatFunc& b1, const RatFunc& b2) {
  RF om(3, 4);
  om.set({1, 2, 3}, RatFunc(1));
  om.set({1, 2, 4}, a12);
  om.set({1, 3, 4}, b1);
  om.set({2, 3, 4}, b2);
  return {2, om};
}

const VarNames& n2_names() {
  static const VarNames names = [] {
    VarNames v;
    for (std::size_t k = 0; k < kParamBase; ++k) v.push_back("u" + std::to_string(k + 1));
    v.insert(v.end(), {"A12", "B1", "B2"});
    return v;
  }();
  return names;
}

Matrix<Rational> random_symplectic(Lcg& rng) {
  auto c = Matrix<Rational>::identity(4);
  for (int k = 0; k < 4; ++k) {
    std::vector<Rational> v;
    for (int i = 0; i < 4; ++i) v.push_back(Rational(rng.uniform(-2, 2)));
    c = c * transvection(v, rng.nonzero_rational(3));
  }
  return c;
}

Outcome flux_n2() {
  Outcome o;
  const RatFunc a12 = parameter(0), b1 = parameter(1), b2 = parameter(2);
  const auto pair = phi(omega_two(a12, b1, b2));
  o.pass = pair.flux()[0] == a12 * u(1) - b2 && pair.flux()[1] == a12 * u(2) + b1;
  o.notes.push_back("V1 = " + pair.flux()[0].to_string(&n2_names()) + ", V2 = " + pair.flux()[1].to_string(&n2_names()));
  return o;
}

Outcome table_n2() {
  Outcome o;
  const RatFunc a12 = parameter(0), b1 = parameter(1), b2 = parameter(2);
  const auto m = congruence_matrix(omega_two(a12, b1, b2));
  auto p = [](int j, int k) { return plucker_symbol(j, k, 4); };
  std::vector<RatFunc> rows(4);
  const auto idx = increasing_tuples(2, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t c = 0; c < idx.size(); ++c) rows[i] += m(i, c) * p(idx[c][0], idx[c][1]);
  // The four printed equations, each as one row of the matrix up to sign.
  const std::vector<RatFunc> printed = {p(1, 3) + a12 * p(1, 4) - b2 * p(3, 4), p(2, 3) + a12 * p(2, 4) + b1 * p(3, 4),
                                        p(1, 2) - b1 * p(1, 4) - b2 * p(2, 4),
                                        a12 * p(1, 2) + b1 * p(1, 3) + b2 * p(2, 3)};
  const bool eqs = printed[0] == -rows[1] && printed[1] == rows[0] && printed[2] == rows[2] && printed[3] == rows[3];
  const bool lines = rows[0] == p(2, 3) + a12 * p(2, 4) + b1 * p(3, 4) &&
                     rows[1] == -p(1, 3) - a12 * p(1, 4) + b2 * p(3, 4) &&
                     rows[2] == p(1, 2) - b1 * p(1, 4) - b2 * p(2, 4) &&
                     rows[3] == a12 * p(1, 2) + b1 * p(1, 3) + b2 * p(2, 3);
  const auto rk = congruence_rank(m);
  bool cert = rk.certificates.size() == 1;
  if (cert) {
    const auto& y = rk.certificates[0];
    // Multipliers on the printed equations, which are rows 2 (negated), 1, 3, 4.
    const std::vector<RatFunc> on_printed = {-y[1], y[0], y[2], y[3]};
    cert = on_printed[0] == b1 && on_printed[1] == b2 && on_printed[2] == a12 && on_printed[3] == RatFunc(-1);
    std::string s = "certificate on the printed equations: (";
    for (std::size_t k = 0; k < 4; ++k) s += (k ? ", " : "") + on_printed[k].to_string(&n2_names());
    o.notes.push_back(s + ")");
  }
  o.notes.push_back("rank " + std::to_string(rk.rank));
  o.pass = eqs && lines && rk.rank == 3 && cert;
  return o;
}

Outcome quadric() {
  Outcome o;
  const RatFunc b1 = parameter(1), b2 = parameter(2);
  auto p = [](int j, int k) { return plucker_symbol(j, k, 4); };
  const auto cut = quadric_cut_n2(omega_two(parameter(0), b1, b2));
  o.pass = cut == p(3, 4) * (p(1, 2) - b1 * p(1, 4) - b2 * p(2, 4));
  return o;
}

Outcome pfaffian_n4() {
  Outcome o;
  const auto d = symbolic_data(4);
  const auto g = build_metric(RF::basis(4, {1, 2, 3}), d.g0, true);
  auto G = [&](int i, int j) { return d.g0.at({i, j}); };
  const RatFunc u5 = u(5);
  const RatFunc display = u5 * (G(1, 4) * u(1) + G(2, 4) * u(2) + G(3, 4) * u(3) +
                                (G(1, 2) * G(3, 4) - G(1, 3) * G(2, 4) + G(1, 4) * G(2, 3)) * u5);
  const bool pf_ok = pfaffian(g) == display;
  o.notes.push_back(std::string("Pf display ") + (pf_ok ? "matches" : "differs"));

  // The printed g♯, in terms of the metric entries g_ij.
  auto e = [&](int i, int j) { return g.at(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)); };
  Matrix<RatFunc> printed(4, 4);
  const std::vector<std::vector<RatFunc>> rows = {{RatFunc(), -e(3, 4), e(2, 4), e(2, 3)},
                                                  {e(3, 4), RatFunc(), -e(1, 4), e(1, 3)},
                                                  {-e(2, 4), e(1, 4), RatFunc(), -e(1, 2)},
                                                  {e(2, 3), -e(1, 3), e(1, 2), RatFunc()}};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) printed(i, j) = rows[i][j];
  const auto adj = pfaffian_adjugate(g).to_matrix();
  std::size_t same = 0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      if (adj(i, j) == printed(i, j)) {
        ++same;
      } else {
        o.notes.push_back("entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "): printed " +
                          printed(i, j).to_string(&d.names) + ", computed " + adj(i, j).to_string(&d.names));
      }
    }
  o.notes.push_back(std::to_string(same) + "/16 entries agree with the printed matrix");
  const auto pfI = pfaffian(g) * Matrix<RatFunc>::identity(4);
  const bool identity_ok = g.to_matrix() * adj == pfI;
  o.notes.push_back(std::string("g * adjugate = Pf * I: ") + (identity_ok ? "yes" : "no"));
  const bool printed_skew = printed == RatFunc(-1) * printed.transpose();
  const bool printed_identity = g.to_matrix() * printed == pfI;
  o.notes.push_back(std::string("printed matrix skew: ") + (printed_skew ? "yes" : "no") +
                    ", printed g * g# = Pf * I: " + (printed_identity ? "yes" : "no"));
  o.pass = pf_ok && identity_ok && same == 16;
  // Only (1,4) differs and the printed value is inconsistent on its own terms.
  o.known_erratum = !o.pass && pf_ok && identity_ok && same == 15 && !(adj(0, 3) == printed(0, 3)) && !printed_skew &&
                    !printed_identity;
  if (o.known_erratum) o.notes.push_back("printed (1,4) entry is a sign misprint; the computed adjugate is proven by g * g# = Pf * I");
  return o;
}

Outcome table_n4() {
  Outcome o;
  const auto d = symbolic_data(4);
  const HamPair pair(4, RF::basis(4, {1, 2, 3}), d.g0, d.A, d.B);
  const auto om = phi_inv(pair);
  std::ifstream in(HAMFORMS_TEST_DATA "/n4_congruence_table.txt");
  if (!in) {
    o.notes.push_back("cannot open the printed table");
    return o;
  }
  const auto printed = read_table(in, d.names);
  const auto bad = table_mismatches(printed, congruence_matrix(om));
  // Recorded misprints: g⁰₁₄ and g⁰₂₃ trade places in these cells.
  const std::vector<std::pair<std::size_t, std::string>> ledger = {{1, "p45"}, {2, "p35"}, {3, "p25"},
                                                                   {4, "p15"}, {5, "p14"}, {5, "p23"}};
  const auto labels = plucker_labels(6);
  bool listed = bad.size() == ledger.size();
  for (std::size_t k = 0; k < bad.size(); ++k) {
    const bool in_ledger = std::any_of(ledger.begin(), ledger.end(), [&](const auto& c) {
      return c.first == bad[k].row + 1 && c.second == labels[bad[k].col];
    });
    listed = listed && in_ledger;
    o.notes.push_back("row du" + std::to_string(bad[k].row + 1) + ", " + labels[bad[k].col] + ": printed " +
                      bad[k].expected.to_string(&d.names) + ", computed " + bad[k].actual.to_string(&d.names) +
                      (in_ledger ? " [in erratum ledger]" : " [NOT in ledger]"));
  }
  o.notes.push_back(std::to_string(90 - bad.size()) + "/90 cells agree");
  const bool hom = all_zero(annihilation_check(om, pair, true));
  const bool aff = all_zero(annihilation_check(om, pair, false));
  o.notes.push_back(std::string("annihilation identically zero: homogeneous ") + (hom ? "yes" : "no") +
                    ", affine " + (aff ? "yes" : "no"));
  o.pass = listed && hom && aff;
  return o;
}

Outcome compat_identities() {
  Outcome o;
  Lcg rng(2024);
  std::size_t good = 0, total = 0;
  for (int n : {2, 4})
    for (int k = 0; k < 20; ++k, ++total) good += check_compat(testsupport::random_pair(rng, n)).all_zero ? 1 : 0;
  o.notes.push_back(std::to_string(good) + "/" + std::to_string(total) + " symbolic pairs at N=2,4");
  std::size_t good6 = 0;
  for (int k = 0; k < 20; ++k) {
    const auto r = check_compat_sampled(testsupport::random_pair(rng, 6, 2), 20, 1000 + static_cast<std::uint64_t>(k));
    good6 += r.all_zero && r.samples == 20 ? 1 : 0;
  }
  o.notes.push_back(std::to_string(good6) + "/20 pairs at N=6, 20 points each");
  o.pass = good == total && good6 == 20;
  return o;
}

Outcome round_trips() {
  Outcome o;
  Lcg rng(77);
  for (int n : {2, 4, 6}) {
    std::size_t a = 0, b = 0;
    for (int k = 0; k < 20; ++k) {
      const auto pair = testsupport::random_pair(rng, n, 2);
      a += phi(phi_inv(pair)) == pair ? 1 : 0;
      for (;;) {
        const OmegaForm om{n, testsupport::lift(testsupport::random_form(rng, 3, n + 2, 2))};
        HamPair back;
        try {
          back = phi(om);
        } catch (const DegenerateMetric&) {
          continue;
        }
        b += phi_inv(back) == om ? 1 : 0;
        break;
      }
    }
    o.notes.push_back("N=" + std::to_string(n) + ": " + std::to_string(a) + "/20 and " + std::to_string(b) + "/20");
    o.pass = (n == 2 || o.pass) && a == 20 && b == 20;
  }
  return o;
}

Outcome exchange() {
  Outcome o;
  Lcg rng(88);
  std::size_t ok = 0, done = 0, skipped = 0;
  while (done < 10) {
    const auto pair = testsupport::random_pair(rng, 4);
    ExchangeResult x;
    try {
      x = apply_xt_exchange(pair);
    } catch (const DegenerateImage&) {
      ++skipped;
      continue;
    }
    ++done;
    const bool swap = phi_inv(x.pair).omega == pullback_linear(phi_inv(pair).omega, exchange_matrix(4));
    const bool twice = apply_xt_exchange(x.pair, false).pair == pair;
    ok += swap && twice && x.metric_identity && x.inverse_identity ? 1 : 0;
  }
  o.notes.push_back(std::to_string(ok) + "/10 pairs (" + std::to_string(skipped) + " degenerate images redrawn)");
  o.pass = ok == 10;
  return o;
}

Outcome projective() {
  Outcome o;
  Lcg rng(99);
  for (int n : {2, 4}) {
    std::size_t ok = 0, done = 0, skipped = 0;
    while (done < 10) {
      const auto pair = testsupport::random_pair(rng, n);
      const auto a = testsupport::random_invertible(rng, static_cast<std::size_t>(n + 1), 2);
      try {
        ok += apply_projective(pair, {a}).metric_conformal ? 1 : 0;
        ++done;
      } catch (const DegenerateImage&) {
        ++skipped;
      }
    }
    o.notes.push_back("N=" + std::to_string(n) + ": " + std::to_string(ok) + "/10 maps (" + std::to_string(skipped) +
                      " degenerate images redrawn)");
    o.pass = (n == 2 || o.pass) && ok == 10;
  }
  return o;
}

Outcome q_pfaffian() {
  Outcome o;
  Lcg rng(10);
  std::size_t rel = 0, inv = 0;
  std::vector<AltForm<Rational>> thetas;
  for (int k = 0; k < 50; ++k) {
    const auto theta = symplectic_split(testsupport::random_form(rng, 2, 4, 5)).theta;
    rel += q_form(theta) == Rational(2) * pfaffian(SkewMatrix<Rational>::from_form(theta)) ? 1 : 0;
    thetas.push_back(theta);
  }
  for (int k = 0; k < 20; ++k) {
    const auto c = random_symplectic(rng);
    const auto& theta = thetas[static_cast<std::size_t>(k)];
    inv += q_form(pullback_linear(theta, c)) == q_form(theta) ? 1 : 0;
  }
  o.notes.push_back(std::to_string(rel) + "/50 Q = 2 Pf, " + std::to_string(inv) + "/20 invariant");
  o.pass = rel == 50 && inv == 20;
  return o;
}

Outcome canonical_system() {
  Outcome o;
  const RatFunc te = parameter(0), t13 = parameter(1);
  const RF a = te * eta_form<RatFunc>() + RF::basis(4, {1, 3}, t13) + RF::basis(4, {2, 4});
  std::vector<RatFunc> b = {parameter(2), parameter(3), parameter(4), parameter(5)};
  bool ok = true;
  for (const auto& bv : {std::vector<RatFunc>(4), b}) {
    const HamPair pair(4, RF(3, 4), eta_form<RatFunc>(), a, bv);
    const auto jac = flux_jacobian(pair);
    Matrix<RatFunc> expect(4, 4);
    expect(0, 0) = te;
    expect(0, 3) = RatFunc(-1);
    expect(1, 1) = te;
    expect(1, 2) = t13;
    expect(2, 1) = RatFunc(1);  // u²ₓ, not u²
    expect(2, 2) = te;
    expect(3, 0) = -t13;
    expect(3, 3) = te;
    ok = ok && jac == expect;
  }
  o.pass = ok;
  o.notes.push_back("third row: u3_t = u2_x + theta_eta u3_x");
  return o;
}

Outcome dimensions() {
  Outcome o;
  o.pass = true;
  for (int n : {2, 4, 6, 8}) {
    const auto d = dimension_audit(n);
    const bool ok = d.omega_split_ok && d.tilde_T_split_ok && d.tilde_A_split_ok && d.stored_counts_ok;
    o.notes.push_back("N=" + std::to_string(n) + ": " + std::to_string(d.omega) + " = " + std::to_string(d.tilde_T) +
                      " + " + std::to_string(d.A) + " + " + std::to_string(d.B));
    o.pass = o.pass && ok;
  }
  return o;
}

Outcome stabilizer() {
  Outcome o;
  const auto s = stabilizer_audit(4);
  o.notes.push_back(std::to_string(std::count(s.first_order_ok.begin(), s.first_order_ok.end(), true)) + "/" +
                    std::to_string(s.generators.size()) + " directions, " + std::to_string(s.independent) +
                    " independent; negative control " + (s.negative_control_detected ? "detected" : "missed"));
  o.pass = s.all_ok;
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"N=2 flux reproduction", flux_n2},
      {"N=2 congruence table and dependency", table_n2},
      {"Plucker quadric factorization", quadric},
      {"N=4 Pfaffian and adjugate", pfaffian_n4},
      {"N=4 congruence table", table_n4},
      {"compatibility identities", compat_identities},
      {"bijection round trips", round_trips},
      {"x<->t exchange", exchange},
      {"projective conformal law", projective},
      {"Q-Pfaffian relation", q_pfaffian},
      {"N=4 canonical system", canonical_system},
      {"dimension audit", dimensions},
      {"stabilizer audit", stabilizer},
  };
  int regressions = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o.notes.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream t;
    t.precision(2);
    t << std::fixed << secs;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << k + 1 << ": " << criteria[k].first << " (" << t.str()
              << "s)" << (o.known_erratum ? " [misprint in the printed formula]" : "") << "\n";
    for (const auto& n : o.notes) std::cout << "     " << n << "\n";
    if (!o.pass && !o.known_erratum) ++regressions;
  }
  return regressions == 0 ? 0 : 1;
}
