#include "doctest.h"

#include "hamforms/bridge.hpp"
#include "support.hpp"

using namespace hamforms;
using testsupport::u;
using RF = AltForm<RatFunc>;
using QF = AltForm<Rational>;

namespace {

OmegaForm omega_two(const RatFunc& a12, const RatFunc& b1, const RatFunc& b2) {
  RF om(3, 4);
  om.set({1, 2, 3}, RatFunc(1));
  om.set({1, 2, 4}, a12);
  om.set({1, 3, 4}, b1);
  om.set({2, 3, 4}, b2);
  return {2, om};
}

// Ω = T̃ + A∧du^{N+2} + B∧du^{N+1}∧du^{N+2}, built from wedges only.
RF decomposition(const HamPair& p) {
  const int n = p.N(), m = n + 2;
  RF out = tilde_T(p.T(), p.g0()).extended(m);
  out += wedge(p.A().extended(m), RF::basis(m, {m}));
  RF b(1, m);
  for (int i = 1; i <= n; ++i) b.set({i}, p.B()[i - 1]);
  out += wedge(b, RF::basis(m, {n + 1, m}));
  return out;
}

}  // namespace

TEST_CASE("phi on the N=2 form") {
  const RatFunc a12 = parameter(0), b1 = parameter(1), b2 = parameter(2);
  const HamPair pair = phi(omega_two(a12, b1, b2));
  CHECK(pair.metric().at(0, 1) == RatFunc(1));
  CHECK(pair.flux()[0] == a12 * u(1) - b2);
  CHECK(pair.flux()[1] == a12 * u(2) + b1);
  CHECK(check_compat(pair).all_zero);
  CHECK_FALSE(pair.is_null_system());
}

TEST_CASE("phi: null system and degenerate metric") {
  RF t4(3, 6);
  t4.set({1, 2, 5}, RatFunc(1));
  t4.set({3, 4, 5}, RatFunc(1));
  const HamPair null = phi({4, t4});
  CHECK(null.is_null_system());
  for (const auto& v : null.flux()) CHECK(v.is_zero());

  CHECK_THROWS_AS(phi({4, RF::basis(6, {1, 2, 5})}), DegenerateMetric);
  CHECK_THROWS_AS(phi({4, RF::basis(5, {1, 2, 5})}), DimensionMismatch);
}

TEST_CASE("phi_inv examples") {
  const HamPair canon(2, QF(3, 2), QF::basis(2, {1, 2}), QF::basis(2, {1, 2}), {1, 0});
  const auto om = phi_inv(canon).omega;
  CHECK(om.at({1, 2, 3}) == RatFunc(1));
  CHECK(om.at({1, 2, 4}) == RatFunc(1));
  CHECK(om.at({1, 3, 4}) == RatFunc(1));
  CHECK(om.at({2, 3, 4}) == RatFunc(0));
  CHECK(phi(phi_inv(canon)) == canon);

  Lcg rng(60);
  auto pair = testsupport::random_pair(rng, 4);
  const HamPair no_b(4, pair.T(), pair.g0(), pair.A(), std::vector<RatFunc>(4));
  const auto ob = phi_inv(no_b).omega;
  for (int i = 1; i <= 4; ++i) CHECK(ob.at({i, 5, 6}).is_zero());
}

TEST_CASE("round trips and decomposition identity") {
  Lcg rng(61);
  for (int n : {2, 4, 6})
    for (int t = 0; t < 20; ++t) {
      const auto pair = testsupport::random_pair(rng, n);
      const OmegaForm om = phi_inv(pair);
      CHECK(phi(om) == pair);
      CHECK(phi_inv(phi(om)) == om);
      CHECK(om.omega == decomposition(pair));
      CHECK(om.omega == assemble_omega(tilde_T(pair.T(), pair.g0()), tilde_A(pair.A(), pair.B())));
    }
}

TEST_CASE("tilde_T examples") {
  CHECK(tilde_T(RF(3, 2), RF::basis(2, {1, 2})) == RF::basis(3, {1, 2, 3}));
  const RF g0 = RF::basis(4, {1, 2}) + RF::basis(4, {3, 4});
  CHECK(tilde_T(RF(3, 4), g0) == RF::basis(5, {1, 2, 5}) + RF::basis(5, {3, 4, 5}));
  Lcg rng(62);
  const RF T = testsupport::lift(testsupport::random_form(rng, 3, 4));
  CHECK(tilde_T(T, RF(2, 4)) == T.extended(5));

  // Case-by-case component rule.
  const RF gg = testsupport::lift(testsupport::random_form(rng, 2, 4));
  const RF tt = tilde_T(T, gg);
  for (int i = 1; i <= 5; ++i)
    for (int j = 1; j <= 5; ++j)
      for (int k = 1; k <= 5; ++k) {
        if (i == j || j == k || i == k) continue;
        RatFunc expect;
        if (i != 5 && j != 5 && k != 5) expect = T.at({i, j, k});
        else if (k == 5) expect = gg.at({i, j});
        else if (j == 5) expect = -gg.at({i, k});
        else expect = gg.at({j, k});
        CHECK(tt.at({i, j, k}) == expect);
      }
}

TEST_CASE("tilde_A sign convention") {
  const RatFunc a12 = parameter(0), b1 = parameter(1), b2 = parameter(2);
  const RF A = RF::basis(2, {1, 2}, a12);
  const RF tA = tilde_A(A, {b1, b2});
  CHECK(tA.at({1, 2}) == a12);
  CHECK(tA.at({1, 3}) == b1);
  CHECK(tA.at({2, 3}) == b2);
  CHECK(tA.at({3, 1}) == -b1);

  CHECK(tilde_A(RF(2, 2), {RatFunc(1), RatFunc(0)}) == RF::basis(3, {1, 3}));

  // Ã∧du^{N+2} + T̃ = Ω holds with Ã_{i,N+1} = +B_i; the opposite sign breaks it.
  const auto om = omega_two(a12, b1, b2).omega;
  const RF tT = tilde_T(RF(3, 2), RF::basis(2, {1, 2}));
  CHECK(assemble_omega(tT, tA) == om);
  const RF flipped = tilde_A(A, {-b1, -b2});
  CHECK_FALSE(assemble_omega(tT, flipped) == om);
}

TEST_CASE("dimension audit") {
  for (int n : {2, 4, 6, 8}) {
    const auto a = dimension_audit(n);
    CHECK(a.omega_split_ok);
    CHECK(a.tilde_T_split_ok);
    CHECK(a.tilde_A_split_ok);
    CHECK(a.stored_counts_ok);
  }
  const auto a4 = dimension_audit(4);
  CHECK(a4.omega == 20);
  CHECK(a4.tilde_T == 10);
  CHECK(a4.A == 6);
  CHECK(a4.B == 4);
  const auto a2 = dimension_audit(2);
  CHECK(a2.omega == 4);
  CHECK(a2.tilde_T == 1);
  CHECK(a2.A == 1);
  CHECK(a2.B == 2);
  CHECK(a2.T == 0);
  const auto a6 = dimension_audit(6);
  CHECK(a6.omega == 56);
  CHECK(a6.tilde_T == 35);
  CHECK(a6.A == 15);
  CHECK_THROWS_AS(dimension_audit(3), ValidationError);
}
