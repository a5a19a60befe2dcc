#include "doctest.h"

#include "hamforms/transforms.hpp"
#include "support.hpp"

using namespace hamforms;
using testsupport::u;
using QF = AltForm<Rational>;

namespace {

HamPair n2_canonical() { return HamPair(2, QF(3, 2), QF::basis(2, {1, 2}), QF::basis(2, {1, 2}), {1, 0}); }

Matrix<RatFunc> block_diag_one(const Matrix<Rational>& b) {
  const std::size_t n = b.rows();
  Matrix<RatFunc> m(n + 1, n + 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = RatFunc(b(i, j));
  m(n, n) = RatFunc(1);
  return m;
}

ReciprocalMap identity_reciprocal(int n) {
  ReciprocalMap r;
  r.alpha.assign(static_cast<std::size_t>(n), Rational(0));
  r.beta_i.assign(static_cast<std::size_t>(n), Rational(0));
  return r;
}

}  // namespace

TEST_CASE("projective identity and translations") {
  const HamPair p = n2_canonical();
  const auto id = apply_projective(p, {Matrix<Rational>::identity(3)});
  CHECK(id.pair == p);
  CHECK(id.denominator == RatFunc(1));
  CHECK(id.metric_conformal);
  CHECK(id.covector_conformal);

  Lcg rng(70);
  const HamPair q = testsupport::random_pair(rng, 4);
  Matrix<Rational> t = Matrix<Rational>::identity(5);
  t(0, 4) = Rational(2);
  t(2, 4) = Rational(-1);
  const auto tr = apply_projective(q, {t});
  CHECK(tr.denominator == RatFunc(1));
  CHECK(tr.metric_conformal);
  // A translation keeps T and moves the constant part: ḡ(ũ) = g(ũ − b).
  CHECK(tr.pair.T() == q.T());
  const std::vector<RatFunc> shifted{u(1) - RatFunc(2), u(2), u(3) + RatFunc(1), u(4)};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      CHECK(tr.pair.metric().at(i, j) == substitute(q.metric().at(i, j), shifted));
}

TEST_CASE("projective scaling of the N=2 canonical pair") {
  const HamPair p = n2_canonical();
  Matrix<Rational> a = Matrix<Rational>::identity(3);
  a(0, 0) = a(1, 1) = Rational(3);
  const auto r = apply_projective(p, {a});
  CHECK(r.denominator == RatFunc(1));
  CHECK(r.metric_conformal);
  CHECK(r.covector_conformal);
  CHECK(r.pair.T().is_zero());
  CHECK(r.pair.g0().at({1, 2}) == RatFunc(Rational(1) / Rational(9)));
  CHECK(check_compat(r.pair).all_zero);
}

TEST_CASE("projective maps: conformal law, Ω action and composition") {
  Lcg rng(71);
  int done = 0, composed = 0;
  for (int n : {2, 4})
    for (int t = 0; t < 4; ++t) {
      const HamPair p = testsupport::random_pair(rng, n);
      const auto a = testsupport::random_invertible(rng, static_cast<std::size_t>(n + 1), 2);
      ProjectiveResult r;
      try {
        r = apply_projective(p, {a});
      } catch (const DegenerateImage&) {
        continue;
      }
      CHECK(r.metric_conformal);
      CHECK(r.covector_conformal);
      CHECK(check_compat(r.pair).all_zero);
      ++done;

      // The same action on Ω: pullback by diag(a⁻¹, 1).
      const auto b = inverse(a);
      const auto om = pullback_linear(phi_inv(p).omega, block_diag_one(b));
      CHECK(phi_inv(r.pair).omega == om);

      const auto a2 = testsupport::random_invertible(rng, static_cast<std::size_t>(n + 1), 2);
      try {
        const auto step = apply_projective(p, {a2});
        const auto twice = apply_projective(step.pair, {a});
        const auto once = apply_projective(p, {a * a2});
        CHECK(twice.pair == once.pair);
        ++composed;
      } catch (const DegenerateImage&) {
      }
    }
  CHECK(done >= 6);
  CHECK(composed >= 4);
}

TEST_CASE("x<->t exchange") {
  const auto r = apply_xt_exchange(n2_canonical());
  CHECK(r.pair == HamPair(2, QF(3, 2), QF::basis(2, {1, 2}), QF::basis(2, {1, 2}), {-1, 0}));
  CHECK(r.metric_identity);
  CHECK(r.inverse_identity);

  Lcg rng(72);
  int done = 0;
  for (int t = 0; t < 5; ++t) {
    const HamPair p = testsupport::random_pair(rng, 4);
    ExchangeResult x;
    try {
      x = apply_xt_exchange(p);
    } catch (const DegenerateImage&) {
      continue;
    }
    CHECK(x.metric_identity);
    CHECK(x.inverse_identity);
    CHECK(phi_inv(x.pair).omega == pullback_linear(phi_inv(p).omega, exchange_matrix(4)));
    CHECK(apply_xt_exchange(x.pair, false).pair == p);
    ++done;
  }
  CHECK(done >= 3);

  // A = 0 makes the exchanged metric vanish.
  const HamPair null(2, QF(3, 2), QF::basis(2, {1, 2}), QF(2, 2), {1, 0});
  CHECK_THROWS_AS(apply_xt_exchange(null), DegenerateImage);
}

TEST_CASE("reciprocal maps") {
  const HamPair p = n2_canonical();
  const auto id = apply_reciprocal(p, identity_reciprocal(2));
  CHECK(id.pair == p);
  CHECK(id.factors.size() == 1);
  CHECK(id.factorization_ok);

  ReciprocalMap swap = identity_reciprocal(2);
  swap.alpha0 = 0;
  swap.beta = 1;
  swap.c = 1;
  swap.d = 0;
  const auto sw = apply_reciprocal(p, swap);
  CHECK(sw.pair == apply_xt_exchange(p).pair);
  CHECK(sw.factorization_ok);

  Lcg rng(73);
  int done = 0;
  for (int t = 0; t < 40 && done < 8; ++t) {
    ReciprocalMap r;
    for (int i = 0; i < 2; ++i) {
      r.alpha.push_back(Rational(rng.uniform(-2, 2)));
      r.beta_i.push_back(Rational(rng.uniform(-2, 2)));
    }
    r.alpha0 = Rational(rng.uniform(-2, 2));
    r.beta = Rational(rng.uniform(-2, 2));
    r.c = Rational(rng.uniform(-2, 2));
    r.d = Rational(rng.uniform(-2, 2));
    try {
      const auto res = apply_reciprocal(p, r);
      CHECK(res.factorization_ok);
      CHECK(res.direct_agrees);
      CHECK(res.compatible);
      CHECK(check_compat(res.pair).all_zero);
      ++done;
    } catch (const DegenerateImage&) {
    } catch (const SingularMatrix&) {
    }
  }
  CHECK(done >= 5);

  // N=4 with c = 0 exercises the extra exchange.
  const HamPair q = testsupport::random_pair(rng, 4);
  ReciprocalMap r4 = identity_reciprocal(4);
  r4.alpha = {1, 0, -1, 2};
  r4.beta_i = {0, 1, 0, 0};
  r4.alpha0 = 2;
  r4.beta = 1;
  r4.c = 0;
  r4.d = 1;
  try {
    const auto res = apply_reciprocal(q, r4);
    CHECK(res.factorization_ok);
    CHECK(res.direct_agrees);
    CHECK(res.compatible);
    CHECK(res.factors.size() == 4);
  } catch (const DegenerateImage&) {
  }
}
