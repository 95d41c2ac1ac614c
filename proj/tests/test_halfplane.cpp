#include "doctest.h"
#include "virasoro/halfplane.hpp"

using namespace vir;

namespace {

MultiPoly A(const HalfPlaneChart& ch, int j) { return MultiPoly::var(ch.a[j]); }
MultiPoly Z(const HalfPlaneChart& ch, int i) { return MultiPoly::var(ch.z[i]); }
MultiPoly zinv(const HalfPlaneChart& ch, int i, int k = 1) { return MultiPoly(1).shift(ch.z[i], -k); }
Monomial d(int var, int k = 1) {
  Monomial m;
  m[var] = static_cast<int8_t>(k);
  return m;
}

}  // namespace

TEST_CASE("vector field coefficients b_{j,n}") {
  HalfPlaneChart ch = HalfPlaneChart::make(0, 6);
  MultiPoly a2 = A(ch, 2), a3 = A(ch, 3), a4 = A(ch, 4);
  auto bm2 = vector_field_coeffs(ch, -2, 1);
  CHECK(bm2[0] == MultiPoly(1));
  CHECK(bm2[1] == a2 * -3);
  CHECK(bm2[2] == a2 * a2 * 7 - a3 * 4);
  CHECK(bm2[3] == a2 * a2 * a2 * -15 + a2 * a3 * 19 - a4 * 5);
  auto bm1 = vector_field_coeffs(ch, -1, 2);
  CHECK(bm1[0] == MultiPoly(1));
  CHECK(bm1[1] == a2 * -2);
  CHECK(bm1[2] == a2 * a2 * 4 - a3 * 3);
  CHECK(bm1[3] == a2 * a2 * a2 * -8 + a2 * a3 * 12 - a4 * 4);
  auto b0 = vector_field_coeffs(ch, 0, 2);
  CHECK(b0[0] == MultiPoly(1));
  CHECK(b0[1] == -a2);
  CHECK(b0[2] == a2 * a2 * 2 - a3 * 2);
  auto bm3 = vector_field_coeffs(ch, -3, 1);
  CHECK(bm3[1] == a2 * -4);
  CHECK(bm3[2] == a2 * a2 * 11 - a3 * 5);
  CHECK(bm3[3] == a2 * a2 * a2 * -26 + a2 * a3 * 28 - a4 * 6);
  CHECK_THROWS_AS(vector_field_coeffs(ch, -2, 5), TruncationError);
}

TEST_CASE("displayed generators") {
  HalfPlaneChart ch = HalfPlaneChart::make(2, 6);
  MultiPoly a2 = A(ch, 2), a3 = A(ch, 3), a4 = A(ch, 4);
  DiffOperator m1 = -witt_generator(ch, 1);
  CHECK(m1.coefficient(d(ch.a[2])) == MultiPoly(1));
  CHECK(m1.coefficient(d(ch.a[3])) == a2 * 2);

  DiffOperator m0 = -witt_generator(ch, 0);
  CHECK(m0.coefficient(d(ch.z[0])) == Z(ch, 0));
  CHECK(m0.coefficient(d(ch.a[2])) == -a2);
  CHECK(m0.coefficient(d(ch.a[3])) == -(a2 * a2 * 2) + a2 * a2 * 2 - a3 * 2);

  DiffOperator mm1 = -witt_generator(ch, -1);
  for (int i = 0; i < 2; ++i) CHECK(mm1.coefficient(d(ch.z[i])) == MultiPoly(1) - a2 * Z(ch, i) * 2);
  MultiPoly c2 = a2 * a2 * 4 - a3 * 3;
  CHECK(mm1.coefficient(d(ch.a[2])) == c2);
  CHECK(mm1.coefficient(d(ch.a[3])) == c2 * a2 * 2 + a2 * a2 * a2 * -8 + a2 * a3 * 12 - a4 * 4);

  DiffOperator mm2 = -witt_generator(ch, -2);
  CHECK(mm2.coefficient(d(ch.z[1])) == zinv(ch, 1) - a2 * 3 + (a2 * a2 * 7 - a3 * 4) * Z(ch, 1));
  CHECK(mm2.coefficient(d(ch.a[2])) == a2 * a2 * a2 * -15 + a2 * a3 * 19 - a4 * 5);

  DiffOperator mm3 = -witt_generator(ch, -3);
  CHECK(mm3.coefficient(d(ch.z[0])) == zinv(ch, 0, 2) - a2 * 4 * zinv(ch, 0) + (a2 * a2 * 11 - a3 * 5) +
                                           (a2 * a2 * a2 * -26 + a2 * a3 * 28 - a4 * 6) * Z(ch, 0));
  CHECK(witt_generator(ch, 3).apply(1).is_zero());
}

TEST_CASE("Virasoro corrections") {
  HalfPlaneChart ch = HalfPlaneChart::make(1, 6);
  MultiPoly a2 = A(ch, 2), a3 = A(ch, 3), a4 = A(ch, 4), c = ch.central_charge;
  CHECK(central_term(ch, -2) == c * (a2 * a2 - a3) * Rational(1, 2));
  CHECK(central_term(ch, -3) == c * (a2 * a2 * a2 * -8 + a2 * a3 * 12 - a4 * 4) * Rational(1, 2));
  CHECK(virasoro_generator(ch, 2) == witt_generator(ch, 2));
  DiffOperator diff = virasoro_generator(ch, -2) - witt_generator(ch, -2);
  CHECK(diff.order() == 0);
  CHECK(diff.zeroth_order() == c * (a2 * a2 - a3) * Rational(1, 2));
}

TEST_CASE("small commutators from the displayed list") {
  HalfPlaneChart ch = HalfPlaneChart::make(2, 6);
  DiffOperator c = commutator_jet(ch, witt_generator(ch, 1), witt_generator(ch, -1));
  CHECK(c == restrict_jet(ch, witt_generator(ch, 0) * MultiPoly(2), c.valid()));
  DiffOperator c2 = commutator_jet(ch, witt_generator(ch, -1), witt_generator(ch, -2));
  CHECK(c2 == restrict_jet(ch, witt_generator(ch, -3), c2.valid()));
  DiffOperator c3 = commutator_jet(ch, virasoro_generator(ch, 2), virasoro_generator(ch, -2));
  DiffOperator r3 = restrict_jet(ch, virasoro_generator(ch, 0) * MultiPoly(4), c3.valid()) +
                    DiffOperator::multiplication(ch.central_charge * Rational(1, 2));
  CHECK(c3 == r3);
}

TEST_CASE("Witt and Virasoro relations with weighted spectators") {
  HalfPlaneChart ch = HalfPlaneChart::make(2, 8, true);
  std::map<int, DiffOperator> L;
  for (int n = -4; n <= 4; ++n) L[n] = virasoro_generator(ch, n);
  for (int m = -2; m <= 2; ++m) {
    for (int n = -2; n <= 2; ++n) {
      DiffOperator c = commutator_jet(ch, L[m], L[n]);
      DiffOperator r = restrict_jet(ch, L[m + n] * MultiPoly(m - n), c.valid());
      if (m == -n) r += DiffOperator::multiplication(ch.central_charge * Rational(m * (m * m - 1), 12));
      CAPTURE(m);
      CAPTURE(n);
      CHECK(c == r);
    }
  }
}

TEST_CASE("jet validity is tracked") {
  HalfPlaneChart ch = HalfPlaneChart::make(1, 10);
  DiffOperator l = witt_generator(ch, -3);
  CHECK(l.valid() == 7);
  CHECK(l.shift() == 3);
  CHECK_THROWS_AS(witt_generator(HalfPlaneChart::make(1, 3), -3), TruncationError);
}

TEST_CASE("Schwarzian connection axioms") {
  HalfPlaneChart ch = HalfPlaneChart::make(0, 6);
  MultiPoly S = schwarzian_connection(ch);
  CHECK(witt_vector_field(ch, 0).apply(S) == S * 2);
  CHECK(witt_vector_field(ch, 1).apply(S).is_zero());
  CHECK(witt_vector_field(ch, 2).apply(S) == MultiPoly(6));
  CHECK(witt_vector_field(ch, 3).apply(S).is_zero());
}

TEST_CASE("Schwarzian of the jet is S") {
  HalfPlaneChart ch = HalfPlaneChart::make(0, 5);
  ExactSeries w = ch.w().truncated(5);
  CHECK(schwarzian(w).coeff(0) == -schwarzian_connection(ch));
}

TEST_CASE("Kac weights") {
  Rational tau = make_rational(3, 2);
  CHECK(kac_weight(2, 1, tau) == make_rational(5, 8));
  CHECK(kac_weight(1, 1, make_rational(7, 3)) == 0);
  for (int p = 1; p <= 6; ++p) {
    Rational t = make_rational(p, 3);
    CHECK(kac_weight(2, 1, t) == Rational(3) * t / 4 - make_rational(1, 2));
  }
  CHECK_THROWS(kac_weight(2, 1, 0));
}

TEST_CASE("weight reduction identities") {
  HalfPlaneChart ch = HalfPlaneChart::make(3, 6);
  MultiPoly a2 = A(ch, 2), a3 = A(ch, 3), h = ch.seed_weight;
  WeightVector f = weight_symbol();
  WeightVector sumd, sum_inv_d, sumdd;
  for (int i = 0; i < 3; ++i) {
    sumd[d(ch.z[i])] = 1;
    sum_inv_d[d(ch.z[i])] = zinv(ch, i);
    for (int j = 0; j < 3; ++j) {
      Monomial m = d(ch.z[i]);
      m[ch.z[j]] = static_cast<int8_t>(m[ch.z[j]] + 1);
      sumdd[m] += 1;
    }
  }
  WeightVector l1 = add(sumd, {{Monomial{}, a2 * h * 2}}, -1);
  l1 = add(WeightVector{}, l1, -1);  // -sum d f - 2 a2 h f
  l1 = add(add(WeightVector{}, sumd, -1), {{Monomial{}, a2 * h * -2}});
  CHECK(equal_mod_euler(ch, act(ch, -1, f, false), l1));

  WeightVector l2 = add(add(add(WeightVector{}, sum_inv_d, -1), sumd, a2 * 3),
                        {{Monomial{}, (a2 * a2 * 7 - a3 * 4) * h}});
  CHECK(equal_mod_euler(ch, act(ch, -2, f, false), l2));

  WeightVector l11 = add(add(sumdd, sumd, a2 * (h * 2 + 1) * 2),
                         {{Monomial{}, h * (a2 * a2 * 4 - a3 * 3 + a2 * a2 * h * 2) * 2}});
  CHECK(equal_mod_euler(ch, act(ch, -1, act(ch, -1, f, false), false), l11));
  CHECK_FALSE(equal_mod_euler(ch, act(ch, -2, f, false), l1));
}

TEST_CASE("delta21 at generic parameters matches the two-line display") {
  for (int N : {0, 1, 2}) {
    HalfPlaneChart ch = HalfPlaneChart::make(N, 6);
    MultiPoly a2 = A(ch, 2), a3 = A(ch, 3), h = ch.seed_weight, c = ch.central_charge;
    MultiPoly tau = MultiPoly::var("tau");
    WeightVector target = bpz_target(ch, tau);
    for (int i = 0; i < N; ++i) target[d(ch.z[i])] += a2 * (h * 4 + 2 - tau * 3);
    target[Monomial{}] += h * (a2 * a2 * 8 - a3 * 6 + a2 * a2 * h * 4 - tau * (a2 * a2 * 7 - a3 * 4)) +
                          tau * c * (a3 - a2 * a2) * Rational(1, 2);
    CAPTURE(N);
    CHECK(equal_mod_euler(ch, delta21_on_symbol(ch, tau), target));
  }
}

TEST_CASE("BPZ reduction at the Kac point") {
  for (Rational kappa : {Rational(2), make_rational(8, 3), Rational(3), Rational(4)}) {
    Rational tau = 4 / kappa, h = (6 - kappa) / (2 * kappa);
    Rational c = (6 - kappa) * (3 * kappa - 8) / (2 * kappa);
    tau.canonicalize();
    h.canonicalize();
    c.canonicalize();
    CHECK(h == kac_weight(2, 1, tau));
    CHECK(c == h * (12 / tau - 8));
    for (int N : {0, 1, 2, 3}) {
      HalfPlaneChart ch = HalfPlaneChart::make(N, 6);
      ch.seed_weight = h;
      ch.central_charge = c;
      WeightVector r = euler_normal_form(ch, add(delta21_on_symbol(ch, tau), bpz_target(ch, tau), -1));
      CAPTURE(N);
      CHECK(r.empty());
      // every a-variable has dropped out of the result
      for (const auto& [k, coef] : euler_normal_form(ch, delta21_on_symbol(ch, tau)))
        for (int j = 2; j <= ch.jet_order; ++j) CHECK_FALSE(coef.uses_var(ch.a[j]));
    }
  }
  // away from the Kac point the a-dependence survives
  HalfPlaneChart ch = HalfPlaneChart::make(1, 6);
  ch.seed_weight = make_rational(1, 3);
  ch.central_charge = 0;
  WeightVector r = euler_normal_form(ch, add(delta21_on_symbol(ch, 2), bpz_target(ch, 2), -1));
  CHECK_FALSE(r.empty());
}

TEST_CASE("delta21 as an operator agrees with the symbol calculus on constants") {
  HalfPlaneChart ch = HalfPlaneChart::make(0, 6);
  MultiPoly tau = MultiPoly::var("tau");
  DiffOperator D = delta21(ch, tau);
  CHECK(D.order() == 2);
  CHECK(D.valid() >= 1);
}

TEST_CASE("BPZ operator in the z variables") {
  HalfPlaneChart ch = HalfPlaneChart::make(1, 4, true);
  MultiPoly tau = MultiPoly::var("tau");
  MultiPoly h1 = ch.spectator_weights[0];
  auto r = apply_to_power(bpz_operator(ch, tau), ch.z[0], h1 * -2);
  CHECK(r.size() == 1);
  CHECK(r.count(-2) == 1);
  CHECK(r[-2] == h1 * ((h1 * 2 + 1) * 2 - tau * 3));
  for (Rational kappa : {Rational(2), make_rational(8, 3), Rational(3), Rational(4)}) {
    Rational tv = 4 / kappa;
    tv.canonicalize();
    Rational hv = kac_weight(2, 1, tv);
    HalfPlaneChart c1 = HalfPlaneChart::make(1, 4);
    c1.spectator_weights[0] = hv;
    CHECK(apply_to_power(bpz_operator(c1, tv), c1.z[0], MultiPoly(Rational(hv * -2))).empty());
    c1.spectator_weights[0] = MultiPoly(Rational(hv + make_rational(1, 10)));
    auto bad = apply_to_power(bpz_operator(c1, tv), c1.z[0], MultiPoly(Rational((hv + make_rational(1, 10)) * -2)));
    CHECK_FALSE(bad.empty());
  }
  HalfPlaneChart c0 = HalfPlaneChart::make(1, 4);
  DiffOperator op = bpz_operator(c0, tau);
  CHECK(op.apply(1).is_zero());
  CHECK(op.coefficient(d(c0.z[0], 2)) == MultiPoly(1));
  CHECK(op.coefficient(d(c0.z[0])) == tau * zinv(c0, 0));
}

TEST_CASE("bracket span") {
  HalfPlaneChart ch = HalfPlaneChart::make(2, 8);
  BracketSpanReport r3 = bracket_span(ch, 3);
  CHECK(r3.ok);
  CHECK(r3.confirmed == std::vector<int>{1, 2, 3});
  BracketSpanReport r5 = bracket_span(ch, 5);
  CHECK(r5.ok);
  CHECK(r5.confirmed.back() == 5);
  CHECK_THROWS_AS(bracket_span(ch, 6), TruncationError);
}
