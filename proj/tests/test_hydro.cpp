#include "doctest.h"
#include "virasoro/hydro.hpp"

using namespace vir;

namespace {

Monomial d(int var) {
  Monomial m;
  m[var] = 1;
  return m;
}

// Set every f_j to zero.
MultiPoly at_identity(const HydroChart& ch, MultiPoly p) {
  for (int J = 2; J <= ch.top_index(); ++J) p = p.substitute(ch.f[J], MultiPoly());
  return p;
}

}  // namespace

TEST_CASE("closed form for n >= 2") {
  HydroChart ch = HydroChart::make(1, 5);
  DiffOperator l2 = bb_witt(ch, 2);
  CHECK(l2.coefficient(d(ch.f[2])) == MultiPoly(-1));
  CHECK(l2.coefficient(d(ch.f[3])) == MultiPoly());
  CHECK(l2.coefficient(d(ch.f[4])) == MultiPoly::var(ch.f[2]));
  CHECK(l2.coefficient(d(ch.x[0])).is_zero());

  HydroChart big = HydroChart::make(2, 10);
  for (int n = 2; n <= 5; ++n) {
    DiffOperator l = bb_witt(big, n);
    for (int J = 2; J <= big.top_index(); ++J) {
      MultiPoly closed = bb_closed_form_coeff(big, -J, n);
      CHECK(l.coefficient(d(big.f[J])) == closed);
      CHECK(two_region_coeff(big, -J, n, Region::V1Inner) == closed);
    }
  }
}

TEST_CASE("both routes to P_n and the jet coefficients agree") {
  HydroChart ch = HydroChart::make(1, 9);
  for (int n = -4; n <= 3; ++n) {
    CHECK(bb_vector_field(ch, n) == bb_vector_field_by_inversion(ch, n));
    for (int J = 2; J <= ch.top_index() - (n < 0 ? -n : 0); ++J) {
      MultiPoly inner = two_region_coeff(ch, -J, n, Region::V1Inner);
      MultiPoly outer = two_region_coeff(ch, -J, n, Region::V2Inner);
      CHECK(bb_jet_coeff(ch, -J, n) == inner);
      CHECK(outer - inner == diagonal_residue(ch, -J, n));
    }
  }
}

TEST_CASE("identity chart") {
  HydroChart ch = HydroChart::make(2, 6);
  MultiPoly x1 = MultiPoly::var(ch.x[0]), x2 = MultiPoly::var(ch.x[1]);
  DiffOperator l0 = bb_witt(ch, 0).map_coeffs([&](const MultiPoly& p) { return at_identity(ch, p); });
  CHECK(l0 == DiffOperator::partial(ch.x[0], x1) + DiffOperator::partial(ch.x[1], x2));
  DiffOperator lm1 = bb_witt(ch, -1).map_coeffs([&](const MultiPoly& p) { return at_identity(ch, p); });
  CHECK(lm1.coefficient(d(ch.x[0])) == x1 * x1);
  for (int n = -3; n <= 3; ++n) {
    CHECK(bb_witt(ch, n).apply(MultiPoly(1)).is_zero());
    CHECK(at_identity(ch, bb_central_term(ch, n)).is_zero());
  }
  CHECK(two_region_coeff(ch, -2, 2, Region::V1Inner) == MultiPoly(-1));
  CHECK(two_region_coeff(ch, -2, 2, Region::V2Inner).is_zero());
}

TEST_CASE("two-region coefficient with only f_{-2}") {
  HydroChart ch = HydroChart::make(0, 7);
  MultiPoly c = two_region_coeff(ch, -2, -2, Region::V1Inner);
  for (int J = 3; J <= ch.top_index(); ++J) c = c.substitute(ch.f[J], MultiPoly());
  CHECK(!c.is_zero());
  CHECK(c.max_exponent(ch.f[2]) <= 2);
}

TEST_CASE("Schwarzian connection at infinity") {
  HydroChart ch = HydroChart::make(0, 6);
  CHECK(bb_schwarzian_connection(ch) == MultiPoly::var(ch.f[2]) * -6);
  CHECK(bb_central_term(ch, -2) == ch.central_charge * MultiPoly::var(ch.f[2]) * Rational(-1, 2));
}

TEST_CASE("Witt and Virasoro relations, K=10, two points") {
  HydroChart ch = HydroChart::make(2, 10);
  for (int virasoro = 0; virasoro <= 1; ++virasoro)
    for (int m = -3; m <= 3; ++m)
      for (int n = -3; n <= 3; ++n) {
        BBRelationResult r = bb_relation(ch, m, n, virasoro);
        INFO("m=" << m << " n=" << n << " virasoro=" << virasoro);
        CHECK(r.ok);
        CHECK(r.compared_order >= 2);
      }
}

TEST_CASE("central charge in [L_2, L_{-2}] at the identity") {
  HydroChart ch = HydroChart::make(1, 8);
  DiffOperator comm = bb_commutator(ch, bb_virasoro(ch, 2), bb_virasoro(ch, -2));
  CHECK(at_identity(ch, comm.apply(MultiPoly(1))) == ch.central_charge * Rational(1, 2));
}

TEST_CASE("insufficient depth") {
  HydroChart ch = HydroChart::make(1, 4);
  CHECK_THROWS_AS(bb_witt(ch, -3), TruncationError);
  // Observed: the relation at (m, n) closes from K = 3 + m^- + n^-.
  for (int m = -3; m <= 3; ++m)
    for (int n = -3; n <= 3; ++n)
      CHECK(bb_minimal_depth(m, n, true) == 3 + (m < 0 ? -m : 0) + (n < 0 ? -n : 0));
}
