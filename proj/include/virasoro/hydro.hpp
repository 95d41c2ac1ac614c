#pragma once

#include "virasoro/diff_operator.hpp"
#include "virasoro/exact_series.hpp"

#include <string>
#include <vector>

namespace vir {

// Marked points x_1..x_n on the real line and the hydrodynamic jet
// f(u) = u + f_{-2}/u + ... + f_{1-K} u^{2-K} at infinity (f_0 = 1, f_{-1} = 0).
struct HydroChart {
  int n_pts = 0;
  int jet_depth = 10;    // K
  std::vector<int> x;    // var ids of x_1..x_n
  std::vector<int> f;    // f[J] is the var id of f_{-J}, J = 2..K-1 (f[0], f[1] unused)
  MultiPoly central_charge;

  // Symbols x1.., f2.. (f2 is f_{-2}), c.
  static HydroChart make(int n_pts, int jet_depth);

  int top_index() const { return jet_depth - 1; }
  MultiPoly fj(int j) const;  // f_j for j <= 0, including the constants f_0 = 1, f_{-1} = 0
  // f as an exact Laurent polynomial in u around infinity.
  ExactSeries series() const;
};

// Coefficients of P_n(x) = [u^{-1}] u^{1-n} f'(u)^2 / (f(u) - x), |x| < |f(u)|;
// entry d is the coefficient of x^d. Empty for n >= 2.
std::vector<MultiPoly> bb_vector_field(const HydroChart& ch, int n);
// The same polynomial read off as the polynomial part of u(z)^{1-n} / u'(z), u = f^{-1}.
std::vector<MultiPoly> bb_vector_field_by_inversion(const HydroChart& ch, int n);

enum class Region {
  V1Inner,  // |v1| < |v2|: 1/(f(v1) - f(v2)) = -sum_k f(v1)^k / f(v2)^{k+1}
  V2Inner,  // |v2| < |v1|: 1/(f(v1) - f(v2)) =  sum_k f(v2)^k / f(v1)^{k+1}
};

// [v1^{-1} v2^{-1}] v1^{1-n} f'(v1)^2 v2^{-l-2} / (f(v1) - f(v2)) expanded in `region`.
MultiPoly two_region_coeff(const HydroChart& ch, int l, int n, Region region);
// The residue on the diagonal: two_region_coeff(V2Inner) - two_region_coeff(V1Inner).
MultiPoly diagonal_residue(const HydroChart& ch, int l, int n);

// Coefficient of d_{f_l} in l_n, read off from delta f(u) = P_n(f(u)) - u^{1-n} f'(u).
MultiPoly bb_jet_coeff(const HydroChart& ch, int l, int n);
// -(l+n+1) f_{l+n}, the closed form for n >= 2.
MultiPoly bb_closed_form_coeff(const HydroChart& ch, int l, int n);

// l_n = sum_i P_n(x_i) d_{x_i} + sum_l (coefficient) d_{f_l}. Valid at jet order
// K - 1 - n^- with shift n^-.
DiffOperator bb_witt(const HydroChart& ch, int n);
// (c/12) [u^{-1}] u^{1-n} (Sf)(u).
MultiPoly bb_central_term(const HydroChart& ch, int n);
DiffOperator bb_virasoro(const HydroChart& ch, int n);
// [u^{-1}] u^3 (Sf)(u), the Schwarzian connection at infinity (= -6 f_{-2}).
MultiPoly bb_schwarzian_connection(const HydroChart& ch);

DiffOperator bb_restrict(const HydroChart& ch, const DiffOperator& op, int v);
DiffOperator bb_commutator(const HydroChart& ch, const DiffOperator& a, const DiffOperator& b);

struct BBRelationResult {
  int m = 0, n = 0;
  int compared_order = 0;  // jet order at which the relation was compared
  bool ok = false;
};
// [l_m, l_n] = (m-n) l_{m+n} (+ c/12 m(m^2-1) delta_{m+n,0} when virasoro).
BBRelationResult bb_relation(const HydroChart& ch, int m, int n, bool virasoro);

// Smallest K in [3, k_max] for which the relation at (m, n) can be compared on
// at least d_{f_{-2}} and holds; -1 if none.
int bb_minimal_depth(int m, int n, bool virasoro, int k_max = 16);

}  // namespace vir
