#pragma once

#include "virasoro/diff_operator.hpp"
#include "virasoro/exact_series.hpp"

#include <map>
#include <string>
#include <vector>

namespace vir {

// (H, 0, z_1..z_N, infinity) with the jet w = z + a_2 z^2 + ... + a_k z^k at 0.
struct HalfPlaneChart {
  int n_spectators = 0;
  int jet_order = 10;
  std::vector<int> z;        // var ids of z_1..z_N (Laurent)
  std::vector<int> a;        // a[j] is the var id of a_j, j = 2..k (a[0], a[1] unused)
  std::vector<MultiPoly> spectator_weights;
  MultiPoly seed_weight;     // h
  MultiPoly central_charge;  // c

  // Symbols z1.., a2.., c, h; spectator weights zero unless symbolic_weights,
  // in which case they are the symbols h1..hN.
  static HalfPlaneChart make(int n_spectators, int jet_order, bool symbolic_weights = false);

  int jet_index(int var) const;  // j if var is a_j, else 0
  MultiPoly total_spectator_weight() const;
  // w as an exact polynomial series in z.
  ExactSeries w() const;
};

// b_{j,n} for n <= j <= j_max: w^{n+1} d_w = sum_j b_{j,n} z^{j+1} d_z.
std::vector<MultiPoly> vector_field_coeffs(const HalfPlaneChart& ch, int n, int j_max);

// Data of one generator: spectator part P_n(z) split at z^1, jet action, weights.
struct WittData {
  int n;
  std::map<int, MultiPoly> p;  // degree d <= 1 -> coefficient of z^d in P_n
  std::map<int, MultiPoly> jet;  // m -> delta a_m
  MultiPoly b0() const;          // coefficient of z^1 in P_n
  MultiPoly p_at(int zvar) const;
  MultiPoly dp_at(int zvar) const;
};
WittData witt_data(const HalfPlaneChart& ch, int n);

DiffOperator witt_generator(const HalfPlaneChart& ch, int n);
// The vector-field part only (no spectator weight multiplication).
DiffOperator witt_vector_field(const HalfPlaneChart& ch, int n);
MultiPoly schwarzian_connection(const HalfPlaneChart& ch);  // 6(a2^2 - a3)
// c/(12 (-n-2)!) (l_{-1})^{-n-2} S for n <= -2, else 0.
MultiPoly central_term(const HalfPlaneChart& ch, int n);
DiffOperator virasoro_generator(const HalfPlaneChart& ch, int n);

// Drop derivative terms d_{a_j} with j > v and record the new validity.
DiffOperator restrict_jet(const HalfPlaneChart& ch, const DiffOperator& op, int v);
// Composition and commutator restricted to their provable jet order.
DiffOperator compose_jet(const HalfPlaneChart& ch, const DiffOperator& a, const DiffOperator& b);
DiffOperator commutator_jet(const HalfPlaneChart& ch, const DiffOperator& a, const DiffOperator& b);

// h_{r,s}(tau) = ((r tau - s)^2 - (tau - 1)^2) / (4 tau)
Rational kac_weight(int r, int s, const Rational& tau);

// L_{-1}^2 - tau L_{-2}.
DiffOperator delta21(const HalfPlaneChart& ch, const MultiPoly& tau);

// sum_alpha C_alpha d_z^alpha f, f a weight-h symbol: l_0 f = h f, l_{n>0} f = 0.
// d_z^alpha f carries weight h + |alpha|.
using WeightVector = std::map<Monomial, MultiPoly>;

WeightVector weight_symbol();
WeightVector act(const HalfPlaneChart& ch, int n, const WeightVector& v, bool virasoro);
WeightVector add(const WeightVector& a, const WeightVector& b, const MultiPoly& scale = 1);
// Eliminate d_{z_1} using the Euler relation sum z_i d_i g = -(wt g + sum h_i) g.
WeightVector euler_normal_form(const HalfPlaneChart& ch, const WeightVector& v);
bool equal_mod_euler(const HalfPlaneChart& ch, const WeightVector& a, const WeightVector& b);
std::string to_string(const WeightVector& v);

// (L_{-1}^2 - tau L_{-2}) f for the weight-h symbol f.
WeightVector delta21_on_symbol(const HalfPlaneChart& ch, const MultiPoly& tau);
// sum_{i,j} d_i d_j f + tau sum_i z_i^{-1} d_i f
WeightVector bpz_target(const HalfPlaneChart& ch, const MultiPoly& tau);

// l^0_{-n} = sum_i (-z_i^{1-n} d_i - (1-n) h_i z_i^{-n}) and
// Delta^0 = (l^0_{-1})^2 - tau l^0_{-2}.
DiffOperator bpz_witt0(const HalfPlaneChart& ch, int n);
DiffOperator bpz_operator(const HalfPlaneChart& ch, const MultiPoly& tau);
// Apply an operator in one Laurent variable z to z^e (e symbolic): returns
// shift s -> coefficient of z^{e+s}.
std::map<int, MultiPoly> apply_to_power(const DiffOperator& op, int zvar, const MultiPoly& e);

struct BracketSpanReport {
  int n_max = 0;
  std::vector<int> confirmed;  // n such that l_{-n} is reached by brackets
  bool ok = false;
};
// l_{-n-1} = [l_{-1}, l_{-n}]/(n-1) for 2 <= n < n_max.
BracketSpanReport bracket_span(const HalfPlaneChart& ch, int n_max);

}  // namespace vir
