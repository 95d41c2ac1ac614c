#pragma once

#include "virasoro/grid_loops.hpp"
#include "virasoro/sle.hpp"

#include <cstdint>
#include <vector>

namespace vir {

// Boundary edge of a grid domain: `inside` in the domain, `outside` a neighbour outside it.
struct BoundaryEdge {
  Site inside, outside;
};

// Grid domain with the two marked boundary points X (start) and Y (end) of a chordal trace.
struct MarkedDomain {
  GridDomain domain;
  BoundaryEdge x, y;
  // Throws unless both edges are genuine boundary edges of the domain.
  void validate() const;
};

// Nearest-neighbour path of distinct sites.
using LatticePath = std::vector<Site>;
SiteSet path_sites(const LatticePath& gamma);
bool is_simple_path(const LatticePath& gamma);

// Discrete excursion kernel H_D(X, Y) = G_D(x_in, y_in) / 16: the mass of walks
// entering through X and leaving through Y.
double excursion_kernel(const GridDomain& d, const BoundaryEdge& x, const BoundaryEdge& y);

// log of phi_D(gamma) = H_D(X, Y)^h exp(-(c/2) nu_Sigma(gamma; Sigma \ D)).
double localization_log_weight(const MarkedDomain& sigma, const GridDomain& tube, const LatticePath& gamma,
                               const SLEParams& p);
double localization_weight(const MarkedDomain& sigma, const GridDomain& tube, const LatticePath& gamma,
                           const SLEParams& p);

// Two routes to log phi_{D'} for D' inside D: directly, and from phi_D through the
// kernel ratio and the mass of loops in D hitting gamma and D \ D'.
struct ConsistencyReport {
  double direct = 0, via_outer = 0, residual = 0;
};
ConsistencyReport localization_consistency(const MarkedDomain& sigma, const GridDomain& outer,
                                           const GridDomain& inner, const LatticePath& gamma, const SLEParams& p);

// log of exp((c/2) sum_{j >= 2} nu_Sigma(gamma_j; gamma_1 u ... u gamma_{j-1})), summed in the given order.
double multi_sle_log_weight(const GridDomain& sigma, const std::vector<LatticePath>& traces, const SLEParams& p);
double multi_sle_weight(const GridDomain& sigma, const std::vector<LatticePath>& traces, const SLEParams& p);
// Same quantity from tubes D_i around gamma_i that are pairwise non-adjacent:
// (c/2) [sum_i nu_Sigma(gamma_i; Sigma \ D_i) - nu_Sigma(u gamma_i; Sigma \ u D_i)].
double multi_sle_log_weight_tubes(const GridDomain& sigma, const std::vector<LatticePath>& traces,
                                  const std::vector<GridDomain>& tubes, const SLEParams& p);

// Sites of d within graph distance `radius` of gamma (distance measured inside d).
GridDomain tube_around(const GridDomain& d, const LatticePath& gamma, int radius);
// Shortest path from `from` to `to` inside d under i.i.d. uniform edge weights; empty if disconnected.
LatticePath random_simple_path(const GridDomain& d, const Site& from, const Site& to, KeyedStream& rng);

// Rectangle interior of (width, height) with the sites of [x0, x1] x [y0, y1] removed.
GridDomain annulus_grid(int width, int height, int x0, int x1, int y0, int y1);

// Random annulus with X on the left side and Y on the right side, a random
// trace from X to Y and tubes of radii r_inner < r_outer around it.
struct NestedTubeInstance {
  MarkedDomain sigma;
  LatticePath gamma;
  GridDomain outer, inner;
  int r_outer = 0, r_inner = 0;
};
NestedTubeInstance random_nested_tubes(std::uint64_t seed, std::uint64_t index);

// Random annulus with n pairwise well-separated boundary-to-boundary traces and
// non-adjacent tubes of radius `radius` around them.
struct MultiTraceInstance {
  GridDomain sigma;
  std::vector<LatticePath> traces;
  std::vector<GridDomain> tubes;
};
MultiTraceInstance random_multi_traces(std::uint64_t seed, std::uint64_t index, int n, int radius);

// Total mass Z_0 = H_Sigma(X, Y) at kappa = 2 (loop-erased walk, c = -2, h = 1),
// estimated once from walks leaving through Y and once by disintegrating over
// the loop-erased first piece up to the exit of the box of half-width `radius`
// around x_in. Each piece is weighted by exp(-(c/2) nu_Sigma(piece; Sigma \ B))
// G_{Sigma \ piece}(tip, y_in) / 16. The same estimator with exp(-c nu) is
// reported as the alternative convention.
struct DisintegrationReport {
  double exact = 0;                       // G_Sigma(x_in, y_in) / 16
  double one_shot = 0, one_shot_stderr = 0;
  double disintegrated = 0, disintegrated_stderr = 0;
  double alternative = 0, alternative_stderr = 0;
  double z_routes = 0;                    // (one_shot - disintegrated) / combined stderr
  double z_one_shot = 0, z_disintegrated = 0, z_alternative = 0;  // against the exact value
  long n_one_shot = 0, n_disintegrated = 0, n_effective = 0;      // pieces with nonzero weight
  bool agree = false;                     // |z_routes| <= 3
};
DisintegrationReport disintegration_check(const MarkedDomain& sigma, const SLEParams& p, int radius,
                                          long n_one_shot, long n_disintegrated, std::uint64_t seed);
// Radius 0: the first piece is x_in alone and its four possible tips are enumerated exactly.
double disintegration_degenerate(const MarkedDomain& sigma, const SLEParams& p);

}  // namespace vir
