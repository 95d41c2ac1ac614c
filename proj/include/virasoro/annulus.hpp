#pragma once

#include "virasoro/theta.hpp"

#include <vector>

namespace vir {

// The annulus {0 < Im z < t/2}/Z, whose Schottky double is C/(Z + itZ).
// Spectators: z_0 = 0 and z_1..z_N on the real boundary, pairwise distinct mod 1.
// The jet at z_1 is taken at the identity representative w = z - z_1.
struct AnnulusChart {
  ThetaContext ctx;
  std::vector<double> z;  // z_1..z_N
  int jet_depth = 4;

  AnnulusChart(double t, std::vector<double> spectators, int jet_depth = 4);
  double t() const { return ctx.t(); }
  double height() const { return ctx.t() / 2; }
};

// V(x, y) = theta'/theta(x - y) and V_0(x, y) = V(x, y) - V(0, y).
cplx v_field(cplx x, cplx y, const ThetaContext& ctx);
cplx v0_field(cplx x, cplx y, const ThetaContext& ctx);
// (1/m!) d_y^m V_0(x, y).
cplx v0_dy(cplx x, cplx y, int m, const ThetaContext& ctx);
// c_m(x, y) = (1/m!) d_y^m V_0(x, y) - (x - y)^{-m-1}; x = y handled through the
// Laurent expansion of theta'/theta at 0.
cplx c_kernel(int m, cplx x, cplx y, const ThetaContext& ctx);
// d_x^k c_m(x, y) at x = y = z.
double c_kernel_diag(int m, int k, double z, const ThetaContext& ctx);

// pi P(x, y) = -Im V(x, y) - (2 pi / t) Im x for 0 < Im x < t/2, y real.
double poisson_kernel(cplx x, double y, const ThetaContext& ctx);
// Harmonic measure of the far boundary circle seen from x: 2 Im x / t.
double far_boundary_mass(cplx x, const ThetaContext& ctx);
// pi H(x, y) = -d_x V(x, y) - 2 pi / t for real x != y.
double excursion_kernel(double x, double y, const ThetaContext& ctx);

// S/6 = -theta'''/(3 theta')(0) - 2 pi / t.
double schwarzian_connection(const ThetaContext& ctx);
// B = -2 theta'''/theta'(0).
double bergman_connection(const ThetaContext& ctx);

// Coordinates of the class of (z - z_1)^{n+1} d_z, n <= -1, in the basis
// d_t, d_{z_j} (j = 1..N), d_{a_k} (k = 1..jet_depth). With m = -n-2 >= 0:
// d_t gets 2 pi (m = 0) or 0, d_{z_j} gets (1/m!) d_y^m V_0(z_j, z_1) for j > 1,
// d_{z_1} gets -c_m(z_1, z_1) and d_{a_k} gets -(1/k!) d_x^k c_m(z_1, z_1).
struct TangentCoords {
  int n = 0;
  double dt = 0;
  std::vector<double> dz;
  std::vector<double> da;
};
TangentCoords tangent_coordinates(const AnnulusChart& chart, int n);

struct WeierstrassReport {
  double laurent_residual = 0;   // -(theta'/theta)'(u) - 1/u^2 + theta'''/(3theta')(0) at small u
  double legendre_residual = 0;  // |2 eta_1 tau - 2 eta_2 - 2 i pi|
  double ode_residual = 0;       // relative |wp'^2 - 4 wp^3 + g2 wp + g3| against Eisenstein g2, g3
  bool ok = false;
};
WeierstrassReport weierstrass_checks(const ThetaContext& ctx);

}  // namespace vir
