#pragma once

#include <stdexcept>
#include <vector>

namespace vir {

// Flat cylinder of circumference L and height H, Dirichlet on both circles.
// Spectrum of -Delta: 4 pi^2 m^2 / L^2 + pi^2 n^2 / H^2, m in Z, n >= 1.
struct CylinderSpec {
  double circumference = 1.0;
  double height = 0.5;
  // The annulus S_t of the elliptic kernels: circumference 1, height t/2.
  static CylinderSpec annulus(double t) { return {1.0, t / 2}; }
  double area() const { return circumference * height; }
  double dirichlet_length() const { return 2 * circumference; }
};

// Theta(u) = tr exp(u Delta).
double heat_trace(const CylinderSpec& c, double u);
// Theta(u) - A/(4 pi u) + l_D/(8 sqrt(pi u)), evaluated without cancellation.
double heat_trace_excess(const CylinderSpec& c, double u);

// log det_zeta(-Delta) = -zeta'(0) by the Mellin transform split at u = split.
double log_det_cylinder(const CylinderSpec& c, double split = 1.0);
// zeta(0), read off from the heat expansion (no constant term on a flat cylinder).
double zeta_at_zero(const CylinderSpec& c);
// Constant Weyl rescaling g -> e^{2 sigma} g: |log det(scaled) - log det - (-2 sigma zeta(0))|.
double scaling_anomaly_residual(const CylinderSpec& c, double sigma);

// log det_zeta for S_t; t must lie in [0.3, 5].
double zeta_det_cylinder(double t, double split = 1.0);
// log t + 2 log eta(it).
double zeta_det_cylinder_closed_form(double t);

struct VirrepReport {
  std::vector<double> t;
  std::vector<double> lhs;           // -pi d/dt log det_zeta(S_t)
  std::vector<double> rhs;           // S(t)/12
  std::vector<double> lhs_slope;     // d/dt of lhs
  std::vector<double> rhs_slope;     // d/dt of rhs
  std::vector<double> slope_residual;  // c/2 |lhs_slope - rhs_slope|
  double constant = 0;  // mean of lhs - rhs over the grid
  double max_residual = 0;
  bool ok = false;
};
VirrepReport virrep_annulus_check(const std::vector<double>& ts, double central_charge = 1.0,
                                  double tol = 1e-5);

// Neumann jump operator on the circle at height s inside the cylinder of
// height H (circumference 1): modes N_0..N_{m_max}.
struct JumpSpectrum {
  double height = 1, cut = 0.5;
  std::vector<double> modes;
};
JumpSpectrum neumann_jump_modes(double height, double s, int m_max);
// zeta_N(0) and -zeta_N'(0), continued with the 4 pi |m| Riemann counterterm.
double jump_zeta_at_zero(double height, double s);
double log_det_jump(double height, double s);
// C with det(S) = C det(top) det(bottom) det(N), for the cylinder of height H cut at s.
double surgery_constant(double height, double s);

}  // namespace vir
