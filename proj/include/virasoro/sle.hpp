#pragma once

#include "virasoro/rational.hpp"

#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace vir {

struct SLEParams {
  Rational kappa, tau, c, h;
  double kappa_d = 0, c_d = 0, h_d = 0;
  // kappa in (0, 4]; tau = 4/kappa, c = (6-k)(3k-8)/(2k), h = (6-k)/(2k).
  static SLEParams from_kappa(const Rational& kappa);
  static SLEParams parse(const std::string& kappa);
};

// Reproducible stream for (seed, sample index); streams with different keys
// are independent, so samples can be drawn in any order or in parallel.
class KeyedStream {
 public:
  KeyedStream(std::uint64_t seed, std::uint64_t index, std::uint64_t purpose = 0);
  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  int below(int n) { return std::uniform_int_distribution<int>(0, n - 1)(engine_); }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
  std::uniform_real_distribution<double> uniform_;
};

using cplx_t = std::complex<double>;

// One step of the vertical-slit chain: g -> w + sqrt((g - w)^2 + 4 dt), branch in the closed upper half-plane.
cplx_t slit_map(cplx_t z, double w, double dt);
cplx_t slit_map_derivative(cplx_t z, double w, double dt);
cplx_t slit_map_inverse(cplx_t z, double w, double dt);

struct TrackedPoint {
  cplx_t z0, g, gprime{1.0, 0.0};
  bool swallowed = false;
};

struct LoewnerState {
  std::vector<double> times;    // t_0 = 0, ..., t_n = T
  std::vector<double> driver;   // W at the grid times
  std::vector<double> slit_at;  // per step: driving value used by that step's slit (midpoint of the increment)
  std::vector<TrackedPoint> tracked;
  double kappa = 0;
  int swallowed_count() const;
  // Discrete trace: tip of the hull after each step (O(n^2)).
  std::vector<cplx_t> tips() const;
};

// Uniform grid of n_steps on [0, T]; driver sqrt(kappa) B; each step composes one vertical slit.
LoewnerState sample_trace(const SLEParams& p, double T, int n_steps, std::uint64_t seed,
                          const std::vector<cplx_t>& points, std::uint64_t sample_index = 0);

// Hull in H attached to the positive real axis.
struct HullSpec {
  enum class Shape { Semidisk, Slit } shape = Shape::Semidisk;
  double a = 1, r = 0.3;  // semidisk: centre a, radius r < a
  double x = 1, y = 0.3;  // slit from x to x + iy
  static HullSpec semidisk(double a, double r);
  static HullSpec slit(double x, double y);
  static HullSpec parse(const std::string& s);  // "semidisk:a:r" or "slit:x:y"
  // Boundary curve of the hull, s in [0, 1] (endpoints on the real axis for the semidisk).
  cplx_t boundary(double s) const;
  bool contains(cplx_t z) const;
  double distance(cplx_t z) const;
  // Uniformizer of H \ A fixing 0 and infinity with unit derivative at infinity.
  cplx_t uniformizer(cplx_t z) const;
  double uniformizer_prime0() const;
  std::string describe() const;
};

struct RestrictionOptions {
  double step_constant = 0.01;  // dt = step_constant * gap^2 / kappa
  double hit_ratio = 1e-6;      // gap / image span below which the trace has hit the hull
  double release_ratio = 300;   // gap / image span above which the hull is left behind for good
  double t_max = 1e4;
  int initial_points = 12;
  double refine_ratio = 0.5;
  long max_steps = 2000000;
};

struct RestrictionEstimate {
  HullSpec hull;
  long n = 0, avoided = 0;
  double estimate = 0, stderr_ = 0, target = 0, z_score = 0;
  long side_decided = 0;  // hits found only by the final side test
  long unresolved = 0;    // samples that reached t_max or max_steps
};

// Weighted least-squares slope of log P against log Phi'(0) through the origin.
struct ExponentFit {
  double exponent = 0, stderr_ = 0;
};
ExponentFit fit_restriction_exponent(const std::vector<RestrictionEstimate>& estimates);

struct RestrictionStudy {
  std::vector<RestrictionEstimate> hulls;
  std::vector<double> mean_steps;
  ExponentFit fit;
};

RestrictionEstimate restriction_probability(const SLEParams& p, const HullSpec& hull, long n_samples,
                                            std::uint64_t seed, const RestrictionOptions& opt = {});
// Independent avoidance estimates for several hulls and the fitted exponent.
RestrictionStudy restriction_study(const SLEParams& p, const std::vector<HullSpec>& hulls, long n_samples,
                                   std::uint64_t seed, const RestrictionOptions& opt = {});

// Agreement between the image-plane detection and the discrete trace entering A (tips within tol).
struct DetectionAgreement {
  long n = 0, agree = 0;
  double rate = 0;
};
DetectionAgreement restriction_detection_agreement(const SLEParams& p, const HullSpec& hull, long n_samples,
                                                   std::uint64_t seed, double tip_tol,
                                                   const RestrictionOptions& opt = {});

struct MartingaleReport {
  double h_used = 0, estimate = 0, stderr_ = 0, target = 1, z_score = 0;
  long n = 0, swallowed = 0;
  bool valid = true;
};
// M_t = g_t'(y)^h (g_t(y) - W_t)^{-2h} y^{2h} with h = h_{2,1} is a strict local
// martingale: tilting by M turns g - W into sqrt(kappa) times a Bessel process
// of dimension 3 - 8/kappa, which reaches 0. Hence
// E[M_T] = 1 - Q((8 - kappa)/(2 kappa), y^2/(2 kappa T)), Q the regularized upper gamma.
double martingale_expectation(const SLEParams& p, double y, double T);
// Monte Carlo estimate of E[M_T] (exponent h_override when given); target and
// z_score refer to martingale_expectation.
MartingaleReport martingale_check(const SLEParams& p, double y, double T, long n_samples, std::uint64_t seed,
                                  int n_steps = 1000, double h_override = -1);

struct ScalingReport {
  double ks_re = 0, ks_im = 0, critical = 0;
  bool ok = false;
};
// Two-sample Kolmogorov-Smirnov comparison of g_1(i) and g_{l^2}(l i)/l over independent samples.
ScalingReport scaling_check(const SLEParams& p, double lambda, long n_samples, std::uint64_t seed, int n_steps = 400);

// Two-sample Kolmogorov-Smirnov statistic.
double ks_statistic(std::vector<double> a, std::vector<double> b);

}  // namespace vir
