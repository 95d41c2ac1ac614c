#include "virasoro/annulus.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vir {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSeriesRadius = 0.05;
constexpr int kSeriesTerms = 24;

double factorial(int n) {
  double r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

double frac_dist(double a, double b) {
  double d = std::fmod(std::abs(a - b), 1.0);
  return std::min(d, 1.0 - d);
}

// R^{(m)}(u) for R(u) = theta'/theta(u) - 1/u, by its Taylor series at 0.
cplx regular_part_derivative(int m, cplx u, const ThetaContext& ctx) {
  cplx s = 0, up = 1;  // up = u^{j-m}
  for (int j = m; j <= m + kSeriesTerms; ++j) {
    if ((j % 2) != 0) s += ctx.regular_coeff(j) * (factorial(j) / factorial(j - m)) * up;
    up *= u;
  }
  return s;
}

}  // namespace

AnnulusChart::AnnulusChart(double t, std::vector<double> spectators, int depth)
    : ctx(t), z(std::move(spectators)), jet_depth(depth) {
  if (z.empty()) throw std::invalid_argument("AnnulusChart: need z_1");
  if (depth < 0) throw std::invalid_argument("AnnulusChart: negative jet depth");
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (frac_dist(z[i], 0.0) < 1e-12) throw std::invalid_argument("AnnulusChart: spectator at z_0 = 0");
    for (std::size_t j = i + 1; j < z.size(); ++j)
      if (frac_dist(z[i], z[j]) < 1e-12) throw std::invalid_argument("AnnulusChart: coincident spectators");
  }
}

cplx v_field(cplx x, cplx y, const ThetaContext& ctx) { return ctx.log_derivative(x - y, 0); }

cplx v0_field(cplx x, cplx y, const ThetaContext& ctx) { return v_field(x, y, ctx) - v_field(0.0, y, ctx); }

cplx v0_dy(cplx x, cplx y, int m, const ThetaContext& ctx) {
  if (m == 0) return v0_field(x, y, ctx);
  double s = (m % 2 ? -1.0 : 1.0) / factorial(m);
  return s * (ctx.log_derivative(x - y, m) - ctx.log_derivative(-y, m));
}

cplx c_kernel(int m, cplx x, cplx y, const ThetaContext& ctx) {
  cplx u = x - y;
  if (std::abs(u) >= kSeriesRadius) return v0_dy(x, y, m, ctx) - std::pow(u, -(m + 1));
  double s = (m % 2 ? -1.0 : 1.0) / factorial(m);
  return s * (regular_part_derivative(m, u, ctx) - ctx.log_derivative(-y, m));
}

double c_kernel_diag(int m, int k, double z, const ThetaContext& ctx) {
  double s = (m % 2 ? -1.0 : 1.0) / factorial(m);
  double r = factorial(m + k) * ctx.regular_coeff(m + k);
  if (k == 0) r -= ctx.log_derivative(cplx(-z, 0.0), m).real();
  return s * r;
}

double poisson_kernel(cplx x, double y, const ThetaContext& ctx) {
  if (!(x.imag() > 0 && x.imag() < ctx.t() / 2))
    throw std::domain_error("poisson_kernel: x must satisfy 0 < Im x < t/2");
  return (-v_field(x, y, ctx).imag() - 2 * kPi / ctx.t() * x.imag()) / kPi;
}

double far_boundary_mass(cplx x, const ThetaContext& ctx) { return 2 * x.imag() / ctx.t(); }

double excursion_kernel(double x, double y, const ThetaContext& ctx) {
  if (frac_dist(x, y) < 1e-14) throw std::domain_error("excursion_kernel: coincident points");
  return (-ctx.log_derivative(cplx(x - y, 0.0), 1).real() - 2 * kPi / ctx.t()) / kPi;
}

double schwarzian_connection(const ThetaContext& ctx) {
  return 6 * (-ctx.triple_over_prime() / 3 - 2 * kPi / ctx.t());
}

double bergman_connection(const ThetaContext& ctx) { return -2 * ctx.triple_over_prime(); }

TangentCoords tangent_coordinates(const AnnulusChart& chart, int n) {
  if (n > -1) throw std::invalid_argument("tangent_coordinates: n <= -1");
  const ThetaContext& ctx = chart.ctx;
  TangentCoords tc;
  tc.n = n;
  tc.dz.assign(chart.z.size(), 0.0);
  tc.da.assign(chart.jet_depth, 0.0);
  if (n == -1) {
    tc.dz[0] = 1.0;
    return tc;
  }
  int m = -n - 2;
  double z1 = chart.z[0];
  tc.dt = m == 0 ? 2 * kPi : 0.0;
  for (std::size_t j = 1; j < chart.z.size(); ++j) tc.dz[j] = v0_dy(chart.z[j], z1, m, ctx).real();
  tc.dz[0] = -c_kernel_diag(m, 0, z1, ctx);
  for (int k = 1; k <= chart.jet_depth; ++k) tc.da[k - 1] = -c_kernel_diag(m, k, z1, ctx) / factorial(k);
  return tc;
}

WeierstrassReport weierstrass_checks(const ThetaContext& ctx) {
  WeierstrassReport r;
  double two_eta1 = -ctx.triple_over_prime() / 3;
  // Richardson on f(u) = -(theta'/theta)'(u) - 1/u^2 = 2 eta_1 + O(u^2)
  auto f = [&](double u) { return -ctx.log_derivative(cplx(u, 0.0), 1).real() - 1 / (u * u); };
  double u = 1e-3;
  double lim = (4 * f(u) - f(2 * u)) / 3;
  r.laurent_residual = std::abs(lim - two_eta1);

  cplx tau(0.0, ctx.t()), w(0.1, 0.05 * ctx.t());
  cplx jump = ctx.log_derivative_direct(w + tau) - ctx.log_derivative_direct(w);
  cplx two_eta2 = jump + two_eta1 * tau;
  r.legendre_residual = std::abs(two_eta1 * tau - two_eta2 - cplx(0.0, 2 * kPi));

  // Eisenstein series for the lattice Z + tau Z
  double q = ctx.q(), e4 = 1, e6 = 1;
  for (int n = 1; std::pow(q, n) * std::pow(n, 5) > 1e-20 || n < 3; ++n) {
    double s3 = 0, s5 = 0;
    for (int d = 1; d <= n; ++d)
      if (n % d == 0) {
        s3 += std::pow(d, 3);
        s5 += std::pow(d, 5);
      }
    e4 += 240 * s3 * std::pow(q, n);
    e6 -= 504 * s5 * std::pow(q, n);
  }
  double g2 = 60 * std::pow(kPi, 4) / 45 * e4;
  double g3 = 140 * 2 * std::pow(kPi, 6) / 945 * e6;
  cplx x(0.21, 0.13 * ctx.t());
  cplx wp = -ctx.log_derivative(x, 1) - two_eta1;
  cplx wpp = -ctx.log_derivative(x, 2);
  cplx lhs = wpp * wpp, rhs = 4.0 * wp * wp * wp - g2 * wp - g3;
  r.ode_residual = std::abs(lhs - rhs) / std::max(std::abs(lhs), std::abs(rhs));
  r.ok = r.laurent_residual < 1e-8 && r.legendre_residual < 1e-10 && r.ode_residual < 1e-10;
  return r;
}

}  // namespace vir
