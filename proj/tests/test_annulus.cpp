#include "doctest.h"
#include "virasoro/annulus.hpp"

#include <boost/math/quadrature/trapezoidal.hpp>

#include <cmath>
#include <numbers>

using namespace vir;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_CASE("V fields") {
  ThetaContext ctx(1.0);
  for (double eps : {1e-3, 1e-5})
    CHECK(std::abs(v_field(0.3 + eps, 0.3, ctx) - 1 / eps) < 1.0);
  CHECK(std::abs(v0_field(0.0, 0.3, ctx)) < 1e-15);
  CHECK(std::abs(v_field(cplx(0.17, 1.0), 0.4, ctx).imag() + 2 * kPi) < 1e-10);
  for (double t : {0.5, 1.0, 2.0}) {
    ThetaContext c(t);
    for (double x : {0.05, 0.3, 0.77}) {
      INFO("t=" << t << " x=" << x);
      // real on the boundary, constant imaginary part on the far circle and on it + R
      CHECK(std::abs(v0_field(x, 0.4, c).imag()) < 1e-12);
      CHECK(std::abs(v_field(cplx(x, t / 2), 0.4, c).imag() + kPi) < 1e-10);
      CHECK(std::abs(v0_field(cplx(x, t), 0.4, c).imag() - (-v_field(0.0, 0.4, c).imag() - 2 * kPi)) < 1e-10);
      for (int m = 1; m <= 3; ++m) {
        CHECK(std::abs(v0_dy(cplx(x, t / 2), 0.4, m, c).imag()) < 1e-9);
        CHECK(std::abs(v0_dy(cplx(x, 0.0), 0.4, m, c).imag()) < 1e-9);
      }
    }
  }
}

TEST_CASE("d_y^m V_0 against finite differences") {
  ThetaContext ctx(1.0);
  cplx x(0.61, 0.2);
  double y = 0.25, h = 1e-4;
  double fact = 1;
  for (int m = 1; m <= 3; ++m) {
    fact *= m;
    cplx fd = (v0_dy(x, y + h, m - 1, ctx) - v0_dy(x, y - h, m - 1, ctx)) / (2 * h) / double(m);
    CHECK(std::abs(fd - v0_dy(x, y, m, ctx)) < 1e-6 * std::max(1.0, std::abs(fd)));
  }
}

TEST_CASE("c_m kernels") {
  ThetaContext ctx(1.0);
  for (double z : {0.2, 0.45, 0.8}) {
    CHECK(std::abs(c_kernel_diag(0, 0, z, ctx) - v_field(z, 0.0, ctx).real()) < 1e-10);
    // the series branch near the diagonal matches the direct formula just outside it
    for (int m = 0; m <= 3; ++m) {
      cplx a = c_kernel(m, z + 0.049, z, ctx), b = c_kernel(m, z + 0.051, z, ctx);
      CHECK(std::abs(a - b) < 0.01 * (1 + std::abs(a)));
      CHECK(std::abs(c_kernel(m, z, z, ctx).real() - c_kernel_diag(m, 0, z, ctx)) < 1e-10);
      double h = 1e-4;
      double fd = (c_kernel(m, z + h, z, ctx) - c_kernel(m, z - h, z, ctx)).real() / (2 * h);
      CHECK(std::abs(fd - c_kernel_diag(m, 1, z, ctx)) < 1e-6);
    }
  }
}

TEST_CASE("Poisson kernel") {
  for (double t : {0.5, 1.0, 2.0}) {
    ThetaContext ctx(t);
    double y = 0.3;
    INFO("t=" << t);
    for (double x : {0.0, 0.55, 0.8}) {
      CHECK(std::abs(poisson_kernel(cplx(x, t / 2 * (1 - 1e-12)), y, ctx)) < 1e-9);
      CHECK(std::abs(poisson_kernel(cplx(x, 1e-12), y, ctx)) < 1e-9);
      for (double s : {0.1, 0.25, 0.4}) CHECK(poisson_kernel(cplx(x, s * t), y, ctx) > 0);
    }
    // harmonic measure: integral over the near circle plus the far-circle mass
    for (double s : {0.1, 0.3}) {
      cplx x(0.42, s * t);
      auto f = [&](double yy) { return poisson_kernel(x, yy, ctx); };
      double mass = boost::math::quadrature::trapezoidal(f, 0.0, 1.0, 1e-13);
      CHECK(std::abs(mass + far_boundary_mass(x, ctx) - 1) < 1e-8);
    }
  }
  CHECK_THROWS(poisson_kernel(cplx(0.1, 0.0), 0.3, ThetaContext(1.0)));
}

TEST_CASE("excursion kernel") {
  for (double t : {0.5, 1.0, 2.0}) {
    ThetaContext ctx(t);
    for (double x : {0.1, 0.6})
      for (double y : {0.35, 0.9}) {
        CHECK(std::abs(excursion_kernel(x, y, ctx) - excursion_kernel(y, x, ctx)) < 1e-12);
        CHECK(excursion_kernel(x, y, ctx) > 0);
      }
  }
  ThetaContext ctx(1.0);
  for (double d : {1e-2, 1e-3}) CHECK(std::abs(excursion_kernel(0.3 + d, 0.3, ctx) - 1 / (kPi * d * d)) < 5.0);
  // t -> infinity: the periodic image sum, approached as -2/t + O(exp(-pi t))
  for (double d : {0.1, 0.37}) {
    double images = 0;
    for (int k = -200000; k <= 200000; ++k) images += 1 / ((d - k) * (d - k));
    images /= kPi;
    CHECK(std::abs(images - kPi / std::pow(std::sin(kPi * d), 2)) < 1e-5);
    for (double t : {12.0, 100.0, 1000.0}) {
      ThetaContext wide(t);
      double h = excursion_kernel(d, 0.0, wide);
      CHECK(std::abs(h - images) < 2.0 / t + 1e-5);
      CHECK(std::abs(h + 2.0 / t - kPi / std::pow(std::sin(kPi * d), 2)) < 1e-9);
    }
  }
  CHECK_THROWS(excursion_kernel(0.2, 0.2, ctx));
}

TEST_CASE("Schwarzian and Bergman connections") {
  for (double t : {0.2, 0.5, 1.0, 2.0}) {
    ThetaContext ctx(t);
    double s6 = schwarzian_connection(ctx) / 6;
    CHECK(s6 + ctx.triple_over_prime() / 3 + 2 * kPi / t == doctest::Approx(0.0));
    CHECK(std::abs(s6 - (-4 * kPi * dlog_eta(t) - 2 * kPi / t)) < 1e-8);
    CHECK(std::abs(bergman_connection(ctx) + 2 * ctx.triple_over_prime()) < 1e-10);
  }
}

TEST_CASE("tangent coordinates") {
  AnnulusChart ch(1.0, {0.3, 0.55, 0.8}, 3);
  TangentCoords m1 = tangent_coordinates(ch, -1);
  CHECK(m1.dz[0] == 1.0);
  CHECK(m1.dt == 0.0);
  TangentCoords m2 = tangent_coordinates(ch, -2);
  CHECK(m2.dt == 2 * kPi);
  CHECK(std::abs(m2.dz[0] + v_field(0.3, 0.0, ch.ctx).real()) < 1e-10);
  CHECK(std::abs(m2.dz[1] - v0_field(0.55, 0.3, ch.ctx).real()) < 1e-14);
  CHECK(m2.da.size() == 3);
  TangentCoords m3 = tangent_coordinates(ch, -3);
  CHECK(m3.dt == 0.0);
  CHECK(std::abs(m3.dz[2] - v0_dy(0.8, 0.3, 1, ch.ctx).real()) < 1e-14);
  CHECK_THROWS(AnnulusChart(1.0, {0.3, 1.3}));
  CHECK_THROWS(tangent_coordinates(ch, 0));
}

TEST_CASE("Weierstrass relations") {
  for (double t : {0.5, 1.0, 2.0}) {
    WeierstrassReport r = weierstrass_checks(ThetaContext(t));
    INFO("t=" << t << " laurent=" << r.laurent_residual << " legendre=" << r.legendre_residual
              << " ode=" << r.ode_residual);
    CHECK(r.ok);
  }
}
