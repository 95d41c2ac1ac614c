#include "doctest.h"
#include "virasoro/theta.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <numbers>

using namespace vir;

namespace {

constexpr double kPi = std::numbers::pi;

double eta_product(double t, int terms) {
  double q = std::exp(-2 * kPi * t), p = 1;
  for (int n = 1; n <= terms; ++n) p *= 1 - std::pow(q, n);
  return std::exp(-kPi * t / 12) * p;
}

}  // namespace

TEST_CASE("eta oracles") {
  double eta_i = boost::math::tgamma(0.25) / (2 * std::pow(kPi, 0.75));
  CHECK(dedekind_eta(1.0) == doctest::Approx(eta_i).epsilon(1e-14));
  CHECK(std::abs(dedekind_eta(1.0) - 0.7682254223) < 1e-10);
  for (double t : {0.05, 0.2, 0.31, 0.7, 1.3, 2.0, 4.5}) {
    INFO("t=" << t);
    CHECK(std::abs(dedekind_eta(1 / t) - std::sqrt(t) * dedekind_eta(t)) < 1e-12);
    CHECK(std::abs(dedekind_eta(t) - eta_product(t, 4000)) < 1e-12);
    double h = 1e-5 * t;
    double fd = (std::log(dedekind_eta(t + h)) - std::log(dedekind_eta(t - h))) / (2 * h);
    CHECK(std::abs(dlog_eta(t) - fd) < 1e-7);
  }
}

TEST_CASE("theta'(0) = 2 pi eta^3") {
  for (double t : {0.3, 0.5, 1.0, 2.0, 3.0}) {
    ThetaContext ctx(t);
    INFO("t=" << t);
    double eta = eta_product(t, 200);
    CHECK(ctx.theta_derivative0(1) == doctest::Approx(2 * kPi * eta * eta * eta).epsilon(1e-13));
    CHECK(std::abs(ctx.theta(0.0)) == 0.0);
  }
}

TEST_CASE("truncation bound") {
  CHECK(ThetaContext(0.3).trunc() >= 12);
  CHECK(ThetaContext(0.3, 12).tail_bound() < 1e-14);
  CHECK_THROWS_AS(ThetaContext(0.3, 2), ThetaTruncationError);
  CHECK_THROWS(ThetaContext(0.0));
}

TEST_CASE("oddness and quasi-periodicity") {
  for (double t : {0.5, 1.0, 2.0}) {
    ThetaContext ctx(t);
    cplx tau(0, t);
    for (double re : {-0.4, 0.13, 0.37})
      for (double im : {-0.2, 0.0, 0.3}) {
        cplx z(re, im * t);
        cplx th = ctx.theta(z);
        INFO("t=" << t << " z=" << z);
        CHECK(std::abs(ctx.theta(-z) + th) < 1e-15 * std::max(1.0, std::abs(th)));
        CHECK(std::abs(ctx.theta(z + 1.0) + th) < 1e-10 * std::max(1.0, std::abs(th)));
        cplx shifted = -std::exp(cplx(0, -kPi) * tau - cplx(0, 2 * kPi) * z) * th;
        CHECK(std::abs(ctx.theta(z + tau) - shifted) < 1e-10 * std::max(1.0, std::abs(shifted)));
      }
  }
}

TEST_CASE("heat equation") {
  // 4 i pi d_tau theta = d_z^2 theta with tau = it, i.e. 4 pi d_t theta = d_z^2 theta
  for (double t : {0.5, 1.0, 2.0}) {
    double h = 1e-5;
    ThetaContext a(t - h), b(t + h), c(t);
    for (double x : {0.1, 0.27, 0.45}) {
      cplx z(x, 0.1);
      cplx dt = (b.theta(z) - a.theta(z)) / (2 * h);
      CHECK(std::abs(4 * kPi * dt - c.theta(z, 2)) < 1e-8);
    }
  }
}

TEST_CASE("theta'''/theta' via eta") {
  for (double t : {0.1, 0.25, 0.3, 0.6, 1.0, 2.5}) {
    ThetaContext ctx(t);
    INFO("t=" << t);
    CHECK(std::abs(ctx.triple_over_prime() - 12 * kPi * dlog_eta(t)) < 1e-8);
    if (t >= 0.3)
      CHECK(std::abs(ctx.theta_derivative0(3) / ctx.theta_derivative0(1) - 12 * kPi * dlog_eta(t)) < 1e-10);
  }
}

TEST_CASE("term-by-term derivatives match finite differences") {
  ThetaContext ctx(1.0);
  cplx z(0.23, 0.11);
  double h = 1e-4;
  for (int k = 0; k <= 3; ++k) {
    cplx fd = (ctx.theta(z + h, k) - ctx.theta(z - h, k)) / (2 * h);
    CHECK(std::abs(fd - ctx.theta(z, k + 1)) < 1e-6 * std::max(1.0, std::abs(fd)));
    cplx lfd = (ctx.log_derivative(z + h, k) - ctx.log_derivative(z - h, k)) / (2 * h);
    CHECK(std::abs(lfd - ctx.log_derivative(z, k + 1)) < 1e-6 * std::max(1.0, std::abs(lfd)));
  }
}

TEST_CASE("log derivative reduction agrees with the direct sum") {
  ThetaContext ctx(0.8);
  for (double im : {0.1, 0.5, 0.9, 1.3}) {
    cplx z(0.31, im);
    CHECK(std::abs(ctx.log_derivative(z) - ctx.log_derivative_direct(z)) < 1e-9);
  }
}

TEST_CASE("Laurent coefficients of theta'/theta") {
  ThetaContext ctx(1.0);
  CHECK(std::abs(ctx.regular_coeff(1) - ctx.triple_over_prime() / 3) < 1e-12);
  CHECK(ctx.regular_coeff(2) == 0.0);
  double u = 0.02;
  double series = 1 / u;
  for (int j = 1; j <= 15; j += 2) series += ctx.regular_coeff(j) * std::pow(u, j);
  CHECK(std::abs(series - ctx.log_derivative(u).real()) < 1e-11);
}
