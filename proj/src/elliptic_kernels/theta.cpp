#include "virasoro/theta.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

namespace vir {

namespace {

constexpr double kPi = std::numbers::pi;

double tail_for(double t, int N) {
  // each omitted term is at most 2 exp(-pi t (n^2 - 1/4)) when |Im z| <= t/2
  double n = N;
  return 4.0 * std::exp(-kPi * t * (n * n - 0.25)) / (1.0 - std::exp(-2.0 * kPi * t * std::max(1.0, n)));
}

// exp(pi t / 4) sum 2 (-1)^n exp(-pi t (n+1/2)^2) f(n) with |f(n)| <= exp(lg(n)),
// stopping once past the peak and 41 nats below it. The prefactor keeps large t
// from underflowing.
template <class T, class Term, class LogBound>
T theta_sum_scaled(double t, int min_terms, Term term, LogBound lg) {
  T s{};
  double lmax = -std::numeric_limits<double>::infinity(), prev = lmax;
  for (int n = 0;; ++n) {
    double h = n + 0.5;
    double e = -kPi * t * (h * h - 0.25);
    double l = e + lg(n);
    lmax = std::max(lmax, l);
    if (n >= min_terms && l < prev && l < lmax - 41.0) break;
    prev = l;
    double sign = (n % 2) ? -1.0 : 1.0;
    s += term(n) * (2.0 * sign * std::exp(e));
    if (n > 100000) throw ThetaTruncationError("theta: series did not settle");
  }
  return s;
}

double binom(int n, int k) {
  double r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

ThetaContext::ThetaContext(double t, int trunc) : t_(t), q_(std::exp(-2.0 * kPi * t)), trunc_(trunc) {
  if (!(t > 0)) throw std::domain_error("ThetaContext: t must be positive");
  if (trunc == 0) {
    trunc_ = 12;
    while (tail_for(t_, trunc_) > 1e-16) ++trunc_;
  } else if (tail_for(t_, trunc_) > kTailTarget) {
    throw ThetaTruncationError("ThetaContext: trunc=" + std::to_string(trunc) + " leaves tail " +
                               std::to_string(tail_for(t_, trunc_)) + " at t=" + std::to_string(t));
  }
}

double ThetaContext::tail_bound() const { return tail_for(t_, trunc_); }

cplx ThetaContext::theta(cplx z, int k) const { return std::exp(-kPi * t_ / 4) * theta_scaled(z, k); }

cplx ThetaContext::theta_scaled(cplx z, int k) const {
  double ay = std::abs(z.imag());
  return theta_sum_scaled<cplx>(
      t_, trunc_,
      [&](int n) {
        double a = (2 * n + 1) * kPi;
        return std::pow(a, k) * std::sin(a * z + k * kPi / 2);
      },
      [&](int n) {
        double a = (2 * n + 1) * kPi;
        return k * std::log(a) + a * ay;
      });
}

double ThetaContext::theta_derivative0(int k) const {
  if (k % 2 == 0) return 0.0;
  double s = ((k - 1) / 2) % 2 ? -1.0 : 1.0;
  return s * std::exp(-kPi * t_ / 4) * theta_sum_scaled<double>(
                 t_, trunc_, [&](int n) { return std::pow((2 * n + 1) * kPi, k); },
                 [&](int n) { return k * std::log((2 * n + 1) * kPi); });
}

double ThetaContext::triple_over_prime() const {
  if (t_ < 0.3) return 12.0 * kPi * dlog_eta(t_);
  return theta_derivative0(3) / theta_derivative0(1);
}

cplx ThetaContext::log_derivative(cplx z, int k) const {
  double m = std::round(z.imag() / t_);
  cplx w = z - cplx(0.0, m * t_);
  w -= std::round(w.real());
  cplx th = theta_scaled(w);
  if (th == cplx(0)) throw std::domain_error("log_derivative: pole");
  std::vector<cplx> a(k + 2), g(k + 2);
  for (int j = 1; j <= k + 1; ++j) a[j] = theta_scaled(w, j) / th;
  for (int n = 1; n <= k + 1; ++n) {
    g[n] = a[n];
    for (int j = 1; j < n; ++j) g[n] -= binom(n - 1, j - 1) * g[j] * a[n - j];
  }
  cplx r = g[k + 1];
  if (k == 0) r -= cplx(0.0, 2.0 * kPi * m);
  return r;
}

cplx ThetaContext::log_derivative_direct(cplx z) const { return theta_scaled(z, 1) / theta_scaled(z); }

double ThetaContext::regular_coeff(int j) const {
  if (j < 0 || j % 2 == 0) return 0.0;
  int imax = (j + 1) / 2;
  double d1 = theta_derivative0(1);
  if (d1 == 0) throw std::domain_error("regular_coeff: theta'(0) underflows");
  std::vector<double> b(imax + 1), l(imax + 1);
  double fact = 1;
  for (int i = 1; i <= imax; ++i) {
    fact *= (2 * i) * (2 * i + 1);
    b[i] = theta_derivative0(2 * i + 1) / (fact * d1);
  }
  // log(1 + sum b_i x^i) = sum l_i x^i
  for (int i = 1; i <= imax; ++i) {
    double s = i * b[i];
    for (int k = 1; k < i; ++k) s -= k * l[k] * b[i - k];
    l[i] = s / i;
  }
  return 2.0 * imax * l[imax];
}

double dedekind_eta(double t) {
  if (!(t > 0)) throw std::domain_error("dedekind_eta: t must be positive");
  if (t < 0.3) return dedekind_eta(1.0 / t) / std::sqrt(t);
  double q = std::exp(-2.0 * kPi * t), p = 1.0, qn = q;
  while (qn > 1e-18) {
    p *= 1.0 - qn;
    qn *= q;
  }
  return std::exp(-kPi * t / 12.0) * p;
}

double dlog_eta(double t) {
  if (!(t > 0)) throw std::domain_error("dlog_eta: t must be positive");
  if (t < 0.3) return -dlog_eta(1.0 / t) / (t * t) - 0.5 / t;
  double q = std::exp(-2.0 * kPi * t), s = 0.0, qn = q;
  for (int n = 1; n * qn > 1e-18; ++n, qn *= q) s += n * qn / (1.0 - qn);
  return -kPi / 12.0 + 2.0 * kPi * s;
}

}  // namespace vir
