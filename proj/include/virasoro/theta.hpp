#pragma once

#include <complex>
#include <stdexcept>

namespace vir {

using cplx = std::complex<double>;

struct ThetaTruncationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Odd theta function of C/(Z + itZ),
//   theta(z) = 2 sum_{n>=0} (-1)^n exp(-pi t (n+1/2)^2) sin((2n+1) pi z),
// normalized so that theta'(0) = 2 pi eta(it)^3.
class ThetaContext {
 public:
  static constexpr double kTailTarget = 1e-14;

  // trunc = 0 picks the smallest count >= 12 whose tail (for |Im z| <= t/2)
  // is below 1e-16; an explicit trunc whose tail bound exceeds 1e-14 throws.
  explicit ThetaContext(double t, int trunc = 0);

  double t() const { return t_; }
  double q() const { return q_; }  // exp(-2 pi t)
  int trunc() const { return trunc_; }
  // Bound on the omitted terms of the theta sum for |Im z| <= t/2, relative to theta'(0).
  double tail_bound() const;

  // k-th z-derivative of theta by the direct sum, adaptive in Im z.
  cplx theta(cplx z, int k = 0) const;
  // theta^{(k)}(0) for odd k.
  double theta_derivative0(int k) const;
  // theta'''/theta'(0); routed through eta when t < 0.3.
  double triple_over_prime() const;
  // d^k/dz^k of theta'/theta at z, after reducing z into the period strip
  // |Re z| <= 1/2, |Im z| <= t/2 (k = 0 picks up -2 pi i per period it).
  cplx log_derivative(cplx z, int k = 0) const;
  // theta'/theta evaluated by the direct sum with no period reduction.
  cplx log_derivative_direct(cplx z) const;
  // r_j in theta'/theta(u) = 1/u + sum_j r_j u^j (only odd j are nonzero).
  double regular_coeff(int j) const;

 private:
  cplx theta_scaled(cplx z, int k = 0) const;  // exp(pi t / 4) theta^{(k)}(z)
  double t_, q_;
  int trunc_;
};

// eta(it) = q^{1/24} prod (1 - q^n); routed through eta(i/t) = sqrt(t) eta(it) for t < 0.3.
double dedekind_eta(double t);
// d/dt log eta(it).
double dlog_eta(double t);

}  // namespace vir
