#include "virasoro/poisson_variation.hpp"

#include <stdexcept>

namespace vir {

namespace {

int zid() { return var_id("z", true); }
int wid() { return var_id("w", true); }

MultiPoly zpow(int v, int k) { return MultiPoly(1).shift(v, k); }

}  // namespace

MultiPoly invert_circle(const MultiPoly& p) {
  int z = zid(), w = wid();
  MultiPoly r;
  for (const auto& [m, c] : p.terms()) {
    Monomial q = m;
    q[z] = static_cast<int8_t>(-m[z]);
    q[w] = static_cast<int8_t>(-m[w]);
    r += MultiPoly::monomial(q, c);
  }
  return r;
}

KernelVariation kernel_variation(int n) {
  if (n > -2) throw std::invalid_argument("kernel_variation: n must be <= -2");
  int zi = zid(), wi = wid();
  MultiPoly z = MultiPoly::var(zi), w = MultiPoly::var(wi);
  MultiPoly zw = z - w;
  // A(x) = x^{n+1} - x^{1-n},  A'(x) = (n+1) x^n + (n-1) x^{-n}
  auto A = [&](int v) { return zpow(v, n + 1) - zpow(v, 1 - n); };
  auto dA = [&](int v) { return zpow(v, n) * Rational(n + 1) + zpow(v, -n) * Rational(n - 1); };

  KernelVariation kv{n, z, w, {}, {}, {}};
  // d/dt of -zw phi'(z)phi'(w)/(phi(z)-phi(w))^2 at t=0, over -zw/(z-w)^3
  kv.r_numerator = zw * (dA(zi) + dA(wi)) - (A(zi) - A(wi)) * Rational(2);

  MultiPoly s;
  for (int i = 0; i <= -n - 2; ++i) {
    int j = -n - 2 - i;
    s += (zpow(zi, i) * zpow(wi, j)) * Rational((i + 1) * (j + 1));
  }
  kv.r_closed_form = (z * w) * s * Rational(2);

  // d/dt of ((phi(z)+phi(w))/(phi(z)-phi(w))) z phi'(z)/phi(z), times (z-w)^2
  MultiPoly zpw = z + w;
  MultiPoly nz = (zpow(zi, n) + zpow(zi, -n)) * Rational(n);
  kv.q_numerator = (A(zi) + A(wi)) * zw - (A(zi) - A(wi)) * zpw + nz * zpw * zw;
  return kv;
}

ReRCheck check_re_r_closed_form(int n) {
  KernelVariation kv = kernel_variation(n);
  MultiPoly zw = kv.z - kv.w;
  MultiPoly zw3 = zw * zw * zw;
  // 2 Re R (z-w)^3 = -zw N(z,w) + (zw)^2 N(1/z,1/w)
  MultiPoly prod = kv.z * kv.w;
  MultiPoly lhs = -(prod * kv.r_numerator) + prod * prod * invert_circle(kv.r_numerator);
  MultiPoly rhs = (kv.r_closed_form + invert_circle(kv.r_closed_form)) * zw3;
  return {n, lhs - rhs};
}

QCheck check_q_removable(int n) {
  KernelVariation kv = kernel_variation(n);
  int zi = zid(), wi = wid();
  // clear negative powers, then divide by (z-w) twice
  int shift = -n;
  MultiPoly p = kv.q_numerator.shift(zi, shift).shift(wi, shift);
  auto [q1, r1] = divide_by_linear(p, zi, kv.w);
  auto [q2, r2] = divide_by_linear(q1, zi, kv.w);
  QCheck out{n, r1, r2, q2.shift(zi, -shift).shift(wi, -shift)};
  return out;
}

}  // namespace vir
