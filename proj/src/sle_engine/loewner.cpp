#include "virasoro/sle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace vir {

SLEParams SLEParams::from_kappa(const Rational& kappa) {
  if (!(kappa > 0 && kappa <= 4)) throw std::domain_error("SLEParams: kappa must lie in (0, 4]");
  SLEParams p;
  p.kappa = kappa;
  p.tau = 4 / kappa;
  p.c = (6 - kappa) * (3 * kappa - 8) / (2 * kappa);
  p.h = (6 - kappa) / (2 * kappa);
  for (Rational* r : {&p.kappa, &p.tau, &p.c, &p.h}) r->canonicalize();
  p.kappa_d = to_double(p.kappa);
  p.c_d = to_double(p.c);
  p.h_d = to_double(p.h);
  return p;
}

SLEParams SLEParams::parse(const std::string& kappa) { return from_kappa(parse_rational(kappa)); }

KeyedStream::KeyedStream(std::uint64_t seed, std::uint64_t index, std::uint64_t purpose) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                    static_cast<std::uint32_t>(purpose), 0x5eedu};
  engine_.seed(seq);
}

namespace {

// sqrt(v) with the branch in the closed upper half-plane; on the real axis the
// sign follows `real_side` (the side of the driver the point sits on).
cplx_t upper_sqrt(cplx_t v, double real_side) {
  double x = v.real(), y = v.imag(), m = std::sqrt(x * x + y * y);
  double re, im;
  if (x >= 0) {
    re = std::sqrt(0.5 * (m + x));
    im = re > 0 ? 0.5 * y / re : 0.0;
  } else {
    im = std::sqrt(0.5 * (m - x));
    re = 0.5 * y / im;
  }
  if (im < 0 || (im == 0 && (re < 0) != (real_side < 0))) return {-re, -im};
  return {re, im};
}

}  // namespace

cplx_t slit_map(cplx_t z, double w, double dt) {
  cplx_t u = z - w;
  return w + upper_sqrt(u * u + 4 * dt, u.real());
}

cplx_t slit_map_derivative(cplx_t z, double w, double dt) {
  cplx_t u = z - w;
  return u / upper_sqrt(u * u + 4 * dt, u.real());
}

cplx_t slit_map_inverse(cplx_t z, double w, double dt) {
  cplx_t u = z - w;
  return w + upper_sqrt(u * u - 4 * dt, u.real());
}

int LoewnerState::swallowed_count() const {
  return static_cast<int>(std::count_if(tracked.begin(), tracked.end(), [](const auto& p) { return p.swallowed; }));
}

std::vector<cplx_t> LoewnerState::tips() const {
  std::vector<cplx_t> out;
  std::size_t n = slit_at.size();
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    double dt = times[k + 1] - times[k];
    cplx_t z = cplx_t(slit_at[k], 2 * std::sqrt(dt));
    for (std::size_t j = k; j-- > 0;) z = slit_map_inverse(z, slit_at[j], times[j + 1] - times[j]);
    out.push_back(z);
  }
  return out;
}

LoewnerState sample_trace(const SLEParams& p, double T, int n_steps, std::uint64_t seed,
                          const std::vector<cplx_t>& points, std::uint64_t sample_index) {
  if (n_steps < 1) throw std::invalid_argument("sample_trace: n_steps >= 1");
  if (!(T > 0)) throw std::invalid_argument("sample_trace: T > 0");
  LoewnerState st;
  st.kappa = p.kappa_d;
  for (cplx_t z : points) {
    if (z.imag() < 0) throw std::invalid_argument("sample_trace: tracked points must lie in the closed upper half-plane");
    st.tracked.push_back({z, z});
  }
  KeyedStream rng(seed, sample_index, 1);
  double dt = T / n_steps, w = 0, sd = std::sqrt(p.kappa_d * dt);
  st.times.push_back(0);
  st.driver.push_back(0);
  for (int k = 0; k < n_steps; ++k) {
    double dw = sd * rng.normal();
    double mid = w + dw / 2;
    w += dw;
    for (TrackedPoint& tp : st.tracked) {
      if (tp.swallowed) continue;
      cplx_t u = tp.g - mid;
      if (tp.g.imag() == 0 && u.real() == 0) {
        tp.swallowed = true;
        continue;
      }
      tp.gprime *= slit_map_derivative(tp.g, mid, dt);
      tp.g = slit_map(tp.g, mid, dt);
      // a real point that ends up on the other side of the driver has been jumped over
      if (tp.g.imag() == 0 && (tp.g.real() - w) * u.real() < 0) tp.swallowed = true;
    }
    st.times.push_back((k + 1) * dt);
    st.driver.push_back(w);
    st.slit_at.push_back(mid);
  }
  return st;
}

HullSpec HullSpec::semidisk(double a, double r) {
  if (!(a > 0 && r > 0 && r < a)) throw std::invalid_argument("HullSpec: semidisk needs 0 < r < a");
  HullSpec h;
  h.shape = Shape::Semidisk;
  h.a = a;
  h.r = r;
  return h;
}

HullSpec HullSpec::slit(double x, double y) {
  if (!(x > 0 && y > 0)) throw std::invalid_argument("HullSpec: slit needs x > 0, y > 0");
  HullSpec h;
  h.shape = Shape::Slit;
  h.x = x;
  h.y = y;
  return h;
}

HullSpec HullSpec::parse(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 3) throw std::invalid_argument("hull spec: expected shape:p:q, got '" + s + "'");
  double u = std::stod(parts[1]), v = std::stod(parts[2]);
  if (parts[0] == "semidisk") return semidisk(u, v);
  if (parts[0] == "slit") return slit(u, v);
  throw std::invalid_argument("hull spec: unknown shape '" + parts[0] + "'");
}

cplx_t HullSpec::boundary(double s) const {
  if (shape == Shape::Semidisk) {
    if (s <= 0) return {a + r, 0};
    if (s >= 1) return {a - r, 0};
    return cplx_t(a, 0) + std::polar(r, std::numbers::pi * s);
  }
  return {x, y * std::clamp(s, 0.0, 1.0)};
}

bool HullSpec::contains(cplx_t z) const {
  if (shape == Shape::Semidisk) return std::abs(z - a) <= r && z.imag() >= 0;
  return z.real() == x && z.imag() >= 0 && z.imag() <= y;
}

double HullSpec::distance(cplx_t z) const {
  if (shape == Shape::Semidisk) return std::max(0.0, std::abs(z - a) - r);
  double dy = std::clamp(z.imag(), 0.0, y);
  return std::abs(z - cplx_t(x, dy));
}

cplx_t HullSpec::uniformizer(cplx_t z) const {
  if (shape == Shape::Semidisk) return z + r * r / (z - a) + r * r / a;
  cplx_t u = z - x;
  return x + upper_sqrt(u * u + y * y, u.real()) + (std::hypot(x, y) - x);
}

double HullSpec::uniformizer_prime0() const {
  if (shape == Shape::Semidisk) return 1 - r * r / (a * a);
  return x / std::hypot(x, y);
}

std::string HullSpec::describe() const {
  std::ostringstream os;
  if (shape == Shape::Semidisk)
    os << "semidisk:" << a << ":" << r;
  else
    os << "slit:" << x << ":" << y;
  return os.str();
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_statistic: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0;
  while (i < a.size() && j < b.size()) {
    double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == v) ++i;
    while (j < b.size() && b[j] == v) ++j;
    d = std::max(d, std::abs(double(i) / a.size() - double(j) / b.size()));
  }
  return d;
}

ScalingReport scaling_check(const SLEParams& p, double lambda, long n_samples, std::uint64_t seed, int n_steps) {
  if (!(lambda > 0) || n_samples < 2) throw std::invalid_argument("scaling_check: bad arguments");
  std::vector<double> re1, im1, re2, im2;
  for (long s = 0; s < n_samples; ++s) {
    LoewnerState a = sample_trace(p, 1.0, n_steps, seed, {cplx_t(0, 1)}, 2 * s);
    LoewnerState b = sample_trace(p, lambda * lambda, n_steps, seed, {cplx_t(0, lambda)}, 2 * s + 1);
    cplx_t ga = a.tracked[0].g, gb = b.tracked[0].g / lambda;
    re1.push_back(ga.real());
    im1.push_back(ga.imag());
    re2.push_back(gb.real());
    im2.push_back(gb.imag());
  }
  ScalingReport r;
  r.ks_re = ks_statistic(re1, re2);
  r.ks_im = ks_statistic(im1, im2);
  // alpha = 0.001 two-sample critical value
  r.critical = 1.949 * std::sqrt(2.0 / n_samples);
  r.ok = r.ks_re < r.critical && r.ks_im < r.critical;
  return r;
}

}  // namespace vir
