#include "virasoro/sle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include <boost/math/special_functions/gamma.hpp>

namespace vir {

namespace {

struct Slit {
  double w, dt;
};

// Image under the current map of the boundary curve of one hull, refined
// adaptively so that neighbouring images stay close relative to their
// distance from the driver.
struct TrackedHull {
  const HullSpec* hull;
  std::vector<double> s;
  std::vector<cplx_t> z;
  bool active = true, hit = false, side = false;

  TrackedHull(const HullSpec& h, int n) : hull(&h) {
    for (int j = 0; j <= n; ++j) {
      s.push_back(double(j) / n);
      z.push_back(h.boundary(s.back()));
    }
  }

  void refine(double w, double ratio, const std::vector<Slit>& history) {
    double r2 = ratio * ratio;
    for (std::size_t i = 0; i + 1 < z.size(); ++i) {
      while (std::norm(z[i] - z[i + 1]) > r2 * std::min(std::norm(z[i] - w), std::norm(z[i + 1] - w)) &&
             s[i + 1] - s[i] > 1e-13) {
        double m = 0.5 * (s[i] + s[i + 1]);
        cplx_t p = hull->boundary(m);
        for (const Slit& sl : history) p = slit_map(p, sl.w, sl.dt);
        s.insert(s.begin() + i + 1, m);
        z.insert(z.begin() + i + 1, p);
      }
    }
  }

  double gap(double w) const {
    double g = INFINITY;
    for (cplx_t p : z) g = std::min(g, std::norm(p - w));
    return std::sqrt(g);
  }

  double span() const { return std::abs(z.front() - z.back()) + std::abs(z[z.size() / 2] - z.front()); }

  // A boundary point seen from the driver at angle > pi/2 lies to the left of the trace.
  bool left_of_trace(double w) const {
    for (cplx_t p : z)
      if (std::arg(p - w) > std::numbers::pi / 2) return true;
    return false;
  }
};

struct TraceOutcome {
  bool hit = false, side = false, unresolved = false;
  long steps = 0;
  std::vector<Slit> history;
};

TraceOutcome run_trace(const SLEParams& p, const HullSpec& hull, KeyedStream& rng, const RestrictionOptions& opt) {
  TrackedHull th(hull, opt.initial_points);
  TraceOutcome out;
  double w = 0, t = 0, kappa = p.kappa_d;
  while (true) {
    th.refine(w, opt.refine_ratio, out.history);
    double g = th.gap(w), sp = th.span();
    if (g < opt.hit_ratio * sp) {
      out.hit = true;
      break;
    }
    if (g > opt.release_ratio * sp || t >= opt.t_max || out.steps >= opt.max_steps) {
      out.unresolved = g <= opt.release_ratio * sp;
      out.hit = out.side = th.left_of_trace(w);
      break;
    }
    double dt = opt.step_constant * g * g / kappa;
    double dw = std::sqrt(kappa * dt) * rng.normal();
    double mid = w + dw / 2;
    w += dw;
    t += dt;
    ++out.steps;
    out.history.push_back({mid, dt});
    for (cplx_t& z : th.z) z = slit_map(z, mid, dt);
  }
  return out;
}

void validate_restriction(const HullSpec& h, long n) {
  if (n < 1) throw std::invalid_argument("restriction: n_samples >= 1");
  if (h.distance(0.0) < 1e-3) throw std::domain_error("restriction: hull too close to 0 (" + h.describe() + ")");
}

RestrictionEstimate estimate_one(const SLEParams& p, const HullSpec& hull, long n_samples, std::uint64_t seed,
                                 std::uint64_t purpose, const RestrictionOptions& opt, double& steps) {
  validate_restriction(hull, n_samples);
  struct Tally {
    long avoided = 0, side = 0, unresolved = 0;
    double steps = 0;
  };
  // samples i = k, k + n_threads, ... go to worker k; tallies are plain sums, so
  // the result does not depend on the thread count
  long n_threads = std::clamp<long>(std::thread::hardware_concurrency(), 1, 64);
  n_threads = std::min(n_threads, n_samples);
  std::vector<Tally> tally(n_threads);
  auto work = [&](long k) {
    for (long i = k; i < n_samples; i += n_threads) {
      KeyedStream rng(seed, i, purpose);
      TraceOutcome o = run_trace(p, hull, rng, opt);
      tally[k].steps += o.steps;
      if (!o.hit) ++tally[k].avoided;
      if (o.side) ++tally[k].side;
      if (o.unresolved) ++tally[k].unresolved;
    }
  };
  std::vector<std::thread> pool;
  for (long k = 1; k < n_threads; ++k) pool.emplace_back(work, k);
  work(0);
  for (std::thread& t : pool) t.join();

  RestrictionEstimate e;
  e.hull = hull;
  e.target = std::pow(hull.uniformizer_prime0(), p.h_d);
  e.n = n_samples;
  steps = 0;
  for (const Tally& t : tally) {
    e.avoided += t.avoided;
    e.side_decided += t.side;
    e.unresolved += t.unresolved;
    steps += t.steps;
  }
  steps /= n_samples;
  e.estimate = double(e.avoided) / e.n;
  e.stderr_ = std::sqrt(std::max(e.estimate * (1 - e.estimate), 1.0 / e.n) / e.n);
  e.z_score = (e.estimate - e.target) / e.stderr_;
  return e;
}

}  // namespace

RestrictionEstimate restriction_probability(const SLEParams& p, const HullSpec& hull, long n_samples,
                                            std::uint64_t seed, const RestrictionOptions& opt) {
  double steps;
  return estimate_one(p, hull, n_samples, seed, 2, opt, steps);
}

ExponentFit fit_restriction_exponent(const std::vector<RestrictionEstimate>& estimates) {
  if (estimates.empty()) throw std::invalid_argument("fit_restriction_exponent: no estimates");
  double sxy = 0, sxx = 0;
  for (const RestrictionEstimate& e : estimates) {
    if (e.avoided == 0) throw std::domain_error("fit_restriction_exponent: hull never avoided");
    double x = std::log(e.hull.uniformizer_prime0()), y = std::log(e.estimate);
    double sy = e.stderr_ / e.estimate;
    sxy += x * y / (sy * sy);
    sxx += x * x / (sy * sy);
  }
  return {sxy / sxx, 1 / std::sqrt(sxx)};
}

RestrictionStudy restriction_study(const SLEParams& p, const std::vector<HullSpec>& hulls, long n_samples,
                                   std::uint64_t seed, const RestrictionOptions& opt) {
  if (hulls.empty()) throw std::invalid_argument("restriction: no hulls");
  RestrictionStudy st;
  for (std::size_t k = 0; k < hulls.size(); ++k) {
    double steps;
    // each hull gets its own stream family, so the estimates are independent
    st.hulls.push_back(estimate_one(p, hulls[k], n_samples, seed, 16 + k, opt, steps));
    st.mean_steps.push_back(steps);
  }
  st.fit = fit_restriction_exponent(st.hulls);
  return st;
}

DetectionAgreement restriction_detection_agreement(const SLEParams& p, const HullSpec& hull, long n_samples,
                                                   std::uint64_t seed, double tip_tol,
                                                   const RestrictionOptions& opt) {
  validate_restriction(hull, n_samples);
  DetectionAgreement a;
  for (long i = 0; i < n_samples; ++i) {
    KeyedStream rng(seed, i, 2);
    TraceOutcome o = run_trace(p, hull, rng, opt);
    bool tip_hit = false;
    std::size_t n = o.history.size();
    for (std::size_t k = 0; k < n && !tip_hit; ++k) {
      cplx_t z(o.history[k].w, 2 * std::sqrt(o.history[k].dt));
      for (std::size_t j = k; j-- > 0;) z = slit_map_inverse(z, o.history[j].w, o.history[j].dt);
      if (hull.distance(z) < tip_tol) tip_hit = true;
    }
    ++a.n;
    if (tip_hit == o.hit) ++a.agree;
  }
  a.rate = double(a.agree) / a.n;
  return a;
}

double martingale_expectation(const SLEParams& p, double y, double T) {
  if (!(y > 0 && T > 0) || !(p.kappa_d > 0 && p.kappa_d < 8)) throw std::invalid_argument("martingale_expectation: bad arguments");
  double k = p.kappa_d;
  return 1 - boost::math::gamma_q((8 - k) / (2 * k), y * y / (2 * k * T));
}

MartingaleReport martingale_check(const SLEParams& p, double y, double T, long n_samples, std::uint64_t seed,
                                  int n_steps, double h_override) {
  if (!(y > 0 && T > 0) || n_samples < 2 || n_steps < 1) throw std::invalid_argument("martingale_check: bad arguments");
  MartingaleReport r;
  r.h_used = h_override >= 0 ? h_override : p.h_d;
  double h = r.h_used, sum = 0, sum2 = 0;
  // Real spectator: X = g - W only ever needs steps small against X^2, so the
  // step adapts to the gap and is capped at T / n_steps.
  double dt_cap = T / n_steps, dt_floor = 1e-14 * T, kappa = std::max(p.kappa_d, 1e-12);
  for (long s = 0; s < n_samples; ++s) {
    KeyedStream rng(seed, s, 3);
    double g = y, gp = 1, w = 0, t = 0;
    bool swallowed = false;
    while (t < T) {
      double dt = std::min({dt_cap, T - t, 0.01 * (g - w) * (g - w) / kappa});
      if (dt < dt_floor) {
        swallowed = true;
        break;
      }
      double dw = std::sqrt(p.kappa_d * dt) * rng.normal(), mid = w + dw / 2;
      double u = g - mid;
      if (u <= 0) {
        swallowed = true;
        break;
      }
      double root = std::sqrt(u * u + 4 * dt);
      gp *= u / root;
      g = mid + root;
      w += dw;
      t = T - t - dt <= 0 ? T : t + dt;
    }
    ++r.n;
    if (swallowed) {
      ++r.swallowed;
      continue;
    }
    double m = std::pow(gp, h) * std::pow((g - w) / y, -2 * h);
    sum += m;
    sum2 += m * m;
  }
  long used = r.n - r.swallowed;
  if (used < 2) throw std::runtime_error("martingale_check: every sample was swallowed");
  r.estimate = sum / used;
  r.stderr_ = std::sqrt(std::max(0.0, sum2 / used - r.estimate * r.estimate) / used);
  r.target = martingale_expectation(p, y, T);
  r.z_score = (r.estimate - r.target) / r.stderr_;
  r.valid = r.swallowed <= r.n / 1000;
  return r;
}

}  // namespace vir
