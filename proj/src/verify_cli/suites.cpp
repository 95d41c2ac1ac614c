#include "virasoro/annulus.hpp"
#include "virasoro/cylinder.hpp"
#include "virasoro/grid_loops.hpp"
#include "virasoro/halfplane.hpp"
#include "virasoro/hydro.hpp"
#include "virasoro/localization.hpp"
#include "virasoro/poisson_variation.hpp"
#include "virasoro/sle.hpp"
#include "virasoro/theta.hpp"
#include "virasoro/verify.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <sstream>

namespace vir {

namespace {

constexpr double kPi = std::numbers::pi;

std::string num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

CheckResult exact_check(const std::string& name, long failures, const std::string& detail = "") {
  CheckResult r;
  r.name = name;
  r.measured = double(failures);
  r.comparison = "exact";
  r.passed = failures == 0;
  r.detail = failures == 0 ? detail : "failing: " + detail;
  return r;
}

// measured < tolerance
CheckResult below_check(const std::string& name, double measured, double tolerance, const std::string& detail = "") {
  CheckResult r;
  r.name = name;
  r.measured = measured;
  r.tolerance = tolerance;
  r.comparison = "below";
  r.passed = measured < tolerance;
  r.detail = detail;
  return r;
}

// |estimate - target| <= n_sigma * stderr
CheckResult sigma_check(const std::string& name, double estimate, double target, double stderr_, double n_sigma,
                        const std::string& extra = "") {
  CheckResult r;
  r.name = name;
  r.measured = estimate;
  r.target = target;
  r.tolerance = n_sigma;
  r.comparison = "sigma";
  double z = (estimate - target) / stderr_;
  r.passed = std::abs(z) <= n_sigma;
  r.detail = "stderr " + num(stderr_) + ", z " + num(z) + (extra.empty() ? "" : ", " + extra);
  return r;
}

// the statistic must exceed a threshold (negative controls)
CheckResult above_check(const std::string& name, double measured, double threshold, const std::string& detail = "") {
  CheckResult r;
  r.name = name;
  r.measured = measured;
  r.tolerance = threshold;
  r.comparison = "above";
  r.passed = measured > threshold;
  r.detail = detail;
  return r;
}

void append(std::string& list, const std::string& item) { list += (list.empty() ? "" : " ") + item; }

using Results = std::vector<CheckResult>;

// ---- symbolic ------------------------------------------------------------

Results halfplane_relations(const RunConfig& cfg, bool virasoro) {
  HalfPlaneChart ch = HalfPlaneChart::make(cfg.spectators, cfg.jet_order);
  long bad = 0;
  std::string where;
  for (const RelationRow& r : halfplane_relation_table(cfg.spectators, cfg.jet_order, 3, virasoro))
    if (!r.ok) ++bad, append(where, "(" + std::to_string(r.m) + "," + std::to_string(r.n) + ")");
  std::string setting = "m,n in [-3,3], N=" + std::to_string(cfg.spectators) + ", k=" + std::to_string(cfg.jet_order);
  Results out{exact_check(virasoro ? "virasoro_relations" : "witt_relations", bad, bad ? where : setting)};
  if (virasoro) {
    DiffOperator c = commutator_jet(ch, virasoro_generator(ch, 2), virasoro_generator(ch, -2));
    DiffOperator r = restrict_jet(ch, virasoro_generator(ch, 0) * MultiPoly(4), c.valid()) +
                     DiffOperator::multiplication(ch.central_charge * Rational(1, 2));
    out.push_back(exact_check("virasoro_L2_Lm2_central_term", c == r ? 0 : 1, "[L2,L-2] = 4 L0 + c/2"));
  }
  return out;
}

Results schwarzian_axioms(const RunConfig&) {
  HalfPlaneChart ch = HalfPlaneChart::make(0, 6);
  MultiPoly S = schwarzian_connection(ch);
  long bad = 0;
  std::string where;
  if (!(witt_vector_field(ch, 0).apply(S) == S * 2)) ++bad, append(where, "l0 S = 2S");
  if (!witt_vector_field(ch, 1).apply(S).is_zero()) ++bad, append(where, "l1 S = 0");
  if (!(witt_vector_field(ch, 2).apply(S) == MultiPoly(6))) ++bad, append(where, "l2 S = 6");
  return {exact_check("schwarzian_axioms", bad, bad ? where : "S = 6(a2^2 - a3)")};
}

Results bpz_reduction(const RunConfig&) {
  long bad = 0;
  std::string where;
  for (const char* k : {"2", "8/3", "3", "4"}) {
    SLEParams p = SLEParams::parse(k);
    for (int N = 0; N <= 3; ++N) {
      HalfPlaneChart ch = HalfPlaneChart::make(N, 6);
      ch.seed_weight = p.h;
      ch.central_charge = p.c;
      WeightVector delta = delta21_on_symbol(ch, p.tau);
      bool ok = euler_normal_form(ch, add(delta, bpz_target(ch, p.tau), -1)).empty();
      for (const auto& [mono, coef] : euler_normal_form(ch, delta))
        for (int j = 2; j <= ch.jet_order; ++j)
          if (coef.uses_var(ch.a[j])) ok = false;
      if (!ok) ++bad, append(where, std::string("kappa=") + k + ",N=" + std::to_string(N));
    }
  }
  return {exact_check("bpz_reduction", bad, bad ? where : "kappa in {2, 8/3, 3, 4}, N = 0..3")};
}

MultiPoly at_identity(const HydroChart& ch, MultiPoly p) {
  for (int J = 2; J <= ch.top_index(); ++J) p = p.substitute(ch.f[J], MultiPoly());
  return p;
}

Results bauer_bernard(const RunConfig& cfg) {
  HydroChart ch = HydroChart::make(2, cfg.hydro_depth);
  Results out;
  for (bool virasoro : {false, true}) {
    long bad = 0;
    std::string where;
    for (const RelationRow& r : bb_relation_table(2, cfg.hydro_depth, 3, virasoro))
      if (!r.ok) ++bad, append(where, "(" + std::to_string(r.m) + "," + std::to_string(r.n) + ")");
    out.push_back(exact_check(virasoro ? "bb_virasoro_relations" : "bb_witt_relations", bad,
                              bad ? where : "m,n in [-3,3], K=" + std::to_string(cfg.hydro_depth)));
  }
  bool s_ok = bb_schwarzian_connection(ch) == MultiPoly::var(ch.f[2]) * -6;
  out.push_back(exact_check("bb_schwarzian_connection", s_ok ? 0 : 1, "S = -6 f_{-2}"));
  HydroChart small = HydroChart::make(1, 8);
  DiffOperator comm = bb_commutator(small, bb_virasoro(small, 2), bb_virasoro(small, -2));
  bool c_ok = at_identity(small, comm.apply(MultiPoly(1))) == small.central_charge * Rational(1, 2);
  out.push_back(exact_check("bb_central_term_at_identity", c_ok ? 0 : 1, "[L2,L-2] 1 = c/2 at f = u"));
  return out;
}

Results appendix_kernels(const RunConfig&) {
  long bad_r = 0, bad_q = 0;
  std::string wr, wq;
  for (int n = -2; n >= -6; --n) {
    if (!check_re_r_closed_form(n).holds()) ++bad_r, append(wr, std::to_string(n));
    if (!check_q_removable(n).removable()) ++bad_q, append(wq, std::to_string(n));
  }
  return {exact_check("re_R_closed_form", bad_r, bad_r ? wr : "n = -2..-6"),
          exact_check("Q_removable_singularity", bad_q, bad_q ? wq : "n = -2..-6")};
}

Results sle_parameterization(const RunConfig&) {
  long bad = 0;
  std::string where;
  for (const char* k : {"1", "2", "8/3", "3", "7/2", "4"}) {
    SLEParams p = SLEParams::parse(k);
    bool ok = p.h == kac_weight(2, 1, p.tau) && p.h == Rational(3, 4) * p.tau - Rational(1, 2) &&
              p.c == p.h * (12 / p.tau - 8);
    if (!ok) ++bad, append(where, k);
  }
  return {exact_check("sle_parameterization", bad, bad ? where : "h = h_{2,1}, c = h(12/tau - 8)")};
}

Results bracket_span_check(const RunConfig&) {
  BracketSpanReport r = bracket_span(HalfPlaneChart::make(2, 8), 5);
  return {exact_check("bracket_span", r.ok ? 0 : 1, "l_{-1}, l_{-2} generate l_{-3}..l_{-5}")};
}

// ---- numeric ---------------------------------------------------------------

Results theta_identities(const RunConfig& cfg) {
  double prime = 0, triple = 0, heat = 0, legendre = 0;
  for (double t : {0.5, 1.0, 2.0}) {
    ThetaContext ctx(t);
    double eta = dedekind_eta(t);
    prime = std::max(prime, std::abs(ctx.theta_derivative0(1) - 2 * kPi * eta * eta * eta));
    triple = std::max(triple, std::abs(ctx.triple_over_prime() - 12 * kPi * dlog_eta(t)));
    double h = 1e-5;
    ThetaContext a(t - h), b(t + h);
    for (double x : {0.1, 0.27, 0.45}) {
      cplx z(x, 0.1);
      heat = std::max(heat, std::abs(4 * kPi * (b.theta(z) - a.theta(z)) / (2 * h) - ctx.theta(z, 2)));
    }
    legendre = std::max(legendre, weierstrass_checks(ctx).legendre_residual);
  }
  double s = cfg.tol_scale;
  return {below_check("theta_prime_eta_cubed", prime, 1e-8 * s, "t in {0.5, 1, 2}"),
          below_check("theta_triple_log_eta", triple, 1e-8 * s, "t in {0.5, 1, 2}"),
          below_check("theta_heat_equation", heat, 1e-8 * s, "central difference in t, h = 1e-5"),
          below_check("legendre_relation", legendre, 1e-10 * s)};
}

Results annulus_kernels(const RunConfig& cfg) {
  double sym = 0, edge = 0, diag = 0;
  for (double t : {0.5, 1.0, 2.0}) {
    ThetaContext ctx(t);
    for (double x : {0.1, 0.6})
      for (double y : {0.35, 0.9}) sym = std::max(sym, std::abs(excursion_kernel(x, y, ctx) - excursion_kernel(y, x, ctx)));
    for (double x : {0.0, 0.55, 0.8}) {
      edge = std::max(edge, std::abs(poisson_kernel(cplx(x, t / 2 * (1 - 1e-12)), 0.3, ctx)));
      edge = std::max(edge, std::abs(poisson_kernel(cplx(x, 1e-12), 0.3, ctx)));
    }
    for (double z : {0.2, 0.45, 0.8}) diag = std::max(diag, std::abs(c_kernel_diag(0, 0, z, ctx) - v_field(z, 0.0, ctx).real()));
  }
  AnnulusChart ch(1.0, {0.3, 0.55, 0.8}, 3);
  long bad = 0;
  std::string where;
  if (tangent_coordinates(ch, -2).dt != 2 * kPi) ++bad, append(where, "n=-2");
  for (int n = -3; n >= -5; --n)
    if (tangent_coordinates(ch, n).dt != 0.0) ++bad, append(where, "n=" + std::to_string(n));
  double s = cfg.tol_scale;
  return {below_check("excursion_kernel_symmetry", sym, 1e-12 * s),
          below_check("poisson_kernel_boundary_vanishing", edge, 1e-9 * s),
          below_check("c0_diagonal_equals_V", diag, 1e-10 * s),
          exact_check("tangent_dt_coefficient", bad, bad ? where : "2 pi at n = -2, 0 at n = -3..-5")};
}

Results cylinder_determinant(const RunConfig& cfg) {
  double h = 1e-3;
  double fd = (zeta_det_cylinder(1 + h) - zeta_det_cylinder(1 - h)) / (2 * h);
  double s = cfg.tol_scale;
  CheckResult d = below_check("log_det_derivative_at_1", std::abs(fd - 0.5), 1e-5 * s, "measured derivative " + num(fd));
  d.target = 0.5;
  VirrepReport v = virrep_annulus_check({0.7, 1.0, 1.5}, 1.0, 1e-5 * s);
  return {d, below_check("virrep_Lm2_annulus", v.max_residual, 1e-5 * s,
                         "t in {0.7, 1, 1.5}, constant " + num(v.constant))};
}

Results surgery(const RunConfig& cfg) {
  std::vector<double> cs;
  for (auto [t, s] : {std::pair{0.6, 0.2}, std::pair{1.0, 0.3}, std::pair{1.5, 0.75}, std::pair{2.0, 0.4},
                      std::pair{3.0, 1.0}, std::pair{4.0, 2.5}})
    cs.push_back(surgery_constant(t, s));
  auto [lo, hi] = std::minmax_element(cs.begin(), cs.end());
  double mean = 0;
  for (double c : cs) mean += c / cs.size();
  return {below_check("surgery_constant_spread", (*hi - *lo) / std::abs(mean), 1e-6 * cfg.tol_scale,
                      "C = " + num(mean) + " over six (t, s)")};
}

Results loop_masses(const RunConfig& cfg) {
  GridDomain two(SiteSet{{0, 0}, {1, 0}});
  double hand = std::abs(log_det_walk(two) - std::log(15.0 / 16));
  double add = 0, cut = 0;
  KeyedStream rng(cfg.seed, 0, 9);
  for (int n : {10, 20, 30, 40}) {
    GridDomain d = GridDomain::rectangle(n + 1, n + 1);
    for (int rep = 0; rep < 3; ++rep) {
      SiteSet k1, k2;
      while (k1.size() < 6) k1.insert({1 + rng.below(n / 2 - 1), 1 + rng.below(n)});
      while (k2.size() < 6) k2.insert({n / 2 + 1 + rng.below(n / 2), 1 + rng.below(n)});
      SiteSet both = k1;
      both.insert(k2.begin(), k2.end());
      add = std::max(add, std::abs(discrete_loop_mass(d, both) - discrete_loop_mass(d, k1) -
                                   discrete_loop_mass(d.without(k1), k2)));
      // loops hitting K1 and K2 = loops hitting K1 minus those hitting K1 inside D \ K2
      double cross = discrete_crossing_mass(d, k1, k2);
      add = std::max(add, std::abs(cross - (discrete_loop_mass(d, k1) - discrete_loop_mass(d.without(k2), k1))));
    }
    SiteSet vertical, bent;
    for (int j = 1; j <= n; ++j) vertical.insert({n / 2, j});
    for (int j = 1; j <= n / 2; ++j) bent.insert({n / 3, j});
    for (int i = n / 3; i <= n; ++i) bent.insert({i, n / 2});
    cut = std::max(cut, cut_line_identity(d, vertical).residual);
    cut = std::max(cut, cut_line_identity(d, bent).residual);
  }
  double s = cfg.tol_scale;
  return {below_check("loop_mass_two_site_hand_value", hand, 1e-15 * s, "log det = log(15/16)"),
          below_check("loop_mass_additivity", add, 1e-12 * s, "grids up to 40x40"),
          below_check("cut_line_factorization", cut, 1e-12 * s, "grids up to 40x40")};
}

Results localization_identities(const RunConfig& cfg) {
  static const char* kappas[] = {"2", "8/3", "3", "4"};
  double worst = 0;
  for (long i = 0; i < cfg.tube_pairs; ++i) {
    NestedTubeInstance in = random_nested_tubes(cfg.seed, i);
    SLEParams p = SLEParams::parse(kappas[i % 4]);
    worst = std::max(worst, localization_consistency(in.sigma, in.outer, in.inner, in.gamma, p).residual);
  }
  double perm = 0, tubes = 0;
  SLEParams p = SLEParams::parse("2");
  for (long i = 0; i < cfg.multi_trace_sets; ++i) {
    MultiTraceInstance m = random_multi_traces(cfg.seed, i, 3, 1 + i % 2);
    double base = multi_sle_log_weight(m.sigma, m.traces, p);
    std::vector<LatticePath> tr = m.traces;
    std::sort(tr.begin(), tr.end());
    do perm = std::max(perm, std::abs(multi_sle_log_weight(m.sigma, tr, p) - base));
    while (std::next_permutation(tr.begin(), tr.end()));
    tubes = std::max(tubes, std::abs(multi_sle_log_weight_tubes(m.sigma, m.traces, m.tubes, p) - base));
  }
  MarkedDomain sq{GridDomain::rectangle(32, 32), {{1, 16}, {0, 16}}, {{8, 1}, {8, 0}}};
  double exact = excursion_kernel(sq.domain, sq.x, sq.y);
  double degenerate = std::abs(disintegration_degenerate(sq, p) - exact) / exact;
  double s = cfg.tol_scale;
  return {below_check("localization_two_route_consistency", worst, 1e-10 * s,
                      std::to_string(cfg.tube_pairs) + " nested tube pairs on random annulus grids"),
          below_check("multi_sle_permutation_invariance", perm, 1e-12 * s,
                      std::to_string(cfg.multi_trace_sets) + " sets of three traces, all orders"),
          below_check("multi_sle_tube_form", tubes, 1e-10 * s),
          below_check("disintegration_degenerate_radius", degenerate, 1e-12 * s, "relative to the exact kernel")};
}

// ---- Monte Carlo -------------------------------------------------------------

Results restriction(const RunConfig& cfg) {
  SLEParams p = SLEParams::parse("8/3");
  std::vector<RestrictionEstimate> est;
  // independent seeds per hull, so the fit sees independent points
  double radii[] = {0.3, 0.2, 0.4};
  for (int k = 0; k < 3; ++k)
    est.push_back(restriction_probability(p, HullSpec::semidisk(1, radii[k]), cfg.restriction_samples, cfg.seed + k));
  const RestrictionEstimate& e = est[0];
  ExponentFit fit = fit_restriction_exponent(est);
  CheckResult slope;
  slope.name = "restriction_exponent";
  slope.measured = fit.exponent;
  slope.target = 0.625;
  slope.tolerance = 0.02;
  slope.comparison = "abs";
  slope.passed = std::abs(fit.exponent - 0.625) <= 0.02;
  slope.detail = "r in {0.2, 0.3, 0.4}, fit stderr " + num(fit.stderr_);
  return {sigma_check("restriction_semidisk_r0.3", e.estimate, e.target, e.stderr_, 3,
                      "n " + std::to_string(e.n) + ", unresolved " + std::to_string(e.unresolved)),
          slope};
}

Results martingales(const RunConfig& cfg) {
  Results out;
  for (const char* k : {"2", "8/3"}) {
    SLEParams p = SLEParams::parse(k);
    std::string tag = std::string(k) == "2" ? "2" : "8_3";
    // y = 10, T = 1: the tilted curve reaches y by time T with probability below 1e-8
    MartingaleReport r = martingale_check(p, 10, 1, cfg.martingale_samples, cfg.seed);
    CheckResult c = sigma_check("martingale_kappa_" + tag, r.estimate, 1.0, r.stderr_, 3,
                                "y 10, T 1, swallowed " + std::to_string(r.swallowed));
    c.passed = c.passed && r.valid;
    out.push_back(c);
    // y = 2: the expectation drops visibly below 1 and must match the exact survival probability
    MartingaleReport s = martingale_check(p, 2, 1, cfg.martingale_samples, cfg.seed + 1);
    CheckResult d = sigma_check("martingale_survival_kappa_" + tag, s.estimate, s.target, s.stderr_, 3,
                                "y 2, T 1, swallowed " + std::to_string(s.swallowed));
    d.passed = d.passed && s.valid;
    out.push_back(d);
    MartingaleReport w = martingale_check(p, 2, 1, cfg.martingale_samples, cfg.seed + 1, 1000, p.h_d - 0.1);
    out.push_back(above_check("martingale_negative_control_kappa_" + tag, std::abs(w.z_score), 5,
                              "y 2, exponent h - 0.1, estimate " + num(w.estimate) + " against " + num(w.target)));
  }
  return out;
}

Results loewner_statistics(const RunConfig& cfg) {
  SLEParams p = SLEParams::parse("8/3");
  ScalingReport s = scaling_check(p, 2.0, cfg.scaling_samples, cfg.seed);
  CheckResult ks = below_check("scaling_ks", std::max(s.ks_re, s.ks_im), s.critical, "lambda = 2, alpha = 0.001");
  DetectionAgreement a = restriction_detection_agreement(p, HullSpec::semidisk(1, 0.3), cfg.agreement_samples, cfg.seed, 1e-4);
  CheckResult agree = above_check("detection_rule_agreement", a.rate, 0.999 - 1e-12,
                                  std::to_string(a.agree) + " of " + std::to_string(a.n));
  return {ks, agree};
}

Results disintegration(const RunConfig& cfg) {
  SLEParams p = SLEParams::parse("2");
  Results out;
  MarkedDomain sq{GridDomain::rectangle(32, 32), {{1, 16}, {0, 16}}, {{8, 1}, {8, 0}}};
  MarkedDomain an{annulus_grid(32, 32, 10, 21, 10, 21), {{1, 16}, {0, 16}}, {{8, 1}, {8, 0}}};
  for (auto [name, m] : {std::pair{"square", &sq}, std::pair{"annulus", &an}}) {
    DisintegrationReport r = disintegration_check(*m, p, 3, cfg.one_shot_samples, cfg.disintegration_samples, cfg.seed);
    double se = std::hypot(r.one_shot_stderr, r.disintegrated_stderr);
    out.push_back(sigma_check(std::string("disintegration_") + name, r.one_shot, r.disintegrated, se, 3,
                              "exact " + num(r.exact) + ", z one-shot " + num(r.z_one_shot) + ", z disintegrated " +
                                  num(r.z_disintegrated)));
    out.push_back(above_check(std::string("disintegration_prefactor_c_rejected_") + name, r.z_alternative, 5,
                              "exp(-c nu) estimate " + num(r.alternative)));
  }
  return out;
}

CheckSpec spec(const std::string& name, const std::string& suite, int criterion, std::function<Results(const RunConfig&)> f) {
  return {name, suite, criterion, std::move(f)};
}

}  // namespace

std::vector<RelationRow> halfplane_relation_table(int spectators, int jet_order, int n_range, bool virasoro) {
  HalfPlaneChart ch = HalfPlaneChart::make(spectators, jet_order);
  std::map<int, DiffOperator> L;
  for (int n = -2 * n_range; n <= 2 * n_range; ++n) L[n] = virasoro ? virasoro_generator(ch, n) : witt_generator(ch, n);
  std::vector<RelationRow> rows;
  for (int m = -n_range; m <= n_range; ++m)
    for (int n = -n_range; n <= n_range; ++n) {
      DiffOperator c = commutator_jet(ch, L[m], L[n]);
      DiffOperator r = restrict_jet(ch, L[m + n] * MultiPoly(m - n), c.valid());
      if (virasoro && m == -n) r += DiffOperator::multiplication(ch.central_charge * Rational(m * (m * m - 1), 12));
      rows.push_back({m, n, c == r});
    }
  return rows;
}

std::vector<RelationRow> bb_relation_table(int points, int depth, int n_range, bool virasoro) {
  HydroChart ch = HydroChart::make(points, depth);
  std::vector<RelationRow> rows;
  for (int m = -n_range; m <= n_range; ++m)
    for (int n = -n_range; n <= n_range; ++n) {
      BBRelationResult r = bb_relation(ch, m, n, virasoro);
      rows.push_back({m, n, r.ok && r.compared_order >= 2});
    }
  return rows;
}

const std::vector<CheckSpec>& all_checks() {
  static const std::vector<CheckSpec> checks = {
      spec("witt_relations", "symbolic", 1, [](const RunConfig& c) { return halfplane_relations(c, false); }),
      spec("virasoro_relations", "symbolic", 2, [](const RunConfig& c) { return halfplane_relations(c, true); }),
      spec("schwarzian_axioms", "symbolic", 3, schwarzian_axioms),
      spec("bpz_reduction", "symbolic", 4, bpz_reduction),
      spec("bauer_bernard", "symbolic", 5, bauer_bernard),
      spec("appendix_kernels", "symbolic", 6, appendix_kernels),
      spec("sle_parameterization", "symbolic", 0, sle_parameterization),
      spec("bracket_span", "symbolic", 0, bracket_span_check),
      spec("theta_identities", "numeric", 7, theta_identities),
      spec("annulus_kernels", "numeric", 8, annulus_kernels),
      spec("cylinder_determinant", "numeric", 9, cylinder_determinant),
      spec("surgery", "numeric", 10, surgery),
      spec("loop_masses", "numeric", 11, loop_masses),
      spec("localization_identities", "numeric", 14, localization_identities),
      spec("restriction", "mc", 12, restriction),
      spec("martingales", "mc", 13, martingales),
      spec("loewner_statistics", "mc", 0, loewner_statistics),
      spec("disintegration", "mc", 0, disintegration),
  };
  return checks;
}

bool SuiteReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::vector<std::string> SuiteReport::failures() const {
  std::vector<std::string> out;
  for (const CheckResult& c : checks)
    if (!c.passed) out.push_back(c.name);
  return out;
}

nlohmann::json SuiteReport::to_json() const {
  nlohmann::json checks_json = nlohmann::json::array();
  for (const CheckResult& c : checks)
    checks_json.push_back({{"name", c.name},
                           {"passed", c.passed},
                           {"measured", c.measured},
                           {"target", c.target},
                           {"tolerance", c.tolerance},
                           {"comparison", c.comparison},
                           {"detail", c.detail}});
  return {{"config", config.to_json()},
          {"passed", passed()},
          {"failures", failures()},
          {"checks", checks_json}};
}

SuiteReport run_suite(const RunConfig& cfg) {
  SuiteReport rep;
  rep.config = cfg;
  std::vector<const CheckSpec*> selected;
  for (const CheckSpec& s : all_checks())
    if (cfg.suite == "all" || s.suite == cfg.suite) selected.push_back(&s);
  // symbolic checks share the variable registry, so only the others run concurrently
  std::vector<std::future<std::vector<CheckResult>>> pending(selected.size());
  for (std::size_t i = 0; i < selected.size(); ++i) {
    bool async = cfg.parallel && selected[i]->suite != "symbolic";
    pending[i] = std::async(async ? std::launch::async : std::launch::deferred, selected[i]->run, std::cref(cfg));
  }
  for (auto& f : pending)
    for (CheckResult& c : f.get()) rep.checks.push_back(std::move(c));
  return rep;
}

int exit_code(const SuiteReport& report) { return report.passed() ? 0 : 1; }

}  // namespace vir
