#include "virasoro/cylinder.hpp"
#include "virasoro/grid_loops.hpp"
#include "virasoro/localization.hpp"
#include "virasoro/sle.hpp"
#include "virasoro/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace vir;
using nlohmann::json;

namespace {

// Exit codes: 0 success or all checks passed, 1 a check failed, 2 usage or runtime error.
constexpr int kError = 2;

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

GridDomain read_grid(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return GridDomain::read(in);
}

json mc_json(double estimate, double stderr_, double target, long n_effective) {
  return {{"estimate", estimate},
          {"stderr", stderr_},
          {"target", target},
          {"z_score", stderr_ > 0 ? (estimate - target) / stderr_ : 0.0},
          {"n_effective", n_effective}};
}

std::vector<double> parse_points(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    double v = std::stod(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad point '" + item + "'");
    out.push_back(v);
  }
  return out;
}

int print_relations(const std::vector<RelationRow>& rows) {
  int bad = 0;
  for (const RelationRow& r : rows) {
    std::cout << r.m << ' ' << r.n << ' ' << (r.ok ? "ok" : "FAIL") << '\n';
    bad += !r.ok;
  }
  std::cout << (bad ? std::to_string(bad) + " relation(s) failed" : "all relations hold") << '\n';
  return bad ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Virasoro generators, elliptic kernels, loop measures and SLE checks"};
  app.require_subcommand(1);
  int result = 0;

  // verify
  auto* verify = app.add_subcommand("verify", "Run a verification suite and write a JSON report");
  std::string suite, config_path, out_path;
  std::uint64_t seed = 0;
  double tol_scale = 0;
  std::vector<std::string> overrides;
  verify->add_option("--suite", suite, "symbolic | numeric | mc | all");
  verify->add_option("--seed", seed, "Master seed");
  verify->add_option("--tol-scale", tol_scale, "Multiplier for numeric tolerances");
  verify->add_option("--out", out_path, "Report path (stdout if absent)");
  verify->add_option("--config", config_path, "key = value configuration file")->check(CLI::ExistingFile);
  verify->add_option("--set", overrides, "Override a configuration key: key=value");

  // verify-commutators
  auto* vc = app.add_subcommand("verify-commutators", "Check [L_m, L_n] in the half-plane chart");
  int kmax = 10, nrange = 3, spectators = 3;
  bool vc_virasoro = false;
  vc->add_option("--kmax", kmax, "Jet order k")->check(CLI::NonNegativeNumber);
  vc->add_option("--nrange", nrange, "|m|, |n| <= nrange")->check(CLI::NonNegativeNumber);
  vc->add_option("--spectators", spectators, "Number of spectator points N")->check(CLI::NonNegativeNumber);
  vc->add_flag("--virasoro", vc_virasoro, "Include the central term");

  // bb-verify
  auto* bb = app.add_subcommand("bb-verify", "Check the relations of the hydrodynamic-chart generators");
  int bb_nrange = 3, bb_depth = 10, bb_points = 2;
  bool bb_virasoro = false;
  bb->add_option("--nrange", bb_nrange, "|m|, |n| <= nrange")->check(CLI::NonNegativeNumber);
  bb->add_option("--K", bb_depth, "Expansion depth K")->check(CLI::Range(3, 64));
  bb->add_option("--points", bb_points, "Number of marked points")->check(CLI::Range(1, 8));
  bb->add_flag("--virasoro", bb_virasoro, "Include the central term");

  // annulus
  auto* an = app.add_subcommand("annulus", "Tabulate annulus kernels at boundary points");
  double an_t = 1.0, an_y = 0.25;
  std::string an_points, an_emit = "csv", an_out;
  an->add_option("--t", an_t, "Modulus t")->required();
  an->add_option("--points", an_points, "Comma-separated boundary points in (0, 1)");
  an->add_option("--y-frac", an_y, "Interior lift height as a fraction of t/2");
  an->add_option("--emit", an_emit, "Output format")->check(CLI::IsMember({"csv"}));
  an->add_option("--out", an_out, "Output path (stdout if absent)");

  // spectral
  auto* sp = app.add_subcommand("spectral", "Zeta-regularized determinants of the flat cylinder");
  double sp_t = 1.0, sp_cut = -1;
  sp->add_option("--cylinder", sp_t, "Modulus t of the annulus S_t")->required();
  sp->add_option("--cut", sp_cut, "Height of the cutting circle");

  // loops
  auto* lp = app.add_subcommand("loops", "Random-walk loop masses on a grid domain");
  std::string lp_grid, lp_hull;
  lp->add_option("--grid", lp_grid, "File of 'x y' sites")->required()->check(CLI::ExistingFile);
  lp->add_option("--hull", lp_hull, "File of 'x y' sites K")->check(CLI::ExistingFile);

  // sle
  auto* sle = app.add_subcommand("sle", "Monte Carlo checks for SLE");
  sle->require_subcommand(1);
  std::string kappa = "8/3", hull = "semidisk:1:0.3";
  long samples = 10000, one_shot = 100000;
  std::uint64_t sle_seed = 7;
  double mg_y = 5, mg_T = 1;
  int loc_size = 32, loc_radius = 3;
  auto* sr = sle->add_subcommand("restriction", "Probability that the trace avoids a hull");
  sr->add_option("--kappa", kappa, "kappa (rational)");
  sr->add_option("--hull", hull, "semidisk:a:r or slit:x:y");
  sr->add_option("--samples", samples)->check(CLI::Range(2L, 1000000000L));
  sr->add_option("--seed", sle_seed);
  auto* sm = sle->add_subcommand("martingale", "One-point martingale at y i");
  sm->add_option("--kappa", kappa, "kappa (rational)");
  sm->add_option("--y", mg_y)->check(CLI::PositiveNumber);
  sm->add_option("--T", mg_T)->check(CLI::PositiveNumber);
  sm->add_option("--samples", samples)->check(CLI::Range(2L, 1000000000L));
  sm->add_option("--seed", sle_seed);
  auto* sl = sle->add_subcommand("localize", "Disintegrated excursion kernel at kappa 2 on a square grid");
  sl->add_option("--size", loc_size, "Square side")->check(CLI::Range(8, 256));
  sl->add_option("--radius", loc_radius, "First-piece box radius")->check(CLI::Range(1, 64));
  sl->add_option("--samples", samples, "Disintegrated samples")->check(CLI::Range(2L, 1000000000L));
  sl->add_option("--one-shot", one_shot, "One-shot samples")->check(CLI::Range(2L, 1000000000L));
  sl->add_option("--seed", sle_seed);

  // dump-operator
  auto* dump = app.add_subcommand("dump-operator", "Canonical text form of a generator");
  int d_n = -2, d_k = 5, d_N = 2;
  bool d_virasoro = false, d_bb = false;
  dump->add_option("--n", d_n, "Index n")->required();
  dump->add_option("--k", d_k, "Jet order (or depth K with --bb)")->check(CLI::NonNegativeNumber);
  dump->add_option("--N", d_N, "Spectators (or marked points with --bb)")->check(CLI::NonNegativeNumber);
  dump->add_flag("--virasoro", d_virasoro, "Include the central term");
  dump->add_flag("--bb", d_bb, "Hydrodynamic chart");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kError;
  }

  try {
    if (*verify) {
      RunConfig cfg = config_path.empty() ? RunConfig{} : RunConfig::load(config_path);
      if (!suite.empty()) cfg.set("suite", suite);
      if (verify->count("--seed")) cfg.seed = seed;
      if (verify->count("--tol-scale")) cfg.set("tol_scale", std::to_string(tol_scale));
      if (!out_path.empty()) cfg.out = out_path;
      for (const std::string& o : overrides) {
        auto eq = o.find('=');
        if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + o + "'");
        cfg.set(o.substr(0, eq), o.substr(eq + 1));
      }
      SuiteReport rep = run_suite(cfg);
      emit(rep.to_json().dump(2) + "\n", cfg.out);
      for (const std::string& f : rep.failures()) std::cerr << "FAILED " << f << '\n';
      result = exit_code(rep);
    } else if (*vc) {
      result = print_relations(halfplane_relation_table(spectators, kmax, nrange, vc_virasoro));
    } else if (*bb) {
      result = print_relations(bb_relation_table(bb_points, bb_depth, bb_nrange, bb_virasoro));
    } else if (*an) {
      std::ostringstream os;
      write_annulus_table(os, an_t, parse_points(an_points), an_y);
      emit(os.str(), an_out);
    } else if (*sp) {
      json j{{"t", sp_t},
             {"log_det", zeta_det_cylinder(sp_t)},
             {"log_det_closed_form", zeta_det_cylinder_closed_form(sp_t)}};
      if (sp->count("--cut")) {
        double h = CylinderSpec::annulus(sp_t).height;
        j["cut"] = sp_cut;
        j["log_det_jump"] = log_det_jump(h, sp_cut);
        j["surgery_constant"] = surgery_constant(h, sp_cut);
      }
      std::cout << j.dump(2) << '\n';
    } else if (*lp) {
      GridDomain d = read_grid(lp_grid);
      json j{{"sites", d.size()}, {"log_det", log_det_walk(d)}};
      if (!lp_hull.empty()) j["loop_mass"] = discrete_loop_mass(d, read_grid(lp_hull).sites());
      std::cout << j.dump(2) << '\n';
    } else if (*sr) {
      RestrictionEstimate e = restriction_probability(SLEParams::parse(kappa), HullSpec::parse(hull), samples, sle_seed);
      json j = mc_json(e.estimate, e.stderr_, e.target, e.n - e.unresolved);
      j["unresolved"] = e.unresolved;
      std::cout << j.dump(2) << '\n';
    } else if (*sm) {
      MartingaleReport r = martingale_check(SLEParams::parse(kappa), mg_y, mg_T, samples, sle_seed);
      json j = mc_json(r.estimate, r.stderr_, 1.0, r.n - r.swallowed);
      j["swallowed"] = r.swallowed;
      std::cout << j.dump(2) << '\n';
    } else if (*sl) {
      int mid = loc_size / 2;
      MarkedDomain m{GridDomain::rectangle(loc_size, loc_size), {{1, mid}, {0, mid}}, {{mid / 2, 1}, {mid / 2, 0}}};
      DisintegrationReport r = disintegration_check(m, SLEParams::parse("2"), loc_radius, one_shot, samples, sle_seed);
      json j = mc_json(r.disintegrated, r.disintegrated_stderr, r.exact, r.n_effective);
      j["one_shot"] = {{"estimate", r.one_shot}, {"stderr", r.one_shot_stderr}, {"z_score", r.z_one_shot}};
      j["routes_agree"] = r.agree;
      std::cout << j.dump(2) << '\n';
    } else if (*dump) {
      std::cout << (d_bb ? dump_bb_operator(d_n, d_k, d_N, d_virasoro) : dump_operator(d_n, d_k, d_N, d_virasoro))
                << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kError;
  }
  return result;
}
