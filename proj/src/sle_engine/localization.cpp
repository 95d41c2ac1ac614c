#include "virasoro/localization.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <queue>
#include <stdexcept>

namespace vir {

namespace {

constexpr int kDx[4] = {1, -1, 0, 0};
constexpr int kDy[4] = {0, 0, 1, -1};

Site step(const Site& s, int dir) { return {s.first + kDx[dir], s.second + kDy[dir]}; }

bool adjacent(const Site& a, const Site& b) {
  return std::abs(a.first - b.first) + std::abs(a.second - b.second) == 1;
}

SiteSet difference(const GridDomain& d, const GridDomain& sub) {
  SiteSet out;
  for (const Site& s : d.sites())
    if (!sub.contains(s)) out.insert(s);
  return out;
}

void require_inside(const SiteSet& k, const GridDomain& d, const char* what) {
  for (const Site& s : k)
    if (!d.contains(s)) throw std::invalid_argument(what);
}

// L(D) = log det(I - P_D); nu_D(K1; K2) = L(D\K1) + L(D\K2) - L(D\(K1 u K2)) - L(D).
double crossing(const GridDomain& d, const SiteSet& k1, const SiteSet& k2) {
  if (k1.empty() || k2.empty()) return 0.0;
  return discrete_crossing_mass(d, k1, k2);
}

void check_traces(const GridDomain& sigma, const std::vector<LatticePath>& traces) {
  SiteSet seen;
  for (const LatticePath& g : traces) {
    if (!is_simple_path(g)) throw std::invalid_argument("multi_sle_weight: traces must be simple paths");
    for (const Site& s : g) {
      if (!sigma.contains(s)) throw std::invalid_argument("multi_sle_weight: trace leaves the domain");
      if (!seen.insert(s).second) throw std::invalid_argument("multi_sle_weight: traces intersect");
    }
  }
}

}  // namespace

void MarkedDomain::validate() const {
  for (const BoundaryEdge* e : {&x, &y}) {
    if (!domain.contains(e->inside) || domain.contains(e->outside) || !adjacent(e->inside, e->outside))
      throw std::invalid_argument("MarkedDomain: marked points must be boundary edges");
  }
}

SiteSet path_sites(const LatticePath& gamma) { return SiteSet(gamma.begin(), gamma.end()); }

bool is_simple_path(const LatticePath& gamma) {
  if (gamma.empty()) return false;
  for (std::size_t i = 1; i < gamma.size(); ++i)
    if (!adjacent(gamma[i - 1], gamma[i])) return false;
  return path_sites(gamma).size() == gamma.size();
}

double excursion_kernel(const GridDomain& d, const BoundaryEdge& x, const BoundaryEdge& y) {
  return walk_green(d, x.inside, y.inside) / 16;
}

double localization_log_weight(const MarkedDomain& sigma, const GridDomain& tube, const LatticePath& gamma,
                               const SLEParams& p) {
  sigma.validate();
  if (!is_simple_path(gamma)) throw std::invalid_argument("localization_weight: trace must be a simple path");
  SiteSet g = path_sites(gamma);
  require_inside(g, tube, "localization_weight: trace leaves the tube");
  require_inside(tube.sites(), sigma.domain, "localization_weight: tube leaves the domain");
  if (!tube.contains(sigma.x.inside) || !tube.contains(sigma.y.inside))
    throw std::invalid_argument("localization_weight: tube must contain both marked points");
  double h = excursion_kernel(tube, sigma.x, sigma.y);
  if (!(h > 0)) throw std::domain_error("localization_weight: X and Y are not connected in the tube");
  return p.h_d * std::log(h) - p.c_d / 2 * crossing(sigma.domain, g, difference(sigma.domain, tube));
}

double localization_weight(const MarkedDomain& sigma, const GridDomain& tube, const LatticePath& gamma,
                           const SLEParams& p) {
  return std::exp(localization_log_weight(sigma, tube, gamma, p));
}

ConsistencyReport localization_consistency(const MarkedDomain& sigma, const GridDomain& outer,
                                           const GridDomain& inner, const LatticePath& gamma, const SLEParams& p) {
  require_inside(inner.sites(), outer, "localization_consistency: inner tube must lie in the outer tube");
  ConsistencyReport r;
  r.direct = localization_log_weight(sigma, inner, gamma, p);
  double h_outer = excursion_kernel(outer, sigma.x, sigma.y), h_inner = excursion_kernel(inner, sigma.x, sigma.y);
  r.via_outer = localization_log_weight(sigma, outer, gamma, p) - p.h_d * std::log(h_outer / h_inner) -
                p.c_d / 2 * crossing(outer, path_sites(gamma), difference(outer, inner));
  r.residual = std::abs(r.direct - r.via_outer);
  return r;
}

double multi_sle_log_weight(const GridDomain& sigma, const std::vector<LatticePath>& traces, const SLEParams& p) {
  check_traces(sigma, traces);
  double total = 0;
  SiteSet before;
  for (std::size_t j = 0; j < traces.size(); ++j) {
    SiteSet g = path_sites(traces[j]);
    if (j > 0) total += crossing(sigma, g, before);
    before.insert(g.begin(), g.end());
  }
  return p.c_d / 2 * total;
}

double multi_sle_weight(const GridDomain& sigma, const std::vector<LatticePath>& traces, const SLEParams& p) {
  return std::exp(multi_sle_log_weight(sigma, traces, p));
}

double multi_sle_log_weight_tubes(const GridDomain& sigma, const std::vector<LatticePath>& traces,
                                  const std::vector<GridDomain>& tubes, const SLEParams& p) {
  check_traces(sigma, traces);
  if (tubes.size() != traces.size()) throw std::invalid_argument("multi_sle_weight: one tube per trace");
  SiteSet all_traces, all_tubes;
  for (std::size_t i = 0; i < tubes.size(); ++i) {
    require_inside(path_sites(traces[i]), tubes[i], "multi_sle_weight: trace leaves its tube");
    require_inside(tubes[i].sites(), sigma, "multi_sle_weight: tube leaves the domain");
    for (const Site& s : tubes[i].sites())
      for (std::size_t j = 0; j < tubes.size(); ++j) {
        if (j == i) continue;
        for (int dir = 0; dir < 4; ++dir)
          if (tubes[j].contains(s) || tubes[j].contains(step(s, dir)))
            throw std::invalid_argument("multi_sle_weight: tubes must be pairwise non-adjacent");
      }
    all_tubes.insert(tubes[i].sites().begin(), tubes[i].sites().end());
    all_traces.insert(traces[i].begin(), traces[i].end());
  }
  double total = 0;
  for (std::size_t i = 0; i < tubes.size(); ++i)
    total += crossing(sigma, path_sites(traces[i]), difference(sigma, tubes[i]));
  total -= crossing(sigma, all_traces, difference(sigma, GridDomain(all_tubes)));
  return p.c_d / 2 * total;
}

GridDomain tube_around(const GridDomain& d, const LatticePath& gamma, int radius) {
  if (radius < 0) throw std::invalid_argument("tube_around: radius >= 0");
  std::map<Site, int> dist;
  std::deque<Site> queue;
  for (const Site& s : gamma) {
    if (!d.contains(s)) throw std::invalid_argument("tube_around: path leaves the domain");
    if (dist.emplace(s, 0).second) queue.push_back(s);
  }
  while (!queue.empty()) {
    Site s = queue.front();
    queue.pop_front();
    int ds = dist[s];
    if (ds == radius) continue;
    for (int dir = 0; dir < 4; ++dir) {
      Site n = step(s, dir);
      if (d.contains(n) && dist.emplace(n, ds + 1).second) queue.push_back(n);
    }
  }
  SiteSet out;
  for (const auto& [s, _] : dist) out.insert(s);
  return GridDomain(std::move(out));
}

LatticePath random_simple_path(const GridDomain& d, const Site& from, const Site& to, KeyedStream& rng) {
  if (!d.contains(from) || !d.contains(to)) return {};
  std::map<Site, double> best;
  std::map<Site, Site> parent;
  using Item = std::pair<double, Site>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  best[from] = 0;
  queue.push({0, from});
  while (!queue.empty()) {
    auto [c, s] = queue.top();
    queue.pop();
    if (c > best[s]) continue;
    if (s == to) break;
    for (int dir = 0; dir < 4; ++dir) {
      Site n = step(s, dir);
      if (!d.contains(n)) continue;
      double nc = c + rng.uniform();
      auto it = best.find(n);
      if (it == best.end() || nc < it->second) {
        best[n] = nc;
        parent[n] = s;
        queue.push({nc, n});
      }
    }
  }
  if (!best.count(to)) return {};
  LatticePath path{to};
  while (path.back() != from) path.push_back(parent.at(path.back()));
  std::reverse(path.begin(), path.end());
  return path;
}

GridDomain annulus_grid(int width, int height, int x0, int x1, int y0, int y1) {
  if (!(0 < x0 && x0 <= x1 && x1 < width && 0 < y0 && y0 <= y1 && y1 < height))
    throw std::invalid_argument("annulus_grid: hole must lie inside the rectangle");
  SiteSet hole;
  for (int i = x0; i <= x1; ++i)
    for (int j = y0; j <= y1; ++j) hole.insert({i, j});
  return GridDomain::rectangle(width, height).without(hole);
}

namespace {

// Random annulus: sides in [12, 24], a hole of side >= 2 keeping a ring of width >= 3.
GridDomain random_annulus(KeyedStream& rng, int& width, int& height) {
  width = 12 + rng.below(13);
  height = 12 + rng.below(13);
  int hw = 2 + rng.below(width - 9), hh = 2 + rng.below(height - 9);
  int x0 = 4 + rng.below(width - 7 - hw), y0 = 4 + rng.below(height - 7 - hh);
  return annulus_grid(width, height, x0, x0 + hw - 1, y0, y0 + hh - 1);
}

}  // namespace

NestedTubeInstance random_nested_tubes(std::uint64_t seed, std::uint64_t index) {
  KeyedStream rng(seed, index, 5);
  NestedTubeInstance inst;
  int width, height;
  inst.sigma.domain = random_annulus(rng, width, height);
  int jx = 1 + rng.below(height - 1), jy = 1 + rng.below(height - 1);
  inst.sigma.x = {{1, jx}, {0, jx}};
  inst.sigma.y = {{width - 1, jy}, {width, jy}};
  inst.sigma.validate();
  inst.gamma = random_simple_path(inst.sigma.domain, inst.sigma.x.inside, inst.sigma.y.inside, rng);
  inst.r_inner = rng.below(3);
  inst.r_outer = inst.r_inner + 1 + rng.below(3);
  inst.inner = tube_around(inst.sigma.domain, inst.gamma, inst.r_inner);
  inst.outer = tube_around(inst.sigma.domain, inst.gamma, inst.r_outer);
  return inst;
}

MultiTraceInstance random_multi_traces(std::uint64_t seed, std::uint64_t index, int n, int radius) {
  if (n < 1 || radius < 0) throw std::invalid_argument("random_multi_traces: n >= 1, radius >= 0");
  KeyedStream rng(seed, index, 6);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    MultiTraceInstance inst;
    int width, height;
    inst.sigma = random_annulus(rng, width, height);
    // sites adjacent to the outer boundary
    std::vector<Site> rim;
    for (const Site& s : inst.sigma.sites())
      if (s.first == 1 || s.second == 1 || s.first == width - 1 || s.second == height - 1) rim.push_back(s);
    GridDomain free = inst.sigma;
    bool ok = true;
    for (int k = 0; k < n && ok; ++k) {
      LatticePath g;
      for (int tries = 0; tries < 50 && g.empty(); ++tries) {
        const Site& a = rim[rng.below(static_cast<int>(rim.size()))];
        const Site& b = rim[rng.below(static_cast<int>(rim.size()))];
        if (a == b || !free.contains(a) || !free.contains(b)) continue;
        g = random_simple_path(free, a, b, rng);
      }
      if (g.empty()) {
        ok = false;
        break;
      }
      inst.traces.push_back(g);
      inst.tubes.push_back(tube_around(inst.sigma, g, radius));
      // later traces keep graph distance >= 2 radius + 2, so the tubes stay non-adjacent
      free = free.without(tube_around(inst.sigma, g, 2 * radius + 1).sites());
    }
    if (ok) return inst;
  }
  throw std::runtime_error("random_multi_traces: could not place the traces");
}

namespace {

void require_lerw(const SLEParams& p) {
  if (p.kappa != 2) throw std::domain_error("disintegration_check: the exact lattice sampler exists only at kappa = 2");
}

}  // namespace

double disintegration_degenerate(const MarkedDomain& sigma, const SLEParams& p) {
  sigma.validate();
  require_lerw(p);
  const Site& x = sigma.x.inside;
  SiteSet piece{x};
  GridDomain rest = sigma.domain.without(piece);
  // loops in Sigma through x all leave the one-site box
  double nu = discrete_loop_mass(sigma.domain, piece);
  WalkSolver solver(rest);
  double sum = 0;
  for (int dir = 0; dir < 4; ++dir) {
    Site tip = step(x, dir);
    if (rest.contains(tip)) sum += 0.25 * std::exp(-p.c_d / 2 * nu) * solver.green(tip, sigma.y.inside);
  }
  return sum / 16;
}

DisintegrationReport disintegration_check(const MarkedDomain& sigma, const SLEParams& p, int radius,
                                          long n_one_shot, long n_disintegrated, std::uint64_t seed) {
  sigma.validate();
  require_lerw(p);
  if (radius < 0 || n_one_shot < 2 || n_disintegrated < 2) throw std::invalid_argument("disintegration_check: bad arguments");
  const Site& x = sigma.x.inside;
  const Site& y = sigma.y.inside;
  auto in_box = [&](const Site& s) {
    return std::max(std::abs(s.first - x.first), std::abs(s.second - x.second)) <= radius;
  };
  if (in_box(y)) throw std::invalid_argument("disintegration_check: Y must lie outside the stopping box");
  const GridDomain& d = sigma.domain;
  SiteSet box_sites;
  for (const Site& s : d.sites())
    if (in_box(s)) box_sites.insert(s);
  GridDomain box(box_sites);

  DisintegrationReport r;
  r.exact = excursion_kernel(d, sigma.x, sigma.y);

  // one shot: the walk entering at X leaves through Y with probability 4 H(X, Y)
  long through_y = 0;
  for (long i = 0; i < n_one_shot; ++i) {
    KeyedStream rng(seed, i, 7);
    Site s = x;
    while (true) {
      Site n = step(s, rng.below(4));
      if (!d.contains(n)) {
        if (s == y && n == sigma.y.outside) ++through_y;
        break;
      }
      s = n;
    }
  }
  double q = double(through_y) / n_one_shot;
  r.n_one_shot = n_one_shot;
  r.one_shot = q / 4;
  r.one_shot_stderr = std::sqrt(std::max(q * (1 - q), 1.0 / n_one_shot) / n_one_shot) / 4;

  // disintegrated: loop-erased walk inside the box, weighted by the loops it
  // misses there and by the Green function of the rest of the domain
  double l_sigma = log_det_walk(d), l_box = log_det_walk(box);
  struct Cached {
    double nu, green;
  };
  std::map<std::pair<SiteSet, Site>, Cached> cache;
  double s1 = 0, s2 = 0, a1 = 0, a2 = 0;
  for (long i = 0; i < n_disintegrated; ++i) {
    KeyedStream rng(seed, i, 8);
    LatticePath path{x};
    std::map<Site, std::size_t> where{{x, 0}};
    Site tip;
    while (true) {
      Site n = step(path.back(), rng.below(4));
      if (!box.contains(n)) {
        tip = n;
        break;
      }
      if (auto it = where.find(n); it != where.end()) {
        for (std::size_t k = it->second + 1; k < path.size(); ++k) where.erase(path[k]);
        path.resize(it->second + 1);
      } else {
        where[n] = path.size();
        path.push_back(n);
      }
    }
    if (!d.contains(tip)) continue;
    ++r.n_effective;
    SiteSet piece = path_sites(path);
    auto key = std::make_pair(piece, tip);
    auto it = cache.find(key);
    if (it == cache.end()) {
      WalkSolver rest(d.without(piece));
      double nu = rest.log_det() - l_sigma - (log_det_walk(box.without(piece)) - l_box);
      it = cache.emplace(key, Cached{nu, rest.green(tip, y)}).first;
    }
    double w = std::exp(-p.c_d / 2 * it->second.nu) * it->second.green / 16;
    double wa = std::exp(-p.c_d * it->second.nu) * it->second.green / 16;
    s1 += w;
    s2 += w * w;
    a1 += wa;
    a2 += wa * wa;
  }
  long m = n_disintegrated;
  r.n_disintegrated = m;
  r.disintegrated = s1 / m;
  r.disintegrated_stderr = std::sqrt(std::max(0.0, s2 / m - r.disintegrated * r.disintegrated) / m);
  r.alternative = a1 / m;
  r.alternative_stderr = std::sqrt(std::max(0.0, a2 / m - r.alternative * r.alternative) / m);
  auto z = [](double a, double b, double se) { return se > 0 ? (a - b) / se : (a == b ? 0.0 : INFINITY); };
  r.z_routes = z(r.one_shot, r.disintegrated, std::hypot(r.one_shot_stderr, r.disintegrated_stderr));
  r.z_one_shot = z(r.one_shot, r.exact, r.one_shot_stderr);
  r.z_disintegrated = z(r.disintegrated, r.exact, r.disintegrated_stderr);
  r.z_alternative = z(r.alternative, r.exact, r.alternative_stderr);
  r.agree = std::abs(r.z_routes) <= 3;
  return r;
}

}  // namespace vir
