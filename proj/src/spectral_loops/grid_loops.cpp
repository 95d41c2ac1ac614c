#include "virasoro/grid_loops.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>

#include <cmath>
#include <deque>
#include <sstream>
#include <stdexcept>
#include <string>

namespace vir {

namespace {

constexpr int kDx[4] = {1, -1, 0, 0};
constexpr int kDy[4] = {0, 0, 1, -1};

Site neighbour(const Site& s, int dir) { return {s.first + kDx[dir], s.second + kDy[dir]}; }

std::map<Site, int> index_of(const SiteSet& sites) {
  std::map<Site, int> idx;
  int i = 0;
  for (const Site& s : sites) idx[s] = i++;
  return idx;
}

Eigen::SparseMatrix<double> walk_laplacian(const GridDomain& d) {
  auto idx = index_of(d.sites());
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(5 * d.size());
  for (const auto& [s, i] : idx) {
    trips.emplace_back(i, i, 1.0);
    for (int dir = 0; dir < 4; ++dir) {
      auto it = idx.find(neighbour(s, dir));
      if (it != idx.end()) trips.emplace_back(i, it->second, -0.25);
    }
  }
  Eigen::SparseMatrix<double> a(d.size(), d.size());
  a.setFromTriplets(trips.begin(), trips.end());
  return a;
}

}  // namespace

GridDomain::GridDomain(SiteSet sites) : sites_(std::move(sites)) {}

GridDomain GridDomain::rectangle(int width, int height) {
  if (width < 2 || height < 2) throw std::invalid_argument("GridDomain::rectangle: need width, height >= 2");
  SiteSet s;
  for (int i = 1; i < width; ++i)
    for (int j = 1; j < height; ++j) s.insert({i, j});
  return GridDomain(std::move(s));
}

GridDomain GridDomain::square(double outer, double mesh) {
  if (!(outer > 0 && mesh > 0)) throw std::invalid_argument("GridDomain::square: positive sizes required");
  int r = static_cast<int>(std::ceil(outer / mesh - 1e-9)) - 1;
  SiteSet s;
  for (int i = -r; i <= r; ++i)
    for (int j = -r; j <= r; ++j) s.insert({i, j});
  return GridDomain(std::move(s));
}

GridDomain GridDomain::read(std::istream& in) {
  SiteSet s;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    int x, y;
    if (!(ls >> x >> y)) throw std::runtime_error("grid file: bad vertex on line " + std::to_string(lineno));
    s.insert({x, y});
  }
  return GridDomain(std::move(s));
}

SiteSet GridDomain::boundary() const {
  SiteSet b;
  for (const Site& s : sites_)
    for (int dir = 0; dir < 4; ++dir) {
      Site n = neighbour(s, dir);
      if (!contains(n)) b.insert(n);
    }
  return b;
}

GridDomain GridDomain::without(const SiteSet& k) const {
  SiteSet s;
  for (const Site& v : sites_)
    if (!k.count(v)) s.insert(v);
  return GridDomain(std::move(s));
}

std::vector<GridDomain> GridDomain::components() const {
  std::vector<GridDomain> out;
  SiteSet seen;
  for (const Site& start : sites_) {
    if (seen.count(start)) continue;
    SiteSet comp;
    std::deque<Site> queue{start};
    seen.insert(start);
    while (!queue.empty()) {
      Site s = queue.front();
      queue.pop_front();
      comp.insert(s);
      for (int dir = 0; dir < 4; ++dir) {
        Site n = neighbour(s, dir);
        if (contains(n) && seen.insert(n).second) queue.push_back(n);
      }
    }
    out.emplace_back(std::move(comp));
  }
  return out;
}

struct WalkSolver::Impl {
  std::map<Site, int> idx;
  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt;
};

WalkSolver::WalkSolver(const GridDomain& d) : impl_(std::make_unique<Impl>()) {
  impl_->idx = index_of(d.sites());
  if (d.size() == 0) return;
  impl_->llt.compute(walk_laplacian(d));
  if (impl_->llt.info() != Eigen::Success) throw std::runtime_error("WalkSolver: I - P is singular");
  Eigen::SparseMatrix<double> l = impl_->llt.matrixL();
  log_det_ = 2 * l.diagonal().array().log().sum();
}

WalkSolver::~WalkSolver() = default;
WalkSolver::WalkSolver(WalkSolver&&) noexcept = default;

double WalkSolver::green(const Site& a, const Site& b) const {
  auto ia = impl_->idx.find(a), ib = impl_->idx.find(b);
  if (ia == impl_->idx.end() || ib == impl_->idx.end()) return 0.0;
  Eigen::VectorXd e = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(impl_->idx.size()));
  e[ib->second] = 1;
  Eigen::VectorXd g = impl_->llt.solve(e);
  return g[ia->second];
}

double log_det_walk(const GridDomain& d) { return WalkSolver(d).log_det(); }

double walk_green(const GridDomain& d, const Site& a, const Site& b) { return WalkSolver(d).green(a, b); }

double walk_spectral_radius(const GridDomain& d) {
  if (d.size() == 0) return 0.0;
  Eigen::MatrixXd p = Eigen::MatrixXd::Identity(d.size(), d.size()) - Eigen::MatrixXd(walk_laplacian(d));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(p, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

double discrete_loop_mass(const GridDomain& d, const SiteSet& k) {
  for (const Site& s : k)
    if (!d.contains(s)) throw std::invalid_argument("discrete_loop_mass: K must lie in D");
  if (k.empty()) return 0.0;
  return log_det_walk(d.without(k)) - log_det_walk(d);
}

double discrete_crossing_mass(const GridDomain& d, const SiteSet& k1, const SiteSet& k2) {
  SiteSet both = k1;
  for (const Site& s : k2)
    if (!both.insert(s).second) throw std::invalid_argument("discrete_crossing_mass: K1 and K2 overlap");
  return discrete_loop_mass(d, k1) + discrete_loop_mass(d, k2) - discrete_loop_mass(d, both);
}

Eigen::MatrixXd discrete_jump_operator(const GridDomain& d, const SiteSet& cut) {
  for (const Site& s : cut)
    if (!d.contains(s)) throw std::invalid_argument("discrete_jump_operator: cut must lie in D");
  GridDomain rest = d.without(cut);
  auto ridx = index_of(rest.sites());
  auto cidx = index_of(cut);
  int nr = static_cast<int>(rest.size()), nc = static_cast<int>(cut.size());
  Eigen::MatrixXd ss = Eigen::MatrixXd::Identity(nc, nc);
  Eigen::MatrixXd rs = Eigen::MatrixXd::Zero(nr, nc);
  for (const auto& [s, j] : cidx)
    for (int dir = 0; dir < 4; ++dir) {
      Site n = neighbour(s, dir);
      if (auto it = cidx.find(n); it != cidx.end()) ss(j, it->second) -= 0.25;
      if (auto it = ridx.find(n); it != ridx.end()) rs(it->second, j) -= 0.25;
    }
  if (nr == 0) return ss;
  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt(walk_laplacian(rest));
  if (llt.info() != Eigen::Success) throw std::runtime_error("discrete_jump_operator: singular complement");
  Eigen::MatrixXd sol = llt.solve(rs);
  return ss - rs.transpose() * sol;
}

CutIdentityReport cut_line_identity(const GridDomain& d, const SiteSet& cut) {
  CutIdentityReport r;
  r.whole = log_det_walk(d);
  for (const GridDomain& c : d.without(cut).components()) r.pieces.push_back(log_det_walk(c));
  Eigen::LLT<Eigen::MatrixXd> llt(discrete_jump_operator(d, cut));
  if (llt.info() != Eigen::Success) throw std::runtime_error("cut_line_identity: jump operator not positive");
  Eigen::MatrixXd l = llt.matrixL();
  r.jump = 2 * l.diagonal().array().log().sum();
  double sum = r.jump;
  for (double p : r.pieces) sum += p;
  r.residual = std::abs(r.whole - sum);
  return r;
}

StripPair strip_pair(double aspect, double gap, int n) {
  if (n < 2 || !(aspect > 2 * gap) || !(gap > 0)) throw std::invalid_argument("strip_pair: bad geometry");
  int width = static_cast<int>(std::lround(aspect * n));
  int g = static_cast<int>(std::lround(gap * n));
  StripPair p{GridDomain::rectangle(width, n), {}, {}};
  for (const Site& s : p.domain.sites()) {
    if (s.first <= g) p.left.insert(s);
    if (s.first >= width - g) p.right.insert(s);
  }
  return p;
}

ConformalReport discrete_conformal_check(double aspect, double gap, double aspect_other, double gap_other,
                                         double scale, const std::vector<int>& resolutions) {
  ConformalReport rep;
  for (int n : resolutions) {
    StripPair a = strip_pair(aspect, gap, n);
    StripPair b = strip_pair(aspect_other, gap_other, static_cast<int>(std::lround(scale * n)));
    ConformalRow row;
    row.n = n;
    row.mass = discrete_crossing_mass(a.domain, a.left, a.right);
    row.mass_other = discrete_crossing_mass(b.domain, b.left, b.right);
    row.difference = std::abs(row.mass - row.mass_other);
    rep.rows.push_back(row);
  }
  rep.decreasing = true;
  for (std::size_t i = 1; i < rep.rows.size(); ++i)
    if (!(rep.rows[i].difference < rep.rows[i - 1].difference)) rep.decreasing = false;
  return rep;
}

}  // namespace vir
