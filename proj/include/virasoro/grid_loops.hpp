#pragma once

#include <Eigen/Dense>

#include <istream>
#include <map>
#include <memory>
#include <set>
#include <utility>
#include <vector>

namespace vir {

using Site = std::pair<int, int>;
using SiteSet = std::set<Site>;

// Finite vertex set of Z^2. Simple random walk jumps to each neighbour with
// probability 1/4 and is killed on leaving the set, so P_D is the 1/4-weighted
// adjacency restricted to D and every vertex outside D adjacent to it is a
// Dirichlet boundary vertex.
class GridDomain {
 public:
  GridDomain() = default;
  explicit GridDomain(SiteSet sites);

  // Interior lattice points (i, j) with 0 < i < width, 0 < j < height.
  static GridDomain rectangle(int width, int height);
  // Lattice points strictly inside [-outer, outer]^2 at spacing mesh.
  static GridDomain square(double outer, double mesh);
  // One "x y" pair per line; blank lines and lines starting with '#' are skipped.
  static GridDomain read(std::istream& in);

  const SiteSet& sites() const { return sites_; }
  std::size_t size() const { return sites_.size(); }
  bool contains(const Site& s) const { return sites_.count(s) != 0; }
  SiteSet boundary() const;
  GridDomain without(const SiteSet& k) const;
  // Connected components under nearest-neighbour adjacency.
  std::vector<GridDomain> components() const;

 private:
  SiteSet sites_;
};

// Sparse Cholesky factorization of I - P_D (symmetric positive definite).
class WalkSolver {
 public:
  explicit WalkSolver(const GridDomain& d);
  ~WalkSolver();
  WalkSolver(WalkSolver&&) noexcept;
  double log_det() const { return log_det_; }
  // Green function G_D(a, b) = (I - P_D)^{-1}(a, b): expected visits to b of the walk from a.
  double green(const Site& a, const Site& b) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  double log_det_ = 0;
};

// log det(I - P_D).
double log_det_walk(const GridDomain& d);
double walk_green(const GridDomain& d, const Site& a, const Site& b);
// Spectral radius of P_D (dense, for small domains).
double walk_spectral_radius(const GridDomain& d);

// Mass of random-walk loops in D that hit K: log det(I - P_{D\K}) - log det(I - P_D).
double discrete_loop_mass(const GridDomain& d, const SiteSet& k);
// Mass of loops in D hitting both K1 and K2 (disjoint); finite in the scaling limit.
double discrete_crossing_mass(const GridDomain& d, const SiteSet& k1, const SiteSet& k2);

// Schur complement of I - P_D onto the cut S: the discrete jump operator.
Eigen::MatrixXd discrete_jump_operator(const GridDomain& d, const SiteSet& cut);

struct CutIdentityReport {
  double whole = 0;                  // log det(I - P_D)
  std::vector<double> pieces;        // log det(I - P) of each component of D \ S
  double jump = 0;                   // log det of the jump operator
  double residual = 0;
};
CutIdentityReport cut_line_identity(const GridDomain& d, const SiteSet& cut);

// Loops in a rectangle of aspect ratio `aspect` (width aspect*n, height n)
// hitting both the strip x <= gap*n and the strip x >= (aspect - gap)*n.
struct StripPair {
  GridDomain domain;
  SiteSet left, right;
};
StripPair strip_pair(double aspect, double gap, int n);

struct ConformalRow {
  int n = 0;
  double mass = 0, mass_other = 0, difference = 0;
};
struct ConformalReport {
  std::vector<ConformalRow> rows;
  bool decreasing = false;
};
// Compares the crossing mass of (aspect, gap) at resolution n against
// (aspect_other, gap_other) at resolution round(scale * n), for each n.
ConformalReport discrete_conformal_check(double aspect, double gap, double aspect_other, double gap_other,
                                         double scale, const std::vector<int>& resolutions);

}  // namespace vir
