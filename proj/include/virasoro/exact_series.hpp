#pragma once

#include "virasoro/multipoly.hpp"

#include <functional>
#include <map>
#include <stdexcept>
#include <string>

namespace vir {

struct TruncationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Truncated Laurent series in one variable with exact polynomial coefficients.
// Around 0: coefficients of degree <= trunc_order are known exactly and
// everything above is unknown (not zero). Around infinity the roles flip:
// degrees >= trunc_order are known.
class ExactSeries {
 public:
  static constexpr int kExact = 1 << 28;

  explicit ExactSeries(std::string var = "z", int trunc = kExact, bool at_infinity = false);

  static ExactSeries monomial(const std::string& var, int deg, const MultiPoly& c = 1,
                              int trunc = kExact, bool at_infinity = false);
  static ExactSeries from_coeffs(const std::string& var, const std::map<int, MultiPoly>& c,
                                 int trunc = kExact, bool at_infinity = false);

  const std::string& var() const { return var_; }
  int trunc_order() const { return trunc_; }
  bool at_infinity() const { return at_inf_; }
  bool is_exact() const { return at_inf_ ? trunc_ <= -kExact : trunc_ >= kExact; }
  // Valuation: lowest possibly-nonzero degree (highest, around infinity).
  int min_deg() const;
  const std::map<int, MultiPoly>& coeffs() const { return c_; }

  // Exact coefficient; throws TruncationError past the truncation order.
  MultiPoly coeff(int k) const;
  bool known(int k) const { return at_inf_ ? k >= trunc_ : k <= trunc_; }

  ExactSeries truncated(int order) const;
  ExactSeries derivative() const;
  ExactSeries operator-() const;
  ExactSeries scaled(const MultiPoly& c) const;
  // Multiply by var^k.
  ExactSeries shifted(int k) const;
  // Same coefficients on degree -d in variable `var`, expansion point swapped.
  ExactSeries reflected(const std::string& var) const;
  ExactSeries map_coeffs(const std::function<MultiPoly(const MultiPoly&)>& f) const;

  bool operator==(const ExactSeries& o) const;

  // "var;trunc=T;inf=0|1" then "deg:num/den" (or "deg:[poly]") per line.
  std::string to_string() const;
  static ExactSeries parse(const std::string& text);

 private:
  friend ExactSeries add(const ExactSeries&, const ExactSeries&);
  friend ExactSeries mul(const ExactSeries&, const ExactSeries&);
  void prune();

  std::string var_;
  std::map<int, MultiPoly> c_;
  int trunc_;
  bool at_inf_;
};

ExactSeries add(const ExactSeries& a, const ExactSeries& b);
ExactSeries sub(const ExactSeries& a, const ExactSeries& b);
ExactSeries mul(const ExactSeries& a, const ExactSeries& b);
ExactSeries pow(const ExactSeries& a, int k);
// 1/a; the leading coefficient must be a nonzero rational.
ExactSeries reciprocal(const ExactSeries& a);
// outer(inner); the result is in inner's variable.
ExactSeries compose(const ExactSeries& outer, const ExactSeries& inner);
// g with f(g(z)) = z. `order` caps the result when f is exact. Around
// infinity f must be hydrodynamic: f(u) = u + 0 + f_{-2}/u + ...
ExactSeries invert_composition(const ExactSeries& f, int order = ExactSeries::kExact);
// f'''/f' - 3/2 (f''/f')^2.
ExactSeries schwarzian(const ExactSeries& f);
MultiPoly coeff(const ExactSeries& f, int k);

inline ExactSeries operator+(const ExactSeries& a, const ExactSeries& b) { return add(a, b); }
inline ExactSeries operator-(const ExactSeries& a, const ExactSeries& b) { return sub(a, b); }
inline ExactSeries operator*(const ExactSeries& a, const ExactSeries& b) { return mul(a, b); }

}  // namespace vir
