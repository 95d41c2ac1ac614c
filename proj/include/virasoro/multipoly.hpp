#pragma once

#include "virasoro/rational.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace vir {

// Variables are interned process-wide; a monomial is a dense exponent vector
// indexed by variable id. Laurent-allowed variables (the spectators z_i) may
// carry negative exponents.
constexpr int kMaxVars = 64;

struct VarInfo {
  std::string name;
  bool laurent = false;
};

int var_id(const std::string& name, bool laurent = false);
const VarInfo& var_info(int id);
int var_count();

struct Monomial {
  std::array<int8_t, kMaxVars> e{};

  int8_t operator[](int v) const { return e[v]; }
  int8_t& operator[](int v) { return e[v]; }
  bool is_one() const;
  int total_degree() const;
  Monomial operator*(const Monomial& o) const;
  bool operator<(const Monomial& o) const { return e < o.e; }
  bool operator==(const Monomial& o) const { return e == o.e; }
  std::string to_string() const;
};

class MultiPoly {
 public:
  using Term = std::pair<Monomial, Rational>;

  MultiPoly() = default;
  MultiPoly(const Rational& c);  // NOLINT: constants convert implicitly
  MultiPoly(long c) : MultiPoly(Rational(c)) {}

  static MultiPoly var(const std::string& name, bool laurent = false);
  static MultiPoly var(int id);
  static MultiPoly monomial(const Monomial& m, const Rational& c = 1);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  std::size_t size() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const Rational& c);
  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly operator*(const Rational& c) const;
  MultiPoly operator*(long c) const { return *this * Rational(c); }
  MultiPoly operator*(int c) const { return *this * Rational(c); }
  bool operator==(const MultiPoly& o) const { return terms_ == o.terms_; }
  bool operator!=(const MultiPoly& o) const { return !(*this == o); }

  MultiPoly pow(unsigned k) const;
  MultiPoly derivative(int v) const;
  // Multiply by var^k (k may be negative for Laurent variables).
  MultiPoly shift(int v, int k) const;
  MultiPoly substitute(int v, const MultiPoly& value) const;
  // Coefficient of var^k as a polynomial in the remaining variables.
  MultiPoly coeff_in(int v, int k) const;
  int max_exponent(int v) const;
  int min_exponent(int v) const;
  bool uses_var(int v) const;
  // Keep only terms for which pred(monomial) holds.
  MultiPoly filter(const std::function<bool(const Monomial&)>& pred) const;

  double evaluate(const std::map<int, double>& values) const;
  // Exponents are nonnegative except for Laurent-allowed variables.
  bool check_invariants() const;

  // Canonical text: terms sorted by monomial, "c*x^e*y" joined with " + ".
  std::string to_string() const;

 private:
  void normalize();  // sort, merge, drop zeros
  std::vector<Term> terms_;  // sorted by monomial, nonzero coefficients
};

inline MultiPoly operator*(const Rational& c, const MultiPoly& p) { return p * c; }
inline MultiPoly operator*(long c, const MultiPoly& p) { return p * Rational(c); }
inline MultiPoly operator+(const MultiPoly& p, long c) { return p + MultiPoly(c); }
inline MultiPoly operator-(const MultiPoly& p, long c) { return p - MultiPoly(c); }

// Synthetic division by (x - y) in variable x; y is a polynomial free of x.
// Returns {quotient, remainder}; the remainder is p with x replaced by y.
std::pair<MultiPoly, MultiPoly> divide_by_linear(const MultiPoly& p, int x, const MultiPoly& y);

}  // namespace vir
