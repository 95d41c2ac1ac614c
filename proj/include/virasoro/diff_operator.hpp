#pragma once

#include "virasoro/multipoly.hpp"

#include <climits>
#include <map>
#include <string>
#include <vector>

namespace vir {

// Finite sum  sum_alpha c_alpha(x) d^alpha  in normal order (coefficients to
// the left). The derivative multi-index reuses Monomial over the same
// variable registry as the coefficients.
//
// Jet bookkeeping: an operator built from jets of depth G is exact on
// functions of a_2..a_v for v <= valid, and maps them to functions of
// a_2..a_{v+shift}.
class DiffOperator {
 public:
  static constexpr int kUnbounded = INT_MAX / 4;

  DiffOperator() = default;
  static DiffOperator multiplication(const MultiPoly& c);
  static DiffOperator partial(int var, const MultiPoly& c = 1);

  const std::map<Monomial, MultiPoly>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int order() const;
  MultiPoly zeroth_order() const;
  MultiPoly coefficient(const Monomial& alpha) const;

  int valid() const { return valid_; }
  int shift() const { return shift_; }
  DiffOperator& set_jet(int valid, int shift);

  DiffOperator operator-() const;
  DiffOperator& operator+=(const DiffOperator& o);
  DiffOperator operator+(const DiffOperator& o) const;
  DiffOperator operator-(const DiffOperator& o) const;
  // Left multiplication by a coefficient.
  DiffOperator operator*(const MultiPoly& c) const;
  // Composition A*B (apply B first).
  DiffOperator operator*(const DiffOperator& o) const;

  MultiPoly apply(const MultiPoly& f) const;
  // The first-order-and-higher part applied to f (drops the zeroth order term).
  MultiPoly apply_derivation(const MultiPoly& f) const;

  // Keep terms whose derivative index satisfies pred.
  DiffOperator filter(const std::function<bool(const Monomial&)>& pred) const;
  DiffOperator map_coeffs(const std::function<MultiPoly(const MultiPoly&)>& f) const;

  bool operator==(const DiffOperator& o) const { return terms_ == o.terms_; }

  // One line per term: "coefficient ; d[x^i*y^j]" sorted by derivative index.
  std::string to_string() const;

 private:
  void add_term(const Monomial& alpha, const MultiPoly& c);
  std::map<Monomial, MultiPoly> terms_;
  int valid_ = kUnbounded;
  int shift_ = 0;
};

DiffOperator commutator(const DiffOperator& a, const DiffOperator& b);

// Jet variables indexed by order: jet_ids[j] is the var id of the order-j
// jet coordinate (entries < 0 unused). Restriction drops derivative terms in
// jet variables of order > v.
DiffOperator restrict_jet(const std::vector<int>& jet_ids, const DiffOperator& op, int v);
DiffOperator compose_jet(const std::vector<int>& jet_ids, const DiffOperator& a, const DiffOperator& b);
DiffOperator commutator_jet(const std::vector<int>& jet_ids, const DiffOperator& a,
                            const DiffOperator& b);

}  // namespace vir
