#include "virasoro/diff_operator.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace vir {

namespace {

int clamp_valid(long v) {
  if (v >= DiffOperator::kUnbounded) return DiffOperator::kUnbounded;
  return static_cast<int>(v);
}

// All gamma <= alpha componentwise, with prod binom(alpha_i, gamma_i).
void sub_indices(const Monomial& alpha, std::vector<std::pair<Monomial, Rational>>& out) {
  out.clear();
  out.emplace_back(Monomial{}, Rational(1));
  for (int v = 0; v < kMaxVars; ++v) {
    int a = alpha[v];
    if (!a) continue;
    std::size_t n = out.size();
    for (std::size_t i = 0; i < n; ++i) {
      for (int g = 1; g <= a; ++g) {
        Monomial m = out[i].first;
        m[v] = static_cast<int8_t>(g);
        out.emplace_back(m, out[i].second * binomial(a, g));
      }
    }
  }
}

MultiPoly derive(const MultiPoly& p, const Monomial& gamma) {
  MultiPoly r = p;
  for (int v = 0; v < kMaxVars && !r.is_zero(); ++v)
    for (int k = 0; k < gamma[v] && !r.is_zero(); ++k) r = r.derivative(v);
  return r;
}

Monomial difference(const Monomial& a, const Monomial& b) {
  Monomial m;
  for (int v = 0; v < kMaxVars; ++v) m[v] = static_cast<int8_t>(a[v] - b[v]);
  return m;
}

}  // namespace

DiffOperator DiffOperator::multiplication(const MultiPoly& c) {
  DiffOperator d;
  d.add_term(Monomial{}, c);
  return d;
}

DiffOperator DiffOperator::partial(int var, const MultiPoly& c) {
  DiffOperator d;
  Monomial m;
  m[var] = 1;
  d.add_term(m, c);
  return d;
}

void DiffOperator::add_term(const Monomial& alpha, const MultiPoly& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(alpha);
  if (it == terms_.end()) {
    terms_.emplace(alpha, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

int DiffOperator::order() const {
  int o = 0;
  for (const auto& [a, c] : terms_) o = std::max(o, a.total_degree());
  return o;
}

MultiPoly DiffOperator::zeroth_order() const { return coefficient(Monomial{}); }

MultiPoly DiffOperator::coefficient(const Monomial& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? MultiPoly() : it->second;
}

DiffOperator& DiffOperator::set_jet(int valid, int shift) {
  valid_ = valid;
  shift_ = shift;
  return *this;
}

DiffOperator DiffOperator::operator-() const {
  DiffOperator r = *this;
  for (auto& [a, c] : r.terms_) c = -c;
  return r;
}

DiffOperator& DiffOperator::operator+=(const DiffOperator& o) {
  for (const auto& [a, c] : o.terms_) add_term(a, c);
  valid_ = std::min(valid_, o.valid_);
  shift_ = std::max(shift_, o.shift_);
  return *this;
}

DiffOperator DiffOperator::operator+(const DiffOperator& o) const {
  DiffOperator r = *this;
  r += o;
  return r;
}

DiffOperator DiffOperator::operator-(const DiffOperator& o) const { return *this + (-o); }

DiffOperator DiffOperator::operator*(const MultiPoly& c) const {
  DiffOperator r;
  r.valid_ = valid_;
  r.shift_ = shift_;
  for (const auto& [a, p] : terms_) r.add_term(a, c * p);
  return r;
}

DiffOperator DiffOperator::operator*(const DiffOperator& o) const {
  DiffOperator r;
  std::vector<std::pair<Monomial, Rational>> subs;
  // p d^alpha (q d^beta) = sum_gamma binom(alpha,gamma) p (d^gamma q) d^(alpha-gamma+beta)
  for (const auto& [alpha, p] : terms_) {
    sub_indices(alpha, subs);
    for (const auto& [gamma, b] : subs) {
      Monomial rest = difference(alpha, gamma);
      for (const auto& [beta, q] : o.terms_) {
        MultiPoly dq = derive(q, gamma);
        if (dq.is_zero()) continue;
        r.add_term(rest * beta, p * dq * b);
      }
    }
  }
  long v = std::min<long>(o.valid_, static_cast<long>(valid_) - o.shift_);
  r.valid_ = clamp_valid(v);
  r.shift_ = shift_ + o.shift_;
  return r;
}

MultiPoly DiffOperator::apply(const MultiPoly& f) const {
  MultiPoly r;
  for (const auto& [a, c] : terms_) r += c * derive(f, a);
  return r;
}

MultiPoly DiffOperator::apply_derivation(const MultiPoly& f) const {
  MultiPoly r;
  for (const auto& [a, c] : terms_)
    if (!a.is_one()) r += c * derive(f, a);
  return r;
}

DiffOperator DiffOperator::filter(const std::function<bool(const Monomial&)>& pred) const {
  DiffOperator r;
  r.valid_ = valid_;
  r.shift_ = shift_;
  for (const auto& [a, c] : terms_)
    if (pred(a)) r.terms_.emplace(a, c);
  return r;
}

DiffOperator DiffOperator::map_coeffs(const std::function<MultiPoly(const MultiPoly&)>& f) const {
  DiffOperator r;
  r.valid_ = valid_;
  r.shift_ = shift_;
  for (const auto& [a, c] : terms_) r.add_term(a, f(c));
  return r;
}

std::string DiffOperator::to_string() const {
  std::ostringstream os;
  for (const auto& [a, c] : terms_) os << c.to_string() << " ; d[" << a.to_string() << "]\n";
  return os.str();
}

DiffOperator commutator(const DiffOperator& a, const DiffOperator& b) { return a * b - b * a; }

DiffOperator restrict_jet(const std::vector<int>& jet_ids, const DiffOperator& op, int v) {
  if (v < 1) throw std::out_of_range("restrict_jet: no provable jet order left");
  DiffOperator r = op.filter([&](const Monomial& alpha) {
    for (int j = std::max(v + 1, 0); j < static_cast<int>(jet_ids.size()); ++j)
      if (jet_ids[j] >= 0 && alpha[jet_ids[j]]) return false;
    return true;
  });
  r.set_jet(std::min(op.valid(), v), op.shift());
  return r;
}

DiffOperator compose_jet(const std::vector<int>& jet_ids, const DiffOperator& a, const DiffOperator& b) {
  int top = static_cast<int>(jet_ids.size()) - 1;
  int v = std::min({b.valid(), a.valid() - b.shift(), top});
  DiffOperator r = restrict_jet(jet_ids, a, v + b.shift()) * restrict_jet(jet_ids, b, v);
  return restrict_jet(jet_ids, r, v);
}

DiffOperator commutator_jet(const std::vector<int>& jet_ids, const DiffOperator& a,
                            const DiffOperator& b) {
  int top = static_cast<int>(jet_ids.size()) - 1;
  int v = std::min({b.valid(), a.valid() - b.shift(), a.valid(), b.valid() - a.shift(), top});
  DiffOperator ab = restrict_jet(jet_ids, a, v + b.shift()) * restrict_jet(jet_ids, b, v);
  DiffOperator ba = restrict_jet(jet_ids, b, v + a.shift()) * restrict_jet(jet_ids, a, v);
  DiffOperator r = restrict_jet(jet_ids, ab - ba, v);
  r.set_jet(v, a.shift() + b.shift());
  return r;
}

}  // namespace vir
