#include "virasoro/exact_series.hpp"

#include <algorithm>
#include <sstream>

namespace vir {

namespace {

constexpr int kBig = ExactSeries::kExact / 2;

int sat(long v) {
  if (v >= kBig) return ExactSeries::kExact;
  if (v <= -kBig) return -ExactSeries::kExact;
  return static_cast<int>(v);
}

bool exact_value(int t) { return t >= kBig; }

void require_same(const ExactSeries& a, const ExactSeries& b, const char* op) {
  if (a.var() != b.var()) throw std::invalid_argument(std::string(op) + ": variable mismatch");
  if (a.at_infinity() != b.at_infinity())
    throw std::invalid_argument(std::string(op) + ": expansion point mismatch");
}

}  // namespace

ExactSeries::ExactSeries(std::string var, int trunc, bool at_infinity)
    : var_(std::move(var)), trunc_(sat(trunc)), at_inf_(at_infinity) {}

ExactSeries ExactSeries::monomial(const std::string& var, int deg, const MultiPoly& c, int trunc,
                                  bool at_infinity) {
  ExactSeries s(var, trunc, at_infinity);
  if (s.known(deg) && !c.is_zero()) s.c_[deg] = c;
  return s;
}

ExactSeries ExactSeries::from_coeffs(const std::string& var, const std::map<int, MultiPoly>& c,
                                     int trunc, bool at_infinity) {
  ExactSeries s(var, trunc, at_infinity);
  for (const auto& [d, p] : c)
    if (s.known(d) && !p.is_zero()) s.c_[d] = p;
  return s;
}

void ExactSeries::prune() {
  for (auto it = c_.begin(); it != c_.end();) {
    if (it->second.is_zero() || !known(it->first))
      it = c_.erase(it);
    else
      ++it;
  }
}

int ExactSeries::min_deg() const {
  if (c_.empty()) {
    if (is_exact()) return at_inf_ ? -kExact : kExact;
    return at_inf_ ? trunc_ - 1 : trunc_ + 1;
  }
  return at_inf_ ? c_.rbegin()->first : c_.begin()->first;
}

MultiPoly ExactSeries::coeff(int k) const {
  if (!known(k))
    throw TruncationError("coefficient " + std::to_string(k) + " of " + var_ +
                          " is beyond truncation order " + std::to_string(trunc_));
  auto it = c_.find(k);
  return it == c_.end() ? MultiPoly() : it->second;
}

ExactSeries ExactSeries::truncated(int order) const {
  ExactSeries r = *this;
  r.trunc_ = at_inf_ ? std::max(trunc_, order) : std::min(trunc_, order);
  r.prune();
  return r;
}

ExactSeries ExactSeries::derivative() const {
  ExactSeries r(var_, is_exact() ? trunc_ : trunc_ - 1, at_inf_);
  for (const auto& [d, p] : c_)
    if (d != 0) r.c_[d - 1] = p * Rational(d);
  r.prune();
  return r;
}

ExactSeries ExactSeries::operator-() const {
  ExactSeries r = *this;
  for (auto& [d, p] : r.c_) p = -p;
  return r;
}

ExactSeries ExactSeries::scaled(const MultiPoly& c) const {
  ExactSeries r(var_, trunc_, at_inf_);
  for (const auto& [d, p] : c_) r.c_[d] = p * c;
  r.prune();
  return r;
}

ExactSeries ExactSeries::shifted(int k) const {
  ExactSeries r(var_, is_exact() ? trunc_ : trunc_ + k, at_inf_);
  for (const auto& [d, p] : c_) r.c_[d + k] = p;
  return r;
}

ExactSeries ExactSeries::reflected(const std::string& var) const {
  ExactSeries r(var, -trunc_, !at_inf_);
  for (const auto& [d, p] : c_) r.c_[-d] = p;
  return r;
}

ExactSeries ExactSeries::map_coeffs(const std::function<MultiPoly(const MultiPoly&)>& f) const {
  ExactSeries r(var_, trunc_, at_inf_);
  for (const auto& [d, p] : c_) r.c_[d] = f(p);
  r.prune();
  return r;
}

bool ExactSeries::operator==(const ExactSeries& o) const {
  return var_ == o.var_ && trunc_ == o.trunc_ && at_inf_ == o.at_inf_ && c_ == o.c_;
}

std::string ExactSeries::to_string() const {
  std::ostringstream os;
  os << var_ << ";trunc=";
  if (is_exact())
    os << "exact";
  else
    os << trunc_;
  os << ";inf=" << (at_inf_ ? 1 : 0) << "\n";
  for (const auto& [d, p] : c_) {
    os << d << ":";
    if (p.is_constant())
      os << vir::to_string(p.constant_term());
    else
      os << "[" << p.to_string() << "]";
    os << "\n";
  }
  return os.str();
}

ExactSeries ExactSeries::parse(const std::string& text) {
  std::istringstream is(text);
  std::string header;
  std::getline(is, header);
  auto p1 = header.find(";trunc=");
  auto p2 = header.find(";inf=");
  if (p1 == std::string::npos || p2 == std::string::npos)
    throw std::invalid_argument("series header malformed: " + header);
  std::string var = header.substr(0, p1);
  std::string t = header.substr(p1 + 7, p2 - p1 - 7);
  bool inf = header.substr(p2 + 5) == "1";
  int trunc = t == "exact" ? (inf ? -kExact : kExact) : std::stoi(t);
  ExactSeries s(var, trunc, inf);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto c = line.find(':');
    if (c == std::string::npos) throw std::invalid_argument("series line malformed: " + line);
    int d = std::stoi(line.substr(0, c));
    std::string v = line.substr(c + 1);
    if (!v.empty() && v[0] == '[') throw std::invalid_argument("parse supports rational coefficients only");
    s.c_[d] = MultiPoly(parse_rational(v));
  }
  s.prune();
  return s;
}

ExactSeries add(const ExactSeries& a, const ExactSeries& b) {
  require_same(a, b, "add");
  int t = a.at_infinity() ? std::max(a.trunc_order(), b.trunc_order())
                          : std::min(a.trunc_order(), b.trunc_order());
  ExactSeries r(a.var(), t, a.at_infinity());
  r.c_ = a.c_;
  for (const auto& [d, p] : b.c_) r.c_[d] += p;
  r.prune();
  return r;
}

ExactSeries sub(const ExactSeries& a, const ExactSeries& b) { return add(a, -b); }

ExactSeries mul(const ExactSeries& a, const ExactSeries& b) {
  require_same(a, b, "mul");
  if (a.at_infinity()) return mul(a.reflected("_r"), b.reflected("_r")).reflected(a.var());
  long ta = a.trunc_order(), tb = b.trunc_order();
  long t;
  if (a.c_.empty() && b.c_.empty()) {
    t = std::min(ta, tb);
  } else {
    long ma = a.min_deg(), mb = b.min_deg();
    long x = exact_value(a.trunc_order()) ? ExactSeries::kExact : ta + mb;
    long y = exact_value(b.trunc_order()) ? ExactSeries::kExact : tb + ma;
    t = std::min(x, y);
  }
  ExactSeries r(a.var(), sat(t), false);
  for (const auto& [da, pa] : a.c_) {
    for (const auto& [db, pb] : b.c_) {
      int d = da + db;
      if (!r.known(d)) continue;
      r.c_[d] += pa * pb;
    }
  }
  r.prune();
  return r;
}

ExactSeries reciprocal(const ExactSeries& a) {
  if (a.at_infinity()) return reciprocal(a.reflected("_r")).reflected(a.var());
  if (a.coeffs().empty()) throw std::domain_error("reciprocal of zero series");
  int v = a.min_deg();
  MultiPoly lead = a.coeffs().begin()->second;
  if (!lead.is_constant()) throw std::domain_error("reciprocal: leading coefficient not a rational");
  Rational inv = 1 / lead.constant_term();
  // a = lead z^v (1 + h), h known to relative order a.trunc - v
  int rel = a.is_exact() ? ExactSeries::kExact : a.trunc_order() - v;
  ExactSeries h(a.var(), rel);
  for (const auto& [d, p] : a.coeffs())
    if (d != v) h = add(h, ExactSeries::monomial(a.var(), d - v, p * inv, rel));
  int work = rel;
  if (exact_value(rel)) {
    if (h.coeffs().empty()) return ExactSeries::monomial(a.var(), -v, MultiPoly(inv));
    throw std::domain_error("reciprocal of a non-monomial exact series needs a truncation order");
  }
  ExactSeries sum = ExactSeries::monomial(a.var(), 0, 1, work);
  ExactSeries term = sum;
  ExactSeries mh = -h;
  for (int k = 1; k <= work; ++k) {
    term = mul(term, mh).truncated(work);
    if (term.coeffs().empty()) break;
    sum = add(sum, term);
  }
  return sum.scaled(MultiPoly(inv)).shifted(-v).truncated(work - v);
}

ExactSeries pow(const ExactSeries& a, int k) {
  if (k < 0) return pow(reciprocal(a), -k);
  ExactSeries r = ExactSeries::monomial(a.var(), 0, 1, a.at_infinity() ? -ExactSeries::kExact : ExactSeries::kExact,
                                        a.at_infinity());
  ExactSeries b = a;
  unsigned e = static_cast<unsigned>(k);
  while (e) {
    if (e & 1u) r = mul(r, b);
    e >>= 1u;
    if (e) b = mul(b, b);
  }
  return r;
}

ExactSeries compose(const ExactSeries& outer, const ExactSeries& inner) {
  if (outer.at_infinity() != inner.at_infinity())
    throw std::invalid_argument("compose: expansion point mismatch");
  if (outer.at_infinity()) {
    ExactSeries o = outer.reflected("_s");
    ExactSeries i = reciprocal(inner.reflected("_s"));
    return compose(o, i).reflected(inner.var());
  }
  const std::string& z = inner.var();
  int v = inner.min_deg();
  bool outer_poly = outer.is_exact() && (outer.coeffs().empty() || outer.coeffs().begin()->first >= 0);
  if (inner.coeffs().empty() && inner.is_exact()) {
    // inner == 0 exactly
    ExactSeries r(z, outer.is_exact() ? ExactSeries::kExact : outer.trunc_order());
    if (outer.known(0)) r = add(r, ExactSeries::monomial(z, 0, outer.coeff(0)));
    return r;
  }
  if (v < 1 && !outer_poly)
    throw std::domain_error("compose: inner series must vanish at 0 unless outer is a polynomial");
  if (v < 0) throw std::domain_error("compose: inner has a pole");
  int dmin = outer.coeffs().empty() ? 0 : outer.coeffs().begin()->first;
  long tu = inner.is_exact() ? ExactSeries::kExact : static_cast<long>(inner.trunc_order()) - v;
  long R = ExactSeries::kExact;
  if (!exact_value(static_cast<int>(std::min<long>(tu, ExactSeries::kExact))))
    R = std::min<long>(R, static_cast<long>(dmin) * v + tu);
  if (!outer.is_exact()) R = std::min<long>(R, (static_cast<long>(outer.trunc_order()) + 1) * v - 1);
  int Rt = sat(R);

  ExactSeries result(z, Rt);
  if (outer.coeffs().empty()) return result;
  int dmax = outer.coeffs().rbegin()->first;
  // positive powers
  ExactSeries p = ExactSeries::monomial(z, 0, 1);
  for (int d = 0; d <= dmax; ++d) {
    if (d > 0) p = mul(p, inner).truncated(Rt);
    auto it = outer.coeffs().find(d);
    if (it != outer.coeffs().end()) result = add(result, p.scaled(it->second).truncated(Rt));
  }
  if (dmin < 0) {
    if (exact_value(Rt) && inner.coeffs().size() > 1)
      throw std::domain_error("compose: infinite result, truncate an input first");
    ExactSeries ri = reciprocal(exact_value(inner.trunc_order())
                                    ? inner.truncated(Rt + 2 * v - static_cast<int>(dmin + 1) * v)
                                    : inner);
    ExactSeries q = ri;
    for (int d = -1; d >= dmin; --d) {
      if (d < -1) q = mul(q, ri);
      auto it = outer.coeffs().find(d);
      if (it != outer.coeffs().end()) result = add(result, q.scaled(it->second).truncated(Rt));
    }
  }
  return result.truncated(Rt);
}

ExactSeries invert_composition(const ExactSeries& f, int order) {
  if (f.at_infinity()) {
    // f(u) = u + 0 + f_{-2}/u + ...  ->  F(s) = 1/f(1/s) = s + O(s^3)
    if (f.coeffs().empty() || f.min_deg() != 1 || f.coeff(1) != MultiPoly(1))
      throw std::domain_error("invert_composition: not hydrodynamically normalized");
    if (f.known(0) && !f.coeff(0).is_zero())
      throw std::domain_error("invert_composition: nonzero constant term at infinity");
    ExactSeries fr = f.reflected("_s");
    if (fr.is_exact()) {
      // for expansions at infinity `order` is the lowest degree to be known
      if (order >= kBig || order <= -kBig)
        throw std::domain_error("invert_composition: exact series at infinity needs an order");
      fr = fr.truncated(-order);
    }
    ExactSeries F = reciprocal(fr);
    ExactSeries G = invert_composition(F, ExactSeries::kExact);
    return reciprocal(G).reflected(f.var());
  }
  if (f.coeffs().empty() || f.min_deg() != 1)
    throw std::domain_error("invert_composition: need f(0)=0 and nonzero linear term");
  MultiPoly lead = f.coeff(1);
  if (!lead.is_constant() || lead.is_zero())
    throw std::domain_error("invert_composition: linear coefficient not invertible");
  int T = std::min(f.trunc_order(), order);
  if (exact_value(T)) {
    if (f.coeffs().size() == 1) return ExactSeries::monomial(f.var(), 1, MultiPoly(1 / lead.constant_term()));
    throw std::domain_error("invert_composition: exact input needs an order");
  }
  Rational inv = 1 / lead.constant_term();
  ExactSeries h = sub(f.truncated(T), ExactSeries::monomial(f.var(), 1, lead));
  ExactSeries zser = ExactSeries::monomial(f.var(), 1, MultiPoly(1), T);
  ExactSeries g = zser.scaled(MultiPoly(inv));
  for (int k = 1; k < T; ++k) g = sub(zser, compose(h, g)).scaled(MultiPoly(inv)).truncated(T);
  return g.truncated(T);
}

ExactSeries schwarzian(const ExactSeries& f) {
  ExactSeries d1 = f.derivative();
  if (d1.coeffs().empty() || d1.min_deg() != 0) throw std::domain_error("schwarzian: vanishing f'");
  if (f.is_exact()) throw std::domain_error("schwarzian: exact input needs truncation");
  ExactSeries d2 = d1.derivative();
  ExactSeries d3 = d2.derivative();
  ExactSeries inv = reciprocal(d1);
  ExactSeries a = mul(d3, inv);
  ExactSeries b = mul(d2, inv);
  return sub(a, mul(b, b).scaled(MultiPoly(make_rational(3, 2))));
}

MultiPoly coeff(const ExactSeries& f, int k) { return f.coeff(k); }

}  // namespace vir
