#include "virasoro/multipoly.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace vir {

Rational parse_rational(std::string_view s) {
  std::string str(s);
  Rational r;
  if (r.set_str(str, 10) != 0) throw std::invalid_argument("bad rational: " + str);
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + str);
  r.canonicalize();
  return r;
}

Rational factorial(unsigned n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rational(f);
}

Rational binomial(long n, long k) {
  if (k < 0) return 0;
  // generalized binomial for negative n
  Rational r = 1;
  for (long i = 0; i < k; ++i) r = r * Rational(n - i) / Rational(i + 1);
  r.canonicalize();
  return r;
}

namespace {

struct Registry {
  std::mutex mu;
  std::vector<VarInfo> vars;
  std::map<std::string, int> ids;
};

Registry& registry() {
  static Registry r;
  return r;
}

}  // namespace

int var_id(const std::string& name, bool laurent) {
  auto& r = registry();
  std::lock_guard<std::mutex> lock(r.mu);
  auto it = r.ids.find(name);
  if (it != r.ids.end()) {
    if (laurent) r.vars[it->second].laurent = true;
    return it->second;
  }
  if (static_cast<int>(r.vars.size()) >= kMaxVars)
    throw std::length_error("variable registry full at " + name);
  int id = static_cast<int>(r.vars.size());
  r.vars.push_back({name, laurent});
  r.ids.emplace(name, id);
  return id;
}

const VarInfo& var_info(int id) {
  auto& r = registry();
  std::lock_guard<std::mutex> lock(r.mu);
  return r.vars.at(id);
}

int var_count() {
  auto& r = registry();
  std::lock_guard<std::mutex> lock(r.mu);
  return static_cast<int>(r.vars.size());
}

bool Monomial::is_one() const {
  for (auto x : e)
    if (x) return false;
  return true;
}

int Monomial::total_degree() const {
  int d = 0;
  for (auto x : e) d += x;
  return d;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial m;
  for (int i = 0; i < kMaxVars; ++i) {
    int s = e[i] + o.e[i];
    if (s > 127 || s < -128) throw std::overflow_error("monomial exponent overflow");
    m.e[i] = static_cast<int8_t>(s);
  }
  return m;
}

std::string Monomial::to_string() const {
  std::string out;
  for (int i = 0; i < kMaxVars; ++i) {
    if (!e[i]) continue;
    if (!out.empty()) out += "*";
    out += var_info(i).name;
    if (e[i] != 1) out += "^" + std::to_string(static_cast<int>(e[i]));
  }
  return out.empty() ? "1" : out;
}

MultiPoly::MultiPoly(const Rational& c) {
  if (c != 0) {
    Rational r = c;
    r.canonicalize();
    terms_.emplace_back(Monomial{}, r);
  }
}

MultiPoly MultiPoly::var(const std::string& name, bool laurent) { return var(var_id(name, laurent)); }

MultiPoly MultiPoly::var(int id) {
  Monomial m;
  m[id] = 1;
  return monomial(m);
}

MultiPoly MultiPoly::monomial(const Monomial& m, const Rational& c) {
  MultiPoly p;
  if (c != 0) {
    p.terms_.emplace_back(m, c);
    p.terms_.back().second.canonicalize();
  }
  return p;
}

bool MultiPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one());
}

Rational MultiPoly::constant_term() const {
  for (const auto& [m, c] : terms_)
    if (m.is_one()) return c;
  return 0;
}

void MultiPoly::normalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return a.first < b.first; });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().first == t.first)
      out.back().second += t.second;
    else
      out.push_back(std::move(t));
  }
  terms_.clear();
  for (auto& t : out) {
    if (t.second != 0) {
      t.second.canonicalize();
      terms_.push_back(std::move(t));
    }
  }
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  if (o.terms_.empty()) return *this;
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  auto i = terms_.begin();
  auto j = o.terms_.begin();
  while (i != terms_.end() || j != o.terms_.end()) {
    if (j == o.terms_.end() || (i != terms_.end() && i->first < j->first)) {
      out.push_back(std::move(*i++));
    } else if (i == terms_.end() || j->first < i->first) {
      out.push_back(*j++);
    } else {
      Rational s = i->second + j->second;
      if (s != 0) out.emplace_back(i->first, s);
      ++i;
      ++j;
    }
  }
  terms_ = std::move(out);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) { return *this += -o; }

MultiPoly& MultiPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  Rational k = c;
  k.canonicalize();
  for (auto& t : terms_) t.second *= k;
  return *this;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  MultiPoly r = *this;
  r += o;
  return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
  MultiPoly r = *this;
  r -= o;
  return r;
}

MultiPoly MultiPoly::operator*(const Rational& c) const {
  MultiPoly r = *this;
  r *= c;
  return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  MultiPoly r;
  if (terms_.empty() || o.terms_.empty()) return r;
  if (o.is_constant()) return *this * o.terms_[0].second;
  if (is_constant()) return o * terms_[0].second;
  r.terms_.reserve(terms_.size() * o.terms_.size());
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) r.terms_.emplace_back(ma * mb, ca * cb);
  r.normalize();
  return r;
}

MultiPoly MultiPoly::pow(unsigned k) const {
  MultiPoly r(1);
  MultiPoly b = *this;
  while (k) {
    if (k & 1u) r = r * b;
    k >>= 1u;
    if (k) b = b * b;
  }
  return r;
}

MultiPoly MultiPoly::derivative(int v) const {
  MultiPoly r;
  for (const auto& [m, c] : terms_) {
    if (!m[v]) continue;
    Monomial d = m;
    d[v] = static_cast<int8_t>(m[v] - 1);
    r.terms_.emplace_back(d, c * m[v]);
  }
  // derivative preserves the ordering only up to merges; renormalize
  r.normalize();
  return r;
}

MultiPoly MultiPoly::shift(int v, int k) const {
  Monomial s;
  s[v] = static_cast<int8_t>(k);
  MultiPoly r;
  for (const auto& [m, c] : terms_) r.terms_.emplace_back(m * s, c);
  r.normalize();
  return r;
}

MultiPoly MultiPoly::substitute(int v, const MultiPoly& value) const {
  std::map<int, MultiPoly> powers;
  MultiPoly r;
  for (const auto& [m, c] : terms_) {
    Monomial rest = m;
    int k = m[v];
    rest[v] = 0;
    MultiPoly t = monomial(rest, c);
    if (k != 0) {
      if (k < 0) throw std::domain_error("substitute into negative power");
      auto it = powers.find(k);
      if (it == powers.end()) it = powers.emplace(k, value.pow(static_cast<unsigned>(k))).first;
      t = t * it->second;
    }
    r += t;
  }
  return r;
}

MultiPoly MultiPoly::coeff_in(int v, int k) const {
  MultiPoly r;
  for (const auto& [m, c] : terms_) {
    if (m[v] != k) continue;
    Monomial rest = m;
    rest[v] = 0;
    r.terms_.emplace_back(rest, c);
  }
  r.normalize();
  return r;
}

int MultiPoly::max_exponent(int v) const {
  int mx = 0;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (first || m[v] > mx) mx = m[v];
    first = false;
  }
  return mx;
}

int MultiPoly::min_exponent(int v) const {
  int mn = 0;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (first || m[v] < mn) mn = m[v];
    first = false;
  }
  return mn;
}

bool MultiPoly::uses_var(int v) const {
  for (const auto& [m, c] : terms_)
    if (m[v]) return true;
  return false;
}

MultiPoly MultiPoly::filter(const std::function<bool(const Monomial&)>& pred) const {
  MultiPoly r;
  for (const auto& t : terms_)
    if (pred(t.first)) r.terms_.push_back(t);
  return r;
}

double MultiPoly::evaluate(const std::map<int, double>& values) const {
  double s = 0;
  for (const auto& [m, c] : terms_) {
    double t = c.get_d();
    for (int i = 0; i < kMaxVars; ++i) {
      if (!m[i]) continue;
      auto it = values.find(i);
      if (it == values.end()) throw std::out_of_range("no value for " + var_info(i).name);
      t *= std::pow(it->second, m[i]);
    }
    s += t;
  }
  return s;
}

bool MultiPoly::check_invariants() const {
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const auto& [m, c] = terms_[i];
    if (c == 0) return false;
    if (c.get_den() <= 0) return false;
    if (i && !(terms_[i - 1].first < m)) return false;
    for (int v = 0; v < kMaxVars; ++v)
      if (m[v] < 0 && !var_info(v).laurent) return false;
  }
  return true;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    if (m.is_one()) {
      os << vir::to_string(c);
    } else if (c == 1) {
      os << m.to_string();
    } else {
      os << vir::to_string(c) << "*" << m.to_string();
    }
  }
  return os.str();
}

std::pair<MultiPoly, MultiPoly> divide_by_linear(const MultiPoly& p, int x, const MultiPoly& y) {
  if (y.uses_var(x)) throw std::invalid_argument("divide_by_linear: root depends on x");
  int lo = p.min_exponent(x);
  if (lo < 0) throw std::invalid_argument("divide_by_linear: negative powers of x");
  int hi = p.max_exponent(x);
  // Horner: p = sum_k p_k x^k; q_{k-1} = p_k + y q_k
  std::vector<MultiPoly> q(hi + 1);
  MultiPoly carry;
  for (int k = hi; k >= 1; --k) {
    carry = p.coeff_in(x, k) + y * carry;
    q[k - 1] = carry;
  }
  MultiPoly rem = p.coeff_in(x, 0) + y * carry;
  MultiPoly quot;
  for (int k = 0; k < hi; ++k) quot += q[k].shift(x, k);
  return {quot, rem};
}

}  // namespace vir
