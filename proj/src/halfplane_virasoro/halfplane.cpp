#include "virasoro/halfplane.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace vir {

namespace {

int neg_part(int n) { return n < 0 ? -n : 0; }

MultiPoly zpow(int zvar, int k) { return MultiPoly(1).shift(zvar, k); }

int max_jet_index(const HalfPlaneChart& ch, const MultiPoly& p) {
  int mx = 0;
  for (int j = 2; j <= ch.jet_order; ++j)
    if (p.uses_var(ch.a[j])) mx = j;
  return mx;
}

// z^{n+1} s^{n+1} / w' and z^{n+1} s^{n+1}, each known up to relative degree D.
struct Expansions {
  ExactSeries u;    // w^{n+1} / w'
  ExactSeries wn1;  // w^{n+1}
  ExactSeries wp;   // w'
};

Expansions expansions(const HalfPlaneChart& ch, int n, int D) {
  std::map<int, MultiPoly> sc{{0, 1}}, wc{{0, 1}};
  for (int j = 2; j <= ch.jet_order; ++j) {
    sc[j - 1] = MultiPoly::var(ch.a[j]);
    wc[j - 1] = MultiPoly::var(ch.a[j]) * j;
  }
  ExactSeries s = ExactSeries::from_coeffs("z", sc);
  ExactSeries wp = ExactSeries::from_coeffs("z", wc);
  ExactSeries sp = n + 1 >= 0 ? pow(s, n + 1).truncated(D)
                              : pow(reciprocal(s.truncated(D)), -(n + 1)).truncated(D);
  ExactSeries u = mul(sp, reciprocal(wp.truncated(D))).truncated(D);
  return {u.shifted(n + 1), sp.shifted(n + 1), wp};
}

}  // namespace

HalfPlaneChart HalfPlaneChart::make(int n_spectators, int jet_order, bool symbolic_weights) {
  if (n_spectators < 0 || jet_order < 2) throw std::invalid_argument("HalfPlaneChart: bad sizes");
  HalfPlaneChart ch;
  ch.n_spectators = n_spectators;
  ch.jet_order = jet_order;
  for (int i = 1; i <= n_spectators; ++i) {
    ch.z.push_back(var_id("z" + std::to_string(i), true));
    ch.spectator_weights.push_back(symbolic_weights ? MultiPoly::var("h" + std::to_string(i))
                                                    : MultiPoly());
  }
  ch.a.assign(jet_order + 1, -1);
  for (int j = 2; j <= jet_order; ++j) ch.a[j] = var_id("a" + std::to_string(j));
  ch.seed_weight = MultiPoly::var("h");
  ch.central_charge = MultiPoly::var("c");
  return ch;
}

int HalfPlaneChart::jet_index(int var) const {
  for (int j = 2; j <= jet_order; ++j)
    if (a[j] == var) return j;
  return 0;
}

MultiPoly HalfPlaneChart::total_spectator_weight() const {
  MultiPoly s;
  for (const auto& h : spectator_weights) s += h;
  return s;
}

ExactSeries HalfPlaneChart::w() const {
  std::map<int, MultiPoly> c{{1, 1}};
  for (int j = 2; j <= jet_order; ++j) c[j] = MultiPoly::var(a[j]);
  return ExactSeries::from_coeffs("z", c);
}

std::vector<MultiPoly> vector_field_coeffs(const HalfPlaneChart& ch, int n, int j_max) {
  if (j_max < n) throw std::invalid_argument("vector_field_coeffs: j_max < n");
  if (j_max - n + 1 > ch.jet_order)
    throw TruncationError("vector_field_coeffs: b_{" + std::to_string(j_max) + "," + std::to_string(n) +
                          "} needs a_" + std::to_string(j_max - n + 1) + " beyond jet order " +
                          std::to_string(ch.jet_order));
  Expansions e = expansions(ch, n, j_max - n + 1);
  std::vector<MultiPoly> b;
  for (int j = n; j <= j_max; ++j) b.push_back(e.u.coeff(j + 1));
  return b;
}

MultiPoly WittData::b0() const {
  auto it = p.find(1);
  return it == p.end() ? MultiPoly() : it->second;
}

MultiPoly WittData::p_at(int zvar) const {
  MultiPoly r;
  for (const auto& [d, c] : p) r += c * zpow(zvar, d);
  return r;
}

MultiPoly WittData::dp_at(int zvar) const {
  MultiPoly r;
  for (const auto& [d, c] : p)
    if (d != 0) r += c * zpow(zvar, d - 1) * d;
  return r;
}

WittData witt_data(const HalfPlaneChart& ch, int n) {
  int G = ch.jet_order;
  if (G - neg_part(n) < 1)
    throw TruncationError("witt_data: jet order " + std::to_string(G) + " too small for n=" +
                          std::to_string(n));
  Expansions e = expansions(ch, n, G + std::abs(n) + 2);
  WittData d;
  d.n = n;
  for (int k = n + 1; k <= 1; ++k) {
    MultiPoly c = e.u.coeff(k);
    if (!c.is_zero()) d.p[k] = c;
  }
  // delta a_m = coeff_m(w^{n+1} - P_n w')
  ExactSeries P = ExactSeries::from_coeffs("z", d.p);
  ExactSeries rw = sub(e.wn1, mul(P, e.wp));
  for (int m = 2; m <= G; ++m) {
    MultiPoly c = rw.coeff(m);
    if (!c.is_zero()) d.jet[m] = c;
  }
  return d;
}

DiffOperator witt_vector_field(const HalfPlaneChart& ch, int n) {
  WittData d = witt_data(ch, n);
  DiffOperator minus;
  for (int zi : ch.z) minus += DiffOperator::partial(zi, d.p_at(zi));
  for (const auto& [m, c] : d.jet) minus += DiffOperator::partial(ch.a[m], c);
  DiffOperator l = -minus;
  l.set_jet(ch.jet_order - neg_part(n), neg_part(n));
  return l;
}

DiffOperator witt_generator(const HalfPlaneChart& ch, int n) {
  WittData d = witt_data(ch, n);
  DiffOperator l = witt_vector_field(ch, n);
  MultiPoly m;
  for (int i = 0; i < ch.n_spectators; ++i) m -= ch.spectator_weights[i] * d.dp_at(ch.z[i]);
  l += DiffOperator::multiplication(m);
  return l;
}

MultiPoly schwarzian_connection(const HalfPlaneChart& ch) {
  if (ch.jet_order < 3) throw TruncationError("schwarzian_connection: needs a_3");
  MultiPoly a2 = MultiPoly::var(ch.a[2]), a3 = MultiPoly::var(ch.a[3]);
  return (a2 * a2 - a3) * 6;
}

MultiPoly central_term(const HalfPlaneChart& ch, int n) {
  if (n >= -1) return MultiPoly();
  int k = -n - 2;
  if (3 + k > ch.jet_order - 1)
    throw TruncationError("central_term: jet order too small for n=" + std::to_string(n));
  DiffOperator X = witt_vector_field(ch, -1);
  MultiPoly t = schwarzian_connection(ch);
  for (int i = 0; i < k; ++i) t = X.apply(t);
  return ch.central_charge * t * (1 / (Rational(12) * factorial(k)));
}

DiffOperator virasoro_generator(const HalfPlaneChart& ch, int n) {
  DiffOperator l = witt_generator(ch, n);
  int v = l.valid(), s = l.shift();
  l += DiffOperator::multiplication(central_term(ch, n));
  l.set_jet(v, s);
  return l;
}

DiffOperator restrict_jet(const HalfPlaneChart& ch, const DiffOperator& op, int v) {
  try {
    return restrict_jet(ch.a, op, v);
  } catch (const std::out_of_range& e) {
    throw TruncationError(e.what());
  }
}

DiffOperator compose_jet(const HalfPlaneChart& ch, const DiffOperator& a, const DiffOperator& b) {
  try {
    return compose_jet(ch.a, a, b);
  } catch (const std::out_of_range& e) {
    throw TruncationError(e.what());
  }
}

DiffOperator commutator_jet(const HalfPlaneChart& ch, const DiffOperator& a, const DiffOperator& b) {
  try {
    return commutator_jet(ch.a, a, b);
  } catch (const std::out_of_range& e) {
    throw TruncationError(e.what());
  }
}

Rational kac_weight(int r, int s, const Rational& tau) {
  if (tau == 0) throw std::domain_error("kac_weight: tau = 0");
  if (r < 1 || s < 1) throw std::invalid_argument("kac_weight: r, s >= 1");
  Rational x = Rational(r) * tau - s, y = tau - 1;
  Rational h = (x * x - y * y) / (4 * tau);
  h.canonicalize();
  return h;
}

DiffOperator delta21(const HalfPlaneChart& ch, const MultiPoly& tau) {
  DiffOperator l1 = virasoro_generator(ch, -1), l2 = virasoro_generator(ch, -2);
  DiffOperator sq = compose_jet(ch, l1, l1);
  DiffOperator r = sq - l2 * tau;
  return restrict_jet(ch, r, std::min(sq.valid(), l2.valid()));
}

WeightVector weight_symbol() { return {{Monomial{}, MultiPoly(1)}}; }

WeightVector add(const WeightVector& a, const WeightVector& b, const MultiPoly& scale) {
  WeightVector r = a;
  for (const auto& [k, c] : b) {
    r[k] += c * scale;
    if (r[k].is_zero()) r.erase(k);
  }
  return r;
}

WeightVector act(const HalfPlaneChart& ch, int n, const WeightVector& v, bool virasoro) {
  WittData d = witt_data(ch, n);
  DiffOperator X = witt_vector_field(ch, n);
  MultiPoly central = virasoro ? central_term(ch, n) : MultiPoly();
  MultiPoly H = ch.total_spectator_weight();
  MultiPoly b0 = d.b0();
  MultiPoly weight_mult;
  for (int i = 0; i < ch.n_spectators; ++i) weight_mult -= ch.spectator_weights[i] * d.dp_at(ch.z[i]);
  std::vector<MultiPoly> ptilde;
  for (int zi : ch.z) ptilde.push_back(d.p_at(zi) - b0 * MultiPoly::var(zi));

  WeightVector out;
  auto put = [&](const Monomial& k, const MultiPoly& c) {
    if (c.is_zero()) return;
    out[k] += c;
    if (out[k].is_zero()) out.erase(k);
  };
  for (const auto& [alpha, C] : v) {
    if (max_jet_index(ch, C) > X.valid())
      throw TruncationError("act: coefficient needs jet variables beyond the provable order");
    MultiPoly wt = ch.seed_weight + MultiPoly(alpha.total_degree()) + H;
    put(alpha, X.apply(C) + C * (b0 * wt + weight_mult + central));
    for (int i = 0; i < ch.n_spectators; ++i) {
      Monomial beta = alpha;
      beta[ch.z[i]] = static_cast<int8_t>(beta[ch.z[i]] + 1);
      put(beta, -(C * ptilde[i]));
    }
  }
  return out;
}

WeightVector euler_normal_form(const HalfPlaneChart& ch, const WeightVector& v) {
  WeightVector cur;
  for (const auto& [k, c] : v)
    if (!c.is_zero()) cur[k] = c;
  if (ch.n_spectators == 0) return cur;
  int z1 = ch.z[0];
  MultiPoly H = ch.total_spectator_weight();
  MultiPoly inv_z1 = zpow(z1, -1);
  while (true) {
    bool changed = false;
    WeightVector next;
    auto put = [&](const Monomial& k, const MultiPoly& c) {
      if (c.is_zero()) return;
      next[k] += c;
      if (next[k].is_zero()) next.erase(k);
    };
    for (const auto& [alpha, C] : cur) {
      if (alpha[z1] == 0) {
        put(alpha, C);
        continue;
      }
      changed = true;
      // d_1 g = -z_1^{-1} ((wt g + H) g + sum_{i>=2} z_i d_i g),  g = d^beta f
      Monomial beta = alpha;
      beta[z1] = static_cast<int8_t>(beta[z1] - 1);
      MultiPoly wt = ch.seed_weight + MultiPoly(beta.total_degree()) + H;
      put(beta, -(C * inv_z1 * wt));
      for (int i = 1; i < ch.n_spectators; ++i) {
        Monomial gamma = beta;
        gamma[ch.z[i]] = static_cast<int8_t>(gamma[ch.z[i]] + 1);
        put(gamma, -(C * inv_z1 * MultiPoly::var(ch.z[i])));
      }
    }
    cur = std::move(next);
    if (!changed) return cur;
  }
}

bool equal_mod_euler(const HalfPlaneChart& ch, const WeightVector& a, const WeightVector& b) {
  return euler_normal_form(ch, add(a, b, -1)).empty();
}

std::string to_string(const WeightVector& v) {
  std::ostringstream os;
  for (const auto& [k, c] : v) os << c.to_string() << " ; d[" << k.to_string() << "]f\n";
  return os.str();
}

WeightVector delta21_on_symbol(const HalfPlaneChart& ch, const MultiPoly& tau) {
  WeightVector f = weight_symbol();
  WeightVector sq = act(ch, -1, act(ch, -1, f, true), true);
  return add(sq, act(ch, -2, f, true), -tau);
}

WeightVector bpz_target(const HalfPlaneChart& ch, const MultiPoly& tau) {
  WeightVector r;
  auto put = [&](const Monomial& k, const MultiPoly& c) {
    r[k] += c;
    if (r[k].is_zero()) r.erase(k);
  };
  for (int zi : ch.z) {
    for (int zj : ch.z) {
      Monomial m;
      m[zi] = static_cast<int8_t>(m[zi] + 1);
      m[zj] = static_cast<int8_t>(m[zj] + 1);
      put(m, 1);
    }
    Monomial m;
    m[zi] = 1;
    put(m, tau * zpow(zi, -1));
  }
  return r;
}

DiffOperator bpz_witt0(const HalfPlaneChart& ch, int n) {
  DiffOperator r;
  for (int i = 0; i < ch.n_spectators; ++i) {
    int zi = ch.z[i];
    r += DiffOperator::partial(zi, -zpow(zi, 1 - n));
    r += DiffOperator::multiplication(-(ch.spectator_weights[i] * zpow(zi, -n) * (1 - n)));
  }
  return r;
}

DiffOperator bpz_operator(const HalfPlaneChart& ch, const MultiPoly& tau) {
  DiffOperator l1 = bpz_witt0(ch, 1), l2 = bpz_witt0(ch, 2);
  return l1 * l1 - l2 * tau;
}

std::map<int, MultiPoly> apply_to_power(const DiffOperator& op, int zvar, const MultiPoly& e) {
  std::map<int, MultiPoly> out;
  for (const auto& [alpha, c] : op.terms()) {
    Monomial rest = alpha;
    rest[zvar] = 0;
    if (!rest.is_one()) throw std::invalid_argument("apply_to_power: operator uses other derivatives");
    int k = alpha[zvar];
    MultiPoly ff(1);
    for (int i = 0; i < k; ++i) ff = ff * (e - MultiPoly(i));
    for (const auto& [m, q] : c.terms()) {
      Monomial mm = m;
      int s = m[zvar];
      mm[zvar] = 0;
      out[s - k] += MultiPoly::monomial(mm, q) * ff;
    }
  }
  for (auto it = out.begin(); it != out.end();) {
    if (it->second.is_zero())
      it = out.erase(it);
    else
      ++it;
  }
  return out;
}

BracketSpanReport bracket_span(const HalfPlaneChart& ch, int n_max) {
  if (n_max < 2) throw std::invalid_argument("bracket_span: n_max >= 2");
  if (ch.jet_order < n_max + 3)
    throw TruncationError("bracket_span: jet order " + std::to_string(ch.jet_order) + " < n_max + 3");
  BracketSpanReport rep;
  rep.n_max = n_max;
  rep.confirmed = {1, 2};
  DiffOperator l1 = witt_generator(ch, -1);
  DiffOperator cur = witt_generator(ch, -2);
  rep.ok = true;
  for (int n = 2; n < n_max; ++n) {
    DiffOperator next = commutator_jet(ch, l1, cur) * MultiPoly(Rational(1, n - 1));
    DiffOperator direct = restrict_jet(ch, witt_generator(ch, -n - 1), next.valid());
    if (restrict_jet(ch, next, next.valid()) == direct) {
      rep.confirmed.push_back(n + 1);
    } else {
      rep.ok = false;
      break;
    }
    cur = next;
  }
  return rep;
}

}  // namespace vir
