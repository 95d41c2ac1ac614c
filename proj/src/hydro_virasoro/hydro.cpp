#include "virasoro/hydro.hpp"

#include <stdexcept>

namespace vir {

namespace {

int neg_part(int n) { return n < 0 ? -n : 0; }

ExactSeries upow(int d, const MultiPoly& c = 1) { return ExactSeries::monomial("u", d, c, -ExactSeries::kExact, true); }

// [u^{-1}] of s; zero if s has no such term.
MultiPoly residue(const ExactSeries& s) { return s.coeff(-1); }

void require_depth(const HydroChart& ch, int n) {
  if (ch.top_index() - neg_part(n) < 1)
    throw TruncationError("hydro: jet depth K=" + std::to_string(ch.jet_depth) + " too small for n=" +
                          std::to_string(n));
}

// f^{-p} known down to degree `low` (p >= 1).
ExactSeries inverse_power(const HydroChart& ch, int p, int low) {
  // f truncated at L has relative precision L - 1, so f^{-p} is known down to -p + L - 1.
  int L = low + p + 1;
  return pow(reciprocal(ch.series().truncated(L)), p).truncated(low);
}

ExactSeries polynomial_in_f(const HydroChart& ch, const std::vector<MultiPoly>& p) {
  ExactSeries f = ch.series(), r(upow(0, 0));
  ExactSeries fk = upow(0);
  for (std::size_t d = 0; d < p.size(); ++d) {
    if (!p[d].is_zero()) r = add(r, fk.scaled(p[d]));
    fk = mul(fk, f);
  }
  return r;
}

}  // namespace

HydroChart HydroChart::make(int n_pts, int jet_depth) {
  if (n_pts < 0 || jet_depth < 3) throw std::invalid_argument("HydroChart: need n_pts >= 0, K >= 3");
  HydroChart ch;
  ch.n_pts = n_pts;
  ch.jet_depth = jet_depth;
  for (int i = 1; i <= n_pts; ++i) ch.x.push_back(var_id("x" + std::to_string(i)));
  ch.f.assign(jet_depth, -1);
  for (int J = 2; J < jet_depth; ++J) ch.f[J] = var_id("f" + std::to_string(J));
  ch.central_charge = MultiPoly::var("c");
  return ch;
}

MultiPoly HydroChart::fj(int j) const {
  if (j > 0) throw std::out_of_range("HydroChart::fj: j > 0");
  if (j == 0) return MultiPoly(1);
  if (j == -1) return MultiPoly();
  if (-j > top_index()) throw TruncationError("HydroChart::fj: f_" + std::to_string(j) + " beyond jet depth");
  return MultiPoly::var(f[-j]);
}

ExactSeries HydroChart::series() const {
  std::map<int, MultiPoly> c{{1, 1}};
  for (int J = 2; J <= top_index(); ++J) c[1 - J] = MultiPoly::var(f[J]);
  return ExactSeries::from_coeffs("u", c, -ExactSeries::kExact, true);
}

std::vector<MultiPoly> bb_vector_field(const HydroChart& ch, int n) {
  require_depth(ch, n);
  std::vector<MultiPoly> p;
  if (n >= 2) return p;
  ExactSeries fp = ch.series().derivative();
  ExactSeries num = mul(mul(fp, fp), upow(1 - n));
  // 1/(f - x) = sum_k x^k f^{-k-1}; only k <= 1 - n reach u^{-1}.
  for (int k = 0; k <= 1 - n; ++k) p.push_back(residue(mul(num, inverse_power(ch, k + 1, n - 2))));
  return p;
}

std::vector<MultiPoly> bb_vector_field_by_inversion(const HydroChart& ch, int n) {
  require_depth(ch, n);
  std::vector<MultiPoly> p;
  if (n >= 2) return p;
  int T = n - 2;
  ExactSeries u = invert_composition(ch.series(), T);
  ExactSeries V = mul(pow(u, 1 - n), reciprocal(u.derivative()));
  for (int d = 0; d <= 1 - n; ++d) p.push_back(V.coeff(d));
  return p;
}

MultiPoly two_region_coeff(const HydroChart& ch, int l, int n, Region region) {
  require_depth(ch, n);
  if (l > -2 || -l > ch.top_index())
    throw std::out_of_range("two_region_coeff: l outside -2..1-K");
  ExactSeries f = ch.series();
  ExactSeries fp = f.derivative();
  ExactSeries num = mul(mul(fp, fp), upow(1 - n));
  MultiPoly r;
  if (region == Region::V1Inner) {
    // -sum_k [v1^{-1}] v1^{1-n} f'^2 f^k * [v2^{-1}] v2^{-l-2} f^{-k-1}, k <= -l-2
    ExactSeries fk = upow(0);
    for (int k = 0; k <= -l - 2; ++k) {
      MultiPoly a = residue(mul(num, fk));
      if (!a.is_zero()) r -= a * residue(mul(upow(-l - 2), inverse_power(ch, k + 1, l - 1)));
      fk = mul(fk, f);
    }
  } else {
    // sum_k [v1^{-1}] v1^{1-n} f'^2 f^{-k-1} * [v2^{-1}] v2^{-l-2} f^k, k <= 1-n
    ExactSeries fk = upow(0);
    for (int k = 0; k <= 1 - n; ++k) {
      MultiPoly a = residue(mul(num, inverse_power(ch, k + 1, n - 2)));
      if (!a.is_zero()) r += a * residue(mul(upow(-l - 2), fk));
      fk = mul(fk, f);
    }
  }
  return r;
}

MultiPoly diagonal_residue(const HydroChart& ch, int l, int n) {
  if (l + n > 0) return MultiPoly();
  if (-(l + n) > ch.top_index()) throw TruncationError("diagonal_residue: f index beyond jet depth");
  return ch.fj(l + n) * (l + n + 1);
}

MultiPoly bb_closed_form_coeff(const HydroChart& ch, int l, int n) {
  if (n < 2) throw std::invalid_argument("bb_closed_form_coeff: n >= 2 only");
  if (l + n > 0) return MultiPoly();
  return -(ch.fj(l + n) * (l + n + 1));
}

MultiPoly bb_jet_coeff(const HydroChart& ch, int l, int n) {
  require_depth(ch, n);
  ExactSeries delta = sub(polynomial_in_f(ch, bb_vector_field_by_inversion(ch, n)),
                          mul(upow(1 - n), ch.series().derivative()));
  return delta.coeff(l + 1);
}

DiffOperator bb_witt(const HydroChart& ch, int n) {
  require_depth(ch, n);
  std::vector<MultiPoly> p = bb_vector_field(ch, n);
  DiffOperator l;
  for (int xi : ch.x) {
    MultiPoly c, xp(1);
    for (const auto& pd : p) {
      c += pd * xp;
      xp = xp * MultiPoly::var(xi);
    }
    l += DiffOperator::partial(xi, c);
  }
  ExactSeries delta = sub(polynomial_in_f(ch, bb_vector_field_by_inversion(ch, n)),
                          mul(upow(1 - n), ch.series().derivative()));
  for (int J = 2; J <= ch.top_index(); ++J) l += DiffOperator::partial(ch.f[J], delta.coeff(1 - J));
  l.set_jet(ch.top_index() - neg_part(n), neg_part(n));
  return l;
}

MultiPoly bb_central_term(const HydroChart& ch, int n) {
  require_depth(ch, n);
  if (n >= -1) return MultiPoly();
  ExactSeries S = schwarzian(ch.series().truncated(n - 2));
  return ch.central_charge * residue(mul(S, upow(1 - n))) * (Rational(1) / 12);
}

DiffOperator bb_virasoro(const HydroChart& ch, int n) {
  DiffOperator l = bb_witt(ch, n);
  int v = l.valid(), s = l.shift();
  l += DiffOperator::multiplication(bb_central_term(ch, n));
  l.set_jet(v, s);
  return l;
}

MultiPoly bb_schwarzian_connection(const HydroChart& ch) {
  ExactSeries S = schwarzian(ch.series().truncated(-4));
  return residue(mul(S, upow(3)));
}

DiffOperator bb_restrict(const HydroChart& ch, const DiffOperator& op, int v) {
  try {
    return restrict_jet(ch.f, op, v);
  } catch (const std::out_of_range& e) {
    throw TruncationError(e.what());
  }
}

DiffOperator bb_commutator(const HydroChart& ch, const DiffOperator& a, const DiffOperator& b) {
  try {
    return commutator_jet(ch.f, a, b);
  } catch (const std::out_of_range& e) {
    throw TruncationError(e.what());
  }
}

BBRelationResult bb_relation(const HydroChart& ch, int m, int n, bool virasoro) {
  auto gen = [&](int k) { return virasoro ? bb_virasoro(ch, k) : bb_witt(ch, k); };
  BBRelationResult res{m, n, 0, false};
  DiffOperator lhs = bb_commutator(ch, gen(m), gen(n));
  DiffOperator rhs;
  if (m != n) rhs = gen(m + n) * MultiPoly(m - n);
  if (virasoro && m + n == 0)
    rhs += DiffOperator::multiplication(ch.central_charge * Rational(m * (m * m - 1), 12));
  res.compared_order = lhs.valid();
  res.ok = bb_restrict(ch, rhs, lhs.valid()) == bb_restrict(ch, lhs, lhs.valid());
  return res;
}

int bb_minimal_depth(int m, int n, bool virasoro, int k_max) {
  for (int K = 3; K <= k_max; ++K) {
    HydroChart ch = HydroChart::make(1, K);
    try {
      BBRelationResult r = bb_relation(ch, m, n, virasoro);
      if (r.ok && r.compared_order >= 2) return K;
    } catch (const TruncationError&) {
    }
  }
  return -1;
}

}  // namespace vir
