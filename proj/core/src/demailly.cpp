#include "demres/demailly.hpp"

#include <map>
#include <mutex>
#include <tuple>

namespace demres {

namespace {

RationalPoly t_monomial(std::size_t nvars, std::initializer_list<std::pair<int, int>> powers,
                        const Rational& c = 1) {
  Exponents e(nvars);
  for (auto [var, p] : powers) e[static_cast<std::size_t>(var)] += p;
  return RationalPoly::monomial(e, c);
}

int v_degree(const Exponents& e, int upto) {
  int d = 0;
  for (int i = 1; i <= upto; ++i) d += e[TowerPolynomial::v_slot(i)];
  return d;
}

// a * b, dropping every term of cohomological degree above max_degree.
ClassPoly mul_truncated(const ClassPoly& a, const RationalPoly& b, const TowerConfig& cfg,
                        std::optional<int> max_degree) {
  ClassPoly out(a.nvars(), a.zero());
  for (const auto& [ea, ca] : a.terms()) {
    for (const auto& [eb, qb] : b.terms()) {
      const Exponents e = ea + eb;
      if (!max_degree) {
        out.add_term(e, ca * qb);
        continue;
      }
      const int cap = *max_degree - v_degree(e, cfg.kappa);
      if (cap < 0) continue;
      out.add_term(e, (ca * qb).truncated(cap));
    }
  }
  return out;
}

template <class C>
LaurentPoly<C> telescoping_substitution(const LaurentPoly<C>& g) {
  const std::size_t k = g.nvars();
  std::vector<RationalPoly> images;
  for (std::size_t i = 0; i < k; ++i) {
    RationalPoly u = t_monomial(k, {{static_cast<int>(i), 1}});
    if (i > 0) u -= t_monomial(k, {{static_cast<int>(i) - 1, 1}});
    images.push_back(std::move(u));
  }
  return substitute(g, images, k);
}

void check_kappa_vars(const ClassPoly& f, const TowerConfig& cfg) {
  if (f.nvars() != static_cast<std::size_t>(cfg.kappa)) {
    throw Error("integrand must have kappa = " + std::to_string(cfg.kappa) + " variables");
  }
}

}  // namespace

TowerConfig TowerConfig::make(int kappa, int n, int r) {
  if (kappa < 1) throw ValidationError("kappa must be >= 1");
  if (2 * static_cast<std::size_t>(kappa) > Exponents::kMaxVars) {
    throw ValidationError("kappa must be <= 8");
  }
  if (n < 1) throw ValidationError("dimension n must be >= 1");
  if (r < 0) throw ValidationError("fiber dimension r must be >= 0");
  TowerConfig cfg{kappa, n, r, {}};
  for (int i = 0; i <= kappa; ++i) cfg.dims.push_back(n + i * r);
  return cfg;
}

TowerConfig TowerConfig::for_geometry(const BaseGeometry& geom, int kappa) {
  return make(kappa, geom.n, geom.fiber_dim());
}

TowerPolynomial TowerPolynomial::from_classes(const ClassPoly& f, const TowerConfig& cfg) {
  check_kappa_vars(f, cfg);
  ClassPoly p(2 * static_cast<std::size_t>(cfg.kappa), f.zero());
  for (const auto& [e, c] : f.terms()) {
    Exponents x(p.nvars());
    for (int i = 1; i <= cfg.kappa; ++i) {
      if (e[v_slot(i)] < 0) throw Error("tower integrand must be a polynomial in v");
      x[v_slot(i)] = e[v_slot(i)];
    }
    p.add_term(x, c);
  }
  return {std::move(p), cfg.kappa};
}

ClassPoly segre_gen(const BaseGeometry& geom, std::size_t var_index, std::size_t nvars) {
  if (var_index >= nvars) throw Error("segre_gen: variable index out of range");
  const CohClass s = ring_inv_unit(geom.total_chern_v0);
  ClassPoly out(nvars, CohClass(geom.ring));
  for (int j = 0; j <= geom.ring->top_degree(); ++j) {
    Exponents e(nvars);
    e[var_index] = -j;
    out.add_term(e, s.homogeneous_part(j));
  }
  return out;
}

RationalPoly base_integral(const ClassPoly& f, const BaseGeometry& geom, const TowerConfig& cfg) {
  check_kappa_vars(f, cfg);
  ClassPoly p = f;
  for (std::size_t i = 0; i < f.nvars() && !p.is_zero(); ++i) p = p * segre_gen(geom, i, f.nvars());
  RationalPoly out(f.nvars());
  for (const auto& [e, c] : p.terms()) out.add_term(e, integrate_base(c));
  return out;
}

RationalPoly phi_poly(int N) {
  if (N < 0) throw Error("phi truncation order must be >= 0");
  const RationalPoly one = RationalPoly::constant(2, Rational(1));
  const RationalPoly x = t_monomial(2, {{0, 1}});
  const RationalPoly y = t_monomial(2, {{1, 1}});
  const RationalPoly step = x * Rational(2) - y;
  RationalPoly sum = one, power = one;
  for (int k = 1; k <= N; ++k) {
    power = power * step;
    sum += power;
  }
  return (one - x) * sum;
}

RationalPoly phi_kl(int k, int l, const TowerConfig& cfg) {
  return phi_kl(k, l, cfg.kappa, cfg.phi_order());
}

RationalPoly phi_kl(int k, int l, int kappa, int order) {
  if (k < 1 || k >= l || l > kappa) throw Error("phi_kl requires 1 <= k < l <= kappa");
  const std::size_t nv = static_cast<std::size_t>(kappa);
  std::vector<RationalPoly> images{t_monomial(nv, {{k - 1, 1}, {l - 1, -1}}),
                                   k == 1 ? RationalPoly(nv) : t_monomial(nv, {{k - 2, 1}, {l - 1, -1}})};
  return substitute(phi_poly(order), images, nv);
}

RationalPoly phi_i_product(int i, const TowerConfig& cfg) {
  if (i < 0 || i > cfg.kappa) throw Error("phi_i_product requires 0 <= i <= kappa");
  const std::size_t nv = static_cast<std::size_t>(cfg.kappa);
  RationalPoly out = RationalPoly::constant(nv, Rational(1));
  for (int k = cfg.kappa - i + 1; k <= cfg.kappa; ++k) {
    for (int l = k + 1; l <= cfg.kappa; ++l) out = out * phi_kl(k, l, cfg);
  }
  return out;
}

ClassPoly twisted_segre(int k, int l, const TowerConfig& cfg, const BaseGeometry& geom,
                        std::optional<int> max_degree) {
  if (k < 0 || k >= l || l > cfg.kappa) throw Error("twisted_segre requires 0 <= k < l <= kappa");
  const std::size_t nv = 2 * static_cast<std::size_t>(cfg.kappa);
  const int tl = static_cast<int>(TowerPolynomial::t_slot(l, cfg));
  const RationalPoly phi = phi_poly(cfg.phi_order());
  ClassPoly s = segre_gen(geom, static_cast<std::size_t>(tl), nv);
  for (int j = 1; j <= k; ++j) {
    const int vj = static_cast<int>(TowerPolynomial::v_slot(j));
    std::vector<RationalPoly> images{
        t_monomial(nv, {{vj, 1}, {tl, -1}}),
        j == 1 ? RationalPoly(nv) : t_monomial(nv, {{vj - 1, 1}, {tl, -1}})};
    RationalPoly factor = substitute(phi, images, nv);
    if (max_degree) {
      factor = factor.filtered(
          [&](const Exponents& e, const Rational&) { return v_degree(e, cfg.kappa) <= *max_degree; });
    }
    s = mul_truncated(s, factor, cfg, max_degree);
  }
  return s;
}

TowerPolynomial fiber_integrate_once(const TowerPolynomial& f, const BaseGeometry& geom,
                                     const TowerConfig& cfg) {
  const int i = f.level;
  if (i < 1 || i > cfg.kappa) throw Error("fiber_integrate_once: level out of range");
  if (f.poly.nvars() != 2 * static_cast<std::size_t>(cfg.kappa)) {
    throw Error("fiber_integrate_once: tower polynomial arity mismatch");
  }
  const std::size_t vs = TowerPolynomial::v_slot(i);
  const std::size_t ts = TowerPolynomial::t_slot(i, cfg);
  const int cap_total = cfg.dims[static_cast<std::size_t>(i - 1)];
  const ClassPoly segre = twisted_segre(i - 1, i, cfg, geom, cap_total);

  std::map<int, std::vector<const ClassPoly::TermMap::value_type*>> by_power;
  for (const auto& term : segre.terms()) by_power[term.first[ts]].push_back(&term);

  ClassPoly out(f.poly.nvars(), f.poly.zero());
  for (const auto& [e, c] : f.poly.terms()) {
    Exponents x = e;
    x[ts] += x[vs];
    x[vs] = 0;
    auto it = by_power.find(cfg.r - x[ts]);
    if (it == by_power.end()) continue;
    for (const auto* term : it->second) {
      Exponents y = x + term->first;
      y[ts] = 0;
      const int cap = cap_total - v_degree(y, i - 1);
      if (cap < 0) continue;
      out.add_term(y, (c * term->second).truncated(cap));
    }
  }
  return {std::move(out), i - 1};
}

Rational integrate_stepwise(const ClassPoly& f, const BaseGeometry& geom, const TowerConfig& cfg) {
  TowerPolynomial p = TowerPolynomial::from_classes(f, cfg);
  while (p.level > 0 && !p.poly.is_zero()) p = fiber_integrate_once(p, geom, cfg);
  Rational total = 0;
  const Exponents origin(p.poly.nvars());
  for (const auto& [e, c] : p.poly.terms()) {
    if (e == origin) total += integrate_base(c);
  }
  return total;
}

namespace {

std::shared_ptr<const RationalPoly> cached_phi_product(const TowerConfig& cfg) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, std::shared_ptr<const RationalPoly>> cache;
  const auto key = std::make_tuple(cfg.kappa, cfg.n, cfg.r);
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto value = std::make_shared<const RationalPoly>(phi_i_product(cfg.kappa, cfg));
  std::lock_guard lock(mu);
  return cache.emplace(key, std::move(value)).first->second;
}

Exponents diagonal(std::size_t nvars, int value) {
  Exponents e(nvars);
  for (std::size_t i = 0; i < nvars; ++i) e[i] = value;
  return e;
}

}  // namespace

Rational integrate_phi_form(const ClassPoly& f, const BaseGeometry& geom, const TowerConfig& cfg) {
  const RationalPoly base = base_integral(f, geom, cfg);
  if (base.is_zero()) return 0;
  const auto phi = cached_phi_product(cfg);
  const Exponents target = diagonal(base.nvars(), cfg.r);
  Rational total = 0;
  for (const auto& [e, c] : base.terms()) {
    auto it = phi->terms().find(target - e);
    if (it != phi->terms().end()) total += c * it->second;
  }
  return total;
}

std::vector<RationalFunction> residue_phi_rational(const TowerConfig& cfg) {
  const std::size_t nv = static_cast<std::size_t>(cfg.kappa);
  std::vector<RationalFunction> factors;
  for (int i = 1; i < cfg.kappa; ++i) {
    for (int j = i + 1; j <= cfg.kappa; ++j) {
      RationalPoly num = t_monomial(nv, {{j - 1, 1}}) - t_monomial(nv, {{i - 1, 1}});
      RationalPoly den = t_monomial(nv, {{j - 1, 1}}) - t_monomial(nv, {{i - 1, 1}}, 2);
      if (i > 1) den += t_monomial(nv, {{i - 2, 1}});
      factors.push_back({std::move(num), std::move(den)});
    }
  }
  return factors;
}

Window default_residue_window(const TowerConfig& cfg) {
  return Window::cube(static_cast<std::size_t>(cfg.kappa), cfg.r - cfg.n_kappa(), cfg.r + cfg.n);
}

std::shared_ptr<const TruncatedSeries> residue_phi_series(const TowerConfig& cfg,
                                                          const Window& window) {
  using Key = std::pair<int, std::vector<std::pair<int, int>>>;
  static std::mutex mu;
  static std::map<Key, std::shared_ptr<const TruncatedSeries>> cache;
  Key key{cfg.kappa, {}};
  for (const auto& b : window.bounds()) key.second.emplace_back(b.lo, b.hi);
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto value =
      std::make_shared<const TruncatedSeries>(expand_rational_product(residue_phi_rational(cfg), window));
  std::lock_guard lock(mu);
  return cache.emplace(std::move(key), std::move(value)).first->second;
}

Rational integrate_residue(const ClassPoly& f, const BaseGeometry& geom, const TowerConfig& cfg) {
  const RationalPoly base = base_integral(f, geom, cfg);
  if (base.is_zero()) return 0;
  const std::size_t nv = base.nvars();
  const Exponents target = diagonal(nv, cfg.r);

  // Default window, stretched if f reaches beyond the degree range it assumes.
  std::vector<Interval> bounds = default_residue_window(cfg).bounds();
  for (std::size_t i = 0; i < nv; ++i) {
    const auto range = base.exponent_range(i);
    bounds[i].lo = std::min(bounds[i].lo, cfg.r - range->second);
    bounds[i].hi = std::max(bounds[i].hi, cfg.r - range->first);
  }
  Window window(std::move(bounds));

  constexpr int kRetries = 3;
  int margin = cfg.n_kappa() + 1;
  for (int attempt = 0;; ++attempt) {
    try {
      const auto phi = residue_phi_series(cfg, window);
      return cauchy_mul(*phi, base, Window::point(target)).coeff(target);
    } catch (const TruncationError&) {
      if (attempt == kRetries) throw;
      window = window.widened(margin);
      margin *= 2;
    }
  }
}

RationalPoly change_of_variables(const RationalPoly& g) { return telescoping_substitution(g); }
ClassPoly change_of_variables(const ClassPoly& g) { return telescoping_substitution(g); }

RationalPoly partially_extracted_integral(const RationalPoly& base, int j, const TowerConfig& cfg) {
  if (j < 0 || j > cfg.kappa) throw Error("partially_extracted_integral requires 0 <= j <= kappa");
  if (base.nvars() != static_cast<std::size_t>(cfg.kappa)) {
    throw Error("partially_extracted_integral: arity mismatch");
  }
  const std::size_t nv = base.nvars();
  RationalPoly weight = RationalPoly::constant(nv, Rational(1));
  for (int k = j + 1; k <= cfg.kappa - 1; ++k) {
    for (int i = 1; i < k; ++i) weight = weight * phi_kl(i, k, cfg);
  }
  RationalPoly out(static_cast<std::size_t>(j));
  for (const auto& [e, c] : base.terms()) {
    for (const auto& [w, q] : weight.terms()) {
      const Exponents x = e + w;
      bool hit = true;
      for (std::size_t v = static_cast<std::size_t>(j); v < nv && hit; ++v) hit = x[v] == cfg.r;
      if (!hit) continue;
      Exponents head(static_cast<std::size_t>(j));
      for (std::size_t v = 0; v < head.size(); ++v) head[v] = x[v];
      out.add_term(head, c * q);
    }
  }
  return out;
}

}  // namespace demres
