#include "demres/laurent.hpp"

#include <algorithm>
#include <limits>

namespace demres {

namespace {

__extension__ using Wide = __int128;
using WideBound = std::optional<Wide>;

Wide floor_div(Wide a, Wide b) {
  Wide q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Wide ceil_div(Wide a, Wide b) { return -floor_div(-a, b); }

Wide dot(const std::vector<long long>& w, const Exponents& e) {
  Wide s = 0;
  for (std::size_t i = 0; i < w.size(); ++i) s += static_cast<Wide>(w[i]) * e[i];
  return s;
}

Bound narrow(Wide v) {
  constexpr Wide lim = std::numeric_limits<long long>::max();
  if (v > lim || v < -lim) return std::nullopt;
  return static_cast<long long>(v);
}

Bound add_bounds(const Bound& a, const Bound& b) {
  if (!a || !b) return std::nullopt;
  return narrow(static_cast<Wide>(*a) + *b);
}

std::string bound_string(const Bound& b, bool upper) {
  if (!b) return upper ? "+inf" : "-inf";
  return std::to_string(*b);
}

std::string box_string(const ExtBox& box) {
  std::string s = "[";
  for (std::size_t i = 0; i < box.lo.size(); ++i) {
    if (i) s += " x ";
    s += bound_string(box.lo[i], false) + ".." + bound_string(box.hi[i], true);
  }
  return s + "]";
}


}  // namespace

// ---------------------------------------------------------------- Window

Window::Window(std::vector<Interval> bounds) : bounds_(std::move(bounds)) {
  if (bounds_.size() > Exponents::kMaxVars) throw Error("too many variables (max 16)");
  for (const auto& b : bounds_) {
    if (b.lo > b.hi) throw Error("invalid window: lo > hi");
  }
}

Window Window::cube(std::size_t nvars, int lo, int hi) {
  return Window(std::vector<Interval>(nvars, Interval{lo, hi}));
}

Window Window::point(const Exponents& e) {
  std::vector<Interval> b;
  for (int x : e) b.push_back({x, x});
  return Window(std::move(b));
}

bool Window::contains(const Exponents& e) const {
  if (e.size() != bounds_.size()) return false;
  for (std::size_t i = 0; i < bounds_.size(); ++i) {
    if (e[i] < bounds_[i].lo || e[i] > bounds_[i].hi) return false;
  }
  return true;
}

bool Window::contains(const Window& inner) const {
  if (inner.nvars() != nvars()) return false;
  for (std::size_t i = 0; i < bounds_.size(); ++i) {
    if (inner[i].lo < bounds_[i].lo || inner[i].hi > bounds_[i].hi) return false;
  }
  return true;
}

std::uint64_t Window::cardinality() const {
  constexpr std::uint64_t cap = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t n = 1;
  for (const auto& b : bounds_) {
    const auto len = static_cast<std::uint64_t>(static_cast<long long>(b.hi) - b.lo + 1);
    if (n > cap / len) return cap;
    n *= len;
  }
  return n;
}

Window Window::shifted(const Exponents& by) const {
  if (by.size() != nvars()) throw Error("window shift arity mismatch");
  auto b = bounds_;
  for (std::size_t i = 0; i < b.size(); ++i) {
    b[i].lo += by[i];
    b[i].hi += by[i];
  }
  return Window(std::move(b));
}

Window Window::widened(int margin) const {
  auto b = bounds_;
  for (auto& iv : b) {
    iv.lo -= margin;
    iv.hi += margin;
  }
  return Window(std::move(b));
}

std::string Window::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < bounds_.size(); ++i) {
    if (i) s += " x ";
    s += std::to_string(bounds_[i].lo) + ".." + std::to_string(bounds_[i].hi);
  }
  return s + "]";
}

// ---------------------------------------------------------- SupportBound

SupportBound SupportBound::unbounded(std::size_t nvars) {
  SupportBound s;
  s.lo.assign(nvars, std::nullopt);
  s.hi.assign(nvars, std::nullopt);
  return s;
}

SupportBound SupportBound::of_terms(const std::map<Exponents, Rational>& terms, std::size_t nvars,
                                    const std::vector<std::vector<long long>>& extra_weights) {
  SupportBound s = unbounded(nvars);
  if (terms.empty()) {
    s.empty = true;
    return s;
  }
  std::vector<std::vector<long long>> weights{std::vector<long long>(nvars, 1)};
  for (const auto& w : extra_weights) {
    if (w.size() != nvars) throw Error("support weights arity mismatch");
    if (std::find(weights.begin(), weights.end(), w) == weights.end()) weights.push_back(w);
  }
  std::vector<Wide> wlo(weights.size()), whi(weights.size());
  bool first = true;
  for (const auto& [e, c] : terms) {
    for (std::size_t i = 0; i < nvars; ++i) {
      s.lo[i] = first ? e[i] : std::min<long long>(*s.lo[i], e[i]);
      s.hi[i] = first ? e[i] : std::max<long long>(*s.hi[i], e[i]);
    }
    for (std::size_t k = 0; k < weights.size(); ++k) {
      const Wide v = dot(weights[k], e);
      wlo[k] = first ? v : std::min(wlo[k], v);
      whi[k] = first ? v : std::max(whi[k], v);
    }
    first = false;
  }
  for (std::size_t k = 0; k < weights.size(); ++k) {
    s.ranges.push_back({weights[k], narrow(wlo[k]), narrow(whi[k])});
  }
  return s;
}

bool SupportBound::admits(const Exponents& e) const {
  if (empty || e.size() != nvars()) return false;
  for (std::size_t i = 0; i < nvars(); ++i) {
    if (lo[i] && e[i] < *lo[i]) return false;
    if (hi[i] && e[i] > *hi[i]) return false;
  }
  for (const auto& r : ranges) {
    const Wide v = dot(r.weights, e);
    if (r.lo && v < *r.lo) return false;
    if (r.hi && v > *r.hi) return false;
  }
  return true;
}

SupportBound minkowski_sum(const SupportBound& a, const SupportBound& b) {
  if (a.nvars() != b.nvars()) throw Error("support arity mismatch");
  SupportBound s = SupportBound::unbounded(a.nvars());
  if (a.empty || b.empty) {
    s.empty = true;
    return s;
  }
  for (std::size_t i = 0; i < a.nvars(); ++i) {
    s.lo[i] = add_bounds(a.lo[i], b.lo[i]);
    s.hi[i] = add_bounds(a.hi[i], b.hi[i]);
  }
  for (const auto& ra : a.ranges) {
    for (const auto& rb : b.ranges) {
      if (ra.weights != rb.weights) continue;
      LinearRange r{ra.weights, add_bounds(ra.lo, rb.lo), add_bounds(ra.hi, rb.hi)};
      if (r.lo || r.hi) s.ranges.push_back(std::move(r));
      break;
    }
  }
  return s;
}

SupportBound geometric_support(const Monomial& leading, const RationalPoly& tail,
                               long long lex_base) {
  const std::size_t n = leading.exponents.size();
  const Exponents neg_m = -leading.exponents;
  const auto w = lex_weights(n, lex_base);
  SupportBound s = SupportBound::unbounded(n);
  const Wide vm = dot(w, neg_m);
  if (tail.is_zero()) {
    for (std::size_t i = 0; i < n; ++i) s.lo[i] = s.hi[i] = neg_m[i];
    s.ranges.push_back({std::vector<long long>(n, 1), neg_m.total(), neg_m.total()});
    s.ranges.push_back({w, narrow(vm), narrow(vm)});
    return s;
  }
  for (std::size_t i = 0; i < n; ++i) {
    bool all_nonneg = true, all_nonpos = true;
    for (const auto& [tau, c] : tail.terms()) {
      all_nonneg = all_nonneg && tau[i] >= 0;
      all_nonpos = all_nonpos && tau[i] <= 0;
    }
    if (all_nonneg) s.lo[i] = neg_m[i];
    if (all_nonpos) s.hi[i] = neg_m[i];
  }
  bool deg_nonneg = true, deg_nonpos = true;
  for (const auto& [tau, c] : tail.terms()) {
    deg_nonneg = deg_nonneg && tau.total() >= 0;
    deg_nonpos = deg_nonpos && tau.total() <= 0;
  }
  LinearRange deg{std::vector<long long>(n, 1), std::nullopt, std::nullopt};
  if (deg_nonneg) deg.lo = neg_m.total();
  if (deg_nonpos) deg.hi = neg_m.total();
  if (deg.lo || deg.hi) s.ranges.push_back(std::move(deg));
  s.ranges.push_back({w, narrow(vm), std::nullopt});
  return s;
}

// ---------------------------------------------------------------- ExtBox

bool ExtBox::finite() const {
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (!lo[i] || !hi[i]) return false;
  }
  return true;
}

Window ExtBox::to_window() const {
  if (empty) throw Error("empty region has no window");
  if (!finite()) throw TruncationError("unbounded contributing region " + box_string(*this));
  std::vector<Interval> b;
  for (std::size_t i = 0; i < lo.size(); ++i) {
    constexpr long long lim = std::numeric_limits<int>::max() / 4;
    if (*lo[i] < -lim || *hi[i] > lim) {
      throw TruncationError("contributing region too large " + box_string(*this));
    }
    b.push_back({static_cast<int>(*lo[i]), static_cast<int>(*hi[i])});
  }
  return Window(std::move(b));
}

ExtBox contributing_region(const SupportBound& self, const SupportBound& partner,
                           const Window& out) {
  const std::size_t n = out.nvars();
  if (self.nvars() != n || partner.nvars() != n) throw Error("region arity mismatch");
  ExtBox box;
  box.lo.assign(n, std::nullopt);
  box.hi.assign(n, std::nullopt);
  if (self.empty || partner.empty) {
    box.empty = true;
    return box;
  }

  std::vector<WideBound> lo(n), hi(n);
  auto tighten_lo = [&](std::size_t i, Wide v) {
    if (!lo[i] || v > *lo[i]) {
      lo[i] = v;
      return true;
    }
    return false;
  };
  auto tighten_hi = [&](std::size_t i, Wide v) {
    if (!hi[i] || v < *hi[i]) {
      hi[i] = v;
      return true;
    }
    return false;
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (self.lo[i]) tighten_lo(i, *self.lo[i]);
    if (self.hi[i]) tighten_hi(i, *self.hi[i]);
    // partner exponent = e - a with e in the output window
    if (partner.hi[i]) tighten_lo(i, static_cast<Wide>(out[i].lo) - *partner.hi[i]);
    if (partner.lo[i]) tighten_hi(i, static_cast<Wide>(out[i].hi) - *partner.lo[i]);
  }

  struct Constraint {
    std::vector<long long> w;
    WideBound lo, hi;
  };
  std::vector<Constraint> cons;
  for (const auto& r : self.ranges) {
    cons.push_back({r.weights, r.lo ? WideBound(*r.lo) : std::nullopt,
                    r.hi ? WideBound(*r.hi) : std::nullopt});
  }
  for (const auto& r : partner.ranges) {
    Wide emin = 0, emax = 0;
    for (std::size_t i = 0; i < n; ++i) {
      emin += static_cast<Wide>(r.weights[i]) * out[i].lo;
      emax += static_cast<Wide>(r.weights[i]) * out[i].hi;
    }
    cons.push_back({r.weights, r.hi ? WideBound(emin - *r.hi) : std::nullopt,
                    r.lo ? WideBound(emax - *r.lo) : std::nullopt});
  }

  auto infeasible = [&] {
    for (std::size_t i = 0; i < n; ++i) {
      if (lo[i] && hi[i] && *lo[i] > *hi[i]) return true;
    }
    return false;
  };

  for (int round = 0; round < 256; ++round) {
    bool changed = false;
    for (const auto& c : cons) {
      for (std::size_t i = 0; i < n; ++i) {
        if (c.w[i] == 0) continue;
        WideBound rest_min = Wide(0), rest_max = Wide(0);
        for (std::size_t j = 0; j < n; ++j) {
          if (j == i || c.w[j] == 0) continue;
          if (rest_min) rest_min = lo[j] ? WideBound(*rest_min + c.w[j] * *lo[j]) : std::nullopt;
          if (rest_max) rest_max = hi[j] ? WideBound(*rest_max + c.w[j] * *hi[j]) : std::nullopt;
        }
        if (c.hi && rest_min) changed |= tighten_hi(i, floor_div(*c.hi - *rest_min, c.w[i]));
        if (c.lo && rest_max) changed |= tighten_lo(i, ceil_div(*c.lo - *rest_max, c.w[i]));
      }
      if (infeasible()) {
        box.empty = true;
        return box;
      }
    }
    if (!changed) break;
  }
  if (infeasible()) {
    box.empty = true;
    return box;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (lo[i]) box.lo[i] = narrow(*lo[i]);
    if (hi[i]) box.hi[i] = narrow(*hi[i]);
  }
  return box;
}

// ------------------------------------------------------- TruncatedSeries

TruncatedSeries::TruncatedSeries(Window window, SupportBound support)
    : window_(std::move(window)), support_(std::move(support)) {
  if (support_.nvars() != window_.nvars()) throw Error("series support arity mismatch");
}

TruncatedSeries::TruncatedSeries(Window window, TermMap terms, SupportBound support)
    : TruncatedSeries(std::move(window), std::move(support)) {
  for (auto& [e, c] : terms) {
    if (demres::is_zero(c)) continue;
    if (!window_.contains(e)) throw Error("series term " + e.to_string() + " outside window");
    terms_.emplace(e, std::move(c));
  }
}

TruncatedSeries TruncatedSeries::restrict(const RationalPoly& p, const Window& window) {
  if (p.nvars() != window.nvars()) throw Error("restrict: arity mismatch");
  TermMap kept;
  for (const auto& [e, c] : p.terms()) {
    if (window.contains(e)) kept.emplace(e, c);
  }
  return TruncatedSeries(window, std::move(kept), SupportBound::of_terms(p.terms(), p.nvars()));
}

Rational TruncatedSeries::coeff(const Exponents& e) const {
  if (!window_.contains(e)) {
    throw Error("coefficient not determined at " + e.to_string() + " (window " +
                window_.to_string() + ")");
  }
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::string TruncatedSeries::to_string() const {
  std::string s = "window " + window_.to_string() + ": ";
  if (terms_.empty()) return s + "0";
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) s += " + ";
    first = false;
    s += "[" + demres::to_string(c) + "]" + e.to_string();
  }
  return s;
}

Rational coeff(const TruncatedSeries& s, const Exponents& e) { return s.coeff(e); }
Rational coeff(const RationalPoly& p, const Exponents& e) { return p.coeff(e); }

// ------------------------------------------------------------ cauchy_mul

namespace {

struct Operand {
  const std::map<Exponents, Rational>* terms;
  const Window* window;  // nullptr: exact polynomial
  SupportBound support;
};

std::vector<std::vector<long long>> weights_of(const SupportBound& s) {
  std::vector<std::vector<long long>> out;
  for (const auto& r : s.ranges) out.push_back(r.weights);
  return out;
}

Operand view(const TruncatedSeries& s) { return {&s.terms(), &s.window(), s.support()}; }

Operand view(const RationalPoly& p, const SupportBound& partner) {
  return {&p.terms(), nullptr, SupportBound::of_terms(p.terms(), p.nvars(), weights_of(partner))};
}

bool box_in_window(const ExtBox& box, const Window& w) {
  if (!box.finite()) return false;
  for (std::size_t i = 0; i < w.nvars(); ++i) {
    if (*box.lo[i] < w[i].lo || *box.hi[i] > w[i].hi) return false;
  }
  return true;
}

bool box_contains(const ExtBox& box, const Exponents& e) {
  for (std::size_t i = 0; i < box.lo.size(); ++i) {
    if (box.lo[i] && e[i] < *box.lo[i]) return false;
    if (box.hi[i] && e[i] > *box.hi[i]) return false;
  }
  return true;
}

TruncatedSeries multiply(const Operand& a, const Operand& b, const Window& out) {
  const std::size_t n = out.nvars();
  if (a.support.nvars() != n || b.support.nvars() != n) throw Error("cauchy_mul: arity mismatch");
  const ExtBox ra = contributing_region(a.support, b.support, out);
  const ExtBox rb = contributing_region(b.support, a.support, out);
  SupportBound support = minkowski_sum(a.support, b.support);
  if (ra.empty || rb.empty) return TruncatedSeries(out, std::move(support));

  if (a.window && !box_in_window(ra, *a.window)) {
    throw TruncationError("left factor needs " + box_string(ra) + ", known on " +
                          a.window->to_string());
  }
  if (b.window && !box_in_window(rb, *b.window)) {
    throw TruncationError("right factor needs " + box_string(rb) + ", known on " +
                          b.window->to_string());
  }

  using Term = std::pair<const Exponents, Rational>;
  std::vector<const Term*> ta, tb;
  for (const auto& t : *a.terms) {
    if (box_contains(ra, t.first)) ta.push_back(&t);
  }
  for (const auto& t : *b.terms) {
    if (box_contains(rb, t.first)) tb.push_back(&t);
  }

  std::map<Exponents, Rational> acc;
  const long double pair_cost = static_cast<long double>(ta.size()) * tb.size();
  const std::size_t small = std::min(ta.size(), tb.size());
  const long double scan_cost = static_cast<long double>(out.cardinality()) * small * 4;
  if (scan_cost < pair_cost) {
    const bool a_small = ta.size() <= tb.size();
    const auto& probe = a_small ? ta : tb;
    const auto& other = a_small ? *b.terms : *a.terms;
    out.for_each([&](const Exponents& e) {
      Rational sum = 0;
      for (const Term* t : probe) {
        auto it = other.find(e - t->first);
        if (it != other.end()) sum += t->second * it->second;
      }
      if (!demres::is_zero(sum)) acc.emplace(e, std::move(sum));
    });
  } else {
    for (const Term* x : ta) {
      for (const Term* y : tb) {
        Exponents e = x->first + y->first;
        if (!out.contains(e)) continue;
        auto [it, inserted] = acc.try_emplace(e, x->second * y->second);
        if (!inserted) it->second += x->second * y->second;
      }
    }
    std::erase_if(acc, [](const auto& kv) { return demres::is_zero(kv.second); });
  }
  return TruncatedSeries(out, std::move(acc), std::move(support));
}

}  // namespace

TruncatedSeries cauchy_mul(const TruncatedSeries& a, const TruncatedSeries& b, const Window& out) {
  return multiply(view(a), view(b), out);
}

TruncatedSeries cauchy_mul(const TruncatedSeries& a, const RationalPoly& b, const Window& out) {
  return multiply(view(a), view(b, a.support()), out);
}

TruncatedSeries cauchy_mul(const RationalPoly& a, const TruncatedSeries& b, const Window& out) {
  return multiply(view(a, b.support()), view(b), out);
}

TruncatedSeries cauchy_mul(const RationalPoly& a, const RationalPoly& b, const Window& out) {
  const auto sb = SupportBound::of_terms(b.terms(), b.nvars());
  return multiply(view(a, sb), view(b, SupportBound::of_terms(a.terms(), a.nvars())), out);
}

// -------------------------------------------------------------- expansion

Monomial leading_monomial(const RationalPoly& p) {
  if (p.is_zero()) throw Error("leading monomial of zero");
  const auto& [e, c] = *p.terms().begin();
  return {e, c};
}

std::vector<long long> lex_weights(std::size_t nvars, long long base) {
  if (base < 2) throw Error("lex base must be >= 2");
  std::vector<long long> w(nvars, 1);
  for (std::size_t i = nvars; i-- > 1;) {
    if (w[i] > std::numeric_limits<long long>::max() / 4 / base) {
      throw Error("lex weights overflow");
    }
    w[i - 1] = w[i] * base;
  }
  return w;
}

long long lex_base_for(const RationalPoly& tail) {
  long long a = 0;
  for (const auto& [tau, c] : tail.terms()) {
    if (!tau.lex_positive()) {
      throw Error("not expandable at origin: tail monomial " + tau.to_string() +
                  " is not dominated by the leading term");
    }
    for (int x : tau) a = std::max<long long>(a, std::abs(x));
  }
  return std::max<long long>(16, a + 2);
}

namespace {

void check_lex_base(const RationalPoly& tail, long long base) {
  const auto w = lex_weights(tail.nvars(), base);
  for (const auto& [tau, c] : tail.terms()) {
    if (!tau.lex_positive() || dot(w, tau) <= 0) {
      throw Error("not expandable at origin: tail monomial " + tau.to_string() +
                  " has nonpositive valuation");
    }
  }
}

struct Split {
  Monomial leading;
  RationalPoly tail;
};

// den = leading * (1 + tail)
Split split_denominator(const RationalPoly& den) {
  Monomial m = leading_monomial(den);
  RationalPoly tail(den.nvars());
  for (const auto& [e, q] : den.terms()) {
    if (e == m.exponents) continue;
    tail.add_term(e - m.exponents, q / m.coeff);
  }
  return {std::move(m), std::move(tail)};
}

}  // namespace

TruncatedSeries expand_geometric(const Monomial& leading, const RationalPoly& tail,
                                 const Window& window, std::optional<long long> lex_base) {
  const std::size_t n = window.nvars();
  if (leading.exponents.size() != n || tail.nvars() != n) {
    throw Error("expand_geometric: arity mismatch");
  }
  if (demres::is_zero(leading.coeff)) throw Error("expand_geometric: zero leading coefficient");
  const long long base = lex_base ? *lex_base : lex_base_for(tail);
  check_lex_base(tail, base);

  const auto w = lex_weights(n, base);
  const Window target = window.shifted(leading.exponents);
  Wide wmax = 0;
  for (std::size_t i = 0; i < n; ++i) wmax += static_cast<Wide>(w[i]) * target[i].hi;

  std::vector<bool> nondecreasing(n, true), nonincreasing(n, true);
  for (const auto& [tau, c] : tail.terms()) {
    for (std::size_t i = 0; i < n; ++i) {
      if (tau[i] < 0) nondecreasing[i] = false;
      if (tau[i] > 0) nonincreasing[i] = false;
    }
  }
  auto hopeless = [&](const Exponents& y) {
    if (dot(w, y) > wmax) return true;
    for (std::size_t i = 0; i < n; ++i) {
      if (nondecreasing[i] && y[i] > target[i].hi) return true;
      if (nonincreasing[i] && y[i] < target[i].lo) return true;
    }
    return false;
  };

  const Rational inv_c = 1 / leading.coeff;
  std::map<Exponents, Rational> result;
  std::map<Exponents, Rational> layer{{Exponents(n), Rational(1)}};
  while (!layer.empty()) {
    for (const auto& [x, a] : layer) {
      if (target.contains(x)) result[x - leading.exponents] += a * inv_c;
    }
    std::map<Exponents, Rational> next;
    for (const auto& [x, a] : layer) {
      for (const auto& [tau, b] : tail.terms()) {
        Exponents y = x + tau;
        if (hopeless(y)) continue;
        auto [it, inserted] = next.try_emplace(y, -a * b);
        if (!inserted) it->second -= a * b;
      }
    }
    std::erase_if(next, [](const auto& kv) { return demres::is_zero(kv.second); });
    layer = std::move(next);
  }
  return TruncatedSeries(window, std::move(result), geometric_support(leading, tail, base));
}

SupportBound expansion_support(const RationalFunction& f, long long lex_base) {
  const std::size_t n = f.denominator.nvars();
  if (f.numerator.nvars() != n) throw Error("rational function arity mismatch");
  auto [m, tail] = split_denominator(f.denominator);
  const SupportBound inv = geometric_support(m, tail, lex_base);
  const SupportBound num = SupportBound::of_terms(f.numerator.terms(), n, weights_of(inv));
  return minkowski_sum(num, inv);
}

TruncatedSeries expand_rational(const RationalFunction& f, const Window& window,
                                std::optional<long long> lex_base) {
  const std::size_t n = window.nvars();
  if (f.numerator.nvars() != n || f.denominator.nvars() != n) {
    throw Error("expand_rational: arity mismatch");
  }
  auto [m, tail] = split_denominator(f.denominator);
  const long long base = lex_base ? *lex_base : lex_base_for(tail);
  const SupportBound inv_support = geometric_support(m, tail, base);
  const SupportBound num_support =
      SupportBound::of_terms(f.numerator.terms(), n, weights_of(inv_support));
  const ExtBox region = contributing_region(inv_support, num_support, window);
  if (region.empty) return TruncatedSeries(window, minkowski_sum(num_support, inv_support));
  const TruncatedSeries inv = expand_geometric(m, tail, region.to_window(), base);
  return cauchy_mul(f.numerator, inv, window);
}

TruncatedSeries expand_rational_product(const std::vector<RationalFunction>& factors,
                                        const Window& window) {
  const std::size_t n = window.nvars();
  if (factors.empty()) {
    return TruncatedSeries::restrict(RationalPoly::constant(n, Rational(1)), window);
  }
  long long base = 16;
  for (const auto& f : factors) {
    if (f.numerator.nvars() != n || f.denominator.nvars() != n) {
      throw Error("expand_rational_product: arity mismatch");
    }
    base = std::max(base, lex_base_for(split_denominator(f.denominator).tail));
  }

  const std::size_t k = factors.size();
  std::vector<SupportBound> single, prefix;
  for (std::size_t i = 0; i < k; ++i) {
    single.push_back(expansion_support(factors[i], base));
    prefix.push_back(i == 0 ? single[0] : minkowski_sum(prefix[i - 1], single[i]));
  }

  // Windows needed for the partial products and for each factor, back to front.
  std::vector<Window> partial(k), factor(k);
  partial[k - 1] = window;
  for (std::size_t i = k - 1; i >= 1; --i) {
    const ExtBox rp = contributing_region(prefix[i - 1], single[i], partial[i]);
    const ExtBox rf = contributing_region(single[i], prefix[i - 1], partial[i]);
    if (rp.empty || rf.empty) return TruncatedSeries(window, prefix[k - 1]);
    partial[i - 1] = rp.to_window();
    factor[i] = rf.to_window();
  }
  factor[0] = partial[0];

  TruncatedSeries acc = expand_rational(factors[0], factor[0], base);
  for (std::size_t i = 1; i < k; ++i) {
    acc = cauchy_mul(acc, expand_rational(factors[i], factor[i], base), partial[i]);
  }
  return acc;
}

}  // namespace demres
