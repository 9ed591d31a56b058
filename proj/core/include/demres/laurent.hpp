#pragma once

#include <concepts>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "demres/errors.hpp"
#include "demres/exponents.hpp"
#include "demres/rational.hpp"

namespace demres {

/// Sparse Laurent polynomial with finite support over a commutative
/// coefficient ring C (Rational or CohClass). C must provide +=, -=, *,
/// *= Rational, and the free functions is_zero(), zero_like(), one_like().
template <class C>
class LaurentPoly {
 public:
  using Coeff = C;
  using TermMap = std::map<Exponents, C>;

  LaurentPoly(std::size_t nvars, C zero) : nvars_(nvars), zero_(std::move(zero)) {
    if (nvars_ > Exponents::kMaxVars) throw Error("too many variables (max 16)");
  }

  explicit LaurentPoly(std::size_t nvars)
    requires std::default_initializable<C>
      : LaurentPoly(nvars, C{}) {}

  static LaurentPoly monomial(const Exponents& e, const C& coeff) {
    LaurentPoly p(e.size(), zero_like(coeff));
    p.add_term(e, coeff);
    return p;
  }

  static LaurentPoly constant(std::size_t nvars, const C& c) {
    return monomial(Exponents(nvars), c);
  }

  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  const C& zero() const { return zero_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  C coeff(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? zero_ : it->second;
  }

  void add_term(const Exponents& e, const C& c) {
    if (e.size() != nvars_) throw Error("exponent arity mismatch");
    if (demres::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (demres::is_zero(it->second)) terms_.erase(it);
    }
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    check_arity(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }

  LaurentPoly& operator-=(const LaurentPoly& o) {
    check_arity(o);
    for (const auto& [e, c] : o.terms_) {
      C neg = c;
      neg *= Rational(-1);
      add_term(e, neg);
    }
    return *this;
  }

  LaurentPoly& operator*=(const Rational& s) {
    if (demres::is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(LaurentPoly a, const Rational& s) { return a *= s; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    a.check_arity(b);
    LaurentPoly out(a.nvars_, a.zero_);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) out.add_term(ea + eb, ca * cb);
    }
    return out;
  }
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  /// (min, max) exponent of one variable over the support; nullopt for 0.
  std::optional<std::pair<int, int>> exponent_range(std::size_t var) const {
    if (terms_.empty()) return std::nullopt;
    int lo = terms_.begin()->first[var], hi = lo;
    for (const auto& [e, c] : terms_) {
      lo = std::min(lo, e[var]);
      hi = std::max(hi, e[var]);
    }
    return std::pair{lo, hi};
  }

  template <class Pred>
  LaurentPoly filtered(Pred keep) const {
    LaurentPoly out(nvars_, zero_);
    for (const auto& [e, c] : terms_) {
      if (keep(e, c)) out.terms_.emplace(e, c);
    }
    return out;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      os << "[" << coeff_string(c) << "]";
      for (std::size_t i = 0; i < nvars_; ++i) {
        if (e[i] != 0) os << "*t" << (i + 1) << "^" << e[i];
      }
    }
    return os.str();
  }

 private:
  static std::string coeff_string(const C& c) {
    if constexpr (std::same_as<C, Rational>) {
      return demres::to_string(c);
    } else {
      return c.to_string();
    }
  }

  void check_arity(const LaurentPoly& o) const {
    if (o.nvars_ != nvars_) throw Error("variable count mismatch");
  }

  std::size_t nvars_;
  C zero_;
  TermMap terms_;
};

using RationalPoly = LaurentPoly<Rational>;

/// Reinterprets a rational polynomial over another coefficient ring.
template <class C>
LaurentPoly<C> lift(const RationalPoly& p, const C& one) {
  LaurentPoly<C> out(p.nvars(), zero_like(one));
  for (const auto& [e, q] : p.terms()) out.add_term(e, one * q);
  return out;
}

/// Replaces variable i by images[i] (polynomials in `nvars_out` variables).
/// A negative power needs a monomial image.
template <class C>
LaurentPoly<C> substitute(const LaurentPoly<C>& p, const std::vector<RationalPoly>& images,
                          std::size_t nvars_out) {
  if (images.size() != p.nvars()) throw Error("substitute: one image per variable required");
  std::vector<std::map<int, RationalPoly>> power_cache(images.size());
  auto power = [&](std::size_t var, int k) -> const RationalPoly& {
    auto& cache = power_cache[var];
    if (auto it = cache.find(k); it != cache.end()) return it->second;
    RationalPoly base = images[var];
    if (k < 0) {
      if (base.size() != 1) throw Error("substitute: negative power of a non-monomial image");
      const auto& [e, q] = *base.terms().begin();
      base = RationalPoly::monomial(-e, 1 / q);
    }
    RationalPoly result = RationalPoly::constant(nvars_out, Rational(1));
    for (int i = 0; i < std::abs(k); ++i) result = result * base;
    return cache.emplace(k, std::move(result)).first->second;
  };

  LaurentPoly<C> out(nvars_out, p.zero());
  for (const auto& [e, c] : p.terms()) {
    RationalPoly factor = RationalPoly::constant(nvars_out, Rational(1));
    for (std::size_t v = 0; v < p.nvars(); ++v) {
      if (e[v] != 0) factor = factor * power(v, e[v]);
    }
    for (const auto& [fe, q] : factor.terms()) out.add_term(fe, c * q);
  }
  return out;
}

/// Closed per-variable integer box.
struct Interval {
  int lo;
  int hi;
  friend bool operator==(const Interval&, const Interval&) = default;
};

class Window {
 public:
  Window() = default;
  explicit Window(std::vector<Interval> bounds);

  static Window cube(std::size_t nvars, int lo, int hi);
  static Window point(const Exponents& e);

  std::size_t nvars() const { return bounds_.size(); }
  const Interval& operator[](std::size_t i) const { return bounds_[i]; }
  const std::vector<Interval>& bounds() const { return bounds_; }
  bool contains(const Exponents& e) const;
  bool contains(const Window& inner) const;
  /// Number of lattice points.
  std::uint64_t cardinality() const;
  Window shifted(const Exponents& by) const;
  /// Extends each side by `margin`.
  Window widened(int margin) const;

  template <class F>
  void for_each(F&& visit) const {
    if (bounds_.empty()) {
      visit(Exponents(0));
      return;
    }
    Exponents e(bounds_.size());
    for (std::size_t i = 0; i < bounds_.size(); ++i) e[i] = bounds_[i].lo;
    while (true) {
      visit(e);
      std::size_t i = bounds_.size();
      while (i > 0) {
        --i;
        if (e[i] < bounds_[i].hi) {
          ++e[i];
          break;
        }
        e[i] = bounds_[i].lo;
        if (i == 0) return;
      }
    }
  }

  friend bool operator==(const Window&, const Window&) = default;
  std::string to_string() const;

 private:
  std::vector<Interval> bounds_;
};

struct Monomial {
  Exponents exponents;
  Rational coeff;
};

using Bound = std::optional<long long>;  // nullopt = unbounded

/// weights . x lies in [lo, hi] for every x in the support. Weights >= 0.
struct LinearRange {
  std::vector<long long> weights;
  Bound lo;
  Bound hi;
};

/// What is known about the full (infinite) support of a series outside the
/// window where its coefficients are materialized.
struct SupportBound {
  std::vector<Bound> lo;
  std::vector<Bound> hi;
  std::vector<LinearRange> ranges;
  bool empty = false;  // the series is identically zero

  static SupportBound unbounded(std::size_t nvars);
  /// Exact box and degree range of a finite support, plus the exact range of
  /// each weight vector in `extra_weights`.
  static SupportBound of_terms(const std::map<Exponents, Rational>& terms, std::size_t nvars,
                               const std::vector<std::vector<long long>>& extra_weights = {});

  std::size_t nvars() const { return lo.size(); }
  bool admits(const Exponents& e) const;
};

/// Support bound of leading^{-1} * sum_k (-tail)^k.
SupportBound geometric_support(const Monomial& leading, const RationalPoly& tail, long long lex_base);

/// Bound on the support of a Cauchy product.
SupportBound minkowski_sum(const SupportBound& a, const SupportBound& b);

/// Box with possibly infinite sides; `empty` when no point is feasible.
struct ExtBox {
  std::vector<Bound> lo;
  std::vector<Bound> hi;
  bool empty = false;

  bool finite() const;
  /// Throws TruncationError when a side is unbounded.
  Window to_window() const;
};

/// Over-approximates the exponents of the first factor that can pair with
/// some exponent of the second factor to land in `out`.
ExtBox contributing_region(const SupportBound& self, const SupportBound& partner,
                           const Window& out);

/// Windowed view of an iterated Laurent series: exact coefficients on
/// window(), plus a certified bound on the support beyond it.
class TruncatedSeries {
 public:
  using TermMap = std::map<Exponents, Rational>;

  TruncatedSeries(Window window, SupportBound support);
  TruncatedSeries(Window window, TermMap terms, SupportBound support);

  /// Restriction of a polynomial; the support bound is exact.
  static TruncatedSeries restrict(const RationalPoly& p, const Window& window);

  std::size_t nvars() const { return window_.nvars(); }
  const Window& window() const { return window_; }
  const TermMap& terms() const { return terms_; }
  const SupportBound& support() const { return support_; }
  bool is_zero() const { return terms_.empty(); }

  /// Throws Error("coefficient not determined") outside the window.
  Rational coeff(const Exponents& e) const;

  /// Same window and coefficients.
  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.window_ == b.window_ && a.terms_ == b.terms_;
  }

  std::string to_string() const;

 private:
  Window window_;
  TermMap terms_;
  SupportBound support_;
};

Rational coeff(const TruncatedSeries& s, const Exponents& e);
Rational coeff(const RationalPoly& p, const Exponents& e);

TruncatedSeries cauchy_mul(const TruncatedSeries& a, const TruncatedSeries& b, const Window& out);
TruncatedSeries cauchy_mul(const TruncatedSeries& a, const RationalPoly& b, const Window& out);
TruncatedSeries cauchy_mul(const RationalPoly& a, const TruncatedSeries& b, const Window& out);
TruncatedSeries cauchy_mul(const RationalPoly& a, const RationalPoly& b, const Window& out);

/// The dominant monomial under t_1 << ... << t_k << 1 (lexicographically
/// least exponent vector).
Monomial leading_monomial(const RationalPoly& p);

struct RationalFunction {
  RationalPoly numerator;
  RationalPoly denominator;
};

/// Weights base^{k-1}, ..., base, 1 used as a valuation on exponent vectors.
std::vector<long long> lex_weights(std::size_t nvars, long long base);

/// Smallest base (at least 16) whose lex weights are positive on every
/// monomial of `tail`. Throws "not expandable at origin" if some monomial
/// of tail is not lexicographically positive.
long long lex_base_for(const RationalPoly& tail);

/// Formal inverse of leading*(1 + tail) restricted to `window`.
TruncatedSeries expand_geometric(const Monomial& leading, const RationalPoly& tail,
                                 const Window& window,
                                 std::optional<long long> lex_base = std::nullopt);

/// Support bound of the iterated expansion of f, for the given lex base.
SupportBound expansion_support(const RationalFunction& f, long long lex_base);

TruncatedSeries expand_rational(const RationalFunction& f, const Window& window,
                                std::optional<long long> lex_base = std::nullopt);

/// Expansion of a product of rational functions at the origin under
/// t_1 << ... << t_k << 1, exact on `window`.
TruncatedSeries expand_rational_product(const std::vector<RationalFunction>& factors,
                                        const Window& window);

}  // namespace demres
