#include "demres/graded_ring.hpp"

#include <functional>
#include <sstream>

#include "demres/errors.hpp"

namespace demres {

namespace {

void enumerate_top_monomials(const std::vector<Generator>& gens, int top,
                             const std::function<void(const Exponents&)>& visit) {
  Exponents current(gens.size());
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int remaining) {
    if (i == gens.size()) {
      if (remaining == 0) visit(current);
      return;
    }
    for (int e = 0; e < gens[i].nilpotency && e * gens[i].degree <= remaining; ++e) {
      current[i] = e;
      rec(i + 1, remaining - e * gens[i].degree);
    }
    current[i] = 0;
  };
  rec(0, top);
}

}  // namespace

RingSpec::RingSpec(std::vector<Generator> generators, int top_degree,
                   std::map<Exponents, Rational> integral_values)
    : generators_(std::move(generators)),
      top_degree_(top_degree),
      integral_values_(std::move(integral_values)) {
  if (top_degree_ < 0) throw Error("ring top_degree must be >= 0");
  for (const auto& g : generators_) {
    if (g.degree < 1) throw Error("generator '" + g.name + "' must have degree >= 1");
    if (g.nilpotency < 1) throw Error("generator '" + g.name + "' must have nilpotency >= 1");
  }
  for (const auto& [m, value] : integral_values_) {
    if (m.size() != generators_.size()) throw Error("integral table: wrong monomial arity");
    if (!survives(m) || degree(m) != top_degree_) {
      throw Error("integral table: " + m.to_string() + " is not a top-degree monomial");
    }
  }
  enumerate_top_monomials(generators_, top_degree_, [&](const Exponents& m) {
    if (!integral_values_.contains(m)) {
      throw Error("integral table: missing value for " + m.to_string());
    }
  });
  std::erase_if(integral_values_, [](const auto& kv) { return is_zero(kv.second); });
}

std::shared_ptr<const RingSpec> RingSpec::truncated_polynomial(std::string name, int top_degree,
                                                               const Rational& fundamental) {
  std::map<Exponents, Rational> table{{Exponents{top_degree}, fundamental}};
  return std::make_shared<const RingSpec>(
      std::vector<Generator>{{std::move(name), 1, top_degree + 1}}, top_degree, std::move(table));
}

int RingSpec::degree(const Exponents& m) const {
  int d = 0;
  for (std::size_t i = 0; i < generators_.size(); ++i) d += m[i] * generators_[i].degree;
  return d;
}

bool RingSpec::survives(const Exponents& m) const {
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (m[i] < 0 || m[i] >= generators_[i].nilpotency) return false;
  }
  return degree(m) <= top_degree_;
}

Rational RingSpec::integral_of(const Exponents& m) const {
  auto it = integral_values_.find(m);
  return it == integral_values_.end() ? Rational(0) : it->second;
}

bool same_ring(const RingPtr& a, const RingPtr& b) {
  return a == b || (a && b && *a == *b);
}

CohClass::CohClass(RingPtr ring) : ring_(std::move(ring)) {
  if (!ring_) throw Error("CohClass requires a ring");
}

CohClass::CohClass(RingPtr ring, const Rational& scalar) : CohClass(std::move(ring)) {
  add_term(Exponents(ring_->num_generators()), scalar);
}

CohClass CohClass::monomial(RingPtr ring, const Exponents& exponents, const Rational& coeff) {
  CohClass c(std::move(ring));
  if (exponents.size() != c.ring_->num_generators()) throw Error("monomial arity mismatch");
  c.add_term(exponents, coeff);
  return c;
}

CohClass CohClass::generator(RingPtr ring, std::size_t index, const Rational& coeff) {
  Exponents e(ring->num_generators());
  if (index >= e.size()) throw Error("generator index out of range");
  e[index] = 1;
  return monomial(std::move(ring), e, coeff);
}

void CohClass::add_term(const Exponents& m, const Rational& c) {
  if (demres::is_zero(c) || !ring_->survives(m)) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (demres::is_zero(it->second)) terms_.erase(it);
  }
}

Rational CohClass::constant_term() const {
  return coefficient(Exponents(ring_->num_generators()));
}

Rational CohClass::coefficient(const Exponents& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

CohClass CohClass::homogeneous_part(int degree) const {
  CohClass out(ring_);
  for (const auto& [m, c] : terms_) {
    if (ring_->degree(m) == degree) out.terms_.emplace(m, c);
  }
  return out;
}

CohClass CohClass::truncated(int max_degree) const {
  CohClass out(ring_);
  for (const auto& [m, c] : terms_) {
    if (ring_->degree(m) <= max_degree) out.terms_.emplace(m, c);
  }
  return out;
}

int CohClass::max_degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, ring_->degree(m));
  return d;
}

CohClass& CohClass::operator+=(const CohClass& o) {
  if (!same_ring(ring_, o.ring_)) throw Error("ring mismatch");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

CohClass& CohClass::operator-=(const CohClass& o) {
  if (!same_ring(ring_, o.ring_)) throw Error("ring mismatch");
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

CohClass& CohClass::operator*=(const Rational& s) {
  if (demres::is_zero(s)) {
    terms_.clear();
  } else {
    for (auto& [m, c] : terms_) c *= s;
  }
  return *this;
}

CohClass& CohClass::operator*=(const CohClass& o) { return *this = ring_mul(*this, o); }

CohClass operator*(const CohClass& a, const CohClass& b) { return ring_mul(a, b); }

bool operator==(const CohClass& a, const CohClass& b) {
  return same_ring(a.ring_, b.ring_) && a.terms_ == b.terms_;
}

std::string CohClass::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << demres::to_string(c);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      os << "*" << ring_->generators()[i].name;
      if (m[i] != 1) os << "^" << m[i];
    }
  }
  return os.str();
}

CohClass ring_mul(const CohClass& a, const CohClass& b) {
  if (!same_ring(a.ring(), b.ring())) throw Error("ring mismatch");
  CohClass out(a.ring());
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma + mb, ca * cb);
  }
  return out;
}

CohClass ring_inv_unit(const CohClass& c) {
  if (c.constant_term() != 1) throw Error("not invertible");
  const int top = c.ring()->top_degree();
  std::vector<CohClass> parts;
  for (int d = 0; d <= top; ++d) parts.push_back(c.homogeneous_part(d));
  // s_0 = 1, s_d = -sum_{j=1..d} c_j s_{d-j}
  std::vector<CohClass> s{CohClass(c.ring(), Rational(1))};
  for (int d = 1; d <= top; ++d) {
    CohClass acc(c.ring());
    for (int j = 1; j <= d; ++j) acc -= ring_mul(parts[j], s[d - j]);
    s.push_back(std::move(acc));
  }
  CohClass out(c.ring());
  for (const auto& part : s) out += part;
  return out;
}

Rational integrate_base(const CohClass& c) {
  Rational total = 0;
  for (const auto& [m, coeff] : c.terms()) {
    if (c.ring()->degree(m) == c.ring()->top_degree()) total += coeff * c.ring()->integral_of(m);
  }
  return total;
}

CohClass pow(const CohClass& c, unsigned exponent) {
  CohClass out = one_like(c);
  for (unsigned i = 0; i < exponent; ++i) out = ring_mul(out, c);
  return out;
}

std::string to_string(GeometryKind kind) {
  switch (kind) {
    case GeometryKind::ProjectiveSpace: return "pn";
    case GeometryKind::HypersurfaceTangent: return "hypersurface";
    case GeometryKind::LogProjective: return "log-pn";
  }
  return "unknown";
}

GeometryKind parse_geometry_kind(std::string_view text) {
  if (text == "pn" || text == "projective_space") return GeometryKind::ProjectiveSpace;
  if (text == "hypersurface" || text == "hypersurface_tangent") {
    return GeometryKind::HypersurfaceTangent;
  }
  if (text == "log-pn" || text == "log_projective") return GeometryKind::LogProjective;
  throw ValidationError("unknown geometry kind '" + std::string(text) + "'");
}

BaseGeometry chern_of_geometry(GeometryKind kind, int n, std::optional<int> degree) {
  if (n < 1) throw ValidationError("dimension n must be >= 1");
  const bool needs_degree = kind != GeometryKind::ProjectiveSpace;
  if (needs_degree && (!degree || *degree < 1)) {
    throw ValidationError("degree d must be >= 1 for " + to_string(kind));
  }
  const Rational fundamental = kind == GeometryKind::HypersurfaceTangent ? Rational(*degree) : 1;
  RingPtr ring = RingSpec::truncated_polynomial("h", n, fundamental);

  const CohClass one(ring, Rational(1));
  const CohClass h = CohClass::generator(ring, 0);
  const int euler_power = kind == GeometryKind::HypersurfaceTangent ? n + 2 : n + 1;
  CohClass chern = pow(one + h, static_cast<unsigned>(euler_power));
  if (needs_degree) chern = ring_mul(chern, ring_inv_unit(one + h * Rational(*degree)));

  BaseGeometry geom{kind, ring, n, n, needs_degree ? degree : std::nullopt, chern, std::nullopt};
  if (kind == GeometryKind::LogProjective) geom.log_divisor = LogDivisor{*degree};
  return geom;
}

}  // namespace demres
