#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "demres/exponents.hpp"
#include "demres/rational.hpp"

namespace demres {

struct Generator {
  std::string name;
  int degree = 1;      // complex degree, >= 1
  int nilpotency = 1;  // g^nilpotency = 0

  friend bool operator==(const Generator&, const Generator&) = default;
};

/// Presentation Q[g_1..g_m] / (g_i^{e_i}, everything above top_degree),
/// together with the top-degree pairing used by integrate_base().
class RingSpec {
 public:
  /// `integral_values` must cover every surviving monomial of degree exactly
  /// `top_degree`; entries of any other degree are rejected.
  RingSpec(std::vector<Generator> generators, int top_degree,
           std::map<Exponents, Rational> integral_values);

  /// Q[h]/(h^{n+1}) with the pairing h^n -> fundamental.
  static std::shared_ptr<const RingSpec> truncated_polynomial(std::string name, int top_degree,
                                                              const Rational& fundamental);

  const std::vector<Generator>& generators() const { return generators_; }
  std::size_t num_generators() const { return generators_.size(); }
  int top_degree() const { return top_degree_; }
  const std::map<Exponents, Rational>& integral_values() const { return integral_values_; }

  int degree(const Exponents& monomial) const;
  /// True when the monomial is not killed by nilpotency or the degree cap.
  bool survives(const Exponents& monomial) const;
  Rational integral_of(const Exponents& monomial) const;

  friend bool operator==(const RingSpec&, const RingSpec&) = default;

 private:
  std::vector<Generator> generators_;
  int top_degree_;
  std::map<Exponents, Rational> integral_values_;
};

using RingPtr = std::shared_ptr<const RingSpec>;

/// An element of a truncated graded ring. Value type; the ring is shared.
class CohClass {
 public:
  using TermMap = std::map<Exponents, Rational>;

  explicit CohClass(RingPtr ring);
  CohClass(RingPtr ring, const Rational& scalar);

  static CohClass monomial(RingPtr ring, const Exponents& exponents, const Rational& coeff = 1);
  static CohClass generator(RingPtr ring, std::size_t index, const Rational& coeff = 1);

  const RingPtr& ring() const { return ring_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational constant_term() const;
  Rational coefficient(const Exponents& monomial) const;
  CohClass homogeneous_part(int degree) const;
  /// Drops every monomial of degree > max_degree.
  CohClass truncated(int max_degree) const;
  /// Largest degree carrying a nonzero term; -1 for zero.
  int max_degree() const;

  CohClass& operator+=(const CohClass& o);
  CohClass& operator-=(const CohClass& o);
  CohClass& operator*=(const Rational& s);
  CohClass& operator*=(const CohClass& o);

  friend CohClass operator+(CohClass a, const CohClass& b) { return a += b; }
  friend CohClass operator-(CohClass a, const CohClass& b) { return a -= b; }
  friend CohClass operator-(CohClass a) { return a *= Rational(-1); }
  friend CohClass operator*(CohClass a, const Rational& s) { return a *= s; }
  friend CohClass operator*(const Rational& s, CohClass a) { return a *= s; }
  friend CohClass operator*(const CohClass& a, const CohClass& b);
  friend bool operator==(const CohClass& a, const CohClass& b);
  friend CohClass ring_mul(const CohClass& a, const CohClass& b);

  std::string to_string() const;

 private:
  void add_term(const Exponents& m, const Rational& c);

  RingPtr ring_;
  TermMap terms_;
};

bool same_ring(const RingPtr& a, const RingPtr& b);

CohClass ring_mul(const CohClass& a, const CohClass& b);
/// Inverse of a class with constant term 1, solved degree by degree.
CohClass ring_inv_unit(const CohClass& c);
Rational integrate_base(const CohClass& c);
CohClass pow(const CohClass& c, unsigned exponent);

inline bool is_zero(const CohClass& c) { return c.is_zero(); }
inline CohClass zero_like(const CohClass& c) { return CohClass(c.ring()); }
inline CohClass one_like(const CohClass& c) { return CohClass(c.ring(), Rational(1)); }

enum class GeometryKind { ProjectiveSpace, HypersurfaceTangent, LogProjective };

std::string to_string(GeometryKind kind);
/// Accepts both the long names and the CLI spellings pn, hypersurface, log-pn.
GeometryKind parse_geometry_kind(std::string_view text);

struct LogDivisor {
  int degree;  // smooth hypersurface component of the boundary
};

/// Base manifold data: cohomology ring, dim, V_0 and its total Chern class.
struct BaseGeometry {
  GeometryKind kind;
  RingPtr ring;
  int n;
  int rank_v0;
  std::optional<int> degree;
  CohClass total_chern_v0;
  std::optional<LogDivisor> log_divisor;

  int fiber_dim() const { return rank_v0 - 1; }
  /// The class h of the hyperplane bundle (first generator).
  CohClass hyperplane() const { return CohClass::generator(ring, 0); }
};

/// Builds P^n with V_0 = T, a degree-d hypersurface X_d in P^{n+1} with
/// V_0 = T_{X_d}, or P^n with V_0 = T(-log X_d).
BaseGeometry chern_of_geometry(GeometryKind kind, int n, std::optional<int> degree = std::nullopt);

}  // namespace demres
