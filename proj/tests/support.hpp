#pragma once

// Shared fixtures for the unit and acceptance tests: the geometry grid,
// monomial enumeration and the bridge to the reference integrator.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "demres/demailly.hpp"
#include "oracle/grothendieck.hpp"

namespace testing_support {

struct GridPoint {
  std::string label;
  demres::GeometryKind kind;
  int n;
  std::optional<int> degree;
};

inline std::vector<GridPoint> geometry_grid() {
  using demres::GeometryKind;
  return {
      {"P2", GeometryKind::ProjectiveSpace, 2, std::nullopt},
      {"P3", GeometryKind::ProjectiveSpace, 3, std::nullopt},
      {"X2 in P3", GeometryKind::HypersurfaceTangent, 2, 2},
      {"X5 in P3", GeometryKind::HypersurfaceTangent, 2, 5},
      {"log P2, d=3", GeometryKind::LogProjective, 2, 3},
      {"log P2, d=4", GeometryKind::LogProjective, 2, 4},
  };
}

inline oracle::Setup oracle_setup(const GridPoint& g, int kappa) {
  oracle::Geometry kind = oracle::Geometry::Pn;
  if (g.kind == demres::GeometryKind::HypersurfaceTangent) kind = oracle::Geometry::Hypersurface;
  if (g.kind == demres::GeometryKind::LogProjective) kind = oracle::Geometry::LogPn;
  return {kind, g.n, g.degree.value_or(1), kappa};
}

/// t_1^{e_1}...t_kappa^{e_kappa} h^m.
struct TowerMonomial {
  std::vector<int> e;
  int m;
};

/// Every (e, m) with sum e_i + m = total, 0 <= e_i <= e_max, 0 <= m <= m_max.
inline std::vector<TowerMonomial> monomials_of_degree(int kappa, int total, int e_max, int m_max) {
  std::vector<TowerMonomial> out;
  std::vector<int> e(static_cast<std::size_t>(kappa), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i == e.size()) {
      if (left <= m_max) out.push_back({e, left});
      return;
    }
    for (int x = 0; x <= std::min(left, e_max); ++x) {
      e[i] = x;
      rec(i + 1, left - x);
    }
  };
  rec(0, total);
  return out;
}

inline demres::ClassPoly to_class_poly(const TowerMonomial& t, const demres::BaseGeometry& geom) {
  demres::Exponents x(t.e.size());
  for (std::size_t i = 0; i < t.e.size(); ++i) x[i] = t.e[i];
  return demres::ClassPoly::monomial(
      x, demres::pow(geom.hyperplane(), static_cast<unsigned>(t.m)));
}

inline oracle::Poly to_oracle_poly(const TowerMonomial& t) { return oracle::monomial(t.m, t.e); }

}  // namespace testing_support
