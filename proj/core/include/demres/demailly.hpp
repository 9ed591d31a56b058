#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "demres/graded_ring.hpp"
#include "demres/laurent.hpp"

namespace demres {

/// kappa levels over a base of dimension n with fiber dimension r;
/// dims[i] = n + i*r.
struct TowerConfig {
  int kappa = 1;
  int n = 1;
  int r = 0;
  std::vector<int> dims;

  static TowerConfig make(int kappa, int n, int r);
  static TowerConfig for_geometry(const BaseGeometry& geom, int kappa);

  int n_kappa() const { return dims.back(); }
  /// Truncation order N = n_{kappa-1} of phi.
  int phi_order() const { return dims[kappa - 1]; }
};

using ClassPoly = LaurentPoly<CohClass>;

/// Mixed polynomial over 2*kappa variables: slots 0..kappa-1 hold the
/// classes v_1..v_kappa, slots kappa..2kappa-1 the formal t_1..t_kappa.
/// At level i only v_1..v_i may occur.
struct TowerPolynomial {
  ClassPoly poly;
  int level;

  static std::size_t v_slot(int i) { return static_cast<std::size_t>(i - 1); }
  static std::size_t t_slot(int i, const TowerConfig& cfg) {
    return static_cast<std::size_t>(cfg.kappa + i - 1);
  }
  /// Embeds f(v_1..v_kappa) at the top level.
  static TowerPolynomial from_classes(const ClassPoly& f, const TowerConfig& cfg);
};

/// sum_j s_j(V_0) t^{-j} placed on variable `var_index` of `nvars`.
ClassPoly segre_gen(const BaseGeometry& geom, std::size_t var_index, std::size_t nvars);

/// I(t) = int_{X_0} f(t) prod_i s_{1/t_i}(V_0), for f in kappa variables.
RationalPoly base_integral(const ClassPoly& f, const BaseGeometry& geom, const TowerConfig& cfg);

/// (1 - x) sum_{k=0}^{N} (2x - y)^k in variables (x, y).
RationalPoly phi_poly(int N);

/// phi(t_k/t_l, t_{k-1}/t_l), with y = 0 when k = 1, order N = n_{kappa-1}.
RationalPoly phi_kl(int k, int l, const TowerConfig& cfg);
/// Same over `kappa` variables with an explicit truncation order.
RationalPoly phi_kl(int k, int l, int kappa, int order);

/// prod over kappa-i+1 <= k < l <= kappa of phi_kl(k, l).
RationalPoly phi_i_product(int i, const TowerConfig& cfg);

/// s_{1/t_l}(V_k (x) L_k) over the 2*kappa tower slots, obtained from
/// segre_gen by k applications of the phi recursion. Terms whose
/// cohomological degree exceeds `max_degree` are dropped.
ClassPoly twisted_segre(int k, int l, const TowerConfig& cfg, const BaseGeometry& geom,
                        std::optional<int> max_degree = std::nullopt);

/// Integrates along X_i -> X_{i-1} where i = f.level.
TowerPolynomial fiber_integrate_once(const TowerPolynomial& f, const BaseGeometry& geom,
                                     const TowerConfig& cfg);

/// Eliminates v_kappa, ..., v_1 one fiber at a time, then integrates on X_0.
Rational integrate_stepwise(const ClassPoly& f, const BaseGeometry& geom, const TowerConfig& cfg);

/// [t_1^r...t_kappa^r] of phi_i_product(kappa) * base_integral(f).
Rational integrate_phi_form(const ClassPoly& f, const BaseGeometry& geom, const TowerConfig& cfg);

/// Factors (t_j - t_1)/(t_j - 2t_1) for j >= 2, then
/// (t_j - t_i)/(t_j - 2t_i + t_{i-1}) for 2 <= i < j.
std::vector<RationalFunction> residue_phi_rational(const TowerConfig& cfg);

/// [r - n_kappa, r + n] on every variable.
Window default_residue_window(const TowerConfig& cfg);

/// Expansion of the residue factor product on `window`, memoized per process.
std::shared_ptr<const TruncatedSeries> residue_phi_series(const TowerConfig& cfg, const Window& window);

/// [t_1^r...t_kappa^r] of the expanded rational Phi_kappa times I(t).
Rational integrate_residue(const ClassPoly& f, const BaseGeometry& geom, const TowerConfig& cfg);

/// u_1 -> t_1, u_i -> t_i - t_{i-1}.
RationalPoly change_of_variables(const RationalPoly& g);
ClassPoly change_of_variables(const ClassPoly& g);

/// I(t_1..t_j) = [t_{j+1}^r...t_kappa^r](I(t) prod_{k=j+1}^{kappa-1} prod_{i<k} phi_kl(i, k)),
/// returned as a polynomial in j variables.
RationalPoly partially_extracted_integral(const RationalPoly& base, int j, const TowerConfig& cfg);

}  // namespace demres
