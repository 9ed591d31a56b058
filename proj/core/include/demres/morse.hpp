#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "demres/demailly.hpp"

namespace demres {

/// taut: O(a_1,...,a_kappa) in the classes u_i = c_1(O_{X_i}(1)).
/// L: sum a_i c_1(L_i^dual) = sum a_i v_i.
enum class WeightBasis { Taut, L };

std::string to_string(WeightBasis basis);
WeightBasis parse_weight_basis(std::string_view text);

struct WeightVector {
  std::vector<int> a;
  int ample_power = 1;

  int kappa() const { return static_cast<int>(a.size()); }
};

/// a_{k-1} > 2 a_k > 0 and a_i >= 3 a_{i+1} for i <= k-2. For kappa = 1: a_1 > 0.
bool weights_valid_demailly(const std::vector<int>& a, int kappa);
/// a_{k-1} > a_k >= 1 and a_i >= 2 (a_{i+1} + ... + a_k). For kappa = 1: a_1 > 0.
bool weights_valid_L(const std::vector<int>& a, int kappa);
bool weights_valid(const std::vector<int>& a, int kappa, WeightBasis basis);

/// First Chern classes of F = O(a) (x) A^l and G = A^{l+1}, in t_1..t_kappa
/// with h carried by the coefficients.
std::pair<ClassPoly, ClassPoly> morse_class(const WeightVector& w, const TowerConfig& cfg,
                                            const BaseGeometry& geom,
                                            WeightBasis basis = WeightBasis::Taut);

/// c_1(F)^{n_kappa} - n_kappa c_1(F)^{n_kappa - 1} c_1(G).
ClassPoly morse_integrand(const WeightVector& w, const TowerConfig& cfg, const BaseGeometry& geom,
                          WeightBasis basis = WeightBasis::Taut);

enum class Pipeline { Residue, Stepwise, PhiForm, All };

std::string to_string(Pipeline p);
/// residue, stepwise, phi (or phi_form), all.
Pipeline parse_pipeline(std::string_view text);

struct MorseReport {
  GeometryKind kind;
  int n;
  std::optional<int> degree;
  TowerConfig cfg;
  WeightVector weights;
  WeightBasis basis;
  Pipeline pipeline;
  Rational value;
  bool positive;
  std::map<std::string, Rational> pipeline_values;  // filled for Pipeline::All
  std::map<std::string, double> timings_ms;
};

/// Throws PipelineDisagreement when Pipeline::All sees different values.
MorseReport morse_number(const BaseGeometry& geom, const TowerConfig& cfg, const WeightVector& w,
                         Pipeline pipeline, WeightBasis basis = WeightBasis::Taut);

struct SearchResult {
  std::optional<int> first_positive;
  std::vector<std::pair<int, Rational>> values;  // ordered by d
  /// Whether every d after first_positive is positive too (meaningful only
  /// when first_positive is set).
  bool positive_after_first = false;
};

/// Scans d = 1..d_max (evaluated concurrently, reported in order of d).
SearchResult minimal_degree_search(GeometryKind kind, int n, int kappa, const WeightVector& w,
                                   int d_max, WeightBasis basis = WeightBasis::Taut,
                                   Pipeline pipeline = Pipeline::Residue);

}  // namespace demres
