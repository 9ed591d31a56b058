#include "demres/morse.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <future>
#include <numeric>
#include <thread>

namespace demres {

namespace {

void check_length(const std::vector<int>& a, int kappa) {
  if (kappa < 1) throw ValidationError("kappa must be >= 1");
  if (static_cast<int>(a.size()) != kappa) {
    throw ValidationError("expected " + std::to_string(kappa) + " weights, got " +
                          std::to_string(a.size()));
  }
}

bool any_negative(const std::vector<int>& a) {
  return std::any_of(a.begin(), a.end(), [](int x) { return x < 0; });
}

ClassPoly pow(const ClassPoly& p, int e) {
  ClassPoly out = ClassPoly::constant(p.nvars(), one_like(p.zero()));
  for (int i = 0; i < e; ++i) out = out * p;
  return out;
}

}  // namespace

std::string to_string(WeightBasis basis) { return basis == WeightBasis::Taut ? "taut" : "L"; }

WeightBasis parse_weight_basis(std::string_view text) {
  if (text == "taut" || text == "demailly") return WeightBasis::Taut;
  if (text == "L") return WeightBasis::L;
  throw ValidationError("unknown weight basis '" + std::string(text) + "'");
}

bool weights_valid_demailly(const std::vector<int>& a, int kappa) {
  check_length(a, kappa);
  if (any_negative(a)) return false;
  if (kappa == 1) return a[0] > 0;
  const auto k = static_cast<std::size_t>(kappa);
  if (!(a[k - 2] > 2 * a[k - 1] && a[k - 1] > 0)) return false;
  for (std::size_t i = 0; i + 2 < k; ++i) {
    if (a[i] < 3 * a[i + 1]) return false;
  }
  return true;
}

bool weights_valid_L(const std::vector<int>& a, int kappa) {
  check_length(a, kappa);
  if (any_negative(a)) return false;
  if (kappa == 1) return a[0] > 0;
  const auto k = static_cast<std::size_t>(kappa);
  if (!(a[k - 2] > a[k - 1] && a[k - 1] >= 1)) return false;
  for (std::size_t i = 0; i + 2 < k; ++i) {
    const long long tail = std::accumulate(a.begin() + static_cast<long>(i) + 1, a.end(), 0LL);
    if (a[i] < 2 * tail) return false;
  }
  return true;
}

bool weights_valid(const std::vector<int>& a, int kappa, WeightBasis basis) {
  return basis == WeightBasis::Taut ? weights_valid_demailly(a, kappa) : weights_valid_L(a, kappa);
}

std::pair<ClassPoly, ClassPoly> morse_class(const WeightVector& w, const TowerConfig& cfg,
                                            const BaseGeometry& geom, WeightBasis basis) {
  check_length(w.a, cfg.kappa);
  if (w.ample_power < 0) throw ValidationError("ample power l must be >= 0");
  const std::size_t nv = static_cast<std::size_t>(cfg.kappa);
  const CohClass h = geom.hyperplane();

  RationalPoly weighted(nv);
  for (std::size_t i = 0; i < nv; ++i) {
    Exponents e(nv);
    e[i] = 1;
    weighted.add_term(e, Rational(w.a[i]));
  }
  if (basis == WeightBasis::Taut) weighted = change_of_variables(weighted);

  ClassPoly f = lift(weighted, CohClass(geom.ring, Rational(1)));
  f.add_term(Exponents(nv), h * Rational(w.ample_power));
  ClassPoly g = ClassPoly::constant(nv, h * Rational(w.ample_power + 1));
  return {std::move(f), std::move(g)};
}

ClassPoly morse_integrand(const WeightVector& w, const TowerConfig& cfg, const BaseGeometry& geom,
                          WeightBasis basis) {
  const auto [f, g] = morse_class(w, cfg, geom, basis);
  const int top = cfg.n_kappa();
  const ClassPoly f_pow = pow(f, top - 1);
  return f_pow * f - f_pow * g * Rational(top);
}

std::string to_string(Pipeline p) {
  switch (p) {
    case Pipeline::Residue: return "residue";
    case Pipeline::Stepwise: return "stepwise";
    case Pipeline::PhiForm: return "phi";
    case Pipeline::All: return "all";
  }
  return "unknown";
}

Pipeline parse_pipeline(std::string_view text) {
  if (text == "residue") return Pipeline::Residue;
  if (text == "stepwise") return Pipeline::Stepwise;
  if (text == "phi" || text == "phi_form") return Pipeline::PhiForm;
  if (text == "all") return Pipeline::All;
  throw ValidationError("unknown pipeline '" + std::string(text) + "'");
}

MorseReport morse_number(const BaseGeometry& geom, const TowerConfig& cfg, const WeightVector& w,
                         Pipeline pipeline, WeightBasis basis) {
  if (any_negative(w.a)) throw ValidationError("weights must be nonnegative");
  const ClassPoly integrand = morse_integrand(w, cfg, geom, basis);

  MorseReport report{geom.kind, geom.n, geom.degree, cfg, w, basis, pipeline, 0, false, {}, {}};
  auto run = [&](Pipeline p) {
    using Clock = std::chrono::steady_clock;
    const auto start = Clock::now();
    Rational value;
    switch (p) {
      case Pipeline::Residue: value = integrate_residue(integrand, geom, cfg); break;
      case Pipeline::Stepwise: value = integrate_stepwise(integrand, geom, cfg); break;
      case Pipeline::PhiForm: value = integrate_phi_form(integrand, geom, cfg); break;
      case Pipeline::All: throw Error("unreachable");
    }
    report.timings_ms[to_string(p)] =
        std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    return value;
  };

  if (pipeline == Pipeline::All) {
    for (Pipeline p : {Pipeline::Residue, Pipeline::Stepwise, Pipeline::PhiForm}) {
      report.pipeline_values[to_string(p)] = run(p);
    }
    report.value = report.pipeline_values.at("residue");
    for (const auto& [name, v] : report.pipeline_values) {
      if (v != report.value) {
        throw PipelineDisagreement("pipelines disagree: residue = " + to_string(report.value) +
                                   ", " + name + " = " + to_string(v));
      }
    }
  } else {
    report.value = run(pipeline);
  }
  report.positive = sgn(report.value) > 0;
  return report;
}

SearchResult minimal_degree_search(GeometryKind kind, int n, int kappa, const WeightVector& w,
                                   int d_max, WeightBasis basis, Pipeline pipeline) {
  if (kind == GeometryKind::ProjectiveSpace) throw ValidationError("degree not applicable");
  SearchResult result;
  if (d_max < 1) return result;
  if (!weights_valid(w.a, kappa, basis)) {
    throw ValidationError("weights are not relatively ample in the " + to_string(basis) + " basis");
  }

  // Workers pull degrees from a shared counter; results land in slot d - 1.
  std::vector<Rational> values(static_cast<std::size_t>(d_max));
  std::atomic<int> next{1};
  auto worker = [&] {
    for (int d = next++; d <= d_max; d = next++) {
      const BaseGeometry geom = chern_of_geometry(kind, n, d);
      const TowerConfig cfg = TowerConfig::for_geometry(geom, kappa);
      values[static_cast<std::size_t>(d - 1)] = morse_number(geom, cfg, w, pipeline, basis).value;
    }
  };
  const unsigned threads =
      std::clamp<unsigned>(std::thread::hardware_concurrency(), 1, static_cast<unsigned>(d_max));
  std::vector<std::future<void>> jobs;
  for (unsigned i = 0; i < threads; ++i) jobs.push_back(std::async(std::launch::async, worker));
  for (auto& job : jobs) job.get();
  for (int d = 1; d <= d_max; ++d) {
    result.values.emplace_back(d, values[static_cast<std::size_t>(d - 1)]);
  }
  for (const auto& [d, v] : result.values) {
    if (sgn(v) > 0) {
      result.first_positive = d;
      break;
    }
  }
  if (result.first_positive) {
    result.positive_after_first = std::all_of(
        result.values.begin() + *result.first_positive - 1, result.values.end(),
        [](const auto& dv) { return sgn(dv.second) > 0; });
  }
  return result;
}

}  // namespace demres
