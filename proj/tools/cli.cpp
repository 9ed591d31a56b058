#include "cli.hpp"

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "demres/morse.hpp"
#include "json.hpp"

namespace demres::cli {

namespace {

using nlohmann::json;

struct CommonArgs {
  std::string geometry;
  int n = 0;
  std::optional<int> degree;
  int kappa = 0;
  std::vector<int> weights;
  int ample_power = 1;
  std::string pipeline = "residue";
  std::string basis = "taut";
  std::string output = "json";
};

void add_common(CLI::App& cmd, CommonArgs& a) {
  cmd.add_option("--geometry", a.geometry, "pn | hypersurface | log-pn")->required();
  cmd.add_option("--n", a.n, "dimension of the base")->required();
  cmd.add_option("--degree", a.degree, "degree d of the hypersurface / log divisor");
  cmd.add_option("--kappa", a.kappa, "number of tower levels")->required();
  cmd.add_option("--weights", a.weights, "a_1,...,a_kappa")->required()->delimiter(',');
  cmd.add_option("--ample-power", a.ample_power, "power l of the ample bundle (default 1)");
  cmd.add_option("--pipeline", a.pipeline, "residue | stepwise | phi | all")
      ->check(CLI::IsMember({"residue", "stepwise", "phi", "all"}));
  cmd.add_option("--basis", a.basis, "taut | L")->check(CLI::IsMember({"taut", "L"}));
  cmd.add_option("--output", a.output, "json | text")->check(CLI::IsMember({"json", "text"}));
}

json degree_json(const std::optional<int>& d) { return d ? json(*d) : json(nullptr); }

json report_json(const MorseReport& r) {
  json j;
  j["geometry"] = to_string(r.kind);
  j["n"] = r.n;
  j["degree"] = degree_json(r.degree);
  j["kappa"] = r.cfg.kappa;
  j["r"] = r.cfg.r;
  j["n_kappa"] = r.cfg.n_kappa();
  j["weights"] = r.weights.a;
  j["ample_power"] = r.weights.ample_power;
  j["basis"] = to_string(r.basis);
  j["pipeline"] = to_string(r.pipeline);
  j["value"] = to_string(r.value);
  j["positive"] = r.positive;
  j["timings_ms"] = r.timings_ms;
  if (r.pipeline == Pipeline::All) {
    json values;
    for (const auto& [name, v] : r.pipeline_values) values[name] = to_string(v);
    j["pipeline_values"] = values;
  }
  return j;
}

void print_report_text(const MorseReport& r, std::ostream& out) {
  out << "geometry " << to_string(r.kind) << "  n=" << r.n;
  if (r.degree) out << "  d=" << *r.degree;
  out << "  kappa=" << r.cfg.kappa << "  r=" << r.cfg.r << "  n_kappa=" << r.cfg.n_kappa() << "\n";
  out << "weights";
  for (int a : r.weights.a) out << " " << a;
  out << "  (" << to_string(r.basis) << " basis)  l=" << r.weights.ample_power << "\n";
  for (const auto& [name, v] : r.pipeline_values) out << "  " << name << ": " << to_string(v) << "\n";
  out << "I = " << to_string(r.value) << (r.positive ? "  (positive)" : "  (not positive)") << "\n";
}

std::optional<int> geometry_degree(GeometryKind kind, const std::optional<int>& degree) {
  return kind == GeometryKind::ProjectiveSpace ? std::nullopt : degree;
}

int compute(const CommonArgs& a, std::ostream& out) {
  const GeometryKind kind = parse_geometry_kind(a.geometry);
  const BaseGeometry geom = chern_of_geometry(kind, a.n, geometry_degree(kind, a.degree));
  const TowerConfig cfg = TowerConfig::for_geometry(geom, a.kappa);
  const MorseReport report = morse_number(geom, cfg, WeightVector{a.weights, a.ample_power},
                                          parse_pipeline(a.pipeline), parse_weight_basis(a.basis));
  if (a.output == "json") {
    out << report_json(report).dump(2) << "\n";
  } else {
    print_report_text(report, out);
  }
  return 0;
}

int search(const CommonArgs& a, int d_max, std::ostream& out) {
  const GeometryKind kind = parse_geometry_kind(a.geometry);
  const auto start = std::chrono::steady_clock::now();
  const SearchResult result =
      minimal_degree_search(kind, a.n, a.kappa, WeightVector{a.weights, a.ample_power}, d_max,
                            parse_weight_basis(a.basis), parse_pipeline(a.pipeline));
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  const TowerConfig cfg = TowerConfig::for_geometry(chern_of_geometry(kind, a.n, 1), a.kappa);
  if (a.output == "text") {
    for (const auto& [d, v] : result.values) {
      out << "d=" << d << "  I=" << to_string(v) << (sgn(v) > 0 ? "  +" : "") << "\n";
    }
    if (result.first_positive) {
      out << "first positive degree: " << *result.first_positive
          << (result.positive_after_first ? " (positive for every larger d scanned)"
                                          : " (sign changes again later)")
          << "\n";
    } else {
      out << "no positive value for d <= " << d_max << "\n";
    }
    return 0;
  }
  json j;
  j["geometry"] = to_string(kind);
  j["n"] = a.n;
  j["kappa"] = a.kappa;
  j["r"] = cfg.r;
  j["n_kappa"] = cfg.n_kappa();
  j["weights"] = a.weights;
  j["ample_power"] = a.ample_power;
  j["basis"] = a.basis;
  j["pipeline"] = to_string(parse_pipeline(a.pipeline));
  j["d_max"] = d_max;
  json values = json::array();
  for (const auto& [d, v] : result.values) {
    values.push_back({{"degree", d}, {"value", to_string(v)}, {"positive", sgn(v) > 0}});
  }
  j["values"] = values;
  j["first_positive"] = degree_json(result.first_positive);
  j["positive_after_first"] = result.positive_after_first;
  j["timings_ms"] = {{"total", ms}};
  out << j.dump(2) << "\n";
  return 0;
}

int validate(const std::string& basis_text, const std::vector<int>& weights,
             const std::string& output, std::ostream& out) {
  const WeightBasis basis = parse_weight_basis(basis_text);
  const int kappa = static_cast<int>(weights.size());
  const bool ok = weights_valid(weights, kappa, basis);
  if (output == "json") {
    json j{{"basis", to_string(basis)}, {"kappa", kappa}, {"weights", weights}, {"valid", ok}};
    out << j.dump(2) << "\n";
  } else {
    out << (ok ? "valid" : "invalid") << " (" << to_string(basis) << " basis)\n";
  }
  return ok ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Intersection numbers on the Demailly tower and Morse positivity checks", "demres"};
  app.require_subcommand(1);

  CommonArgs compute_args;
  auto* compute_cmd = app.add_subcommand("compute", "evaluate the Morse intersection number");
  add_common(*compute_cmd, compute_args);

  CommonArgs search_args;
  int d_max = 0;
  auto* search_cmd = app.add_subcommand("search", "scan d = 1..d-max for the first positive value");
  add_common(*search_cmd, search_args);
  search_cmd->add_option("--d-max", d_max, "largest degree to scan")->required();

  std::string basis = "taut";
  std::vector<int> weights;
  std::string output = "json";
  auto* validate_cmd = app.add_subcommand("validate-weights", "check relative ampleness of weights");
  validate_cmd->add_option("--basis", basis, "taut | L")->check(CLI::IsMember({"taut", "L"}));
  validate_cmd->add_option("--weights", weights, "a_1,...,a_kappa")->required()->delimiter(',');
  validate_cmd->add_option("--output", output, "json | text")
      ->check(CLI::IsMember({"json", "text"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*compute_cmd) return compute(compute_args, out);
    if (*search_cmd) return search(search_args, d_max, out);
    return validate(basis, weights, output, out);
  } catch (const PipelineDisagreement& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace demres::cli
