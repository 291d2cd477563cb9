// Command line front end: entropy and overlap analysis of pure-state
// ensembles through their Gram matrices.
//
// Exit codes: 0 success, 2 parse/validation failure, 3 mathematical
// infeasibility or positivity failure, 4 method inapplicable / not found.

#include <array>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qgram/classical.hpp"
#include "qgram/deform.hpp"
#include "qgram/ensemble.hpp"
#include "qgram/entropy.hpp"
#include "qgram/json_io.hpp"
#include "qgram/triples.hpp"

namespace {

using nlohmann::json;
using namespace qgram;

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitNotFound = 4;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open output file: " + path);
  out << text;
}

LogBase parse_base(const std::string& base) {
  if (base == "nats") return LogBase::nats;
  if (base == "bits") return LogBase::bits;
  throw ParseError("base must be nats or bits");
}

std::vector<double> parse_csv_doubles(const std::string& text, std::size_t expected,
                                      const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ParseError(what + ": cannot parse '" + item + "' as a number");
    }
  }
  if (expected != 0 && out.size() != expected) {
    throw ParseError(what + ": expected " + std::to_string(expected) + " comma-separated values");
  }
  return out;
}

int cmd_entropy(const std::string& path, const std::string& base_name) {
  const LogBase base = parse_base(base_name);
  const Ensemble e = ensemble_from_json(read_file(path));
  const GramMatrix g = gram_matrix(e);
  const Spectrum spec = eigh(g.matrix(), false);

  json out;
  out["entropy"] = entropy_of_spectrum(spec.eigenvalues, base).value;
  out["base"] = base_name;
  out["s_lin"] = linearized_entropy(e);
  out["shannon"] = shannon_entropy(e.probs, base).value;
  out["eigenvalues"] = spec.eigenvalues;
  std::cout << out.dump() << "\n";
  return kExitOk;
}

int cmd_sweep(const std::string& overlaps_text, const std::string& probs_text, std::size_t steps,
              const std::string& out_path) {
  const auto a = parse_csv_doubles(overlaps_text, 3, "--overlaps");
  const auto p = parse_csv_doubles(probs_text, 3, "--probs");
  const std::array<double, 3> probs{p[0], p[1], p[2]};

  const auto rows = phase_sweep(a[0], a[1], a[2], probs, steps);
  std::ostringstream csv;
  write_sweep_csv(csv, rows);
  write_file(out_path, csv.str());

  json out;
  out["xi_max"] = rows.back().xi;
  out["entropy_start_nats"] = rows.front().entropy_nats;
  out["entropy_end_nats"] = rows.back().entropy_nats;
  out["rows"] = rows.size();
  out["out"] = out_path;
  std::cout << out.dump() << "\n";
  return kExitOk;
}

int cmd_deform(const std::string& path, const std::string& kind_name, const std::string& method,
               std::uint64_t seed, std::size_t budget, const std::string& out_path) {
  const Ensemble e = ensemble_from_json(read_file(path));
  DeformationKind kind;
  if (kind_name == "d1") {
    kind = DeformationKind::d1;
  } else if (kind_name == "d2") {
    kind = DeformationKind::d2;
  } else {
    throw ParseError("--kind must be d1 or d2");
  }

  std::optional<DeformationReport> report;
  if (method == "theorem2") {
    report = deform_theorem2(e, kind);
  } else if (method == "search") {
    SearchConfig config;
    config.seed = seed;
    report = search_deformation(e, kind, budget, config);
    if (!report) {
      json err;
      err["error"] = "search exhausted its budget without a witness";
      err["budget"] = budget;
      std::cout << err.dump() << "\n";
      return kExitNotFound;
    }
  } else {
    throw ParseError("--method must be theorem2 or search");
  }

  const std::string text = report_to_json(*report);
  if (!out_path.empty()) write_file(out_path, text);
  std::cout << text << "\n";
  return kExitOk;
}

int cmd_check(const std::string& path, const std::string& second_path) {
  const GramMatrix g = gram_from_json(read_file(path));
  const Spectrum spec = eigh(g.matrix(), false);
  const double lo = spec.eigenvalues.back();

  json out;
  out["positive"] = lo >= -1e-10;
  out["trace"] = trace_power(g.matrix(), 1);
  out["eigenvalues"] = spec.eigenvalues;
  if (!second_path.empty()) {
    const GramMatrix gt = gram_from_json(read_file(second_path));
    const MultiplierExtraction ext = extract_multiplier(g, gt);
    out["multiplier_min_eigenvalue"] = ext.min_eigenvalue;
  }
  std::cout << out.dump() << "\n";
  return lo >= -1e-10 ? kExitOk : kExitInfeasible;
}

int cmd_construct(const std::string& overlaps_text, double xi, const std::string& probs_text,
                  const std::string& out_path) {
  const auto a = parse_csv_doubles(overlaps_text, 3, "--overlaps");
  const auto p = parse_csv_doubles(probs_text, 3, "--probs");
  const TripleSpec spec{a[0], a[1], a[2], xi, {p[0], p[1], p[2]}};
  const Ensemble e = construct_triple(spec);
  const std::string text = ensemble_to_json(e);
  if (!out_path.empty()) write_file(out_path, text);
  std::cout << text << "\n";
  return kExitOk;
}

json channel_summary(const DiscreteChannel& ch, LogBase base) {
  json j;
  j["inputs"] = ch.inputs;
  j["mutual_information"] = mutual_information(ch, base);
  json overlaps = json::array();
  json agreements = json::array();
  for (std::size_t i = 0; i < ch.inputs.size(); ++i) {
    for (std::size_t k = i + 1; k < ch.inputs.size(); ++k) {
      overlaps.push_back({{"pair", {i, k}}, {"bhattacharyya", pairwise_distribution_overlap(ch, i, k)}});
      agreements.push_back({{"pair", {i, k}}, {"tv_agreement", pairwise_tv_agreement(ch, i, k)}});
    }
  }
  j["pairwise_overlaps"] = std::move(overlaps);
  j["pairwise_tv_agreements"] = std::move(agreements);
  return j;
}

int cmd_classical(const std::string& base_name) {
  const LogBase base = parse_base(base_name);
  json out;
  out["base"] = base_name;
  out["channels"] = json::array({channel_summary(abc_channel(), base),
                                 channel_summary(abc_prime_channel(), base)});
  std::cout << out.dump() << "\n";
  return kExitOk;
}

int cmd_spinflip(const std::string& vectors_text, const std::string& probs_text,
                 const std::string& base_name) {
  const LogBase base = parse_base(base_name);
  std::vector<std::array<double, 3>> bloch;
  std::stringstream ss(vectors_text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    const auto v = parse_csv_doubles(item, 3, "--vectors");
    bloch.push_back({v[0], v[1], v[2]});
  }
  if (bloch.empty()) throw ParseError("--vectors needs at least one semicolon-separated triple");
  std::vector<double> probs;
  if (probs_text.empty()) {
    probs.assign(bloch.size(), 1.0 / static_cast<double>(bloch.size()));
  } else {
    probs = parse_csv_doubles(probs_text, bloch.size(), "--probs");
  }

  const auto [parallel, flipped] = spin_flip_pair(bloch, probs);
  const auto summarize = [&](const Ensemble& e) {
    json j;
    j["entropy"] = von_neumann_entropy(density_matrix(e), base).value;
    json o = json::array();
    for (const auto& row : pairwise_overlaps(e)) o.push_back(row);
    j["overlaps"] = std::move(o);
    return j;
  };
  json out;
  out["base"] = base_name;
  out["parallel"] = summarize(parallel);
  out["flipped"] = summarize(flipped);
  std::cout << out.dump() << "\n";
  return kExitOk;
}

int fail(const std::string& message, int code) {
  json err;
  err["error"] = message;
  std::cout << err.dump() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gram-matrix analysis of pure-state ensembles"};
  app.require_subcommand(1);

  std::string in_path, out_path, second_path;
  std::string base_name = "nats";
  std::string classical_base = "bits";
  std::string overlaps_text, probs_text = "0.3333333333333333,0.3333333333333333,0.3333333333333334";
  std::string kind_name = "d1", method_name = "theorem2";
  std::string vectors_text, flip_probs_text;
  double xi = 0.0;
  std::size_t steps = 100, budget = 20000;
  std::uint64_t seed = 0;

  auto* entropy = app.add_subcommand("entropy", "entropy report for an ensemble file");
  entropy->add_option("ensemble", in_path)->required();
  entropy->add_option("--base", base_name, "nats or bits");

  auto* sweep = app.add_subcommand("sweep", "phase sweep at fixed overlaps, CSV output");
  sweep->add_option("--overlaps", overlaps_text, "a12,a23,a31")->required();
  sweep->add_option("--probs", probs_text, "p1,p2,p3");
  sweep->add_option("--steps", steps, "grid points, closed interval");
  sweep->add_option("--out", out_path)->required();

  auto* deform = app.add_subcommand("deform", "overlap/entropy co-monotone deformation");
  deform->add_option("ensemble", in_path)->required();
  deform->add_option("--kind", kind_name, "d1 or d2");
  deform->add_option("--method", method_name, "theorem2 or search");
  deform->add_option("--seed", seed);
  deform->add_option("--budget", budget, "search evaluation budget");
  deform->add_option("--out", out_path);

  auto* check = app.add_subcommand("check", "positivity report for a gram matrix file");
  check->add_option("gram", in_path)->required();
  check->add_option("gram2", second_path, "second gram file: also extract the multiplier");

  auto* construct = app.add_subcommand("construct", "canonical triple from overlaps and phase");
  construct->add_option("--overlaps", overlaps_text, "a12,a23,a31")->required();
  construct->add_option("--xi", xi, "triple phase");
  construct->add_option("--probs", probs_text, "p1,p2,p3");
  construct->add_option("--out", out_path);

  auto* classical = app.add_subcommand("classical", "three-signal channel demo");
  classical->add_option("--base", classical_base, "nats or bits");

  auto* spinflip = app.add_subcommand("spinflip", "parallel vs anti-parallel two-qubit ensembles");
  spinflip->add_option("--vectors", vectors_text, "x,y,z;x,y,z;...")->required();
  spinflip->add_option("--probs", flip_probs_text, "p1,p2,...");
  spinflip->add_option("--base", base_name);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    return fail(e.what(), kExitParse);
  }

  try {
    if (entropy->parsed()) return cmd_entropy(in_path, base_name);
    if (sweep->parsed()) return cmd_sweep(overlaps_text, probs_text, steps, out_path);
    if (deform->parsed()) return cmd_deform(in_path, kind_name, method_name, seed, budget, out_path);
    if (check->parsed()) return cmd_check(in_path, second_path);
    if (construct->parsed()) return cmd_construct(overlaps_text, xi, probs_text, out_path);
    if (classical->parsed()) return cmd_classical(classical_base);
    if (spinflip->parsed()) return cmd_spinflip(vectors_text, flip_probs_text, base_name);
  } catch (const ParseError& e) {
    return fail(e.what(), kExitParse);
  } catch (const InvalidEnsemble& e) {
    return fail(e.what(), kExitParse);
  } catch (const InvalidDistribution& e) {
    return fail(e.what(), kExitParse);
  } catch (const NonUnitVector& e) {
    return fail(e.what(), kExitParse);
  } catch (const NonHermitianInput& e) {
    return fail(e.what(), kExitParse);
  } catch (const DimensionMismatch& e) {
    return fail(e.what(), kExitParse);
  } catch (const ShapeMismatch& e) {
    return fail(e.what(), kExitParse);
  } catch (const MethodInapplicable& e) {
    return fail(e.what(), kExitNotFound);
  } catch (const Error& e) {
    // Infeasible, NotPositive, TraceNotOne, DegenerateBasis, RankDeficient, ...
    return fail(e.what(), kExitInfeasible);
  } catch (const std::exception& e) {
    return fail(e.what(), 1);
  }
  return kExitOk;
}
