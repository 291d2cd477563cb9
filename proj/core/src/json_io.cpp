#include "qgram/json_io.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

namespace qgram {

using nlohmann::json;

namespace {

json complex_to_json(const Complex& v) { return json::array({v.real(), v.imag()}); }

Complex complex_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ParseError(where + ": expected [re, im]");
  }
  return Complex{j[0].get<double>(), j[1].get<double>()};
}

json parse(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("malformed JSON");
  return j;
}

}  // namespace

std::string ensemble_to_json(const Ensemble& e) {
  json j;
  j["dim"] = e.dim;
  j["probs"] = e.probs;
  json states = json::array();
  for (const auto& s : e.states) {
    json state = json::array();
    for (const Complex& v : s) state.push_back(complex_to_json(v));
    states.push_back(std::move(state));
  }
  j["states"] = std::move(states);
  return j.dump();
}

Ensemble ensemble_from_json(const std::string& text) {
  const json j = parse(text);
  if (!j.is_object() || !j.contains("dim") || !j.contains("probs") || !j.contains("states")) {
    throw ParseError("ensemble needs dim, probs and states fields");
  }
  if (!j["dim"].is_number_unsigned() || j["dim"].get<std::size_t>() == 0) {
    throw ParseError("dim must be a positive integer");
  }
  const std::size_t dim = j["dim"].get<std::size_t>();
  if (!j["probs"].is_array() || !j["states"].is_array() || j["probs"].empty()) {
    throw ParseError("probs and states must be non-empty arrays");
  }
  if (j["probs"].size() != j["states"].size()) {
    throw ParseError("probs and states differ in length");
  }

  std::vector<double> probs;
  double psum = 0.0;
  for (std::size_t i = 0; i < j["probs"].size(); ++i) {
    if (!j["probs"][i].is_number()) throw ParseError("probability " + std::to_string(i) + " is not a number");
    const double p = j["probs"][i].get<double>();
    if (p < -1e-8) {
      throw ParseError("probability " + std::to_string(i) + " is negative: " + std::to_string(p));
    }
    probs.push_back(std::max(p, 0.0));
    psum += probs.back();
  }
  if (std::abs(psum - 1.0) > 1e-8) {
    std::ostringstream os;
    os << "probabilities sum to " << psum << ", expected 1 within 1e-8";
    throw ParseError(os.str());
  }
  for (double& p : probs) p /= psum;

  std::vector<std::vector<Complex>> states;
  for (std::size_t i = 0; i < j["states"].size(); ++i) {
    const json& js = j["states"][i];
    if (!js.is_array() || js.size() != dim) {
      throw ParseError("state " + std::to_string(i) + " does not have " + std::to_string(dim) +
                       " components");
    }
    std::vector<Complex> s;
    for (std::size_t k = 0; k < dim; ++k) {
      s.push_back(complex_from_json(js[k], "state " + std::to_string(i)));
    }
    const double n = norm(s);
    if (std::abs(n - 1.0) > 1e-8) {
      std::ostringstream os;
      os << "state " << i << " has norm " << n << ", expected 1 within 1e-8";
      throw ParseError(os.str());
    }
    for (Complex& v : s) v /= n;
    states.push_back(std::move(s));
  }
  return Ensemble::create(dim, std::move(states), std::move(probs));
}

std::string gram_to_json(const GramMatrix& g) {
  json j;
  j["dim"] = g.dim();
  json rows = json::array();
  for (std::size_t i = 0; i < g.dim(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < g.dim(); ++k) row.push_back(complex_to_json(g(i, k)));
    rows.push_back(std::move(row));
  }
  j["matrix"] = std::move(rows);
  return j.dump();
}

GramMatrix gram_from_json(const std::string& text) {
  const json j = parse(text);
  if (!j.is_object() || !j.contains("dim") || !j.contains("matrix")) {
    throw ParseError("gram matrix needs dim and matrix fields");
  }
  if (!j["dim"].is_number_unsigned() || j["dim"].get<std::size_t>() == 0) {
    throw ParseError("dim must be a positive integer");
  }
  const std::size_t dim = j["dim"].get<std::size_t>();
  if (!j["matrix"].is_array() || j["matrix"].size() != dim) {
    throw ParseError("matrix must have dim rows");
  }
  std::vector<Complex> entries;
  entries.reserve(dim * dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const json& row = j["matrix"][i];
    if (!row.is_array() || row.size() != dim) {
      throw ParseError("matrix row " + std::to_string(i) + " must have dim entries");
    }
    for (std::size_t k = 0; k < dim; ++k) {
      entries.push_back(complex_from_json(row[k], "matrix row " + std::to_string(i)));
    }
  }
  HermitianMatrix m = HermitianMatrix::from_entries(dim, entries, 1e-9);
  return GramMatrix::from_matrix(std::move(m));
}

namespace {

json overlaps_to_json(const std::vector<std::vector<double>>& o) {
  json rows = json::array();
  for (const auto& row : o) rows.push_back(row);
  return rows;
}

}  // namespace

std::string report_to_json(const DeformationReport& report) {
  json j;
  j["kind"] = report.kind == DeformationKind::d1 ? "D1" : "D2";
  j["method"] = report.method == DeformationMethod::xi_shift ? "xi-shift" : "search";
  const double s_src = von_neumann_entropy(density_matrix(report.source), LogBase::nats).value;
  j["entropy_before"] = s_src;
  j["entropy_after"] = s_src + report.entropy_delta;
  j["overlaps_before"] = overlaps_to_json(pairwise_overlaps(report.source));
  j["overlaps_after"] = overlaps_to_json(pairwise_overlaps(report.result));
  j["source"] = json::parse(ensemble_to_json(report.source));
  j["result"] = json::parse(ensemble_to_json(report.result));
  j["seed"] = report.seed;
  return j.dump();
}

}  // namespace qgram
