#include "qgram/triples.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

namespace qgram {

namespace {

constexpr double kFeasibilitySlack = 1e-12;

void check_overlap_range(double a, const char* name) {
  if (!(a >= -1e-12 && a <= 1.0 + 1e-12)) {
    throw Infeasible(std::string(name) + " must lie in [0,1], got " + std::to_string(a));
  }
}

}  // namespace

double TripleSpec::feasibility() const {
  return 1.0 + 2.0 * a12 * a23 * a31 * std::cos(xi) - (a12 * a12 + a23 * a23 + a31 * a31);
}

std::optional<double> max_phase(double a12, double a23, double a31) {
  check_overlap_range(a12, "a12");
  check_overlap_range(a23, "a23");
  check_overlap_range(a31, "a31");
  const double prod = a12 * a23 * a31;
  const double ssum = a12 * a12 + a23 * a23 + a31 * a31;
  if (prod < 1e-15) {
    if (ssum <= 1.0 + kFeasibilitySlack) return std::numbers::pi;
    return std::nullopt;
  }
  if (1.0 + 2.0 * prod - ssum < -kFeasibilitySlack) return std::nullopt;
  const double c = std::clamp((ssum - 1.0) / (2.0 * prod), -1.0, 1.0);
  return std::acos(c);
}

Ensemble construct_triple(const TripleSpec& spec) {
  const double a12 = spec.a12, a23 = spec.a23, a31 = spec.a31;
  check_overlap_range(a12, "a12");
  check_overlap_range(a23, "a23");
  check_overlap_range(a31, "a31");
  std::vector<double> probs(spec.probs.begin(), spec.probs.end());

  if (a12 >= 1.0 - 1e-12) {
    // states 1 and 2 coincide; the third state must see them identically
    if (std::abs(a23 - a31) > 1e-12) {
      throw DegenerateBasis("a12 = 1 requires a23 = a31");
    }
    if (spec.feasibility() < -kFeasibilitySlack) {
      throw Infeasible("overlaps infeasible at the requested phase");
    }
    std::vector<Complex> s1{Complex{1, 0}, Complex{0, 0}, Complex{0, 0}};
    std::vector<Complex> s3{Complex{a31, 0}, Complex{std::sqrt(std::max(1.0 - a31 * a31, 0.0)), 0},
                            Complex{0, 0}};
    return Ensemble::create(3, {s1, s1, s3}, probs);
  }

  const double feas = spec.feasibility();
  if (feas < -kFeasibilitySlack) {
    std::ostringstream os;
    os << "overlaps infeasible: 1 + 2 a12 a23 a31 cos(xi) - sum of squares = " << feas;
    throw Infeasible(os.str());
  }

  const double w = std::sqrt(1.0 - a12 * a12);
  const Complex eta = (a23 * std::polar(1.0, spec.xi) - a31 * a12) / w;
  const double z = std::sqrt(std::max(feas, 0.0) / (1.0 - a12 * a12));

  std::vector<Complex> s1{Complex{1, 0}, Complex{0, 0}, Complex{0, 0}};
  std::vector<Complex> s2{Complex{a12, 0}, Complex{w, 0}, Complex{0, 0}};
  std::vector<Complex> s3{Complex{a31, 0}, eta, Complex{z, 0}};
  const double n3 = norm(s3);
  for (Complex& x : s3) x /= n3;

  return Ensemble::create(3, {s1, s2, s3}, probs);
}

ChainValue chain_invariant(const Ensemble& e, std::span<const std::size_t> indices) {
  if (indices.empty()) throw IndexOutOfRange("chain needs at least one index");
  for (std::size_t idx : indices) {
    if (idx >= e.size()) {
      throw IndexOutOfRange("chain index " + std::to_string(idx) + " out of range");
    }
  }
  Complex value{1.0, 0.0};
  for (std::size_t m = 0; m < indices.size(); ++m) {
    const std::size_t from = indices[m];
    const std::size_t to = indices[(m + 1) % indices.size()];
    value *= inner(e.states[from], e.states[to]);
  }
  ChainValue cv;
  cv.indices.assign(indices.begin(), indices.end());
  cv.value = value;
  return cv;
}

double triple_phase(const Ensemble& e, std::size_t i, std::size_t j, std::size_t k) {
  const std::array<std::size_t, 3> idx{i, j, k};
  for (std::size_t m = 0; m < 3; ++m) {
    const std::size_t a = idx[m], b = idx[(m + 1) % 3];
    if (a >= e.size() || b >= e.size()) throw IndexOutOfRange("triple index out of range");
    if (std::abs(inner(e.states[a], e.states[b])) < 1e-12) {
      throw UndefinedPhase("pairwise overlap (" + std::to_string(a) + "," + std::to_string(b) +
                           ") vanishes");
    }
  }
  return std::arg(chain_invariant(e, idx).value);
}

GramMatrix canonical_gram(const TripleSpec& spec) {
  check_overlap_range(spec.a12, "a12");
  check_overlap_range(spec.a23, "a23");
  check_overlap_range(spec.a31, "a31");
  if (spec.feasibility() < -kFeasibilitySlack) {
    std::ostringstream os;
    os << "overlaps infeasible: feasibility margin " << spec.feasibility();
    throw Infeasible(os.str());
  }
  const auto& p = spec.probs;
  HermitianMatrix g(3);
  g.set(0, 0, Complex{p[0], 0});
  g.set(1, 1, Complex{p[1], 0});
  g.set(2, 2, Complex{p[2], 0});
  g.set(0, 1, Complex{std::sqrt(p[0] * p[1]) * spec.a12, 0});
  g.set(0, 2, Complex{std::sqrt(p[0] * p[2]) * spec.a31, 0});
  g.set(1, 2, std::sqrt(p[1] * p[2]) * spec.a23 * std::polar(1.0, spec.xi));
  return GramMatrix::from_matrix(std::move(g));
}

std::vector<SweepRow> phase_sweep(double a12, double a23, double a31,
                                  const std::array<double, 3>& probs, std::size_t steps) {
  if (steps < 2) throw std::invalid_argument("sweep needs at least 2 grid points");
  const std::optional<double> xm = max_phase(a12, a23, a31);
  if (!xm) {
    std::ostringstream os;
    os << "overlaps (" << a12 << ", " << a23 << ", " << a31 << ") admit no phase: "
       << "sum of squares " << a12 * a12 + a23 * a23 + a31 * a31 << " exceeds 1 + 2 a12 a23 a31 = "
       << 1.0 + 2.0 * a12 * a23 * a31;
    throw Infeasible(os.str());
  }

  std::vector<SweepRow> rows;
  rows.reserve(steps);
  for (std::size_t k = 0; k < steps; ++k) {
    SweepRow row;
    row.xi = *xm * static_cast<double>(k) / static_cast<double>(steps - 1);
    TripleSpec spec{a12, a23, a31, row.xi, probs};
    GramMatrix g = canonical_gram(spec);
    row.spectrum = eigh(g.matrix(), false);
    row.entropy_nats = entropy_of_spectrum(row.spectrum.eigenvalues, LogBase::nats).value;
    row.trace_g3 = trace_power(g.matrix(), 3);
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

// 12 significant digits, locale independent.
std::string format_value(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

}  // namespace

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "xi,lambda1,lambda2,lambda3,entropy_nats,trace_g3\n";
  for (const SweepRow& row : rows) {
    out << format_value(row.xi);
    for (double l : row.spectrum.eigenvalues) out << ',' << format_value(l);
    out << ',' << format_value(row.entropy_nats) << ',' << format_value(row.trace_g3) << '\n';
  }
}

}  // namespace qgram
