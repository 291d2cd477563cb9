#include "qgram/deform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace qgram {

namespace {

constexpr double kSlack = 1e-10;

double spec_entropy(const TripleSpec& spec) {
  GramMatrix g = canonical_gram(spec);
  Spectrum s = eigh(g.matrix(), false);
  return entropy_of_spectrum(s.eigenvalues, LogBase::nats).value;
}

double ensemble_entropy(const Ensemble& e) {
  Spectrum s = eigh(gram_matrix(e).matrix(), false);
  return entropy_of_spectrum(s.eigenvalues, LogBase::nats).value;
}

std::array<double, 3> triple_overlaps(const Ensemble& e) {
  const auto o = pairwise_overlaps(e);
  return {o[0][1], o[1][2], o[2][0]};
}

std::vector<std::vector<double>> overlap_deltas(const Ensemble& result, const Ensemble& source) {
  const auto a = pairwise_overlaps(result);
  const auto b = pairwise_overlaps(source);
  std::vector<std::vector<double>> d(a.size(), std::vector<double>(a.size(), 0.0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) d[i][j] = a[i][j] - b[i][j];
  return d;
}

void revalidate(const DeformationReport& report) {
  const bool d1 = report.kind == DeformationKind::d1;
  const PhenomenonReport check = d1 ? verify_phenomenon(report.result, report.source)
                                    : verify_phenomenon(report.source, report.result);
  if (!check.dominance || check.entropy_order != 1) {
    throw Error("deformation report failed self-validation");
  }
}

}  // namespace

MultiplierMatrix MultiplierMatrix::from_matrix(HermitianMatrix m) {
  const std::size_t n = m.dim();
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(m(i, i) - Complex{1.0, 0.0}) > 1e-12) {
      throw R2Violation("multiplier diagonal entry " + std::to_string(i) + " is not 1");
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(m(i, j)) > 1.0 + 1e-12) {
        throw R2Violation("multiplier entry modulus exceeds 1");
      }
    }
  }
  return MultiplierMatrix(std::move(m));
}

HermitianMatrix hadamard(const GramMatrix& g, const MultiplierMatrix& r) {
  if (g.dim() != r.dim()) throw DimensionMismatch("hadamard operands differ in dimension");
  const std::size_t n = g.dim();
  HermitianMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.set(i, i, Complex{g(i, i).real(), 0.0});
    for (std::size_t j = i + 1; j < n; ++j) out.set(i, j, g(i, j) * r(i, j));
  }
  return out;
}

MultiplierMatrix phase_multiplier(double phi) {
  HermitianMatrix m(3);
  for (std::size_t i = 0; i < 3; ++i) {
    m.set(i, i, Complex{1.0, 0.0});
    for (std::size_t j = i + 1; j < 3; ++j) m.set(i, j, Complex{1.0, 0.0});
  }
  m.set(1, 2, std::polar(1.0, phi));
  return MultiplierMatrix::from_matrix(std::move(m));
}

MultiplierExtraction extract_multiplier(const GramMatrix& g, const GramMatrix& gt) {
  if (g.dim() != gt.dim()) throw DimensionMismatch("gram matrices differ in dimension");
  const std::size_t n = g.dim();
  HermitianMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(g(i, i).real() - gt(i, i).real()) > 1e-9) {
      throw DiagonalMismatch("diagonals differ at entry " + std::to_string(i));
    }
    m.set(i, i, Complex{1.0, 0.0});
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(g(i, j)) > 1e-12) {
        const Complex r = gt(i, j) / g(i, j);
        if (std::abs(r) > 1.0 + 1e-9) {
          std::ostringstream os;
          os << "multiplier modulus " << std::abs(r) << " at (" << i << "," << j << ")";
          throw R2Violation(os.str());
        }
        m.set(i, j, r);
      } else if (std::abs(gt(i, j)) > 1e-10) {
        std::ostringstream os;
        os << "overlap (" << i << "," << j << ") raised from zero to " << std::abs(gt(i, j));
        throw OverlapIncreaseFromZero(os.str());
      } else {
        m.set(i, j, Complex{1.0, 0.0});
      }
    }
  }
  MultiplierExtraction out{MultiplierMatrix::from_matrix(std::move(m)), 0.0};
  out.min_eigenvalue = min_eigenvalue(out.r.matrix());
  return out;
}

PhenomenonReport verify_phenomenon(const Ensemble& e, const Ensemble& other) {
  if (e.size() != other.size()) throw ShapeMismatch("ensembles differ in state count");
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (std::abs(e.probs[i] - other.probs[i]) > 1e-10) {
      throw ShapeMismatch("probabilities differ at entry " + std::to_string(i));
    }
  }
  const auto oe = pairwise_overlaps(e);
  const auto oo = pairwise_overlaps(other);
  bool dominance = true;
  for (std::size_t i = 0; i < e.size() && dominance; ++i) {
    for (std::size_t j = i + 1; j < e.size(); ++j) {
      if (oo[i][j] > oe[i][j] + kSlack) {
        dominance = false;
        break;
      }
    }
  }
  PhenomenonReport rep;
  rep.dominance = dominance;
  rep.entropy_first = ensemble_entropy(e);
  rep.entropy_second = ensemble_entropy(other);
  const double diff = rep.entropy_first - rep.entropy_second;
  rep.entropy_order = diff > kSlack ? 1 : (diff < -kSlack ? -1 : 0);
  return rep;
}

DeformationReport deform_theorem2(const Ensemble& e, DeformationKind kind,
                                  std::optional<double> eta, double delta) {
  if (e.size() != 3) throw ShapeMismatch("deformation needs exactly three states");
  const GramMatrix g = gram_matrix(e);
  if (min_eigenvalue(g.matrix()) <= 1e-8) {
    throw RankDeficient("gram matrix is not full rank");
  }
  const std::array<double, 3> a0 = triple_overlaps(e);
  for (double a : a0) {
    if (a <= 1e-12 || a >= 1.0 - 1e-12) {
      throw MethodInapplicable("method needs all overlaps strictly inside (0,1)");
    }
  }
  const double xi0 = triple_phase(e, 0, 1, 2);
  const double xm0 = *max_phase(a0[0], a0[1], a0[2]);
  const double step = eta.value_or(0.05 * xm0);
  const double sign0 = xi0 >= 0.0 ? 1.0 : -1.0;

  double xi1;
  if (kind == DeformationKind::d1) {
    if (std::abs(xi0) < 1e-12) {
      throw MethodInapplicable("triple phase is zero: the phase move cannot raise the entropy");
    }
    xi1 = sign0 * std::max(std::abs(xi0) - step, 0.0);
  } else {
    if (std::abs(xi0) > std::numbers::pi - 1e-12) {
      throw MethodInapplicable("triple phase is pi: the phase move cannot lower the entropy");
    }
    xi1 = sign0 * std::min(std::abs(xi0) + step, xm0);
  }

  std::array<double, 3> probs{e.probs[0], e.probs[1], e.probs[2]};
  const double s0 = ensemble_entropy(e);

  double scale = delta;
  for (int attempt = 0; attempt <= 40; ++attempt, scale *= 0.5) {
    const double f = kind == DeformationKind::d1 ? 1.0 + scale : 1.0 - scale;
    const std::array<double, 3> a1{a0[0] * f, a0[1] * f, a0[2] * f};
    if (a1[0] > 1.0 || a1[1] > 1.0 || a1[2] > 1.0) continue;
    bool meaningful = true;
    for (int k = 0; k < 3; ++k) meaningful = meaningful && std::abs(a1[k] - a0[k]) > kSlack;
    if (!meaningful) break;
    const std::optional<double> xm1 = max_phase(a1[0], a1[1], a1[2]);
    if (!xm1 || std::abs(xi1) > *xm1) continue;

    const TripleSpec spec{a1[0], a1[1], a1[2], xi1, probs};
    const double s1 = spec_entropy(spec);
    const bool ok = kind == DeformationKind::d1 ? s1 > s0 + kSlack : s1 < s0 - kSlack;
    if (!ok) continue;

    DeformationReport report;
    report.kind = kind;
    report.method = DeformationMethod::xi_shift;
    report.source = e;
    report.result = construct_triple(spec);
    report.overlap_deltas = overlap_deltas(report.result, report.source);
    report.entropy_delta = s1 - s0;
    revalidate(report);
    return report;
  }
  throw MethodInapplicable("no overlap scale keeps the entropy direction of the phase move");
}

std::optional<DeformationReport> search_deformation(const Ensemble& e, DeformationKind kind,
                                                    std::size_t budget, const SearchConfig& config) {
  if (e.size() != 3) throw ShapeMismatch("search needs exactly three states");
  const std::array<double, 3> a0 = triple_overlaps(e);
  double xi0 = 0.0;
  if (a0[0] > 1e-12 && a0[1] > 1e-12 && a0[2] > 1e-12) xi0 = triple_phase(e, 0, 1, 2);
  const double sign0 = xi0 >= 0.0 ? 1.0 : -1.0;
  const bool planar = config.restrict_planar || e.dim == 2;
  const bool d1 = kind == DeformationKind::d1;

  const std::array<double, 3> probs{e.probs[0], e.probs[1], e.probs[2]};
  const double s0 = ensemble_entropy(e);

  std::mt19937_64 rng(config.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  std::array<double, 3> cur_a = a0;
  double cur_xi = xi0;
  double cur_s = s0;
  double temperature = config.initial_temperature;
  double step = config.initial_step;

  for (std::size_t it = 0; it < budget; ++it) {
    std::array<double, 3> prop_a;
    for (int k = 0; k < 3; ++k) {
      const double lo = d1 ? a0[k] : 0.0;
      const double hi = d1 ? 1.0 : a0[k];
      prop_a[k] = std::clamp(cur_a[k] + step * gauss(rng), lo, hi);
    }
    double prop_xi = planar ? 0.0 : cur_xi + step * gauss(rng);

    temperature *= config.decay;
    step = std::max(step * config.decay, 1e-3);

    const std::optional<double> xm = max_phase(prop_a[0], prop_a[1], prop_a[2]);
    if (!xm) continue;  // proposal left the feasible set, evaluation spent
    prop_xi = planar ? sign0 * *xm : std::clamp(prop_xi, -*xm, *xm);

    const TripleSpec spec{prop_a[0], prop_a[1], prop_a[2], prop_xi, probs};
    const double s = spec_entropy(spec);
    const bool better = d1 ? s > cur_s : s < cur_s;
    if (better || unif(rng) < std::exp(-std::abs(s - cur_s) / std::max(temperature, 1e-12))) {
      cur_a = prop_a;
      cur_xi = prop_xi;
      cur_s = s;
    }

    bool strict = true;
    for (int k = 0; k < 3; ++k) {
      strict = strict && (d1 ? cur_a[k] > a0[k] + kSlack : cur_a[k] < a0[k] - kSlack);
    }
    const bool improved = d1 ? cur_s > s0 + kSlack : cur_s < s0 - kSlack;
    if (strict && improved) {
      DeformationReport report;
      report.kind = kind;
      report.method = DeformationMethod::search;
      report.source = e;
      report.result = construct_triple(TripleSpec{cur_a[0], cur_a[1], cur_a[2], cur_xi, probs});
      report.overlap_deltas = overlap_deltas(report.result, report.source);
      report.entropy_delta = cur_s - s0;
      report.seed = config.seed;
      revalidate(report);
      return report;
    }
  }
  return std::nullopt;
}

namespace {

std::array<Complex, 2> bloch_state(const std::array<double, 3>& n) {
  const double theta = std::acos(std::clamp(n[2], -1.0, 1.0));
  const double phi = std::atan2(n[1], n[0]);
  return {Complex{std::cos(theta / 2.0), 0.0}, std::polar(std::sin(theta / 2.0), phi)};
}

std::array<Complex, 2> bloch_state_flipped(const std::array<double, 3>& n) {
  const double theta = std::acos(std::clamp(n[2], -1.0, 1.0));
  const double phi = std::atan2(n[1], n[0]);
  return {Complex{std::sin(theta / 2.0), 0.0}, -std::polar(std::cos(theta / 2.0), phi)};
}

std::vector<Complex> kron2(const std::array<Complex, 2>& a, const std::array<Complex, 2>& b) {
  return {a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]};
}

}  // namespace

std::pair<Ensemble, Ensemble> spin_flip_pair(const std::vector<std::array<double, 3>>& bloch,
                                             const std::vector<double>& probs) {
  std::vector<std::vector<Complex>> parallel, flipped;
  for (std::size_t i = 0; i < bloch.size(); ++i) {
    const auto& n = bloch[i];
    const double len = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
    if (std::abs(len - 1.0) > 1e-10) {
      throw NonUnitVector("bloch vector " + std::to_string(i) + " has length " + std::to_string(len));
    }
    const auto q = bloch_state(n);
    parallel.push_back(kron2(q, q));
    flipped.push_back(kron2(q, bloch_state_flipped(n)));
  }
  return {Ensemble::create(4, std::move(parallel), probs),
          Ensemble::create(4, std::move(flipped), probs)};
}

std::vector<ProbeRow> planar_boundary_probe(const TripleSpec& spec, std::span<const double> eps_grid,
                                            std::size_t directions_per_eps, std::uint64_t seed) {
  if (spec.a12 >= 1.0 - 1e-12) throw NotPlanar("probe needs a12 < 1");
  const double z2 = spec.feasibility() / (1.0 - spec.a12 * spec.a12);
  if (z2 >= 1e-12) {
    throw NotPlanar("spec is interior to the feasible set, z^2 = " + std::to_string(z2));
  }
  const Ensemble base = construct_triple(spec);
  const double s0 = ensemble_entropy(base);
  const std::array<double, 3> a0{spec.a12, spec.a23, spec.a31};

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  std::vector<ProbeRow> rows;
  rows.reserve(eps_grid.size() * directions_per_eps);
  for (double eps : eps_grid) {
    for (std::size_t d = 0; d < directions_per_eps; ++d) {
      if (eps == 0.0) {
        rows.push_back(ProbeRow{0.0, 0.0, {0.0, 0.0, 0.0}});
        continue;
      }
      // joint direction over the three states, out-of-plane fraction >= 0.1
      std::array<std::array<Complex, 3>, 3> dir;
      while (true) {
        double total = 0.0;
        for (auto& row : dir) {
          for (Complex& x : row) {
            x = Complex{gauss(rng), gauss(rng)};
            total += std::norm(x);
          }
        }
        total = std::sqrt(total);
        double out = 0.0;
        for (auto& row : dir) {
          for (Complex& x : row) x /= total;
        }
        for (const auto& row : dir) out += std::norm(row[2]);
        if (std::sqrt(out) >= 0.1) break;
      }

      std::vector<std::vector<Complex>> pert = base.states;
      for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t k = 0; k < 3; ++k) pert[i][k] += eps * dir[i][k];
        const double len = norm(pert[i]);
        for (Complex& x : pert[i]) x /= len;
      }

      const Complex chain = inner(pert[0], pert[1]) * inner(pert[1], pert[2]) * inner(pert[2], pert[0]);
      const double xi_pert = std::abs(chain) > 1e-15 ? std::arg(chain) : 0.0;
      const std::array<double, 3> a_pert{std::abs(inner(pert[0], pert[1])),
                                         std::abs(inner(pert[1], pert[2])),
                                         std::abs(inner(pert[2], pert[0]))};

      std::array<double, 3> shrunk;
      for (int k = 0; k < 3; ++k) shrunk[k] = std::min(a_pert[k], a0[k]) * (1.0 - eps * eps);
      const std::optional<double> xm = max_phase(shrunk[0], shrunk[1], shrunk[2]);
      if (!xm) throw Error("probe overlaps left the feasible set; eps too large");
      const double xi_new = (xi_pert >= 0.0 ? 1.0 : -1.0) * std::min(std::abs(xi_pert), *xm);

      const double s1 = spec_entropy(TripleSpec{shrunk[0], shrunk[1], shrunk[2], xi_new, spec.probs});
      ProbeRow row;
      row.eps = eps;
      row.delta_s = s1 - s0;
      for (int k = 0; k < 3; ++k) row.overlap_deltas[k] = shrunk[k] - a0[k];
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace qgram
