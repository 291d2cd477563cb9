#include "qgram/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace qgram {

namespace {

constexpr double kClamp = 1e-10;

double plogp_sum(std::span<const double> values, double clamp_tol, const char* what) {
  double s = 0.0;
  for (double v : values) {
    if (v < -clamp_tol) {
      std::ostringstream os;
      os << what << " has negative value " << v;
      throw NotPositive(os.str());
    }
    if (v > 0.0) s -= v * std::log(v);
  }
  return s;
}

}  // namespace

EntropyValue entropy_of_spectrum(std::span<const double> eigenvalues, LogBase base) {
  double nats = plogp_sum(eigenvalues, kClamp, "spectrum");
  nats = std::max(nats, 0.0);
  if (base == LogBase::bits) return {nats / std::numbers::ln2, LogBase::bits};
  return {nats, LogBase::nats};
}

EntropyValue von_neumann_entropy(const HermitianMatrix& rho, LogBase base) {
  const double tr = trace_power(rho, 1);
  if (std::abs(tr - 1.0) > 1e-9) {
    throw TraceNotOne("trace is " + std::to_string(tr));
  }
  Spectrum spec = eigh(rho, false);
  return entropy_of_spectrum(spec.eigenvalues, base);
}

EntropyValue shannon_entropy(std::span<const double> probs, LogBase base) {
  double sum = 0.0;
  for (double p : probs) {
    if (p < -1e-12) throw InvalidDistribution("negative probability " + std::to_string(p));
    sum += std::max(p, 0.0);
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw InvalidDistribution("probabilities sum to " + std::to_string(sum));
  }
  double nats = 0.0;
  for (double p : probs) {
    if (p > 0.0) nats -= p * std::log(p);
  }
  if (base == LogBase::bits) return {nats / std::numbers::ln2, LogBase::bits};
  return {nats, LogBase::nats};
}

double linearized_entropy(const Ensemble& e) {
  const HermitianMatrix rho = density_matrix(e);
  const double via_trace = trace_power(rho, 1) - trace_power(rho, 2);

  double psq = 0.0;
  for (double p : e.probs) psq += p * p;
  double cross = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (std::size_t j = i + 1; j < e.size(); ++j) {
      cross += e.probs[i] * e.probs[j] * std::norm(inner(e.states[i], e.states[j]));
    }
  }
  const double via_overlaps = (1.0 - psq) - 2.0 * cross;

  if (std::abs(via_trace - via_overlaps) > 1e-10) {
    std::ostringstream os;
    os << "linearized entropy routes disagree: " << via_trace << " vs " << via_overlaps;
    throw Error(os.str());
  }
  return via_trace;
}

namespace {

constexpr double kThird = 1.0 / 3.0;
const double kRadial = std::sqrt(2.0 / 3.0);

}  // namespace

SimplexPoint simplex_to_polar(const std::array<double, 3>& lambdas) {
  double sum = 0.0;
  for (double l : lambdas) {
    if (l < -1e-12) throw OutsideSimplex("negative coordinate " + std::to_string(l));
    sum += l;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw OutsideSimplex("coordinates sum to " + std::to_string(sum));
  }

  std::array<int, 3> idx{0, 1, 2};
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int a, int b) { return lambdas[a] > lambdas[b]; });
  const double s1 = lambdas[idx[0]], s2 = lambdas[idx[1]], s3 = lambdas[idx[2]];

  // chart slots (lambda1, lambda2, lambda3) = (s1, s3, s2): in [0, pi/3] the
  // chart's first coordinate is largest and its second is smallest
  const double x = (s1 - kThird) / kRadial;
  const double y = (s2 - s3) / std::numbers::sqrt2;
  const double r = std::hypot(x, y);
  const double theta = r > 0.0 ? std::max(std::atan2(y, x), 0.0) : 0.0;

  SimplexPoint p;
  p.lambdas = {s1, s3, s2};
  p.permutation = {idx[0], idx[2], idx[1]};
  p.r = r;
  p.theta = theta;
  return p;
}

SimplexPoint polar_to_simplex(double r, double theta) {
  SimplexPoint p;
  p.r = r;
  p.theta = theta;
  for (int k = 0; k < 3; ++k) {
    const double l = kThird + kRadial * r * std::cos(theta + k * 2.0 * std::numbers::pi / 3.0);
    if (l < -1e-12) {
      throw OutsideSimplex("coordinate " + std::to_string(k) + " is " + std::to_string(l));
    }
    p.lambdas[k] = std::max(l, 0.0);
  }
  return p;
}

double trace_cubed_polar(double r, double theta) {
  polar_to_simplex(r, theta);  // domain check
  return 1.0 / 9.0 + r * r + r * r * r * std::cos(3.0 * theta) / std::sqrt(6.0);
}

}  // namespace qgram
