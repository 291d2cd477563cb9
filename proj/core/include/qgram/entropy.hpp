#ifndef QGRAM_ENTROPY_HPP
#define QGRAM_ENTROPY_HPP

#include <array>
#include <span>

#include "qgram/ensemble.hpp"
#include "qgram/linalg.hpp"

namespace qgram {

enum class LogBase { nats, bits };

struct EntropyValue {
  double value = 0.0;
  LogBase base = LogBase::nats;
};

/// -sum lambda log lambda over a clamped eigenvalue list; 0 log 0 = 0.
/// Eigenvalues in [-1e-10, 0) count as zero, anything below throws NotPositive.
EntropyValue entropy_of_spectrum(std::span<const double> eigenvalues, LogBase base = LogBase::nats);

/// Von Neumann entropy of a positive unit-trace matrix.
EntropyValue von_neumann_entropy(const HermitianMatrix& rho, LogBase base = LogBase::nats);

EntropyValue shannon_entropy(std::span<const double> probs, LogBase base = LogBase::nats);

/// Tr(rho - rho^2), evaluated both from the density matrix traces and from
/// the explicit probability/overlap formula; the two routes must agree.
double linearized_entropy(const Ensemble& e);

/// Point of the three-outcome probability simplex in both charts. The polar
/// chart is centered at (1/3,1/3,1/3); lambdas are stored in the chart order
/// reproduced by polar coordinates, with `permutation` mapping chart slots
/// back to the caller's input slots (lambdas[k] == input[permutation[k]]).
struct SimplexPoint {
  std::array<double, 3> lambdas{};
  double r = 0.0;
  double theta = 0.0;
  std::array<int, 3> permutation{0, 1, 2};
};

/// Canonicalizes theta into [0, pi/3] by descending eigenvalue sort.
SimplexPoint simplex_to_polar(const std::array<double, 3>& lambdas);

SimplexPoint polar_to_simplex(double r, double theta);

/// Sum of cubes on the simplex as a function of the polar chart:
/// 1/9 + r^2 + r^3 cos(3 theta) / sqrt(6).
double trace_cubed_polar(double r, double theta);

}  // namespace qgram

#endif
