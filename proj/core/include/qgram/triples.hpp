#ifndef QGRAM_TRIPLES_HPP
#define QGRAM_TRIPLES_HPP

#include <array>
#include <optional>
#include <ostream>
#include <span>

#include "qgram/ensemble.hpp"
#include "qgram/entropy.hpp"

namespace qgram {

/// Three-state family at fixed pairwise overlaps: the phase xi of the cyclic
/// triple product selects one member up to unitary equivalence. Feasible when
/// 1 + 2 a12 a23 a31 cos(xi) >= a12^2 + a23^2 + a31^2.
struct TripleSpec {
  double a12 = 0.0;
  double a23 = 0.0;
  double a31 = 0.0;
  double xi = 0.0;
  std::array<double, 3> probs{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};

  /// Left-hand side minus right-hand side of the feasibility inequality.
  double feasibility() const;
};

/// Largest xi in [0, pi] compatible with the overlaps; pi when every phase
/// works, nullopt when none does.
std::optional<double> max_phase(double a12, double a23, double a31);

/// Canonical three states in d = 3 realizing the spec: gauge with
/// <psi1|psi2>, <psi1|psi3> real nonnegative and the |2> amplitude real >= 0.
Ensemble construct_triple(const TripleSpec& spec);

/// Cyclic product of inner products over an index chain.
struct ChainValue {
  std::vector<std::size_t> indices;
  Complex value;
};

ChainValue chain_invariant(const Ensemble& e, std::span<const std::size_t> indices);

/// Phase of the cyclic triple product, in (-pi, pi]. Undefined when any of
/// the three pairwise overlaps vanishes.
double triple_phase(const Ensemble& e, std::size_t i, std::size_t j, std::size_t k);

/// The gauge-fixed Gram matrix of the family: real nonnegative (1,2) and
/// (1,3) entries, phase on the (2,3) entry.
GramMatrix canonical_gram(const TripleSpec& spec);

struct SweepRow {
  double xi = 0.0;
  Spectrum spectrum;
  double entropy_nats = 0.0;
  double trace_g3 = 0.0;
};

/// Closed uniform grid over xi in [0, max_phase]; overlaps stay constant and
/// the entropy is non-increasing along the grid.
std::vector<SweepRow> phase_sweep(double a12, double a23, double a31,
                                  const std::array<double, 3>& probs, std::size_t steps);

/// CSV with header xi,lambda1,lambda2,lambda3,entropy_nats,trace_g3 and
/// 12 significant digits per value.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace qgram

#endif
