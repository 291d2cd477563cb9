#ifndef QGRAM_DEFORM_HPP
#define QGRAM_DEFORM_HPP

#include <cstdint>
#include <optional>
#include <utility>

#include "qgram/ensemble.hpp"
#include "qgram/triples.hpp"

namespace qgram {

/// Hermitian multiplier with unit diagonal and entrywise modulus at most one;
/// relates the Gram matrices of two ensembles with the same probabilities.
class MultiplierMatrix {
 public:
  static MultiplierMatrix from_matrix(HermitianMatrix m);

  const HermitianMatrix& matrix() const { return m_; }
  std::size_t dim() const { return m_.dim(); }
  Complex operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

 private:
  explicit MultiplierMatrix(HermitianMatrix m) : m_(std::move(m)) {}
  HermitianMatrix m_;
};

/// Entrywise (Schur) product; preserves the diagonal of g.
HermitianMatrix hadamard(const GramMatrix& g, const MultiplierMatrix& r);

/// The 3x3 phase multiplier with e^{i phi} on the (2,3) entry and ones
/// elsewhere; shifts the triple phase of a canonical Gram matrix by phi.
MultiplierMatrix phase_multiplier(double phi);

struct MultiplierExtraction {
  MultiplierMatrix r;
  double min_eigenvalue = 0.0;
};

/// Entrywise quotient gt_ij / g_ij with unit fill-in where g_ij vanishes;
/// validates the multiplier properties and reports its minimum eigenvalue.
MultiplierExtraction extract_multiplier(const GramMatrix& g, const GramMatrix& gt);

/// dominance: every overlap of `other` is <= the matching overlap of `e`
/// (slack 1e-10). entropy_order: sign of S(e) - S(other) at slack 1e-10.
struct PhenomenonReport {
  bool dominance = false;
  int entropy_order = 0;
  double entropy_first = 0.0;   // nats
  double entropy_second = 0.0;  // nats
};

PhenomenonReport verify_phenomenon(const Ensemble& e, const Ensemble& other);

enum class DeformationKind { d1, d2 };
enum class DeformationMethod { xi_shift, search };

struct DeformationReport {
  DeformationKind kind = DeformationKind::d1;
  DeformationMethod method = DeformationMethod::xi_shift;
  Ensemble source;
  Ensemble result;
  std::vector<std::vector<double>> overlap_deltas;
  double entropy_delta = 0.0;  // nats
  std::uint64_t seed = 0;
};

/// Two-phase deformation of a rank-3 triple: move the triple phase toward 0
/// (d1) or toward its maximum (d2), then scale all overlaps up (d1) or down
/// (d2), halving the scale until the entropy keeps the direction set by the
/// phase move. Probabilities are preserved exactly.
DeformationReport deform_theorem2(const Ensemble& e, DeformationKind kind,
                                  std::optional<double> eta = std::nullopt, double delta = 1e-3);

struct SearchConfig {
  double initial_step = 0.1;
  double decay = 0.95;
  double initial_temperature = 0.1;
  std::uint64_t seed = 0;
  /// Keep proposals on the rank-2 (planar) family. Automatically on for
  /// ensembles given in dimension 2, which cannot leave their plane.
  bool restrict_planar = false;
};

/// Annealed random walk over overlap/phase coordinates with the dominance
/// constraint of the requested kind; nullopt after `budget` evaluations is
/// not a nonexistence claim.
std::optional<DeformationReport> search_deformation(const Ensemble& e, DeformationKind kind,
                                                    std::size_t budget,
                                                    const SearchConfig& config = {});

/// Two-qubit ensembles {|n_i>|n_i>} and {|n_i>|-n_i>} from Bloch vectors:
/// identical pairwise overlaps, generally different entropies. The parallel
/// ensemble lives in the three-dimensional symmetric subspace.
std::pair<Ensemble, Ensemble> spin_flip_pair(const std::vector<std::array<double, 3>>& bloch,
                                             const std::vector<double>& probs);

struct ProbeRow {
  double eps = 0.0;
  double delta_s = 0.0;  // nats
  std::array<double, 3> overlap_deltas{0.0, 0.0, 0.0};
};

/// Perturbs a boundary (planar) triple out of its plane by eps per direction,
/// projects the overlaps below their original values with an eps^2-order
/// shrink, and records the entropy change. One row per (eps, direction).
std::vector<ProbeRow> planar_boundary_probe(const TripleSpec& spec, std::span<const double> eps_grid,
                                            std::size_t directions_per_eps, std::uint64_t seed);

}  // namespace qgram

#endif
