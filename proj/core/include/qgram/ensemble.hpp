#ifndef QGRAM_ENSEMBLE_HPP
#define QGRAM_ENSEMBLE_HPP

#include <cstddef>
#include <vector>

#include "qgram/linalg.hpp"

namespace qgram {

/// <a|b>, antilinear in the first argument.
Complex inner(const std::vector<Complex>& a, const std::vector<Complex>& b);

double norm(const std::vector<Complex>& v);

/// Pure states with prior probabilities. States have unit norm, probabilities
/// are nonnegative and sum to one; zero-probability entries are allowed and
/// contribute nothing to the density or Gram matrix.
struct Ensemble {
  std::size_t dim = 0;
  std::vector<std::vector<Complex>> states;
  std::vector<double> probs;

  static Ensemble create(std::size_t dim, std::vector<std::vector<Complex>> states,
                         std::vector<double> probs, double tol = 1e-10);

  std::size_t size() const { return states.size(); }
};

HermitianMatrix density_matrix(const Ensemble& e);

/// Positive unit-trace matrix of rescaled inner products sqrt(p_i p_j) <psi_i|psi_j>.
class GramMatrix {
 public:
  static GramMatrix from_matrix(HermitianMatrix m);

  const HermitianMatrix& matrix() const { return m_; }
  std::size_t dim() const { return m_.dim(); }
  Complex operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

 private:
  explicit GramMatrix(HermitianMatrix m) : m_(std::move(m)) {}
  HermitianMatrix m_;
};

GramMatrix gram_matrix(const Ensemble& e);

/// Joint system/auxiliary state sum_i sqrt(p_i) |psi_i>|e_i>;
/// amplitudes[s * aux_dim + i] is the coefficient of |s>|e_i>.
struct PurifiedState {
  std::size_t system_dim = 0;
  std::size_t aux_dim = 0;
  std::vector<Complex> amplitudes;
};

PurifiedState purify(const Ensemble& e);

/// Reduction over the auxiliary factor: reproduces density_matrix exactly.
HermitianMatrix partial_trace_aux(const PurifiedState& p);

/// Reduction over the system factor. The auxiliary basis is fixed so that the
/// result reproduces gram_matrix entrywise (not just up to transposition).
HermitianMatrix partial_trace_system(const PurifiedState& p);

/// Realizes any positive unit-trace matrix as the Gram matrix of an ensemble:
/// probabilities from the diagonal, states from the normalized columns of the
/// positive square root. Zero-diagonal entries become basis states of
/// probability zero.
Ensemble gram_to_ensemble(const HermitianMatrix& a);

/// Unitary U (row-major d x d, d = max of the two dimensions) mapping the
/// states of e1 to the states of e2, given equal Gram matrices. Built by
/// orthonormalizing both state lists in the same dependency order and mapping
/// basis to basis, extended by a completion on the orthogonal complement.
std::vector<Complex> recover_unitary(const Ensemble& e1, const Ensemble& e2);

/// Symmetric matrix of |<psi_i|psi_j>|, unit diagonal.
std::vector<std::vector<double>> pairwise_overlaps(const Ensemble& e);

}  // namespace qgram

#endif
