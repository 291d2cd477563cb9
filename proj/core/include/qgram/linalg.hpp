#ifndef QGRAM_LINALG_HPP
#define QGRAM_LINALG_HPP

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "qgram/errors.hpp"

namespace qgram {

using Complex = std::complex<double>;

/// Dense Hermitian matrix, row-major storage. Entries are kept exactly
/// Hermitian: mutation goes through set(), which writes both (i,j) and (j,i).
class HermitianMatrix {
 public:
  explicit HermitianMatrix(std::size_t dim);

  /// Validates hermiticity of a raw row-major buffer within `tol`
  /// (throws NonHermitianInput) and stores the symmetrized average.
  static HermitianMatrix from_entries(std::size_t dim, const std::vector<Complex>& row_major,
                                      double tol = 1e-9);

  static HermitianMatrix identity(std::size_t dim);

  std::size_t dim() const { return dim_; }

  Complex operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }

  /// Sets (i,j) = v and (j,i) = conj(v); for i == j the imaginary part must
  /// vanish within 1e-12.
  void set(std::size_t i, std::size_t j, Complex v);

  const std::vector<Complex>& data() const { return data_; }

  double max_abs_diff(const HermitianMatrix& other) const;
  double frobenius_norm() const;

 private:
  std::size_t dim_;
  std::vector<Complex> data_;
};

/// Eigenvalues in descending order, with optional orthonormal eigenvectors
/// (row-major n x n; column k pairs with eigenvalues[k]).
struct Spectrum {
  std::vector<double> eigenvalues;
  std::optional<std::vector<Complex>> eigenvectors;

  Complex vector_entry(std::size_t i, std::size_t k) const {
    return (*eigenvectors)[i * eigenvalues.size() + k];
  }
};

/// Cyclic Jacobi eigensolver for complex Hermitian matrices. Fixed sweep
/// order, terminates when the off-diagonal Frobenius norm drops below 1e-13,
/// so results are bit-stable per platform for identical input.
Spectrum eigh(const HermitianMatrix& h, bool with_vectors = true);

double min_eigenvalue(const HermitianMatrix& h);

/// Hermitian B with B*B = A for positive semidefinite A. Eigenvalues in
/// [-1e-10, 0) are clamped to zero; anything below throws NotPositive.
HermitianMatrix psd_sqrt(const HermitianMatrix& a);

/// Real determinant of a 3x3 Hermitian matrix via cofactor expansion.
double det3(const HermitianMatrix& h);

/// Tr H^k for k in {1,2,3} by direct entry sums (no eigendecomposition).
double trace_power(const HermitianMatrix& h, int k);

}  // namespace qgram

#endif
