#include "qgram/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace qgram {

namespace {

bool finite(Complex v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

}  // namespace

HermitianMatrix::HermitianMatrix(std::size_t dim) : dim_(dim), data_(dim * dim, Complex{0.0, 0.0}) {}

HermitianMatrix HermitianMatrix::from_entries(std::size_t dim, const std::vector<Complex>& row_major,
                                              double tol) {
  if (row_major.size() != dim * dim) {
    throw DimensionMismatch("entry buffer does not match dimension " + std::to_string(dim));
  }
  HermitianMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      Complex v = row_major[i * dim + j];
      if (!finite(v)) {
        throw NonHermitianInput("non-finite entry at (" + std::to_string(i) + "," + std::to_string(j) + ")");
      }
      if (j < i) continue;
      Complex w = row_major[j * dim + i];
      if (std::abs(v - std::conj(w)) > tol) {
        std::ostringstream os;
        os << "hermiticity violated at (" << i << "," << j << ") by " << std::abs(v - std::conj(w));
        throw NonHermitianInput(os.str());
      }
      Complex avg = (v + std::conj(w)) * 0.5;
      if (i == j) avg = Complex{avg.real(), 0.0};
      m.data_[i * dim + j] = avg;
      m.data_[j * dim + i] = std::conj(avg);
    }
  }
  return m;
}

HermitianMatrix HermitianMatrix::identity(std::size_t dim) {
  HermitianMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m.data_[i * dim + i] = Complex{1.0, 0.0};
  return m;
}

void HermitianMatrix::set(std::size_t i, std::size_t j, Complex v) {
  if (i >= dim_ || j >= dim_) throw IndexOutOfRange("matrix index out of range");
  if (!finite(v)) throw NonHermitianInput("non-finite entry");
  if (i == j) {
    if (std::abs(v.imag()) > 1e-12) throw NonHermitianInput("diagonal entry has imaginary part");
    data_[i * dim_ + i] = Complex{v.real(), 0.0};
    return;
  }
  data_[i * dim_ + j] = v;
  data_[j * dim_ + i] = std::conj(v);
}

double HermitianMatrix::max_abs_diff(const HermitianMatrix& other) const {
  if (other.dim_ != dim_) throw DimensionMismatch("dimension mismatch in max_abs_diff");
  double m = 0.0;
  for (std::size_t k = 0; k < data_.size(); ++k) m = std::max(m, std::abs(data_[k] - other.data_[k]));
  return m;
}

double HermitianMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const Complex& v : data_) s += std::norm(v);
  return std::sqrt(s);
}

namespace {

double off_diagonal_norm(const std::vector<Complex>& a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) s += std::norm(a[i * n + j]);
  return std::sqrt(s);
}

constexpr double kOffTolerance = 1e-13;
constexpr int kMaxSweeps = 64;

}  // namespace

Spectrum eigh(const HermitianMatrix& h, bool with_vectors) {
  const std::size_t n = h.dim();
  std::vector<Complex> a = h.data();
  std::vector<Complex> v;
  if (with_vectors) {
    v.assign(n * n, Complex{0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) v[i * n + i] = Complex{1.0, 0.0};
  }

  for (int sweep = 0; sweep < kMaxSweeps && n > 1; ++sweep) {
    if (off_diagonal_norm(a, n) < kOffTolerance) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex g = a[p * n + q];
        if (std::abs(g) < 1e-300) continue;
        const double alpha = a[p * n + p].real();
        const double beta = a[q * n + q].real();
        const double phi = std::arg(g);
        const double theta = 0.5 * std::atan2(2.0 * std::abs(g), alpha - beta);
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        const Complex eph = std::polar(1.0, -phi);
        // 2x2 unitary [[c, -s], [s e^{-i phi}, c e^{-i phi}]] zeroing a_pq
        const Complex upp{c, 0.0}, upq{-s, 0.0};
        const Complex uqp = s * eph, uqq = c * eph;

        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a[k * n + p], akq = a[k * n + q];
          a[k * n + p] = akp * upp + akq * uqp;
          a[k * n + q] = akp * upq + akq * uqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a[p * n + k], aqk = a[q * n + k];
          a[p * n + k] = std::conj(upp) * apk + std::conj(uqp) * aqk;
          a[q * n + k] = std::conj(upq) * apk + std::conj(uqq) * aqk;
        }
        a[p * n + q] = Complex{0.0, 0.0};
        a[q * n + p] = Complex{0.0, 0.0};
        a[p * n + p] = Complex{a[p * n + p].real(), 0.0};
        a[q * n + q] = Complex{a[q * n + q].real(), 0.0};
        if (with_vectors) {
          for (std::size_t k = 0; k < n; ++k) {
            const Complex vkp = v[k * n + p], vkq = v[k * n + q];
            v[k * n + p] = vkp * upp + vkq * uqp;
            v[k * n + q] = vkp * upq + vkq * uqq;
          }
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a[x * n + x].real() > a[y * n + y].real(); });

  Spectrum spec;
  spec.eigenvalues.resize(n);
  for (std::size_t k = 0; k < n; ++k) spec.eigenvalues[k] = a[order[k] * n + order[k]].real();
  if (with_vectors) {
    std::vector<Complex> sorted(n * n);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i) sorted[i * n + k] = v[i * n + order[k]];
    spec.eigenvectors = std::move(sorted);
  }
  return spec;
}

double min_eigenvalue(const HermitianMatrix& h) {
  Spectrum s = eigh(h, false);
  return s.eigenvalues.back();
}

HermitianMatrix psd_sqrt(const HermitianMatrix& a) {
  const std::size_t n = a.dim();
  Spectrum spec = eigh(a, true);
  std::vector<double> roots(n);
  for (std::size_t k = 0; k < n; ++k) {
    double lambda = spec.eigenvalues[k];
    if (lambda < -1e-10) {
      throw NotPositive("matrix has eigenvalue " + std::to_string(lambda));
    }
    roots[k] = std::sqrt(std::max(lambda, 0.0));
  }
  const std::vector<Complex>& v = *spec.eigenvectors;
  HermitianMatrix b(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      Complex s{0.0, 0.0};
      for (std::size_t k = 0; k < n; ++k) s += v[i * n + k] * roots[k] * std::conj(v[j * n + k]);
      b.set(i, j, i == j ? Complex{s.real(), 0.0} : s);
    }
  }
  return b;
}

double det3(const HermitianMatrix& h) {
  if (h.dim() != 3) throw DimensionMismatch("det3 requires a 3x3 matrix");
  const Complex a = h(0, 0), b = h(0, 1), c = h(0, 2);
  const Complex d = h(1, 0), e = h(1, 1), f = h(1, 2);
  const Complex g = h(2, 0), i = h(2, 1), j = h(2, 2);
  const Complex det = a * (e * j - f * i) - b * (d * j - f * g) + c * (d * i - e * g);
  if (std::abs(det.imag()) > 1e-10) {
    throw NonHermitianInput("det3 imaginary residue " + std::to_string(det.imag()));
  }
  return det.real();
}

double trace_power(const HermitianMatrix& h, int k) {
  const std::size_t n = h.dim();
  Complex t{0.0, 0.0};
  switch (k) {
    case 1:
      for (std::size_t i = 0; i < n; ++i) t += h(i, i);
      break;
    case 2:
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) t += h(i, j) * h(j, i);
      break;
    case 3:
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t l = 0; l < n; ++l) t += h(i, j) * h(j, l) * h(l, i);
      break;
    default:
      throw DimensionMismatch("trace_power supports k in {1,2,3}");
  }
  if (std::abs(t.imag()) > 1e-10) {
    throw NonHermitianInput("trace_power imaginary residue " + std::to_string(t.imag()));
  }
  return t.real();
}

}  // namespace qgram
