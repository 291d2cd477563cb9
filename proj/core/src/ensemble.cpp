#include "qgram/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qgram {

Complex inner(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  Complex s{0.0, 0.0};
  for (std::size_t k = 0; k < a.size(); ++k) s += std::conj(a[k]) * b[k];
  return s;
}

double norm(const std::vector<Complex>& v) {
  double s = 0.0;
  for (const Complex& x : v) s += std::norm(x);
  return std::sqrt(s);
}

Ensemble Ensemble::create(std::size_t dim, std::vector<std::vector<Complex>> states,
                          std::vector<double> probs, double tol) {
  if (states.empty()) throw InvalidEnsemble("ensemble needs at least one state");
  if (states.size() != probs.size()) {
    throw InvalidEnsemble("state count does not match probability count");
  }
  double psum = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (!(probs[i] >= -tol)) {
      std::ostringstream os;
      os << "probability " << i << " is negative: " << probs[i];
      throw InvalidEnsemble(os.str());
    }
    probs[i] = std::max(probs[i], 0.0);
    psum += probs[i];
  }
  if (std::abs(psum - 1.0) > tol) {
    std::ostringstream os;
    os << "probabilities sum to " << psum << ", expected 1";
    throw InvalidEnsemble(os.str());
  }
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i].size() != dim) {
      std::ostringstream os;
      os << "state " << i << " has length " << states[i].size() << ", expected " << dim;
      throw InvalidEnsemble(os.str());
    }
    const double n = norm(states[i]);
    if (std::abs(n - 1.0) > tol) {
      std::ostringstream os;
      os << "state " << i << " has norm " << n << ", expected 1";
      throw InvalidEnsemble(os.str());
    }
  }
  Ensemble e;
  e.dim = dim;
  e.states = std::move(states);
  e.probs = std::move(probs);
  return e;
}

HermitianMatrix density_matrix(const Ensemble& e) {
  HermitianMatrix rho(e.dim);
  for (std::size_t s = 0; s < e.dim; ++s) {
    for (std::size_t t = s; t < e.dim; ++t) {
      Complex v{0.0, 0.0};
      for (std::size_t i = 0; i < e.size(); ++i) {
        v += e.probs[i] * e.states[i][s] * std::conj(e.states[i][t]);
      }
      rho.set(s, t, s == t ? Complex{v.real(), 0.0} : v);
    }
  }
  return rho;
}

GramMatrix GramMatrix::from_matrix(HermitianMatrix m) {
  const double tr = trace_power(m, 1);
  if (std::abs(tr - 1.0) > 1e-10) {
    throw TraceNotOne("gram matrix trace is " + std::to_string(tr));
  }
  const double lo = min_eigenvalue(m);
  if (lo < -1e-10) {
    throw NotPositive("gram matrix has eigenvalue " + std::to_string(lo));
  }
  return GramMatrix(std::move(m));
}

GramMatrix gram_matrix(const Ensemble& e) {
  const std::size_t n = e.size();
  HermitianMatrix g(n);
  for (std::size_t i = 0; i < n; ++i) {
    g.set(i, i, Complex{e.probs[i], 0.0});
    for (std::size_t j = i + 1; j < n; ++j) {
      const double w = std::sqrt(e.probs[i] * e.probs[j]);
      g.set(i, j, w * inner(e.states[i], e.states[j]));
    }
  }
  return GramMatrix::from_matrix(std::move(g));
}

PurifiedState purify(const Ensemble& e) {
  PurifiedState p;
  p.system_dim = e.dim;
  p.aux_dim = e.size();
  p.amplitudes.assign(e.dim * e.size(), Complex{0.0, 0.0});
  for (std::size_t i = 0; i < e.size(); ++i) {
    const double w = std::sqrt(e.probs[i]);
    for (std::size_t s = 0; s < e.dim; ++s) {
      p.amplitudes[s * p.aux_dim + i] = w * e.states[i][s];
    }
  }
  return p;
}

HermitianMatrix partial_trace_aux(const PurifiedState& p) {
  HermitianMatrix rho(p.system_dim);
  for (std::size_t s = 0; s < p.system_dim; ++s) {
    for (std::size_t t = s; t < p.system_dim; ++t) {
      Complex v{0.0, 0.0};
      for (std::size_t i = 0; i < p.aux_dim; ++i) {
        v += p.amplitudes[s * p.aux_dim + i] * std::conj(p.amplitudes[t * p.aux_dim + i]);
      }
      rho.set(s, t, s == t ? Complex{v.real(), 0.0} : v);
    }
  }
  return rho;
}

HermitianMatrix partial_trace_system(const PurifiedState& p) {
  HermitianMatrix g(p.aux_dim);
  for (std::size_t i = 0; i < p.aux_dim; ++i) {
    for (std::size_t j = i; j < p.aux_dim; ++j) {
      Complex v{0.0, 0.0};
      for (std::size_t s = 0; s < p.system_dim; ++s) {
        v += std::conj(p.amplitudes[s * p.aux_dim + i]) * p.amplitudes[s * p.aux_dim + j];
      }
      g.set(i, j, i == j ? Complex{v.real(), 0.0} : v);
    }
  }
  return g;
}

Ensemble gram_to_ensemble(const HermitianMatrix& a) {
  const std::size_t n = a.dim();
  const double tr = trace_power(a, 1);
  if (std::abs(tr - 1.0) > 1e-9) {
    throw TraceNotOne("gram matrix trace is " + std::to_string(tr));
  }
  HermitianMatrix b = psd_sqrt(a);  // throws NotPositive below the clamp window

  std::vector<std::vector<Complex>> states(n, std::vector<Complex>(n, Complex{0.0, 0.0}));
  std::vector<double> probs(n, 0.0);
  double psum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Complex> col(n);
    for (std::size_t s = 0; s < n; ++s) col[s] = b(s, i);
    const double len = norm(col);
    probs[i] = std::max(a(i, i).real(), 0.0);
    if (len > 1e-12) {
      for (std::size_t s = 0; s < n; ++s) states[i][s] = col[s] / len;
    } else {
      states[i][i] = Complex{1.0, 0.0};  // arbitrary fixed basis state, probability 0
      probs[i] = 0.0;
    }
    psum += probs[i];
  }
  for (double& p : probs) p /= psum;
  return Ensemble::create(n, std::move(states), std::move(probs));
}

namespace {

// Two-pass Gram-Schmidt residual against an orthonormal list.
std::vector<Complex> residual(const std::vector<std::vector<Complex>>& basis,
                              std::vector<Complex> v) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& q : basis) {
      const Complex c = inner(q, v);
      for (std::size_t k = 0; k < v.size(); ++k) v[k] -= c * q[k];
    }
  }
  return v;
}

std::vector<Complex> embed(const std::vector<Complex>& v, std::size_t d) {
  std::vector<Complex> out(d, Complex{0.0, 0.0});
  std::copy(v.begin(), v.end(), out.begin());
  return out;
}

void complete_basis(std::vector<std::vector<Complex>>& basis, std::size_t d) {
  for (std::size_t k = 0; k < d && basis.size() < d; ++k) {
    std::vector<Complex> e(d, Complex{0.0, 0.0});
    e[k] = Complex{1.0, 0.0};
    std::vector<Complex> r = residual(basis, std::move(e));
    const double len = norm(r);
    if (len > 1e-6) {
      for (Complex& x : r) x /= len;
      basis.push_back(std::move(r));
    }
  }
}

}  // namespace

std::vector<Complex> recover_unitary(const Ensemble& e1, const Ensemble& e2) {
  const HermitianMatrix& g1 = gram_matrix(e1).matrix();
  const HermitianMatrix& g2 = gram_matrix(e2).matrix();
  if (e1.size() != e2.size()) {
    throw GramMismatch("ensembles have different sizes");
  }
  const double dev = g1.max_abs_diff(g2);
  if (dev > 1e-8) {
    std::ostringstream os;
    os << "gram matrices differ, max deviation " << dev;
    throw GramMismatch(os.str());
  }

  const std::size_t d = std::max(e1.dim, e2.dim);
  const std::size_t n = e1.size();

  std::vector<std::vector<Complex>> qa, qb;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Complex> va = embed(e1.states[i], d);
    std::vector<Complex> vb = embed(e2.states[i], d);
    const double w = std::sqrt(e1.probs[i]);
    for (Complex& x : va) x *= w;
    for (Complex& x : vb) x *= w;
    std::vector<Complex> ra = residual(qa, std::move(va));
    std::vector<Complex> rb = residual(qb, std::move(vb));
    const double na = norm(ra);
    // rank decision made once, on the first list; equal Gram matrices keep
    // the second list consistent
    if (na > 1e-8) {
      const double nb = norm(rb);
      if (nb < 0.5 * na) {
        throw GramMismatch("inconsistent spans at state " + std::to_string(i));
      }
      for (Complex& x : ra) x /= na;
      for (Complex& x : rb) x /= nb;
      qa.push_back(std::move(ra));
      qb.push_back(std::move(rb));
    }
  }
  complete_basis(qa, d);
  complete_basis(qb, d);

  std::vector<Complex> u(d * d, Complex{0.0, 0.0});
  for (std::size_t k = 0; k < qa.size(); ++k) {
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        u[i * d + j] += qb[k][i] * std::conj(qa[k][j]);
      }
    }
  }
  return u;
}

std::vector<std::vector<double>> pairwise_overlaps(const Ensemble& e) {
  const std::size_t n = e.size();
  std::vector<std::vector<double>> o(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    o[i][i] = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = std::min(std::abs(inner(e.states[i], e.states[j])), 1.0);
      o[i][j] = v;
      o[j][i] = v;
    }
  }
  return o;
}

}  // namespace qgram
