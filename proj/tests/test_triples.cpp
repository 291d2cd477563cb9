#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "qgram/triples.hpp"
#include "test_util.hpp"

using namespace qgram;
using test::Rng;

namespace {

const std::array<double, 3> kEqualProbs{1.0 / 3, 1.0 / 3, 1.0 / 3};

TripleSpec example1_spec(double xi) {
  const auto [a12, a23, a31] = test::example1_overlaps();
  return TripleSpec{a12, a23, a31, xi, kEqualProbs};
}

// random overlaps with a usable feasible interval
TripleSpec random_feasible_spec(Rng& rng, double min_window = 0.2) {
  std::uniform_real_distribution<double> unif(0.05, 0.95);
  std::uniform_real_distribution<double> sgn(-1.0, 1.0);
  while (true) {
    const double a12 = unif(rng), a23 = unif(rng), a31 = unif(rng);
    const auto xm = max_phase(a12, a23, a31);
    if (!xm || *xm < min_window) continue;
    const double xi = sgn(rng) * (*xm - 1e-6);
    return TripleSpec{a12, a23, a31, xi, kEqualProbs};
  }
}

}  // namespace

TEST_CASE("max_phase on the example overlaps and corner cases") {
  const auto [a12, a23, a31] = test::example1_overlaps();
  const auto xm = max_phase(a12, a23, a31);
  REQUIRE(xm.has_value());
  CHECK(std::abs(*xm - std::acos(0.75)) < 1e-12);
  CHECK(std::abs(*xm - 0.7227) < 1e-4);

  const auto all_free = max_phase(0.0, 0.0, 0.0);
  REQUIRE(all_free.has_value());
  CHECK(*all_free == doctest::Approx(std::numbers::pi));

  CHECK_FALSE(max_phase(1.0, 1.0, 0.0).has_value());
}

TEST_CASE("max_phase accepts boundary-only overlap sets") {
  // the planar triple with a feasibility margin of exactly zero at xi = 0
  Ensemble f = test::ensemble_f();
  const auto o = pairwise_overlaps(f);
  const auto xm = max_phase(o[0][1], o[1][2], o[2][0]);
  REQUIRE(xm.has_value());
  CHECK(*xm < 1e-6);
}

TEST_CASE("construct_triple reproduces the example family") {
  SUBCASE("xi = 0 matches the printed states up to global unitary") {
    Ensemble built = construct_triple(example1_spec(0.0));
    const auto o = pairwise_overlaps(built);
    const auto [a12, a23, a31] = test::example1_overlaps();
    CHECK(std::abs(o[0][1] - a12) < 1e-10);
    CHECK(std::abs(o[1][2] - a23) < 1e-10);
    CHECK(std::abs(o[2][0] - a31) < 1e-10);
    CHECK(std::abs(triple_phase(built, 0, 1, 2)) < 1e-9);
    // same gram matrix as the printed states
    CHECK(gram_matrix(built).matrix().max_abs_diff(
              gram_matrix(test::example1_ensemble()).matrix()) < 1e-10);
  }
  SUBCASE("third coefficient follows the closed form in xi") {
    const double xi = 0.4;
    Ensemble built = construct_triple(example1_spec(xi));
    const Complex second = built.states[2][1];
    const Complex expected = (2.0 * std::polar(1.0, xi) - 1.0) / std::sqrt(3.0);
    CHECK(std::abs(second - expected) < 1e-12);
    const double z = built.states[2][2].real();
    CHECK(std::abs(z * z - (4.0 / 3.0 * std::cos(xi) - 1.0)) < 1e-12);
  }
  SUBCASE("at the maximal phase the family becomes planar") {
    Ensemble built = construct_triple(example1_spec(std::acos(0.75)));
    CHECK(std::abs(built.states[2][2]) < 1e-7);
    CHECK(min_eigenvalue(gram_matrix(built).matrix()) < 1e-10);
  }
  SUBCASE("zero overlaps give an orthonormal triple") {
    Ensemble built = construct_triple(TripleSpec{0, 0, 0, 1.0, kEqualProbs});
    const auto o = pairwise_overlaps(built);
    CHECK(o[0][1] == doctest::Approx(0.0));
    CHECK(o[1][2] == doctest::Approx(0.0));
    CHECK(o[2][0] == doctest::Approx(0.0));
  }
  SUBCASE("infeasible specs are rejected") {
    CHECK_THROWS_AS(construct_triple(TripleSpec{0.9, 0.9, 0.1, 3.0, kEqualProbs}), Infeasible);
  }
  SUBCASE("coinciding first pair requires matching third overlaps") {
    CHECK_THROWS_AS(construct_triple(TripleSpec{1.0, 0.8, 0.3, 0.0, kEqualProbs}), DegenerateBasis);
    Ensemble built = construct_triple(TripleSpec{1.0, 0.6, 0.6, 0.0, kEqualProbs});
    const auto o = pairwise_overlaps(built);
    CHECK(std::abs(o[0][1] - 1.0) < 1e-12);
    CHECK(std::abs(o[1][2] - 0.6) < 1e-12);
  }
}

TEST_CASE("construction roundtrip over random feasible specs") {
  Rng rng(1234);
  for (int t = 0; t < 10000; ++t) {
    const TripleSpec spec = random_feasible_spec(rng);
    Ensemble built = construct_triple(spec);
    const auto o = pairwise_overlaps(built);
    CHECK(std::abs(o[0][1] - spec.a12) < 1e-9);
    CHECK(std::abs(o[1][2] - spec.a23) < 1e-9);
    CHECK(std::abs(o[2][0] - spec.a31) < 1e-9);
    CHECK(std::abs(triple_phase(built, 0, 1, 2) - spec.xi) < 1e-8);
  }
}

TEST_CASE("chain invariants") {
  Ensemble e = test::example1_ensemble();
  SUBCASE("length one is the normalization") {
    const std::array<std::size_t, 1> idx{1};
    CHECK(std::abs(chain_invariant(e, idx).value - Complex{1, 0}) < 1e-12);
  }
  SUBCASE("length two is the squared overlap") {
    const std::array<std::size_t, 2> idx{0, 1};
    const ChainValue cv = chain_invariant(e, idx);
    CHECK(cv.value.imag() == 0.0);
    CHECK(std::abs(cv.value.real() - 0.5) < 1e-12);
  }
  SUBCASE("the example triple chain is one third") {
    const std::array<std::size_t, 3> idx{0, 1, 2};
    const ChainValue cv = chain_invariant(e, idx);
    CHECK(std::abs(cv.value - Complex{1.0 / 3.0, 0}) < 1e-12);
  }
  SUBCASE("invariant under per-state phase changes") {
    Rng rng(97);
    std::uniform_real_distribution<double> unif(-3.0, 3.0);
    for (int t = 0; t < 50; ++t) {
      Ensemble r = test::random_ensemble(4, 3, rng);
      std::vector<std::vector<Complex>> rephased = r.states;
      for (auto& s : rephased) {
        const Complex ph = std::polar(1.0, unif(rng));
        for (Complex& v : s) v *= ph;
      }
      Ensemble r2 = Ensemble::create(3, std::move(rephased), r.probs);
      const std::array<std::size_t, 4> idx{0, 2, 1, 3};
      CHECK(std::abs(chain_invariant(r, idx).value - chain_invariant(r2, idx).value) < 1e-12);
    }
  }
  SUBCASE("cyclic rotation leaves the value unchanged") {
    const std::array<std::size_t, 3> a{0, 1, 2}, b{1, 2, 0};
    CHECK(std::abs(chain_invariant(e, a).value - chain_invariant(e, b).value) < 1e-14);
  }
  SUBCASE("out-of-range index") {
    const std::array<std::size_t, 2> idx{0, 5};
    CHECK_THROWS_AS(chain_invariant(e, idx), IndexOutOfRange);
    CHECK_THROWS_AS(chain_invariant(e, std::span<const std::size_t>{}), IndexOutOfRange);
  }
}

TEST_CASE("triple phase") {
  CHECK(std::abs(triple_phase(test::example1_ensemble(), 0, 1, 2)) < 1e-12);

  Ensemble built = construct_triple(example1_spec(0.5));
  CHECK(std::abs(triple_phase(built, 0, 1, 2) - 0.5) < 1e-9);

  Ensemble ortho = Ensemble::create(
      3,
      {{Complex{1, 0}, Complex{0, 0}, Complex{0, 0}},
       {Complex{0, 0}, Complex{1, 0}, Complex{0, 0}},
       {Complex{1 / std::sqrt(2.0), 0}, Complex{1 / std::sqrt(2.0), 0}, Complex{0, 0}}},
      kEqualProbs);
  CHECK_THROWS_AS(triple_phase(ortho, 0, 1, 2), UndefinedPhase);
}

TEST_CASE("canonical gram matrix") {
  SUBCASE("example spec at xi = 0 is real") {
    GramMatrix g = canonical_gram(example1_spec(0.0));
    const auto [a12, a23, a31] = test::example1_overlaps();
    CHECK(std::abs(g(0, 1) - Complex{a12 / 3.0, 0}) < 1e-12);
    CHECK(std::abs(g(0, 2) - Complex{a31 / 3.0, 0}) < 1e-12);
    CHECK(std::abs(g(1, 2) - Complex{a23 / 3.0, 0}) < 1e-12);
    CHECK(gram_matrix(test::example1_ensemble()).matrix().max_abs_diff(g.matrix()) < 1e-12);
  }
  SUBCASE("the boundary phase is singular") {
    GramMatrix g = canonical_gram(example1_spec(std::acos(0.75)));
    CHECK(std::abs(det3(g.matrix())) < 1e-12);
  }
  SUBCASE("degenerate probabilities give a rank-1 matrix") {
    GramMatrix g = canonical_gram(TripleSpec{0.5, 0.5, 0.5, 0.1, {1.0, 0.0, 0.0}});
    CHECK(std::abs(g(0, 0).real() - 1.0) < 1e-14);
    CHECK(std::abs(g(0, 1)) < 1e-14);
    Spectrum s = eigh(g.matrix(), false);
    CHECK(std::abs(s.eigenvalues[0] - 1.0) < 1e-12);
  }
  SUBCASE("infeasible spec is rejected") {
    CHECK_THROWS_AS(canonical_gram(TripleSpec{1.0, 1.0, 0.0, 0.0, kEqualProbs}), Infeasible);
  }
  SUBCASE("agrees with the gram matrix of the constructed states") {
    Rng rng(555);
    for (int t = 0; t < 200; ++t) {
      const TripleSpec spec = random_feasible_spec(rng);
      GramMatrix g = canonical_gram(spec);
      GramMatrix built = gram_matrix(construct_triple(spec));
      CHECK(g.matrix().max_abs_diff(built.matrix()) < 1e-10);
    }
  }
}

TEST_CASE("phase sweep of the example family") {
  const auto [a12, a23, a31] = test::example1_overlaps();
  const auto rows = phase_sweep(a12, a23, a31, kEqualProbs, 100);
  REQUIRE(rows.size() == 100);
  CHECK(rows.front().xi == 0.0);
  CHECK(std::abs(rows.back().xi - std::acos(0.75)) < 1e-12);
  CHECK(std::abs(rows.front().entropy_nats - 0.613) < 5e-3);

  for (std::size_t k = 1; k < rows.size(); ++k) {
    CHECK(rows[k].entropy_nats <= rows[k - 1].entropy_nats + 1e-12);
    CHECK(rows[k].xi > rows[k - 1].xi);
  }
  // rank drops to two at the boundary
  CHECK(rows.back().spectrum.eigenvalues.back() < 1e-10);
}

TEST_CASE("sweep of orthogonal overlaps is flat at the prior entropy") {
  const std::array<double, 3> probs{0.5, 0.3, 0.2};
  const auto rows = phase_sweep(0.0, 0.0, 0.0, probs, 16);
  const double h = entropy_of_spectrum(std::vector<double>{0.5, 0.3, 0.2}).value;
  for (const auto& row : rows) CHECK(std::abs(row.entropy_nats - h) < 1e-12);
}

TEST_CASE("sweep constants and the cube trace line") {
  Rng rng(777);
  for (int t = 0; t < 20; ++t) {
    const TripleSpec spec = random_feasible_spec(rng);
    const auto rows = phase_sweep(spec.a12, spec.a23, spec.a31, kEqualProbs, 60);

    // trace and squared trace stay constant along the sweep
    double tr2_ref = 0.0;
    for (std::size_t k = 0; k < rows.size(); ++k) {
      double tr = 0.0, tr2 = 0.0;
      for (double l : rows[k].spectrum.eigenvalues) {
        tr += l;
        tr2 += l * l;
      }
      CHECK(std::abs(tr - 1.0) < 1e-10);
      if (k == 0) {
        tr2_ref = tr2;
      } else {
        CHECK(std::abs(tr2 - tr2_ref) < 1e-10);
      }
    }

    // cube trace is affine in cos(xi) with the predicted slope
    const double expected_slope =
        6.0 * (1.0 / 27.0) * spec.a12 * spec.a23 * spec.a31;
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double n = static_cast<double>(rows.size());
    for (const auto& row : rows) {
      const double x = std::cos(row.xi);
      sx += x;
      sy += row.trace_g3;
      sxx += x * x;
      sxy += x * row.trace_g3;
    }
    const double denom = n * sxx - sx * sx;
    const double slope = (n * sxy - sx * sy) / denom;
    const double icept = (sy - slope * sx) / n;
    CHECK(std::abs(slope - expected_slope) < 1e-6);
    for (const auto& row : rows) {
      CHECK(std::abs(row.trace_g3 - (icept + slope * std::cos(row.xi))) < 1e-9);
    }
  }
}

TEST_CASE("the family is symmetric under phase reflection") {
  Rng rng(888);
  for (int t = 0; t < 100; ++t) {
    const TripleSpec spec = random_feasible_spec(rng);
    TripleSpec mirror = spec;
    mirror.xi = -spec.xi;
    Spectrum a = eigh(canonical_gram(spec).matrix(), false);
    Spectrum b = eigh(canonical_gram(mirror).matrix(), false);
    for (std::size_t k = 0; k < 3; ++k) {
      CHECK(std::abs(a.eigenvalues[k] - b.eigenvalues[k]) < 1e-12);
    }
  }
}

TEST_CASE("distinct phases give unitarily inequivalent ensembles") {
  Ensemble e1 = construct_triple(example1_spec(0.2));
  Ensemble e2 = construct_triple(example1_spec(0.5));
  CHECK_THROWS_AS(recover_unitary(e1, e2), GramMismatch);
}

TEST_CASE("the unit-diagonal family never has exactly two negative eigenvalues") {
  Rng rng(999);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::uniform_real_distribution<double> phase(-std::numbers::pi, std::numbers::pi);
  for (int t = 0; t < 10000; ++t) {
    // arbitrary draws, including infeasible overlap sets
    HermitianMatrix m(3);
    for (int i = 0; i < 3; ++i) m.set(i, i, Complex{1, 0});
    m.set(0, 1, Complex{unif(rng), 0});
    m.set(0, 2, Complex{unif(rng), 0});
    m.set(1, 2, unif(rng) * std::polar(1.0, phase(rng)));
    Spectrum s = eigh(m, false);
    int negative = 0;
    for (double l : s.eigenvalues) {
      if (l < -1e-12) ++negative;
    }
    CHECK(negative != 2);
  }
}

TEST_CASE("sweep csv format") {
  const auto [a12, a23, a31] = test::example1_overlaps();
  const auto rows = phase_sweep(a12, a23, a31, kEqualProbs, 4);
  std::ostringstream os;
  write_sweep_csv(os, rows);
  const std::string text = os.str();
  CHECK(text.rfind("xi,lambda1,lambda2,lambda3,entropy_nats,trace_g3\n", 0) == 0);
  // one header plus one line per row
  CHECK(std::count(text.begin(), text.end(), '\n') == 5);
  // deterministic reformat
  std::ostringstream os2;
  write_sweep_csv(os2, rows);
  CHECK(os2.str() == text);
}
