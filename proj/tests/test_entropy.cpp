#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qgram/entropy.hpp"
#include "test_util.hpp"

using namespace qgram;
using test::Rng;

TEST_CASE("von neumann entropy of a pure state vanishes") {
  Ensemble e = Ensemble::create(2, {{Complex{1, 0}, Complex{0, 0}}}, {1.0});
  CHECK(von_neumann_entropy(density_matrix(e)).value == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("intro pair compresses to 0.601 bits per signal") {
  const HermitianMatrix rho = density_matrix(test::intro_ensemble());
  CHECK(std::abs(von_neumann_entropy(rho, LogBase::bits).value - 0.601) < 1e-3);
}

TEST_CASE("example gram matrix has entropy 0.613 nats") {
  const GramMatrix g = gram_matrix(test::example1_ensemble());
  CHECK(std::abs(von_neumann_entropy(g.matrix(), LogBase::nats).value - 0.613) < 5e-3);
}

TEST_CASE("von neumann entropy validates its input") {
  CHECK_THROWS_AS(von_neumann_entropy(HermitianMatrix::identity(2)), TraceNotOne);
  HermitianMatrix m(2);
  m.set(0, 0, Complex{1.1, 0});
  m.set(1, 1, Complex{-0.1, 0});
  CHECK_THROWS_AS(von_neumann_entropy(m), NotPositive);
}

TEST_CASE("shannon entropy closed forms") {
  const std::vector<double> deterministic{1.0, 0.0};
  CHECK(shannon_entropy(deterministic).value == doctest::Approx(0.0));
  const std::vector<double> coin{0.5, 0.5};
  CHECK(shannon_entropy(coin, LogBase::bits).value == doctest::Approx(1.0).epsilon(1e-12));
  const std::vector<double> three{1.0 / 3, 1.0 / 3, 1.0 / 3};
  CHECK(shannon_entropy(three, LogBase::bits).value ==
        doctest::Approx(std::log2(3.0)).epsilon(1e-12));
  const std::vector<double> bad{0.5, 0.6};
  CHECK_THROWS_AS(shannon_entropy(bad), InvalidDistribution);
}

TEST_CASE("linearized entropy closed forms") {
  Ensemble single = Ensemble::create(2, {{Complex{1, 0}, Complex{0, 0}}}, {1.0});
  CHECK(linearized_entropy(single) == doctest::Approx(0.0).epsilon(1e-12));

  Ensemble ortho = Ensemble::create(
      3,
      {{Complex{1, 0}, Complex{0, 0}, Complex{0, 0}},
       {Complex{0, 0}, Complex{1, 0}, Complex{0, 0}},
       {Complex{0, 0}, Complex{0, 0}, Complex{1, 0}}},
      {1.0 / 3, 1.0 / 3, 1.0 / 3});
  CHECK(linearized_entropy(ortho) == doctest::Approx(1.0 - 1.0 / 3).epsilon(1e-12));

  CHECK(linearized_entropy(test::intro_ensemble()) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("simplex polar chart") {
  SUBCASE("center maps to r = 0") {
    SimplexPoint p = simplex_to_polar({1.0 / 3, 1.0 / 3, 1.0 / 3});
    CHECK(p.r == doctest::Approx(0.0).epsilon(1e-14));
  }
  SUBCASE("vertex maps to the radial extreme at theta = 0") {
    SimplexPoint p = simplex_to_polar({1.0, 0.0, 0.0});
    CHECK(p.r == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-12));
    CHECK(p.theta == doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("roundtrip on random simplex points") {
    Rng rng(77);
    double worst = 0.0;
    for (int t = 0; t < 1000; ++t) {
      auto lam = test::random_probs(3, rng);
      SimplexPoint p = simplex_to_polar({lam[0], lam[1], lam[2]});
      CHECK(p.theta >= -1e-15);
      CHECK(p.theta <= std::numbers::pi / 3.0 + 1e-12);
      // the chart stores the sorted values; undo the recorded permutation
      SimplexPoint q = polar_to_simplex(p.r, p.theta);
      std::array<double, 3> recovered{};
      for (int k = 0; k < 3; ++k) recovered[p.permutation[k]] = q.lambdas[k];
      for (int k = 0; k < 3; ++k) worst = std::max(worst, std::abs(recovered[k] - lam[k]));
      // radial consistency with the sum of squares
      const double ssq = lam[0] * lam[0] + lam[1] * lam[1] + lam[2] * lam[2];
      CHECK(std::abs(ssq - (1.0 / 3.0 + p.r * p.r)) < 1e-10);
    }
    CHECK(worst < 1e-10);
  }
  SUBCASE("points outside the simplex are rejected") {
    CHECK_THROWS_AS(simplex_to_polar({0.7, 0.4, -0.1}), OutsideSimplex);
    CHECK_THROWS_AS(simplex_to_polar({0.5, 0.4, 0.2}), OutsideSimplex);
    CHECK_THROWS_AS(polar_to_simplex(1.0, 0.5), OutsideSimplex);
  }
}

TEST_CASE("sum of cubes in polar form") {
  CHECK(trace_cubed_polar(0.0, 0.3) == doctest::Approx(1.0 / 9.0).epsilon(1e-14));

  SimplexPoint vertex = simplex_to_polar({1.0, 0.0, 0.0});
  CHECK(trace_cubed_polar(vertex.r, vertex.theta) == doctest::Approx(1.0).epsilon(1e-12));

  SUBCASE("matches the explicit sum on random interior points") {
    Rng rng(88);
    for (int t = 0; t < 200; ++t) {
      auto lam = test::random_probs(3, rng);
      SimplexPoint p = simplex_to_polar({lam[0], lam[1], lam[2]});
      const double direct = lam[0] * lam[0] * lam[0] + lam[1] * lam[1] * lam[1] +
                            lam[2] * lam[2] * lam[2];
      CHECK(std::abs(trace_cubed_polar(p.r, p.theta) - direct) < 1e-10);
    }
  }
  SUBCASE("strictly decreasing in theta at fixed radius") {
    const double r = 0.2;
    double prev = trace_cubed_polar(r, 0.0);
    for (int k = 1; k <= 60; ++k) {
      const double theta = k * (std::numbers::pi / 3.0) / 60.0;
      const double cur = trace_cubed_polar(r, theta);
      CHECK(cur < prev);
      prev = cur;
    }
  }
}

TEST_CASE("entropy and sum of cubes are co-monotone on constant-radius arcs") {
  // 50 radii; on each arc S and the cube sum are non-increasing in theta,
  // hence S is non-decreasing in the cube sum.
  for (int ri = 1; ri <= 50; ++ri) {
    const double r = ri * std::sqrt(2.0 / 3.0) / 51.0;
    double prev_s = -1.0, prev_t3 = 2.0;
    bool first = true;
    for (int k = 0; k <= 40; ++k) {
      const double theta = k * (std::numbers::pi / 3.0) / 40.0;
      SimplexPoint p;
      try {
        p = polar_to_simplex(r, theta);
      } catch (const OutsideSimplex&) {
        break;  // arc leaves the triangle at this radius
      }
      const double s = entropy_of_spectrum(std::span<const double>(p.lambdas)).value;
      const double t3 = trace_cubed_polar(r, theta);
      if (!first) {
        CHECK(s <= prev_s + 1e-12);
        CHECK(t3 <= prev_t3 + 1e-12);
      }
      first = false;
      prev_s = s;
      prev_t3 = t3;
    }
  }
}

TEST_CASE("for qubits the entropy increases with the linearized entropy") {
  // eigenvalue pairs (lambda, 1-lambda) on a fine grid over (0, 1/2]
  const int kPoints = 10000;
  double prev_s = -1.0, prev_slin = -1.0;
  for (int k = 1; k <= kPoints; ++k) {
    const double lam = 0.5 * static_cast<double>(k) / kPoints;
    const double s = -lam * std::log(lam) - (1.0 - lam) * std::log(1.0 - lam);
    const double slin = 1.0 - lam * lam - (1.0 - lam) * (1.0 - lam);
    if (k > 1) {
      CHECK(slin > prev_slin);
      CHECK(s > prev_s);
    }
    prev_s = s;
    prev_slin = slin;
  }
}

TEST_CASE("ensemble entropy never exceeds the shannon entropy of the priors") {
  Rng rng(99);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng() % 4);
    const std::size_t d = 2 + static_cast<std::size_t>(rng() % 4);
    Ensemble e = test::random_ensemble(n, d, rng);
    const double s = von_neumann_entropy(density_matrix(e)).value;
    const double h = shannon_entropy(e.probs).value;
    CHECK(s <= h + 1e-9);
  }
}

TEST_CASE("base conversion is a single division by log 2") {
  const GramMatrix g = gram_matrix(test::example1_ensemble());
  const double nats = von_neumann_entropy(g.matrix(), LogBase::nats).value;
  const double bits = von_neumann_entropy(g.matrix(), LogBase::bits).value;
  CHECK(bits == nats / std::numbers::ln2);
}

TEST_CASE("overlap-dominated qubit ensembles never reverse the entropy order") {
  // scaled-down version of the full accepted suite: random d = 2 pairs with
  // entrywise overlap dominance
  Rng rng(111);
  std::normal_distribution<double> gauss(0.0, 0.25);
  int tested = 0;
  while (tested < 2000) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng() % 3);
    Ensemble e = test::random_ensemble(n, 2, rng);
    std::vector<std::vector<Complex>> perturbed;
    for (const auto& s : e.states) {
      std::vector<Complex> v = s;
      for (Complex& x : v) x += Complex{gauss(rng), gauss(rng)};
      const double len = norm(v);
      for (Complex& x : v) x /= len;
      perturbed.push_back(std::move(v));
    }
    Ensemble f = Ensemble::create(2, std::move(perturbed), e.probs);

    const auto oe = pairwise_overlaps(e);
    const auto of = pairwise_overlaps(f);
    bool e_dominates = true, f_dominates = true;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (of[i][j] > oe[i][j]) e_dominates = false;
        if (oe[i][j] > of[i][j]) f_dominates = false;
      }
    }
    if (!e_dominates && !f_dominates) continue;
    ++tested;
    const Ensemble& more = e_dominates ? e : f;    // larger overlaps
    const Ensemble& less = e_dominates ? f : e;    // smaller overlaps (dominated)
    const double s_more = von_neumann_entropy(density_matrix(more)).value;
    const double s_less = von_neumann_entropy(density_matrix(less)).value;
    // dominated overlaps cannot come with strictly smaller entropy
    CHECK(s_less >= s_more - 1e-9);
  }
}
