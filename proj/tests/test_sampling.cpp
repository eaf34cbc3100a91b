#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <numeric>
#include <set>

#include "adacur/errors.hpp"
#include "adacur/sampling.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace adacur;

namespace {

double total(const SamplingDistribution& d) { return std::accumulate(d.probs().begin(), d.probs().end(), 0.0); }

}  // namespace

TEST_CASE("residual distribution from row norms") {
  const Matrix residual{{3, 0}, {0, 4}};
  const auto d = distribution_from_residual(residual, frobenius(residual), Axis::rows);
  CHECK(d.probs()[0] == doctest::Approx(9.0 / 25.0));
  CHECK(d.probs()[1] == doctest::Approx(16.0 / 25.0));
  CHECK(d.provenance() == Provenance::residual);
}

TEST_CASE("residual distribution falls back to uniform when the basis spans a") {
  const Matrix a = testsupport::gaussian(5, 4, 1);
  const auto d = residual_distribution(a, a, Axis::rows);
  for (double p : d.probs()) CHECK(p == doctest::Approx(0.2));
  CHECK(d.provenance() == Provenance::residual);
  const auto dc = residual_distribution(a, a, Axis::columns);
  for (double p : dc.probs()) CHECK(p == doctest::Approx(0.25));
}

TEST_CASE("residual distribution with one surviving row") {
  const Matrix a{{1, 0}, {0, 2}};
  const auto d = residual_distribution(a, Matrix{{1, 0}}, Axis::rows);
  CHECK(d.probs()[0] == doctest::Approx(0.0));
  CHECK(d.probs()[1] == doctest::Approx(1.0));
}

TEST_CASE("residual distribution depends only on the span of the basis") {
  const Matrix a = testsupport::gaussian(8, 6, 3);
  const Matrix c = testsupport::gaussian(8, 3, 4);
  const Matrix rebased = multiply(c, testsupport::gaussian(3, 3, 5));
  const auto p = residual_distribution(a, c, Axis::columns).probs();
  const auto q = residual_distribution(a, rebased, Axis::columns).probs();
  for (Index i = 0; i < p.size(); ++i) CHECK(p[i] == doctest::Approx(q[i]).epsilon(1e-9));
  CHECK_THROWS_AS(residual_distribution(a, Matrix(7, 2), Axis::columns), ArgumentError);
  CHECK_THROWS_AS(residual_distribution(a, Matrix(2, 5), Axis::rows), ArgumentError);
}

TEST_CASE("distributions are normalized") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Matrix a = testsupport::gaussian(7, 9, seed);
    CHECK(std::abs(total(residual_distribution(a, Matrix(7, 0), Axis::columns)) - 1.0) <= 1e-12);
    CHECK(std::abs(total(residual_distribution(a, Matrix(0, 9), Axis::rows)) - 1.0) <= 1e-12);
    CHECK(std::abs(total(subspace_distribution(a, 3, Axis::columns)) - 1.0) <= 1e-12);
  }
  CHECK_THROWS_AS(SamplingDistribution::from_weights({0.0, 0.0}, Provenance::uniform), ArgumentError);
  CHECK_THROWS_AS(SamplingDistribution::from_weights({1.0, -1.0}, Provenance::uniform), ArgumentError);
  const auto tiny = SamplingDistribution::from_weights({1.0, 1e-310}, Provenance::uniform);
  CHECK(tiny.probs()[1] == 0.0);
  CHECK(tiny.support_size() == 1);
}

TEST_CASE("subspace distribution") {
  const auto id = subspace_distribution(Matrix::identity(4), 4, Axis::columns);
  for (double p : id.probs()) CHECK(p == doctest::Approx(0.25));
  const auto d = subspace_distribution(Matrix{{1, 1, 0}, {0, 0, 1}}, 2, Axis::columns);
  CHECK(d.probs()[0] == doctest::Approx(0.25));
  CHECK(d.probs()[1] == doctest::Approx(0.25));
  CHECK(d.probs()[2] == doctest::Approx(0.5));
  CHECK(d.provenance() == Provenance::leverage);
  const auto b = subspace_distribution(testsupport::equicorrelated(4, 0.5), 1, Axis::columns);
  for (double p : b.probs()) CHECK(p == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("i.i.d. sampling") {
  const auto point = SamplingDistribution::from_weights({0.0, 1.0}, Provenance::uniform);
  for (Index i : sample_iid(point, 5, 9).indices) CHECK(i == 1);
  const auto half = SamplingDistribution::from_weights({0.5, 0.5}, Provenance::uniform);
  const auto one = sample_iid(half, 1, 4);
  REQUIRE(one.size() == 1);
  CHECK(one.indices[0] <= 1);
  CHECK(sample_iid(half, 50, 77).indices == sample_iid(half, 50, 77).indices);
  CHECK_THROWS_AS(sample_iid(half, 0, 1), ArgumentError);
}

TEST_CASE("uniform draws have frequencies near 1/4") {
  const auto u = uniform_distribution(4);
  const auto sel = sample_iid(u, 100000, 2024);
  std::vector<double> counts(4, 0.0);
  for (Index i : sel.indices) counts[i] += 1.0;
  for (double c : counts) CHECK(std::abs(c / 1e5 - 0.25) <= 0.01);
}

TEST_CASE("chi-squared goodness of fit at significance 1e-3") {
  const auto dist = SamplingDistribution::from_weights({1, 2, 3, 4, 5, 6, 7, 8, 0.5, 0.25}, Provenance::leverage);
  const Index draws = 100000;
  for (std::uint64_t seed : {1ULL, 99ULL, 123456789ULL}) {
    std::vector<double> counts(dist.size(), 0.0);
    for (Index i : sample_iid(dist, draws, seed).indices) counts[i] += 1.0;
    double stat = 0.0;
    for (Index i = 0; i < dist.size(); ++i) {
      const double expected = dist.probs()[i] * static_cast<double>(draws);
      stat += (counts[i] - expected) * (counts[i] - expected) / expected;
    }
    const boost::math::chi_squared chi(static_cast<double>(dist.size() - 1));
    CAPTURE(seed);
    CHECK(stat <= boost::math::quantile(chi, 1.0 - 1e-3));
  }
}

TEST_CASE("sampling without replacement") {
  const auto perm = sample_without_replacement(uniform_distribution(3), 3, 5);
  CHECK(std::set<Index>(perm.indices.begin(), perm.indices.end()) == std::set<Index>{0, 1, 2});

  const auto point = SamplingDistribution::from_weights({0.0, 0.0, 1.0}, Provenance::uniform);
  CHECK(sample_without_replacement(point, 1, 3).indices == std::vector<Index>{2});

  const auto skew = SamplingDistribution::from_weights({0.9, 0.1, 0.0}, Provenance::uniform);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto s = sample_without_replacement(skew, 2, seed);
    CHECK(std::set<Index>(s.indices.begin(), s.indices.end()) == std::set<Index>{0, 1});
  }
  CHECK_THROWS_AS(sample_without_replacement(skew, 3, 1), ArgumentError);
}

TEST_CASE("scaled selection") {
  const Matrix a = testsupport::spsd(6, 3, 1);
  const auto out = build_scaled_selection(a, uniform_distribution(6), 3, 8);
  REQUIRE(out.sel.scaling.has_value());
  for (double d : *out.sel.scaling) CHECK(d == doctest::Approx(std::sqrt(2.0)));
  // W is the scaled principal submatrix at the sampled indices.
  for (Index i = 0; i < 3; ++i)
    for (Index j = 0; j < 3; ++j)
      CHECK(out.w(i, j) == doctest::Approx(2.0 * a(out.sel.indices[i], out.sel.indices[j])));
  CHECK(out.c.rows() == 6);
  CHECK(out.c.cols() == 3);

  const auto point = SamplingDistribution::from_weights({0, 1, 0, 0, 0, 0}, Provenance::uniform);
  const auto single = build_scaled_selection(a, point, 1, 1);
  CHECK((*single.sel.scaling)[0] == doctest::Approx(1.0));

  const Matrix b = testsupport::equicorrelated(4, 0.5);
  const auto lev = build_scaled_selection(b, subspace_distribution(b, 1, Axis::columns), 2, 3);
  for (double d : *lev.sel.scaling) CHECK(d == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));

  CHECK_THROWS_AS(build_scaled_selection(Matrix(3, 4), uniform_distribution(4), 1, 1), ArgumentError);
}

TEST_CASE("seed derivation separates streams") {
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
  CHECK(derive_seed(7, 3) == derive_seed(7, 3));
  Rng rng(5);
  for (int i = 0; i < 1000; ++i) {
    const double u = uniform01(rng);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}
