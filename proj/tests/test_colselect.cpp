#include <cmath>
#include <numeric>

#include "adacur/colselect.hpp"
#include "adacur/errors.hpp"
#include "adacur/matcore.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace adacur;

namespace {

double column_error_sq(const Matrix& a, const Matrix& c) { return frobenius_sq(a - project_onto_columns(c, a)); }

Matrix spiked(std::uint64_t seed) {
  // Noise plus a planted rank-5 component.
  return testsupport::gaussian(60, 50, seed) + 6.0 * testsupport::low_rank(60, 50, 5, seed + 3);
}

struct Moments {
  double mean;
  double stderr_;
};

Moments moments(const std::vector<double>& xs) {
  const double n = static_cast<double>(xs.size());
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  double var = 0.0;
  for (double x : xs) var += (x - mean) * (x - mean);
  var /= (n - 1.0);
  return {mean, std::sqrt(var / n)};
}

}  // namespace

TEST_CASE("parameter derivation") {
  const auto p = ColSelectParams::from_epsilon(5, 0.5);
  CHECK(p.adaptive_count == 20);
  CHECK(p.dual_count == 6);  // 0.25 * 20 = 5 is not above k
  CHECK(p.total() == 26);
  const auto q = ColSelectParams::from_epsilon(4, 0.25);
  CHECK(q.adaptive_count == 32);
  CHECK(q.dual_count == 8);
  const auto t = ColSelectParams::from_total(10, 40);
  CHECK(t.dual_count == 11);
  CHECK(t.adaptive_count == 29);
  CHECK_THROWS_AS(ColSelectParams::from_epsilon(1, 0.5), ArgumentError);
  CHECK_THROWS_AS(ColSelectParams::from_epsilon(3, 0.0), ArgumentError);
  CHECK_THROWS_AS(ColSelectParams::from_epsilon(3, 1.5), ArgumentError);
  CHECK_THROWS_AS(ColSelectParams::from_total(5, 6), ArgumentError);
}

TEST_CASE("randomized svd recovers an exact low-rank matrix") {
  const Matrix a = testsupport::low_rank(40, 30, 4, 2);
  const auto s = randomized_svd(a, 4, 10, 2, 9);
  CHECK(testsupport::diff(s.reconstruct(), a) < 1e-8 * frobenius(a));
  CHECK(frobenius(multiply_tn(s.v, s.v) - Matrix::identity(s.v.cols())) < 1e-8);
}

TEST_CASE("randomized svd on diag(10..1)") {
  std::vector<double> d(10);
  for (Index i = 0; i < 10; ++i) d[i] = 10.0 - double(i);
  const Matrix a = Matrix::diagonal(d);
  double tail = 0.0;
  for (Index i = 3; i < 10; ++i) tail += d[i] * d[i];
  // k + oversample must fit inside min(m, n) = 10.
  const auto s = randomized_svd(a, 3, 7, 2, 4);
  CHECK(frobenius(a - s.reconstruct()) <= 1.5 * std::sqrt(tail));
  CHECK_THROWS_AS(randomized_svd(a, 3, 8, 2, 4), ArgumentError);
}

TEST_CASE("randomized svd is deterministic for a seed") {
  const Matrix a = testsupport::gaussian(30, 25, 3);
  const auto x = randomized_svd(a, 5, 10, 2, 17);
  const auto y = randomized_svd(a, 5, 10, 2, 17);
  CHECK(x.u == y.u);
  CHECK(x.v == y.v);
  CHECK(x.sigma == y.sigma);
}

TEST_CASE("near-optimal selection captures a rank-k matrix") {
  const Matrix a = testsupport::low_rank(50, 40, 3, 6);
  const auto params = ColSelectParams::from_epsilon(3, 0.5);
  const auto out = near_optimal_select(a, params, 12);
  CHECK(std::sqrt(column_error_sq(a, out.c)) < 1e-8 * frobenius(a));
  CHECK(out.sel.size() == out.dual_selected + params.adaptive_count);
  CHECK(out.sel.size() <= params.total());
  CHECK(out.dual_selected <= params.dual_count);
  for (Index j = 0; j < out.sel.size(); ++j) {
    CHECK(out.sel.indices[j] < 40);
    CHECK(out.c.col(j) == a.col(out.sel.indices[j]));
  }
}

TEST_CASE("near-optimal selection rejects c >= n and zero input") {
  const auto params = ColSelectParams::from_epsilon(3, 0.5);  // 4 + 12 columns
  CHECK_THROWS_AS(near_optimal_select(testsupport::gaussian(30, 16, 1), params, 1), ArgumentError);
  CHECK_NOTHROW(near_optimal_select(testsupport::gaussian(30, 17, 1), params, 1));
  CHECK_THROWS_AS(near_optimal_select(Matrix(30, 40), params, 1), ArgumentError);
}

TEST_CASE("expected column error stays within 1 + eps over 200 seeds") {
  const Matrix a = spiked(77);
  const Index k = 5;
  const double eps = 0.5;
  const double best = std::pow(tail_frobenius(a, k), 2);
  const auto params = ColSelectParams::from_epsilon(k, eps);
  std::vector<double> ratios;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    ratios.push_back(column_error_sq(a, near_optimal_select(a, params, seed).c) / best);
  }
  const auto mom = moments(ratios);
  MESSAGE("mean ratio " << mom.mean << " +- " << mom.stderr_);
  CHECK(mom.mean <= 1.0 + eps + 3.0 * mom.stderr_);
}

TEST_CASE("more adaptive columns do not hurt on average") {
  const Matrix a = spiked(5);
  const Index k = 5;
  double prev = INFINITY;
  for (Index c2 : {k, 2 * k, 4 * k}) {
    ColSelectParams params;
    params.k = k;
    params.dual_count = k + 2;
    params.adaptive_count = c2;
    std::vector<double> errs;
    for (std::uint64_t seed = 0; seed < 60; ++seed) errs.push_back(column_error_sq(a, near_optimal_select(a, params, seed).c));
    const auto mom = moments(errs);
    CAPTURE(c2);
    CHECK(mom.mean <= prev + 3.0 * mom.stderr_);
    prev = mom.mean;
  }
}
