#include "adacur/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "adacur/errors.hpp"

namespace adacur {
namespace {

constexpr double kTinyProb = 1e-300;

Index pick(const std::vector<double>& weights, double total, Rng& rng) {
  const double target = uniform01(rng) * total;
  double acc = 0.0;
  Index last_positive = weights.size();
  for (Index i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    last_positive = i;
    acc += weights[i];
    if (target < acc) return i;
  }
  // Roundoff pushed the target past the accumulated mass.
  return last_positive;
}

}  // namespace

SamplingDistribution SamplingDistribution::from_weights(std::vector<double> weights, Provenance provenance) {
  double total = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) throw ArgumentError("sampling weights must be finite and non-negative");
    total += w;
  }
  if (total <= 0.0) throw ArgumentError("sampling weights sum to zero");
  for (double& w : weights) {
    w /= total;
    if (w < kTinyProb) w = 0.0;
  }
  // Second pass so the clamped vector still sums to one.
  const double renorm = std::accumulate(weights.begin(), weights.end(), 0.0);
  for (double& w : weights) w /= renorm;
  return SamplingDistribution(std::move(weights), provenance);
}

Index SamplingDistribution::support_size() const {
  return static_cast<Index>(std::count_if(probs_.begin(), probs_.end(), [](double p) { return p > 0.0; }));
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

SamplingDistribution uniform_distribution(Index n) {
  if (n == 0) throw ArgumentError("uniform_distribution: empty index set");
  return SamplingDistribution::from_weights(std::vector<double>(n, 1.0), Provenance::uniform);
}

SamplingDistribution distribution_from_residual(const Matrix& residual, double reference_norm, Axis axis) {
  std::vector<double> w = axis == Axis::rows ? row_sq_norms(residual) : col_sq_norms(residual);
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  const double dims = static_cast<double>(std::max(residual.rows(), residual.cols()));
  const double floor = dims * std::numeric_limits<double>::epsilon() * reference_norm;
  if (total <= 0.0 || std::sqrt(total) <= floor) {
    return SamplingDistribution::from_weights(std::vector<double>(w.size(), 1.0), Provenance::residual);
  }
  return SamplingDistribution::from_weights(std::move(w), Provenance::residual);
}

SamplingDistribution residual_distribution(const Matrix& a, const Matrix& basis, Axis axis) {
  Matrix residual;
  if (axis == Axis::rows) {
    if (basis.cols() != a.cols()) throw ArgumentError("residual_distribution: row basis width differs from a");
    residual = basis.rows() == 0 ? a : a - project_onto_rows(a, basis);
  } else {
    if (basis.rows() != a.rows()) throw ArgumentError("residual_distribution: column basis height differs from a");
    residual = basis.cols() == 0 ? a : a - project_onto_columns(basis, a);
  }
  return distribution_from_residual(residual, frobenius(a), axis);
}

SamplingDistribution subspace_distribution(const Matrix& a, Index k, Axis axis) {
  LeverageScores lev = leverage_scores(a, k, axis);
  return SamplingDistribution::from_weights(std::move(lev.scores), Provenance::leverage);
}

Selection sample_iid(const SamplingDistribution& dist, Index count, std::uint64_t seed) {
  if (count < 1) throw ArgumentError("sample_iid: count must be >= 1");
  const auto& p = dist.probs();
  std::vector<double> cdf(p.size());
  std::partial_sum(p.begin(), p.end(), cdf.begin());
  const double total = cdf.back();
  Index last_positive = 0;
  for (Index i = 0; i < p.size(); ++i)
    if (p[i] > 0.0) last_positive = i;

  Rng rng(seed);
  Selection sel;
  sel.indices.reserve(count);
  for (Index t = 0; t < count; ++t) {
    const double u = uniform01(rng) * total;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    Index idx = it == cdf.end() ? last_positive : static_cast<Index>(it - cdf.begin());
    sel.indices.push_back(idx);
  }
  return sel;
}

Selection sample_without_replacement(const SamplingDistribution& dist, Index count, std::uint64_t seed) {
  if (count < 1) throw ArgumentError("sample_without_replacement: count must be >= 1");
  if (count > dist.support_size()) {
    throw ArgumentError("sample_without_replacement: count " + std::to_string(count) + " exceeds support size " +
                        std::to_string(dist.support_size()));
  }
  std::vector<double> remaining = dist.probs();
  Rng rng(seed);
  Selection sel;
  sel.indices.reserve(count);
  for (Index t = 0; t < count; ++t) {
    const double total = std::accumulate(remaining.begin(), remaining.end(), 0.0);
    const Index idx = pick(remaining, total, rng);
    sel.indices.push_back(idx);
    remaining[idx] = 0.0;
  }
  return sel;
}

Selection adaptive_sample(const Matrix& a, const Matrix& basis, Axis axis, Index count, std::uint64_t seed) {
  return sample_iid(residual_distribution(a, basis, axis), count, seed);
}

std::vector<double> selection_scaling(const SamplingDistribution& dist, const std::vector<Index>& indices) {
  const double count = static_cast<double>(indices.size());
  std::vector<double> d(indices.size());
  for (Index j = 0; j < indices.size(); ++j) {
    const double p = dist.probs().at(indices[j]);
    if (p <= 0.0) throw InternalFailure("selected an index with zero probability");
    d[j] = 1.0 / std::sqrt(count * p);
  }
  return d;
}

ScaledSelection build_scaled_selection(const Matrix& a, const SamplingDistribution& dist, Index count,
                                       std::uint64_t seed) {
  if (a.rows() != a.cols()) throw ArgumentError("build_scaled_selection: a must be square");
  if (dist.size() != a.cols()) throw ArgumentError("build_scaled_selection: distribution size differs from a");
  ScaledSelection out;
  out.sel = sample_iid(dist, count, seed);
  const auto d = selection_scaling(dist, out.sel.indices);
  out.sel.scaling = d;
  out.c = scale_columns(select_columns(a, out.sel.indices), d);
  out.w = scale_rows(d, select_rows(out.c, out.sel.indices));
  return out;
}

}  // namespace adacur
