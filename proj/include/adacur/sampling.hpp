#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "adacur/matcore.hpp"
#include "adacur/matrix.hpp"

namespace adacur {

enum class Provenance { residual, leverage, uniform };

/// Probability vector over row or column indices. Always normalized;
/// entries below 1e-300 are stored as exact zeros.
class SamplingDistribution {
 public:
  /// Normalizes non-negative weights. Throws ArgumentError when every weight
  /// is zero or any weight is negative / non-finite.
  static SamplingDistribution from_weights(std::vector<double> weights, Provenance provenance);

  const std::vector<double>& probs() const { return probs_; }
  Provenance provenance() const { return provenance_; }
  Index size() const { return probs_.size(); }
  Index support_size() const;

 private:
  SamplingDistribution(std::vector<double> p, Provenance prov) : probs_(std::move(p)), provenance_(prov) {}
  std::vector<double> probs_;
  Provenance provenance_ = Provenance::uniform;
};

/// Indices drawn from a distribution, with optional per-draw scaling
/// d_jj = 1 / sqrt(count * p_i).
struct Selection {
  std::vector<Index> indices;
  std::optional<std::vector<double>> scaling;

  Index size() const { return indices.size(); }
};

using Rng = std::mt19937_64;

/// Independent stream seed derived from (seed, stream) by splitmix64.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Uniform double in [0, 1) with 53 random bits.
double uniform01(Rng& rng);

SamplingDistribution uniform_distribution(Index n);

/// p_i proportional to the squared norms of the rows (or columns) of
/// `residual`. A residual that is zero up to roundoff yields the uniform
/// distribution tagged `residual`.
SamplingDistribution distribution_from_residual(const Matrix& residual, double reference_norm, Axis axis);

/// Rows axis: basis is a row block R1 and the residual is A - A R1^+ R1.
/// Columns axis: basis is a column block C1 and the residual is A - C1 C1^+ A.
SamplingDistribution residual_distribution(const Matrix& a, const Matrix& basis, Axis axis);

/// p_j = leverage_j / k.
SamplingDistribution subspace_distribution(const Matrix& a, Index k, Axis axis);

Selection sample_iid(const SamplingDistribution& dist, Index count, std::uint64_t seed);

/// Sequential draws, renormalizing over the remaining indices after each one.
Selection sample_without_replacement(const SamplingDistribution& dist, Index count, std::uint64_t seed);

/// Adaptive sampling: `count` i.i.d. draws from the residual distribution of
/// `a` against `basis` (see residual_distribution).
Selection adaptive_sample(const Matrix& a, const Matrix& basis, Axis axis, Index count, std::uint64_t seed);

/// d_j = 1 / sqrt(count * p_{idx_j}) for each selected index.
std::vector<double> selection_scaling(const SamplingDistribution& dist, const std::vector<Index>& indices);

struct ScaledSelection {
  Matrix c;  // A S D
  Matrix w;  // (S D)^T A (S D)
  Selection sel;
};

/// i.i.d. draws with scaling applied to both C and W; `a` must be square.
ScaledSelection build_scaled_selection(const Matrix& a, const SamplingDistribution& dist, Index count,
                                       std::uint64_t seed);

}  // namespace adacur
