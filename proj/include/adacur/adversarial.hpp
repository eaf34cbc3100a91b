#pragma once

#include <optional>
#include <vector>

#include "adacur/matrix.hpp"
#include "adacur/sampling.hpp"

namespace adacur {

enum class AdversarialFamily { single, blockdiag };

/// single:    B = (1 - alpha) I_m + alpha 1 1^T
/// blockdiag: `blocks` copies of B of size p = m / blocks on the diagonal
struct AdversarialSpec {
  Index m = 0;
  double alpha = 0.0;
  Index blocks = 1;
  AdversarialFamily family = AdversarialFamily::single;

  void validate() const;
  Index block_count() const { return family == AdversarialFamily::single ? 1 : blocks; }
  Index block_size() const { return m / block_count(); }
};

Matrix build(const AdversarialSpec& spec);

struct ClosedFormNorms {
  double frobenius = 0.0;
  double spectral = 0.0;
  double nuclear = 0.0;
  /// Norms of A - A_k for the requested k.
  double residual_frobenius = 0.0;
  double residual_spectral = 0.0;
  double residual_nuclear = 0.0;
  /// 1 + p alpha - alpha, repeated once per block.
  double sigma_top = 0.0;
  /// 1 - alpha for the remaining m - blocks singular values.
  double sigma_rest = 0.0;
};

ClosedFormNorms closed_form_norms(const AdversarialSpec& spec, Index target_rank);

/// eta = c alpha^2 / (1 - alpha + c alpha), the constant value of
/// B21 W^+ B21^T when c columns of B are selected.
double eta(Index c, double alpha);

struct ResidualNorms {
  double frobenius = 0.0;
  double spectral = 0.0;
  double nuclear = 0.0;
};

/// Exact standard-Nystrom residual norms when block i contributes
/// per_block[i] selected columns (W^+ intersection). Any split is allowed,
/// including empty or fully selected blocks.
ResidualNorms standard_residual_exact(const AdversarialSpec& spec, const std::vector<Index>& per_block);

struct StandardBounds {
  /// Residual norms of the standard Nystrom method, minimized over
  /// selections of c columns (attained by balanced selections).
  double spectral = 0.0;
  double frobenius = 0.0;
  double nuclear = 0.0;
  /// alpha -> 1 limits of ||A - A~||/||A - A_k|| for k blocks.
  double ratio_frobenius = 0.0;
  double ratio_spectral = 0.0;
  double ratio_nuclear = 0.0;
};

/// Requires c < m and k < m.
StandardBounds standard_lower_bounds(const AdversarialSpec& spec, Index c, Index k);

/// Entry values of the averaged ensemble residual on B for t disjoint samples
/// of c columns. Regions: (1) inside one sample's block, (2) between two
/// different samples, (3) sample vs unselected, (4) unselected.
struct EnsembleRegions {
  double sample_diag = 0.0;
  double sample_off = 0.0;
  double cross_sample = 0.0;
  double sample_unselected = 0.0;
  double unselected_diag = 0.0;
  double unselected_off = 0.0;
};

struct EnsembleBounds {
  /// Single family: lower bounds for disjoint samples and the exact values
  /// when samples are drawn this way.
  std::optional<double> frobenius;
  std::optional<double> nuclear;
  std::optional<double> exact_frobenius;
  std::optional<EnsembleRegions> regions;
  /// Block-diagonal family with k blocks.
  std::optional<double> blockdiag_frobenius;
  std::optional<double> blockdiag_nuclear;
  /// alpha -> 1 ratio bounds as stated for k blocks.
  double ratio_frobenius = 0.0;
  double ratio_nuclear = 0.0;
};

/// Requires t c <= m (disjoint samples).
EnsembleBounds ensemble_lower_bounds(const AdversarialSpec& spec, Index c, Index k, Index t);

/// c / blocks leading columns from every block; c must be a multiple of the
/// block count.
Selection balanced_selection(const AdversarialSpec& spec, Index c);

/// Columns [first, first + count).
Selection column_range(Index first, Index count);

}  // namespace adacur
