#include "adacur/adversarial.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "adacur/errors.hpp"

namespace adacur {
namespace {

double d(Index x) { return static_cast<double>(x); }

// (1 - alpha + p alpha) / (1 - alpha + c alpha): top eigenvalue of the
// per-block residual divided by 1 - alpha.
double top_ratio(double p, double c, double alpha) { return (1.0 - alpha + p * alpha) / (1.0 - alpha + c * alpha); }

}  // namespace

void AdversarialSpec::validate() const {
  if (m < 1) throw ArgumentError("adversarial spec: m must be >= 1");
  if (!(alpha >= 0.0 && alpha < 1.0)) throw ArgumentError("adversarial spec: alpha must lie in [0, 1)");
  if (family == AdversarialFamily::blockdiag) {
    if (blocks < 1 || m % blocks != 0) {
      throw ArgumentError("adversarial spec: block count " + std::to_string(blocks) + " must divide m = " +
                          std::to_string(m));
    }
  }
}

Matrix build(const AdversarialSpec& spec) {
  spec.validate();
  const Index p = spec.block_size();
  Matrix a(spec.m, spec.m);
  for (Index b = 0; b < spec.block_count(); ++b) {
    const Index o = b * p;
    for (Index i = 0; i < p; ++i)
      for (Index j = 0; j < p; ++j) a(o + i, o + j) = i == j ? 1.0 : spec.alpha;
  }
  return a;
}

ClosedFormNorms closed_form_norms(const AdversarialSpec& spec, Index target_rank) {
  spec.validate();
  if (target_rank >= spec.m) throw ArgumentError("closed_form_norms: target rank must be below m");
  const double alpha = spec.alpha;
  const double p = d(spec.block_size());
  const Index kb = spec.block_count();
  ClosedFormNorms n;
  n.sigma_top = 1.0 + p * alpha - alpha;
  n.sigma_rest = 1.0 - alpha;
  n.frobenius = std::sqrt(d(kb) * (p * p * alpha * alpha + p * (1.0 - alpha * alpha)));
  n.spectral = n.sigma_top;
  n.nuclear = d(spec.m);

  // Drop the target_rank largest singular values.
  const Index tops_left = target_rank < kb ? kb - target_rank : 0;
  const Index rest_left = spec.m - kb - (target_rank > kb ? target_rank - kb : 0);
  n.residual_frobenius =
      std::sqrt(d(tops_left) * n.sigma_top * n.sigma_top + d(rest_left) * n.sigma_rest * n.sigma_rest);
  n.residual_spectral = tops_left > 0 ? n.sigma_top : (rest_left > 0 ? n.sigma_rest : 0.0);
  n.residual_nuclear = d(tops_left) * n.sigma_top + d(rest_left) * n.sigma_rest;
  return n;
}

double eta(Index c, double alpha) { return d(c) * alpha * alpha / (1.0 - alpha + d(c) * alpha); }

ResidualNorms standard_residual_exact(const AdversarialSpec& spec, const std::vector<Index>& per_block) {
  spec.validate();
  if (per_block.size() != spec.block_count()) throw ArgumentError("standard_residual_exact: one count per block");
  const double alpha = spec.alpha;
  const Index p = spec.block_size();
  double frob_sq = 0.0;
  ResidualNorms out;
  for (Index ci : per_block) {
    if (ci > p) throw ArgumentError("standard_residual_exact: block count exceeds block size");
    if (ci == p) continue;
    // Unselected part of the block: (1 - alpha) I + (alpha - eta) 1 1^T.
    const double rho = top_ratio(d(p), d(ci), alpha);
    const double rest = d(p - ci - 1);
    frob_sq += (1.0 - alpha) * (1.0 - alpha) * (rest + rho * rho);
    out.nuclear += (1.0 - alpha) * (rest + rho);
    out.spectral = std::max(out.spectral, (1.0 - alpha) * rho);
  }
  out.frobenius = std::sqrt(frob_sq);
  return out;
}

StandardBounds standard_lower_bounds(const AdversarialSpec& spec, Index c, Index k) {
  spec.validate();
  if (c >= spec.m) throw ArgumentError("standard_lower_bounds: c must be below m");
  if (k >= spec.m || k < 1) throw ArgumentError("standard_lower_bounds: k must lie in [1, m)");
  const double alpha = spec.alpha;
  const double m = d(spec.m);
  const double cc = d(c);
  const double kb = d(spec.block_count());
  // (m + kb beta) / (c + kb beta) with beta = (1 - alpha) / alpha, multiplied
  // through by alpha so that alpha = 0 needs no special case.
  const double ratio = (alpha * m + kb * (1.0 - alpha)) / (alpha * cc + kb * (1.0 - alpha));

  StandardBounds b;
  b.spectral = (1.0 - alpha) * ratio;
  b.frobenius = (1.0 - alpha) * std::sqrt(m - cc - kb + kb * ratio * ratio);
  b.nuclear = (1.0 - alpha) * (m - cc) * (1.0 + kb * alpha / (alpha * cc + kb * (1.0 - alpha)));

  const double kk = d(k);
  b.ratio_frobenius = std::sqrt(1.0 + (m * m * kk - cc * cc * cc) / (cc * cc * (m - kk)));
  b.ratio_spectral = m / cc;
  b.ratio_nuclear = (m - cc) / (m - kk) * (1.0 + kk / cc);
  return b;
}

EnsembleBounds ensemble_lower_bounds(const AdversarialSpec& spec, Index c, Index k, Index t) {
  spec.validate();
  if (t < 1 || c < 1) throw ArgumentError("ensemble_lower_bounds: need t >= 1 and c >= 1");
  if (t * c > spec.m) {
    throw ArgumentError("ensemble_lower_bounds: t c = " + std::to_string(t * c) + " exceeds m = " +
                        std::to_string(spec.m) + "; disjoint samples are impossible");
  }
  if (k < 1 || k >= spec.m) throw ArgumentError("ensemble_lower_bounds: k must lie in [1, m)");
  const double alpha = spec.alpha;
  const double m = d(spec.m);
  const double cc = d(c);
  const double tt = d(t);
  const double x = m - 2.0 * cc + cc / tt;
  EnsembleBounds b;

  if (spec.family == AdversarialFamily::single) {
    const double den = alpha * cc + 1.0 - alpha;
    // (m + c/t + 2/alpha - 2) / (c + beta)^2, scaled by alpha^2 top and bottom.
    const double tail = (alpha * alpha * (m + cc / tt - 2.0) + 2.0 * alpha) / (den * den);
    b.frobenius = (1.0 - alpha) * std::sqrt(x * (1.0 + tail));
    b.nuclear = (1.0 - alpha) * (m - cc) * (alpha * cc + 1.0) / den;

    const double e = eta(c, alpha);
    EnsembleRegions r;
    r.sample_diag = (tt - 1.0) / tt * (1.0 - e);
    r.sample_off = (tt - 1.0) / tt * (alpha - e);
    r.cross_sample = (tt - 2.0) / tt * (alpha - e);
    r.sample_unselected = (tt - 1.0) / tt * (alpha - e);
    r.unselected_diag = 1.0 - e;
    r.unselected_off = alpha - e;
    b.regions = r;

    const double tc = tt * cc;
    const double u = m - tc;
    const double sq = tc * r.sample_diag * r.sample_diag + (tt * cc * cc - tc) * r.sample_off * r.sample_off +
                      (tc * tc - tt * cc * cc) * r.cross_sample * r.cross_sample +
                      2.0 * tc * u * r.sample_unselected * r.sample_unselected +
                      u * r.unselected_diag * r.unselected_diag + (u * u - u) * r.unselected_off * r.unselected_off;
    b.exact_frobenius = std::sqrt(sq);
  } else {
    const double kb = d(spec.block_count());
    const double den = alpha * cc + kb * (1.0 - alpha);
    const double ratio = (alpha * (m - cc + cc / tt) + kb * (1.0 - alpha)) / den;
    b.blockdiag_frobenius = (1.0 - alpha) * std::sqrt(x - kb + kb * ratio * ratio);
    b.blockdiag_nuclear = (1.0 - alpha) * (m - cc) * (alpha * cc + kb) / den;
  }

  const double kk = d(k);
  b.ratio_frobenius = std::sqrt((x - kk) / (m - kk) * (1.0 + kk * x / (cc * cc)));
  b.ratio_nuclear = (m - cc) / (m - kk) * (1.0 + kk / cc);
  return b;
}

Selection balanced_selection(const AdversarialSpec& spec, Index c) {
  spec.validate();
  const Index kb = spec.block_count();
  if (c % kb != 0 || c / kb > spec.block_size()) {
    throw ArgumentError("balanced_selection: c = " + std::to_string(c) + " cannot be split evenly over " +
                        std::to_string(kb) + " blocks");
  }
  Selection sel;
  for (Index b = 0; b < kb; ++b)
    for (Index j = 0; j < c / kb; ++j) sel.indices.push_back(b * spec.block_size() + j);
  return sel;
}

Selection column_range(Index first, Index count) {
  Selection sel;
  sel.indices.resize(count);
  std::iota(sel.indices.begin(), sel.indices.end(), first);
  return sel;
}

}  // namespace adacur
