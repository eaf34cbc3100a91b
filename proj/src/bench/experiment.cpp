#include "adacur/bench/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>

#include "adacur/bench/kernel.hpp"
#include "adacur/cur.hpp"
#include "adacur/errors.hpp"
#include "adacur/nystrom.hpp"
#include "json.hpp"

namespace adacur::bench {
namespace {

using Clock = std::chrono::steady_clock;
using nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Point {
  Index a = 0;  // 0 when driven by epsilon
  Index c = 0;
  Index r = 0;
};

std::string format17(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ResultRecord skeleton(const ExperimentConfig& cfg, const std::string& method, const std::string& variant, Index c,
                      Index r) {
  ResultRecord rec;
  rec.method = method;
  rec.variant = variant;
  rec.k = cfg.k;
  rec.c = c;
  rec.r = r;
  rec.seed = cfg.seed;
  return rec;
}

ResultRecord skipped(ResultRecord rec, const std::string& reason) {
  rec.error_ratio = kNaN;
  rec.skip_reason = reason;
  return rec;
}

// Runs `once(seed)` for every repeat and fills errors, minimum and timing.
template <class Once>
ResultRecord repeat(const ExperimentConfig& cfg, ResultRecord rec, Once&& once) {
  double total = 0.0;
  for (Index i = 0; i < cfg.repeats; ++i) {
    const auto t0 = Clock::now();
    const double e = once(cfg.seed + i);
    total += std::chrono::duration<double>(Clock::now() - t0).count();
    rec.errors.push_back(e);
  }
  rec.error_ratio = *std::min_element(rec.errors.begin(), rec.errors.end());
  rec.seconds = total;
  return rec;
}

std::vector<Index> grid(const ExperimentConfig& cfg) {
  if (cfg.epsilon) return {0};
  return cfg.a_grid;
}

ResultRecord run_cur(const ExperimentConfig& cfg, const Matrix& a, Index mult, double tail) {
  const std::string method = to_string(cfg.method);
  try {
    if (cfg.method == Method::adaptive) {
      const CurPlan plan = mult ? CurPlan::from_multiplier(cfg.k, mult) : CurPlan::from_epsilon(cfg.k, *cfg.epsilon);
      ResultRecord rec = skeleton(cfg, method, "cur", plan.col_count(), plan.row_count());
      const bool fits = plan.col_count() < a.cols() && plan.col_count() < a.rows() &&
                        (mult || plan.row_count() < a.rows());
      if (!fits) return skipped(rec, "c or r does not fit a " + std::to_string(a.rows()) + " x " + std::to_string(a.cols()) + " matrix");
      return repeat(cfg, rec, [&](std::uint64_t s) {
        const CurDecomposition d = mult ? adaptive_cur(a, plan, s) : adaptive_cur(a, cfg.k, *cfg.epsilon, s);
        return error_ratio_given_tail(a, d.reconstruct(), tail);
      });
    }
    Index c, r;
    if (mult) {
      c = mult * cfg.k;
      r = mult * c;
    } else {
      const CurPlan plan = CurPlan::from_epsilon(cfg.k, *cfg.epsilon);
      c = plan.col_count();
      r = plan.row_count();
    }
    ResultRecord rec = skeleton(cfg, method, "cur", c, r);
    if (c > a.cols() || r > a.rows()) {
      return skipped(rec, "sampling without replacement needs c <= n and r <= m");
    }
    return repeat(cfg, rec, [&](std::uint64_t s) {
      const CurDecomposition d = cfg.method == Method::subspace ? subspace_cur(a, cfg.k, c, r, s) : uniform_cur(a, c, r, s);
      return error_ratio_given_tail(a, d.reconstruct(), tail);
    });
  } catch (const ArgumentError& e) {
    return skipped(skeleton(cfg, method, "cur", mult * cfg.k, mult * mult * cfg.k), e.what());
  }
}

NystromApproximation apply_variant(const Matrix& a, Variant v, const std::vector<Selection>& samples, Index k) {
  switch (v) {
    case Variant::standard:
      return standard_nystrom(a, samples.front());
    case Variant::standard_k:
      return standard_nystrom(a, samples.front(), k);
    case Variant::ensemble:
      return ensemble_nystrom(a, samples);
    case Variant::modified:
      return modified_nystrom(a, samples.front());
  }
  throw InternalFailure("unknown variant");
}

Selection scaled_draw(const SamplingDistribution& dist, Index c, std::uint64_t seed) {
  Selection sel = sample_without_replacement(dist, c, seed);
  sel.scaling = selection_scaling(dist, sel.indices);
  return sel;
}

ResultRecord run_nystrom(const ExperimentConfig& cfg, const Matrix& a, Index mult, double tail) {
  const std::string method = to_string(cfg.method);
  const std::string variant = to_string(cfg.variant);
  const Index t = cfg.variant == Variant::ensemble ? cfg.ensemble_t : 1;
  try {
    if (cfg.method == Method::adaptive) {
      const NystromPlan plan = mult ? NystromPlan::from_multiplier(cfg.k, mult) : NystromPlan::from_epsilon(cfg.k, *cfg.epsilon);
      ResultRecord rec = skeleton(cfg, method, variant, plan.total(), 0);
      if (plan.total() >= a.rows()) return skipped(rec, "c must be below m = " + std::to_string(a.rows()));
      return repeat(cfg, rec, [&](std::uint64_t s) {
        const NystromApproximation x = apply_variant(a, cfg.variant, {adaptive_nystrom_selection(a, plan, s)}, cfg.k);
        return error_ratio_given_tail(a, x.reconstruct(), tail);
      });
    }
    const Index c = mult ? mult * cfg.k : NystromPlan::from_epsilon(cfg.k, *cfg.epsilon).total();
    ResultRecord rec = skeleton(cfg, method, variant, c, 0);
    if (c > a.rows()) return skipped(rec, "sampling without replacement needs c <= m");
    const SamplingDistribution dist =
        cfg.method == Method::subspace ? subspace_distribution(a, cfg.k, Axis::columns) : uniform_distribution(a.rows());
    return repeat(cfg, rec, [&](std::uint64_t s) {
      std::vector<Selection> samples;
      for (Index i = 0; i < t; ++i) samples.push_back(scaled_draw(dist, c, derive_seed(s, 400 + i)));
      return error_ratio_given_tail(a, apply_variant(a, cfg.variant, samples, cfg.k).reconstruct(), tail);
    });
  } catch (const ArgumentError& e) {
    return skipped(skeleton(cfg, method, variant, mult * cfg.k, 0), e.what());
  }
}

// Disjoint samples: sample i takes the i-th run of c/blocks columns in
// every block.
std::vector<Selection> disjoint_samples(const AdversarialSpec& spec, Index c, Index t) {
  const Index kb = spec.block_count();
  const Index per = c / kb;
  std::vector<Selection> out(t);
  for (Index i = 0; i < t; ++i)
    for (Index b = 0; b < kb; ++b)
      for (Index j = 0; j < per; ++j) out[i].indices.push_back(b * spec.block_size() + i * per + j);
  return out;
}

ResultRecord run_lowerbound(const ExperimentConfig& cfg, const Matrix& a, Index mult) {
  const AdversarialSpec& spec = *cfg.input.adversarial;
  const Index c = cfg.c ? *cfg.c : mult * cfg.k;
  const Index t = cfg.variant == Variant::ensemble ? cfg.ensemble_t : 1;
  ResultRecord rec = skeleton(cfg, "closed-form", to_string(cfg.variant), c, 0);
  const Index kb = spec.block_count();
  if (c == 0 || c % kb != 0) return skipped(rec, "c must be a positive multiple of the block count");
  if (t * (c / kb) > spec.block_size() || c >= spec.m) return skipped(rec, "disjoint samples do not fit");
  if (cfg.k >= spec.m) return skipped(rec, "k must be below m");

  const double best = closed_form_norms(spec, cfg.k).residual_frobenius;
  const auto t0 = Clock::now();
  const auto samples = disjoint_samples(spec, c, t);
  const NystromApproximation x = apply_variant(a, cfg.variant, samples, cfg.k);
  rec.measured = frobenius(a - x.reconstruct());
  rec.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  if (cfg.variant == Variant::standard) {
    rec.bound = standard_lower_bounds(spec, c, cfg.k).frobenius;
  } else if (cfg.variant == Variant::ensemble) {
    const EnsembleBounds eb = ensemble_lower_bounds(spec, c, cfg.k, t);
    rec.bound = spec.family == AdversarialFamily::single ? *eb.frobenius : *eb.blockdiag_frobenius;
  }
  rec.error_ratio = *rec.measured / best;
  rec.errors = {rec.error_ratio};
  return rec;
}

json to_json(const ResultRecord& r) {
  json j{{"method", r.method}, {"variant", r.variant}, {"k", r.k}, {"c", r.c}, {"r", r.r},
         {"seconds", r.seconds}, {"seed", r.seed}, {"errors", r.errors}};
  j["error_ratio"] = std::isnan(r.error_ratio) ? json(nullptr) : json(r.error_ratio);
  if (r.bound) j["bound"] = *r.bound;
  if (r.measured) j["measured"] = *r.measured;
  if (r.skip_reason) j["skip_reason"] = *r.skip_reason;
  return j;
}

ResultRecord from_json(const json& j) {
  ResultRecord r;
  r.method = j.at("method").get<std::string>();
  r.variant = j.at("variant").get<std::string>();
  r.k = j.at("k").get<Index>();
  r.c = j.at("c").get<Index>();
  r.r = j.at("r").get<Index>();
  r.error_ratio = j.at("error_ratio").is_null() ? kNaN : j.at("error_ratio").get<double>();
  r.errors = j.at("errors").get<std::vector<double>>();
  r.seconds = j.at("seconds").get<double>();
  r.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("bound")) r.bound = j["bound"].get<double>();
  if (j.contains("measured")) r.measured = j["measured"].get<double>();
  if (j.contains("skip_reason")) r.skip_reason = j["skip_reason"].get<std::string>();
  return r;
}

}  // namespace

std::string to_string(Task t) {
  switch (t) {
    case Task::cur: return "cur";
    case Task::nystrom: return "nystrom";
    case Task::lowerbound: return "lowerbound";
  }
  return "?";
}

std::string to_string(Method m) {
  switch (m) {
    case Method::adaptive: return "adaptive";
    case Method::subspace: return "subspace";
    case Method::uniform: return "uniform";
  }
  return "?";
}

std::string to_string(Variant v) {
  switch (v) {
    case Variant::standard: return "standard";
    case Variant::standard_k: return "standard-k";
    case Variant::ensemble: return "ensemble";
    case Variant::modified: return "modified";
  }
  return "?";
}

Method parse_method(const std::string& s) {
  for (Method m : {Method::adaptive, Method::subspace, Method::uniform})
    if (to_string(m) == s) return m;
  throw ArgumentError("unknown method '" + s + "'");
}

Variant parse_variant(const std::string& s) {
  for (Variant v : {Variant::standard, Variant::standard_k, Variant::ensemble, Variant::modified})
    if (to_string(v) == s) return v;
  throw ArgumentError("unknown variant '" + s + "'");
}

Matrix load_input(const InputSource& src) {
  if (src.file) return ingest(*src.file, src.format, src.dimension_cap);
  if (src.points_file || src.random_points) {
    Matrix points = src.points_file ? ingest(*src.points_file, MatrixFormat::dense_csv, src.dimension_cap)
                                    : random_points(src.random_points->first, src.random_points->second, src.data_seed);
    if (points.rows() > src.dimension_cap) throw ArgumentError("point count exceeds the dimension cap");
    return build_rbf_kernel(points, src.sigma);
  }
  if (src.synthetic) {
    const auto [m, n] = *src.synthetic;
    if (m > src.dimension_cap || n > src.dimension_cap) throw ArgumentError("synthetic size exceeds the dimension cap");
    if (m == 0 || n == 0) throw ArgumentError("synthetic size must be positive");
    return decaying_spectrum(m, n, src.data_seed);
  }
  if (src.adversarial) {
    if (src.adversarial->m > src.dimension_cap) throw ArgumentError("adversarial size exceeds the dimension cap");
    return build(*src.adversarial);
  }
  throw ArgumentError("no input given");
}

void ExperimentConfig::validate() const {
  if (repeats < 1) throw ArgumentError("repeats must be >= 1");
  if (k < 1) throw ArgumentError("k must be >= 1");
  if (task == Task::lowerbound) {
    if (!input.adversarial) throw ArgumentError("lowerbound needs an adversarial spec (--m, --alpha)");
    if (!c && a_grid.empty()) throw ArgumentError("lowerbound needs --c or --a");
    if (c && !a_grid.empty()) throw ArgumentError("give only one of --c and --a");
    if (epsilon) throw ArgumentError("lowerbound takes --c or --a, not --epsilon");
    return;
  }
  if (a_grid.empty() == !epsilon.has_value()) throw ArgumentError("give exactly one of --a and --epsilon");
  if (epsilon && !(*epsilon > 0.0 && *epsilon <= 1.0)) throw ArgumentError("epsilon must lie in (0, 1]");
  for (Index a : a_grid)
    if (a < 1) throw ArgumentError("multipliers must be >= 1");
  if (task == Task::nystrom && variant == Variant::ensemble) {
    if (method == Method::adaptive) throw ArgumentError("ensemble runs need a fixed sample size; use subspace or uniform");
    if (ensemble_t < 1) throw ArgumentError("ensemble-t must be >= 1");
  }
}

std::vector<ResultRecord> run_experiment(const ExperimentConfig& config) {
  config.validate();
  return run_experiment(config, load_input(config.input));
}

std::vector<ResultRecord> run_experiment(const ExperimentConfig& config, const Matrix& a) {
  config.validate();
  std::vector<ResultRecord> out;
  if (config.task == Task::lowerbound) {
    if (config.c) return {run_lowerbound(config, a, 0)};
    for (Index mult : config.a_grid) out.push_back(run_lowerbound(config, a, mult));
    return out;
  }
  if (config.k >= std::min(a.rows(), a.cols())) throw ArgumentError("k must be below min(m, n)");
  const double tail = tail_frobenius(a, config.k);
  for (Index mult : grid(config)) {
    out.push_back(config.task == Task::cur ? run_cur(config, a, mult, tail) : run_nystrom(config, a, mult, tail));
  }
  return out;
}

bool ResultRecord::operator==(const ResultRecord& o) const {
  const bool same_ratio = (std::isnan(error_ratio) && std::isnan(o.error_ratio)) || error_ratio == o.error_ratio;
  return method == o.method && variant == o.variant && k == o.k && c == o.c && r == o.r && same_ratio &&
         errors == o.errors && seconds == o.seconds && seed == o.seed && bound == o.bound && measured == o.measured &&
         skip_reason == o.skip_reason;
}

void write_csv(const std::vector<ResultRecord>& records, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const auto& r : records) {
    out << r.method << ',' << r.variant << ',' << r.k << ',' << r.c << ',' << r.r << ',' << format17(r.error_ratio)
        << ',' << format17(r.seconds) << ',' << r.seed << '\n';
  }
}

void write_json(const std::vector<ResultRecord>& records, std::ostream& out) {
  json arr = json::array();
  for (const auto& r : records) arr.push_back(to_json(r));
  out << arr.dump(2) << '\n';
}

std::vector<ResultRecord> read_json(const std::string& text) {
  std::vector<ResultRecord> out;
  for (const auto& j : json::parse(text)) out.push_back(from_json(j));
  return out;
}

void emit(const std::vector<ResultRecord>& records, OutputFormat format, const std::filesystem::path& path) {
  auto write = [&](std::ostream& os) {
    if (format == OutputFormat::csv) {
      write_csv(records, os);
    } else {
      write_json(records, os);
    }
    os.flush();
    if (!os) throw IoError("write failed for '" + path.string() + "'");
  };
  if (path == "-") {
    write(std::cout);
    return;
  }
  std::ofstream f(path);
  if (!f) throw IoError("cannot open '" + path.string() + "' for writing");
  write(f);
}

void write_matrix(const Matrix& a, MatrixFormat format, std::ostream& out) {
  if (format == MatrixFormat::dense_csv) {
    for (Index i = 0; i < a.rows(); ++i) {
      for (Index j = 0; j < a.cols(); ++j) out << (j ? "," : "") << format17(a(i, j));
      out << '\n';
    }
    return;
  }
  out << "%%MatrixMarket matrix array real general\n" << a.rows() << ' ' << a.cols() << '\n';
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i) out << format17(a(i, j)) << '\n';
}

}  // namespace adacur::bench
