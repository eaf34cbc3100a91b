// Benchmark driver: cur / nystrom / lowerbound experiments and RBF kernel export.
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "adacur/bench/experiment.hpp"
#include "adacur/bench/ingest.hpp"
#include "adacur/bench/kernel.hpp"
#include "adacur/errors.hpp"

namespace {

using namespace adacur;
using namespace adacur::bench;

struct Options {
  std::string input, format = "mm", points, random_points, synthetic;
  double sigma = 1.0;
  Index k = 10;
  std::string a_grid;
  std::optional<double> epsilon;
  std::string method = "adaptive", variant = "modified";
  Index ensemble_t = 3, repeats = 10;
  std::uint64_t seed = 0, data_seed = 0;
  std::string out = "-", out_format = "csv";
  bool omit_timing = false;
  std::optional<Index> m, blocks, c;
  std::optional<double> alpha;
  Index cap = kDefaultDimensionCap;
};

std::vector<Index> parse_grid(const std::string& text) {
  std::vector<Index> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || item.empty() || v < 1) throw ArgumentError("bad multiplier '" + item + "' in --a");
    out.push_back(static_cast<Index>(v));
  }
  if (out.empty()) throw ArgumentError("--a needs at least one multiplier");
  return out;
}

std::pair<Index, Index> parse_dims(const std::string& text, const char* flag) {
  const auto x = text.find('x');
  try {
    if (x != std::string::npos) {
      std::size_t u1 = 0, u2 = 0;
      const long long r = std::stoll(text.substr(0, x), &u1);
      const long long c = std::stoll(text.substr(x + 1), &u2);
      if (u1 == x && u2 == text.size() - x - 1 && r > 0 && c > 0) return {Index(r), Index(c)};
    }
  } catch (const std::exception&) {
  }
  throw ArgumentError(std::string("expected ROWSxCOLS for ") + flag + ", got '" + text + "'");
}

MatrixFormat parse_format(const std::string& s) {
  if (s == "mm" || s == "matrix-market") return MatrixFormat::matrix_market;
  if (s == "csv" || s == "dense-csv") return MatrixFormat::dense_csv;
  throw ArgumentError("unknown matrix format '" + s + "'");
}

InputSource input_from(const Options& o) {
  InputSource src;
  src.format = parse_format(o.format);
  src.sigma = o.sigma;
  src.data_seed = o.data_seed;
  src.dimension_cap = o.cap;
  if (!o.input.empty()) src.file = o.input;
  if (!o.points.empty()) src.points_file = o.points;
  if (!o.random_points.empty()) src.random_points = parse_dims(o.random_points, "--random-points");
  if (!o.synthetic.empty()) src.synthetic = parse_dims(o.synthetic, "--synthetic");
  if (o.m || o.alpha) {
    if (!o.m || !o.alpha) throw ArgumentError("--m and --alpha go together");
    AdversarialSpec spec;
    spec.m = *o.m;
    spec.alpha = *o.alpha;
    if (o.blocks && *o.blocks > 1) {
      spec.family = AdversarialFamily::blockdiag;
      spec.blocks = *o.blocks;
    }
    spec.validate();
    src.adversarial = spec;
  }
  const int given = src.file.has_value() + src.points_file.has_value() + src.random_points.has_value() +
                    src.synthetic.has_value() + src.adversarial.has_value();
  if (given != 1) throw ArgumentError("give exactly one input: --input, --points, --random-points, --synthetic or --m/--alpha");
  return src;
}

void add_input_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--input", o.input, "Matrix file");
  cmd->add_option("--format", o.format, "Input format: mm | csv")->capture_default_str();
  cmd->add_option("--points", o.points, "CSV of points (one per row) for an RBF kernel");
  cmd->add_option("--random-points", o.random_points, "NxD standard normal points for an RBF kernel");
  cmd->add_option("--synthetic", o.synthetic, "MxN matrix with singular values 1/i");
  cmd->add_option("--sigma", o.sigma, "RBF bandwidth")->capture_default_str();
  cmd->add_option("--data-seed", o.data_seed, "Seed for generated inputs")->capture_default_str();
  cmd->add_option("--cap", o.cap, "Largest accepted dimension")->capture_default_str();
}

void add_experiment_flags(CLI::App* cmd, Options& o) {
  add_input_flags(cmd, o);
  cmd->add_option("--k", o.k, "Target rank")->capture_default_str();
  cmd->add_option("--a", o.a_grid, "Comma-separated multipliers, c = a k");
  cmd->add_option("--epsilon", o.epsilon, "Accuracy target instead of --a");
  cmd->add_option("--repeats", o.repeats, "Repeats per grid point")->capture_default_str();
  cmd->add_option("--seed", o.seed, "Base seed")->capture_default_str();
  cmd->add_option("--out", o.out, "Output path, - for stdout")->capture_default_str();
  cmd->add_option("--out-format", o.out_format, "csv | json")->capture_default_str()->check(CLI::IsMember({"csv", "json"}));
  cmd->add_flag("--omit-timing", o.omit_timing, "Write 0 seconds so output is byte-stable");
}

ExperimentConfig config_from(const Options& o, Task task) {
  ExperimentConfig cfg;
  cfg.input = input_from(o);
  cfg.task = task;
  cfg.method = parse_method(o.method);
  cfg.variant = parse_variant(o.variant);
  cfg.k = o.k;
  if (!o.a_grid.empty()) cfg.a_grid = parse_grid(o.a_grid);
  cfg.epsilon = o.epsilon;
  cfg.c = o.c;
  cfg.ensemble_t = o.ensemble_t;
  cfg.repeats = o.repeats;
  cfg.seed = o.seed;
  return cfg;
}

int run(int argc, char** argv) {
  CLI::App app{"Adaptive CUR and Nystrom benchmarks"};
  app.require_subcommand(1);
  Options o;

  auto* cur = app.add_subcommand("cur", "CUR error ratios over an a-grid or epsilon");
  add_experiment_flags(cur, o);
  cur->add_option("--method", o.method, "adaptive | subspace | uniform")->capture_default_str();

  auto* nys = app.add_subcommand("nystrom", "Nystrom error ratios");
  add_experiment_flags(nys, o);
  nys->add_option("--method", o.method, "adaptive | subspace | uniform")->capture_default_str();
  nys->add_option("--variant", o.variant, "standard | standard-k | ensemble | modified")->capture_default_str();
  nys->add_option("--ensemble-t", o.ensemble_t, "Samples per ensemble")->capture_default_str();

  auto* lb = app.add_subcommand("lowerbound", "Closed-form bounds against measured error on the adversarial matrix");
  add_experiment_flags(lb, o);
  lb->add_option("--variant", o.variant, "standard | standard-k | ensemble | modified")->capture_default_str();
  lb->add_option("--ensemble-t", o.ensemble_t, "Samples per ensemble")->capture_default_str();
  lb->add_option("--m", o.m, "Matrix order");
  lb->add_option("--alpha", o.alpha, "Off-diagonal weight in [0, 1)");
  lb->add_option("--blocks", o.blocks, "Diagonal block count");
  lb->add_option("--c", o.c, "Columns per sample");

  auto* ker = app.add_subcommand("kernel", "Write an RBF kernel matrix");
  add_input_flags(ker, o);
  ker->add_option("--out", o.out, "Output path, - for stdout")->capture_default_str();
  ker->add_option("--out-format", o.out_format, "mm | csv")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  if (ker->parsed()) {
    if (o.points.empty() && o.random_points.empty()) throw ArgumentError("kernel needs --points or --random-points");
    const Matrix a = load_input(input_from(o));
    const MatrixFormat fmt = parse_format(o.out_format);
    if (o.out == "-") {
      write_matrix(a, fmt, std::cout);
      return 0;
    }
    std::ofstream f(o.out);
    if (!f) throw IoError("cannot open '" + o.out + "' for writing");
    write_matrix(a, fmt, f);
    if (!f.flush()) throw IoError("write failed for '" + o.out + "'");
    return 0;
  }

  const Task task = cur->parsed() ? Task::cur : nys->parsed() ? Task::nystrom : Task::lowerbound;
  auto records = run_experiment(config_from(o, task));
  for (auto& r : records) {
    if (o.omit_timing) r.seconds = 0.0;
    if (r.skip_reason) std::cerr << "skipped c=" << r.c << " r=" << r.r << ": " << *r.skip_reason << '\n';
  }
  emit(records, o.out_format == "json" ? OutputFormat::json : OutputFormat::csv, o.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
