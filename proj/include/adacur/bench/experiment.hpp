#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "adacur/adversarial.hpp"
#include "adacur/bench/ingest.hpp"
#include "adacur/matrix.hpp"

namespace adacur::bench {

enum class Task { cur, nystrom, lowerbound };
enum class Method { adaptive, subspace, uniform };
enum class Variant { standard, standard_k, ensemble, modified };

std::string to_string(Task t);
std::string to_string(Method m);
std::string to_string(Variant v);
Method parse_method(const std::string& s);
Variant parse_variant(const std::string& s);

/// Where the matrix comes from. Exactly one source is used, in this order:
/// file, point cloud (file or random), synthetic spectrum, adversarial spec.
struct InputSource {
  std::optional<std::filesystem::path> file;
  MatrixFormat format = MatrixFormat::matrix_market;

  std::optional<std::filesystem::path> points_file;
  std::optional<std::pair<Index, Index>> random_points;  // n x d
  double sigma = 1.0;

  std::optional<std::pair<Index, Index>> synthetic;  // m x n, spectrum 1/i

  std::optional<AdversarialSpec> adversarial;

  std::uint64_t data_seed = 0;
  Index dimension_cap = kDefaultDimensionCap;
};

Matrix load_input(const InputSource& src);

struct ExperimentConfig {
  InputSource input;
  Task task = Task::cur;
  Method method = Method::adaptive;
  Variant variant = Variant::modified;
  Index k = 10;
  /// Exactly one of a_grid (c = a k, r = a c) and epsilon is used.
  std::vector<Index> a_grid;
  std::optional<double> epsilon;
  /// Column count for the lowerbound task; defaults to a k.
  std::optional<Index> c;
  Index ensemble_t = 3;
  Index repeats = 10;
  std::uint64_t seed = 0;

  void validate() const;
};

struct ResultRecord {
  std::string method;
  std::string variant;
  Index k = 0;
  Index c = 0;
  Index r = 0;
  /// Minimum over repeats; NaN when the point was skipped.
  double error_ratio = 0.0;
  std::vector<double> errors;
  double seconds = 0.0;
  std::uint64_t seed = 0;
  /// lowerbound task: closed-form bound and the measured residual (Frobenius).
  std::optional<double> bound;
  std::optional<double> measured;
  std::optional<std::string> skip_reason;

  bool operator==(const ResultRecord&) const;
};

/// One record per a-grid point (or one for epsilon). Repeats use seeds
/// seed + i; points that do not fit the matrix are skipped with a reason.
std::vector<ResultRecord> run_experiment(const ExperimentConfig& config);
std::vector<ResultRecord> run_experiment(const ExperimentConfig& config, const Matrix& a);

enum class OutputFormat { csv, json };

inline constexpr const char* kCsvHeader = "method,variant,k,c,r,error_ratio,seconds,seed";

void write_csv(const std::vector<ResultRecord>& records, std::ostream& out);
void write_json(const std::vector<ResultRecord>& records, std::ostream& out);
std::vector<ResultRecord> read_json(const std::string& text);

/// Writes to `path`, or stdout when path is "-". Throws IoError on failure.
void emit(const std::vector<ResultRecord>& records, OutputFormat format, const std::filesystem::path& path);

/// Dense CSV or Matrix Market array output, 17 significant digits.
void write_matrix(const Matrix& a, MatrixFormat format, std::ostream& out);

}  // namespace adacur::bench
