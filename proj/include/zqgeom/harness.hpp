#pragma once

// Experiment configuration, reproducible set generation, the exhaustive
// lemma suite, theorem experiments and report serialization.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "zqgeom/point_set.hpp"

namespace zqgeom {

enum class ExperimentKind { t2, v2, dotprod, lemmas };

std::string to_string(ExperimentKind kind);
/// Throws ConfigError on an unknown name.
ExperimentKind parse_experiment_kind(const std::string& name);

/// Uniform subset of Z_q^d of the given size.
struct RandomSource {
  std::int64_t size = 0;
};

/// E = A x ... x A. The base A is given explicitly, read from a file, drawn at
/// random with a fixed size per trial, or swept over every subset of a fixed
/// size (trial t takes the t-th subset in lexicographic order).
struct ProductSource {
  enum class Mode { explicit_base, file_base, random_base, all_bases };
  Mode mode = Mode::explicit_base;
  std::vector<std::int64_t> base;  // explicit_base
  std::string base_file;           // file_base: a d=1 point-set file
  std::int64_t base_size = 0;      // random_base, all_bases
};

/// A point-set file.
struct FileSource {
  std::string path;
};

/// All of Z_q^d.
struct FullSource {};

using SetSource = std::variant<RandomSource, ProductSource, FileSource, FullSource>;

/// Parses "random:N", "full", "file:PATH", "product:a,b,c", "product:all:K",
/// "product:random:K" or "product:PATH". Throws ConfigError.
SetSource parse_set_source(const std::string& spec);
std::string describe(const SetSource& source);

enum class ReportFormat { json, csv };
ReportFormat parse_report_format(const std::string& name);

struct ExperimentConfig {
  std::int64_t p = 3;
  int l = 1;
  int d = 2;
  ExperimentKind kind = ExperimentKind::t2;
  SetSource set_source = FullSource{};
  std::int64_t trials = 1;
  std::uint64_t seed = 0;
  std::string output;  // empty: standard output
  ReportFormat format = ReportFormat::json;

  Modulus modulus() const { return Modulus(p, l); }
};

/// Throws ConfigError, InvalidModulus or SizeTooLarge when the config is unusable.
void validate(const ExperimentConfig& cfg);

/// Number of trials actually run. Equals cfg.trials except for a product sweep
/// over all bases, which runs once per base.
std::int64_t effective_trials(const ExperimentConfig& cfg);

/// Deterministic in (cfg.seed, trial). Random sampling is a Fisher-Yates shuffle
/// of the lexicographic point list driven by std::mt19937_64 seeded through
/// std::seed_seq{seed_lo, seed_hi, trial_lo, trial_hi}, with bounded draws by
/// rejection, so the sets are identical on every conforming platform.
PointSet generate_set(const ExperimentConfig& cfg, std::int64_t trial);

/// Point-set file: a header "q=<q> d=<d>", then one point per line as d
/// comma-separated residues in [0, q). '#' starts a comment.
PointSet read_point_set(std::istream& in);
PointSet read_point_set_file(const std::string& path);
void write_point_set(std::ostream& out, const PointSet& e);

/// Exact size hypothesis of a theorem experiment.
struct SizeThreshold {
  std::string condition;      // exact integer form of the hypothesis
  double size_threshold = 0;  // the real-valued right-hand side, for display
  std::int64_t min_size = 0;  // least |E| meeting the hypothesis

  friend bool operator==(const SizeThreshold&, const SizeThreshold&) = default;
};

SizeThreshold size_threshold(ExperimentKind kind, const Modulus& m, int d);
/// Evaluated in exact integer arithmetic.
bool meets_threshold(ExperimentKind kind, const Modulus& m, int d, std::int64_t set_size);
/// Integer lower bound the statistic must reach: ceil(q^3/2) for t2,
/// ceil(q(1+p)/(4p) - 1) for v2, ceil(q/2) for dotprod.
std::int64_t statistic_bound(ExperimentKind kind, const Modulus& m);

struct TrialRecord {
  std::int64_t trial = 0;
  std::int64_t set_size = 0;
  std::int64_t statistic = 0;
  std::int64_t bound = 0;
  bool pass = false;
  double ratio = 0;  // statistic / q^3 for t2, statistic / q otherwise

  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

/// One exhaustive check of the lemma suite. `relation` tells how statistic is
/// compared with bound ("<=" or "==").
struct CheckRecord {
  std::string name;
  std::string anchor;
  std::string relation;
  double statistic = 0;
  double bound = 0;
  std::int64_t cases = 0;
  std::string witness;
  bool pass = false;
  bool skipped = false;
  std::string note;

  friend bool operator==(const CheckRecord&, const CheckRecord&) = default;
};

struct Aggregate {
  std::int64_t min = 0;
  std::int64_t max = 0;
  double mean = 0;
  double min_ratio = 0;

  friend bool operator==(const Aggregate&, const Aggregate&) = default;
};

struct Report {
  int schema = 1;
  std::string kind;
  nlohmann::json config;
  std::optional<SizeThreshold> threshold;
  bool below_threshold = false;
  std::vector<std::string> warnings;
  std::vector<TrialRecord> trials;
  std::vector<CheckRecord> checks;
  Aggregate aggregate;
  double wall_time_s = 0;

  /// Every trial and every non-skipped check passed.
  bool all_pass() const;
};

nlohmann::json to_json(const Report& r);
/// Throws ConfigError on a malformed document.
Report report_from_json(const nlohmann::json& j);

/// JSON is the whole report; CSV is the per-row table with header
/// "trial,set_size,statistic,bound,pass". A lemma report writes one CSV row per
/// check (trial = check index, set_size = cases examined).
std::string render_report(const Report& r, ReportFormat format);
/// Writes to path, or to standard output when path is empty. Throws IoError.
void write_report(const Report& r, ReportFormat format, const std::string& path);

/// Runs every exhaustive check of the library for one modulus.
/// Throws TooLarge when q^2 > 10^6.
Report run_lemma_suite(const Modulus& m);

/// Runs cfg.kind over effective_trials(cfg) generated sets.
Report run_theorem_experiment(const ExperimentConfig& cfg);

}  // namespace zqgeom
