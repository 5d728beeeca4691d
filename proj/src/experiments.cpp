// Theorem-conclusion experiments over generated point sets.

#include <algorithm>
#include <chrono>
#include <limits>

#include "zqgeom/configsets.hpp"
#include "zqgeom/errors.hpp"
#include "zqgeom/harness.hpp"
#include "zqgeom/orthogroup.hpp"

namespace zqgeom {

namespace {

std::int64_t statistic_of(ExperimentKind kind, const PointSet& e) {
  switch (kind) {
    case ExperimentKind::t2: return static_cast<std::int64_t>(t2_classes(e).size());
    case ExperimentKind::v2: return static_cast<std::int64_t>(area_set_v2(e).size());
    case ExperimentKind::dotprod: return static_cast<std::int64_t>(product_set(e).size());
    case ExperimentKind::lemmas: break;
  }
  throw ConfigError("the lemma suite is not a set statistic");
}

nlohmann::json config_echo(const ExperimentConfig& cfg) {
  return {{"p", cfg.p},
          {"l", cfg.l},
          {"q", cfg.modulus().q()},
          {"d", cfg.d},
          {"kind", to_string(cfg.kind)},
          {"set", describe(cfg.set_source)},
          {"trials", effective_trials(cfg)},
          {"seed", cfg.seed}};
}

}  // namespace

Report run_theorem_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  const Modulus m = cfg.modulus();
  if (cfg.kind == ExperimentKind::lemmas) {
    Report r = run_lemma_suite(m);
    r.config = config_echo(cfg);
    return r;
  }
  const auto start = std::chrono::steady_clock::now();

  Report r;
  r.kind = to_string(cfg.kind);
  r.config = config_echo(cfg);
  r.threshold = size_threshold(cfg.kind, m, cfg.d);
  if (cfg.kind == ExperimentKind::t2 && !m.minus_one_nonresidue()) {
    r.warnings.emplace_back("p = 1 mod 4: the triangle bound assumes p = 3 mod 4; exploratory run");
  }
  if (cfg.kind == ExperimentKind::dotprod && !std::holds_alternative<ProductSource>(cfg.set_source) &&
      !std::holds_alternative<FullSource>(cfg.set_source)) {
    r.warnings.emplace_back("the dot-product bound assumes a product set A x ... x A");
  }

  const std::int64_t bound = statistic_bound(cfg.kind, m);
  const double q = static_cast<double>(m.q());
  const double normalizer = cfg.kind == ExperimentKind::t2 ? q * q * q : q;
  const std::int64_t trials = effective_trials(cfg);
  for (std::int64_t t = 0; t < trials; ++t) {
    const PointSet e = generate_set(cfg, t);
    const auto size = static_cast<std::int64_t>(e.size());
    if (!meets_threshold(cfg.kind, m, cfg.d, size)) r.below_threshold = true;
    TrialRecord rec;
    rec.trial = t;
    rec.set_size = size;
    rec.statistic = statistic_of(cfg.kind, e);
    rec.bound = bound;
    rec.pass = rec.statistic >= rec.bound;
    rec.ratio = static_cast<double>(rec.statistic) / normalizer;
    r.trials.push_back(rec);
  }
  if (r.below_threshold) {
    r.warnings.emplace_back("set size below the hypothesis " + r.threshold->condition +
                            " (min |E| = " + std::to_string(r.threshold->min_size) +
                            "); results are exploratory");
  }

  if (!r.trials.empty()) {
    r.aggregate.min = std::numeric_limits<std::int64_t>::max();
    r.aggregate.max = std::numeric_limits<std::int64_t>::min();
    r.aggregate.min_ratio = std::numeric_limits<double>::infinity();
    double sum = 0;
    for (const auto& t : r.trials) {
      r.aggregate.min = std::min(r.aggregate.min, t.statistic);
      r.aggregate.max = std::max(r.aggregate.max, t.statistic);
      r.aggregate.min_ratio = std::min(r.aggregate.min_ratio, t.ratio);
      sum += static_cast<double>(t.statistic);
    }
    r.aggregate.mean = sum / static_cast<double>(r.trials.size());
  }
  r.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace zqgeom
