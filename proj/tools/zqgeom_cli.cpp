// zqgeom: lemma verification, theorem experiments and point-set generation
// over Z_q^d, q = p^l.
//
// Exit status: 0 every check passed, 1 some check failed, 2 usage or config error.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "zqgeom/errors.hpp"
#include "zqgeom/harness.hpp"

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct Options {
  std::int64_t p = 3;
  int l = 1;
  int d = 2;
  std::string kind = "t2";
  std::string set = "full";
  std::int64_t trials = 1;
  std::uint64_t seed = 0;
  std::int64_t trial = 0;
  std::string out;
  std::string format = "json";
};

void add_ring_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--p", o.p, "odd prime p")->required();
  cmd->add_option("--l", o.l, "exponent l, q = p^l")->required();
}

zqgeom::ExperimentConfig to_config(const Options& o) {
  zqgeom::ExperimentConfig cfg;
  cfg.p = o.p;
  cfg.l = o.l;
  cfg.d = o.d;
  cfg.kind = zqgeom::parse_experiment_kind(o.kind);
  cfg.set_source = zqgeom::parse_set_source(o.set);
  cfg.trials = o.trials;
  cfg.seed = o.seed;
  cfg.output = o.out;
  cfg.format = zqgeom::parse_report_format(o.format);
  return cfg;
}

int emit(const zqgeom::Report& r, const zqgeom::ExperimentConfig& cfg) {
  zqgeom::write_report(r, cfg.format, cfg.output);
  for (const auto& w : r.warnings) std::cerr << "warning: " << w << '\n';
  return r.all_pass() ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact geometry over Z_{p^l}: lemma suite, theorem experiments, point sets"};
  app.require_subcommand(1);
  Options o;

  auto* lemmas = app.add_subcommand("verify-lemmas", "run every exhaustive lemma check for q = p^l");
  add_ring_options(lemmas, o);
  lemmas->add_option("--out", o.out, "report path (default: stdout)");
  lemmas->add_option("--format", o.format, "json or csv");

  auto* experiment = app.add_subcommand("experiment", "run a theorem experiment over generated sets");
  experiment->add_option("--kind", o.kind, "t2, v2, dotprod or lemmas")->required();
  add_ring_options(experiment, o);
  experiment->add_option("--d", o.d, "dimension (default 2)");
  experiment->add_option("--set", o.set,
                         "random:N | full | file:PATH | product:a,b,.. | product:PATH | "
                         "product:all:K | product:random:K");
  experiment->add_option("--trials", o.trials, "number of trials");
  experiment->add_option("--seed", o.seed, "64-bit seed");
  experiment->add_option("--out", o.out, "report path (default: stdout)");
  experiment->add_option("--format", o.format, "json or csv");

  auto* gen = app.add_subcommand("gen-set", "write a generated point set in the point-set format");
  add_ring_options(gen, o);
  gen->add_option("--d", o.d, "dimension (default 2)");
  gen->add_option("--set", o.set, "set source, as for experiment");
  gen->add_option("--seed", o.seed, "64-bit seed");
  gen->add_option("--trial", o.trial, "trial index");
  gen->add_option("--out", o.out, "output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kPass : kUsage;
  }

  try {
    if (*lemmas) {
      zqgeom::ExperimentConfig cfg;
      cfg.p = o.p;
      cfg.l = o.l;
      cfg.kind = zqgeom::ExperimentKind::lemmas;
      cfg.output = o.out;
      cfg.format = zqgeom::parse_report_format(o.format);
      return emit(zqgeom::run_lemma_suite(cfg.modulus()), cfg);
    }
    const auto cfg = to_config(o);
    if (*experiment) return emit(zqgeom::run_theorem_experiment(cfg), cfg);

    zqgeom::validate(cfg);
    const auto e = zqgeom::generate_set(cfg, o.trial);
    if (o.out.empty()) {
      zqgeom::write_point_set(std::cout, e);
    } else {
      std::ofstream f(o.out);
      if (!f) throw zqgeom::IoError("cannot open " + o.out);
      zqgeom::write_point_set(f, e);
    }
    return kPass;
  } catch (const zqgeom::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
}
