// Acceptance run: one PASS/FAIL line per criterion.
//
//   acceptance <path-to-zqgeom-cli> <scratch-dir>
//
// Exit status 0 when every criterion passes.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "zqgeom/configsets.hpp"
#include "zqgeom/fourier.hpp"
#include "zqgeom/harness.hpp"
#include "zqgeom/orthogroup.hpp"

using namespace zqgeom;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Records the first failure; later ones are counted but not described.
class Tally {
 public:
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    if (failures_++ == 0) first_ = what;
  }
  Outcome outcome(std::string detail) const {
    if (failures_ == 0) return {true, std::move(detail)};
    return {false, first_ + " (" + std::to_string(failures_) + " failures)"};
  }

 private:
  int failures_ = 0;
  std::string first_;
};

std::string fmt(double x) {
  std::ostringstream s;
  s << x;
  return s.str();
}

std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

std::string point(const Vector& v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

Outcome stabilizer_bounds() {
  Tally t;
  std::string detail;
  for (std::int64_t q : {3, 9, 27, 7, 49, 5, 25}) {
    const Modulus m = Modulus::from_q(q);
    const PlaneAction action(m);
    const std::int64_t bound = m.pow_p(m.l() - 1);
    const bool all = m.minus_one_nonresidue();
    std::int64_t worst = 0;
    for (std::int64_t k = 1; k < q * q; ++k) {
      const Vector xi = from_flat_index(m, 2, k);
      if (!all && norm(xi).value() == 0) continue;
      const std::int64_t s = action.stabilizer_size(k);
      worst = std::max(worst, s);
      t.expect(s <= bound, "q=" + std::to_string(q) + " |Stab" + point(xi) + "| = " +
                               std::to_string(s) + " > " + std::to_string(bound));
    }
    if (q == 9) {
      t.expect(worst == 3, "q=9 maximum is " + std::to_string(worst) + ", expected 3");
      bool zero_norm_max = false;
      for (std::int64_t k = 1; k < q * q; ++k) {
        zero_norm_max |= action.stabilizer_size(k) == 3 &&
                         norm(from_flat_index(m, 2, k)).value() == 0;
      }
      t.expect(zero_norm_max, "q=9 maximum not attained at a zero-norm point");
      t.expect(action.stabilizer_size(flat_index(Vector(m, {3, 3}))) == 3, "|Stab(3,3)| != 3");
    }
    detail += "q=" + std::to_string(q) + ":" + std::to_string(worst) + " ";
  }
  return t.outcome("max |Stab| " + detail);
}

Outcome line_structure() {
  Tally t;
  for (std::int64_t q : {9, 27, 25}) {
    const Modulus m = Modulus::from_q(q);
    const std::string tag = "q=" + std::to_string(q);
    for (int n = 0; n < m.l(); ++n) {
      const auto pts = stratum_points(m, n);
      t.expect(static_cast<std::int64_t>(pts.size()) ==
                   ipow(m.p(), 2 * (m.l() - n)) - ipow(m.p(), 2 * (m.l() - n - 1)),
               tag + " lambda_" + std::to_string(n));
      const auto lines = lines_in_stratum(m, n);
      t.expect(static_cast<std::int64_t>(lines.size()) ==
                   m.pow_p(m.l() - n) + m.pow_p(m.l() - n - 1),
               tag + " |L_" + std::to_string(n) + "|");
      for (const auto& v : pts) {
        t.expect(static_cast<std::int64_t>(lines_through(v).size()) == m.pow_p(n),
                 tag + " incidence at " + point(v));
      }
    }
  }
  return t.outcome("strata, line counts and incidences agree for q = 9, 27, 25");
}

Outcome sphere_group_sizes() {
  Tally t;
  std::string detail;
  for (std::int64_t q : {3, 9, 27, 5, 25, 7, 49}) {
    const Modulus m = Modulus::from_q(q);
    const auto g = static_cast<std::int64_t>(so2_elements(m).size());
    const auto s1 = static_cast<std::int64_t>(sphere_points(RingElem(m, 1), 2).size());
    const double ratio = static_cast<double>(s1) / static_cast<double>(q);
    t.expect(g == s1, "q=" + std::to_string(q) + " |SO_2| != |S_1|");
    t.expect(ratio >= 0.5 && ratio <= 2.0, "q=" + std::to_string(q) + " |S_1|/q out of range");
    detail += std::to_string(q) + ":" + std::to_string(g) + " ";
  }
  return t.outcome("|SO_2| = |S_1| " + detail);
}

Outcome fourier_identities() {
  Tally t;
  std::mt19937_64 rng(20261019);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double inv_worst = 0, planch_worst = 0, fact_worst = 0;
  for (std::int64_t q : {3, 9, 27}) {
    const Modulus m = Modulus::from_q(q);
    for (int d : {1, 2}) {
      for (int i = 0; i < 100; ++i) {
        fourier::GridFunction f(m, d);
        double scale = 0, energy = 0;
        for (auto& v : f.values()) {
          v = {u(rng), u(rng)};
          scale = std::max(scale, std::abs(v));
          energy += std::norm(v);
        }
        energy /= static_cast<double>(f.size());
        const auto fhat = fourier::forward(f);
        inv_worst = std::max(inv_worst, fourier::max_abs_diff(fourier::inverse(fhat), f) / scale);
        planch_worst = std::max(planch_worst, fourier::plancherel_gap(f) / energy);
        fact_worst = std::max(fact_worst, fourier::max_abs_diff(fourier::forward_naive(f), fhat));
      }
    }
  }
  t.expect(inv_worst < 1e-9, "inversion error " + fmt(inv_worst));
  t.expect(planch_worst < 1e-9, "Plancherel error " + fmt(planch_worst));
  t.expect(fact_worst < 1e-10, "naive vs per-axis " + fmt(fact_worst));
  return t.outcome("inversion " + fmt(inv_worst) + ", Plancherel " + fmt(planch_worst) +
                   ", per-axis " + fmt(fact_worst));
}

PointSet random_set(const Modulus& m, std::size_t size, std::mt19937_64& rng) {
  auto pts = all_points(m, 2);
  std::shuffle(pts.begin(), pts.end(), rng);
  pts.erase(pts.begin() + static_cast<std::ptrdiff_t>(size), pts.end());
  return PointSet(m, 2, pts);
}

Outcome spectral_identity() {
  Tally t;
  const Modulus m(3, 2);
  const auto group = so2_elements(m);
  std::mt19937_64 rng(5);
  double worst = 0;
  for (int i = 0; i < 50; ++i) {
    const PointSet e = random_set(m, 1 + rng() % 12, rng);
    const auto ehat = fourier::forward(fourier::indicator(e));
    for (const auto& theta : group) {
      const auto nuhat = fourier::forward(to_grid(rotation_correlation(e, theta)));
      for (std::int64_t k = 0; k < 81; ++k) {
        const auto want =
            fourier::rotation_correlation_spectrum(ehat, theta, from_flat_index(m, 2, k));
        worst = std::max(worst, std::abs(nuhat[static_cast<std::size_t>(k)] - want));
      }
    }
  }
  t.expect(group.size() == 12, "expected 12 rotations");
  t.expect(worst < 1e-8, "max error " + fmt(worst));
  return t.outcome("max error " + fmt(worst) + " over 50 sets x 12 rotations x 81 frequencies");
}

Outcome moment_lemma() {
  Tally t;
  std::mt19937_64 rng(6);
  for (int i = 0; i < 1000; ++i) {
    std::vector<double> f(1 + rng() % 100);
    const int shape = i % 3;
    for (auto& v : f) {
      if (shape == 0) v = std::uniform_real_distribution<double>(0, 10)(rng);
      if (shape == 1) v = static_cast<double>(rng() % 5);
      if (shape == 2) v = rng() % 10 == 0 ? 50.0 : 0.0;
    }
    for (int n : {2, 3, 4}) {
      const auto b = third_moment_bound(f, n);
      t.expect(b.lhs <= b.rhs * (1 + 1e-12), "table " + std::to_string(i) + " n=" +
                                                 std::to_string(n) + ": lhs > rhs");
    }
    const std::vector<double> c(f.size(), static_cast<double>(rng() % 7));
    for (int n : {2, 3, 4}) {
      const auto b = third_moment_bound(c, n);
      t.expect(std::abs(b.lhs - b.rhs) <= 1e-12 * std::max(1.0, b.lhs),
               "constant table: lhs != rhs");
    }
  }

  const Modulus m3(3, 1);
  const auto plane3 = all_points(m3, 2);
  int small = 0;
  for (std::uint32_t mask = 1; mask < (1u << 9); ++mask) {
    if (__builtin_popcount(mask) > 4) continue;
    std::vector<Vector> pts;
    for (int i = 0; i < 9; ++i)
      if (mask & (1u << i)) pts.push_back(plane3[static_cast<std::size_t>(i)]);
    const PointSet e(m3, 2, pts);
    ++small;
    t.expect(sum_of_squares(t2_classes(e)) <= rotation_correlation_cubes(e),
             "chain fails on a subset of Z_3^2");
  }
  const Modulus m9(3, 2);
  std::mt19937_64 rng9(9);
  for (int i = 0; i < 100; ++i) {
    const PointSet e = random_set(m9, 1 + rng9() % 40, rng9);
    t.expect(sum_of_squares(t2_classes(e)) <= rotation_correlation_cubes(e),
             "chain fails on a random subset of Z_9^2");
  }
  return t.outcome("1000 tables x n in {2,3,4}; chain on " + std::to_string(small) +
                   " subsets of Z_3^2 and 100 of Z_9^2");
}

Outcome stratum_counting() {
  Tally t;
  std::string detail;
  for (std::int64_t q : {9, 27, 25}) {
    const Modulus m = Modulus::from_q(q);
    const auto f = difference_stratum_counts(m);
    const auto e = difference_stratum_counts_enumerated(m);
    t.expect(f.r == e.r && f.weighted == e.weighted,
             "q=" + std::to_string(q) + " formula and enumeration disagree");
    t.expect(f.weighted <= f.bound, "q=" + std::to_string(q) + " r > 2p^(4l-1)");
    detail += "q=" + std::to_string(q) + ": r=" + std::to_string(f.weighted) + "<=" +
              std::to_string(f.bound) + " ";
  }
  const auto s9 = difference_stratum_counts(Modulus(3, 2));
  t.expect(s9.weighted == 1944 && s9.bound == 4374, "q=9 r != 1944");
  return t.outcome(detail);
}

ExperimentConfig experiment(ExperimentKind kind, std::int64_t p, int l, const std::string& set,
                            std::int64_t trials, std::uint64_t seed) {
  ExperimentConfig cfg;
  cfg.p = p;
  cfg.l = l;
  cfg.kind = kind;
  cfg.set_source = parse_set_source(set);
  cfg.trials = trials;
  cfg.seed = seed;
  return cfg;
}

Outcome theorem1() {
  Tally t;
  const Report r = run_theorem_experiment(experiment(ExperimentKind::t2, 3, 1, "full", 1, 0));
  t.expect(r.trials.size() == 1, "expected one trial");
  if (r.trials.size() != 1) return t.outcome("");
  const auto& tr = r.trials[0];
  t.expect(tr.set_size == 9 && !r.below_threshold, "E = Z_3^2 should meet the threshold");
  t.expect(tr.statistic == 21, "|T_2(Z_3^2)| = " + std::to_string(tr.statistic) + ", pinned 21");
  t.expect(tr.bound == 14 && tr.pass, "bound 14 not met");
  return t.outcome("|T_2(Z_3^2)| = " + std::to_string(tr.statistic) + " >= 14");
}

Outcome theorem2() {
  Tally t;
  const Report r =
      run_theorem_experiment(experiment(ExperimentKind::v2, 3, 2, "random:47", 100, 42));
  t.expect(r.trials.size() == 100, "expected 100 trials");
  t.expect(!r.below_threshold, "|E| = 47 should meet |E|^2 > 3^7");
  t.expect(r.all_pass(), "some trial has |V_2| < 2");
  t.expect(r.aggregate.min >= 2, "min |V_2| < 2");
  return t.outcome("min |V_2| = " + std::to_string(r.aggregate.min) + " >= 2 over 100 trials");
}

Outcome theorem3() {
  Tally t;
  auto cfg = experiment(ExperimentKind::dotprod, 3, 2, "product:all:7", 1, 0);
  const Report r = run_theorem_experiment(cfg);
  t.expect(r.trials.size() == 36, "expected 36 subsets");
  t.expect(!r.below_threshold, "|A|^2 = 49 should meet the threshold");
  t.expect(r.all_pass(), "some subset has |Pi(A x A)| < 5");
  t.expect(r.aggregate.min == 9, "min |Pi| = " + std::to_string(r.aggregate.min) + ", pinned 9");
  t.expect(r.aggregate.min_ratio == 1.0, "min ratio " + fmt(r.aggregate.min_ratio));
  return t.outcome("min |Pi(A x A)| = " + std::to_string(r.aggregate.min) +
                   ", min ratio |Pi|/q = " + fmt(r.aggregate.min_ratio));
}

Outcome hensel() {
  Tally t;
  std::mt19937_64 rng(11);
  int roots = 0;
  for (std::int64_t p : {3, 5, 7}) {
    for (int l : {2, 3}) {
      const Modulus m(p, l);
      const auto q = static_cast<std::uint64_t>(m.q());
      for (int i = 0; i < 200; ++i) {
        const Polynomial f({static_cast<std::int64_t>(rng() % q), static_cast<std::int64_t>(rng() % q),
                            static_cast<std::int64_t>(1 + rng() % (q - 1))});
        for (std::int64_t r = 0; r < p; ++r) {
          if (f.eval_mod(r, p) != 0 || f.derivative().eval_mod(r, p) == 0) continue;
          ++roots;
          std::vector<std::int64_t> found;
          for (std::int64_t x = r; x < m.q(); x += p)
            if (f.eval_mod(x, m.q()) == 0) found.push_back(x);
          const auto lifted = hensel_lift_root(f, r, m).value();
          t.expect(found.size() == 1 && found[0] == lifted,
                   "p=" + std::to_string(p) + " l=" + std::to_string(l) + " root " +
                       std::to_string(r));
        }
      }
    }
  }
  t.expect(roots > 0, "no simple roots generated");
  return t.outcome(std::to_string(roots) + " simple roots lifted and matched");
}

std::string read_without_wall_time(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::string line, out;
  while (std::getline(in, line)) {
    if (line.find("\"wall_time_s\"") == std::string::npos) out += line + '\n';
  }
  return out;
}

Outcome determinism(const std::string& cli, const std::filesystem::path& dir) {
  Tally t;
  std::filesystem::create_directories(dir);
  const std::vector<std::string> runs{
      "experiment --kind v2 --p 3 --l 2 --set random:47 --trials 5 --seed 9",
      "experiment --kind t2 --p 3 --l 2 --set random:30 --trials 3 --seed 123456789012",
      "experiment --kind dotprod --p 3 --l 2 --set product:random:7 --trials 4 --seed 1",
      "experiment --kind dotprod --p 5 --l 1 --d 3 --set random:40 --trials 3 --seed 2",
      "experiment --kind v2 --p 3 --l 2 --set random:47 --trials 5 --seed 9 --format csv",
      "verify-lemmas --p 3 --l 2",
      "verify-lemmas --p 7 --l 1 --format csv",
  };
  int index = 0;
  for (const auto& args : runs) {
    const auto a = dir / ("run" + std::to_string(index) + "a.out");
    const auto b = dir / ("run" + std::to_string(index) + "b.out");
    ++index;
    const int ra = std::system((cli + " " + args + " --out " + a.string() + " 2>/dev/null").c_str());
    const int rb = std::system((cli + " " + args + " --out " + b.string() + " 2>/dev/null").c_str());
    t.expect(ra == rb, "exit codes differ for: " + args);
    const auto sa = read_without_wall_time(a);
    t.expect(!sa.empty(), "empty report for: " + args);
    t.expect(sa == read_without_wall_time(b), "reports differ for: " + args);
  }
  return t.outcome(std::to_string(runs.size()) + " configurations reproduced byte for byte");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: acceptance <zqgeom-cli> <scratch-dir>\n";
    return 2;
  }
  const std::string cli = argv[1];
  const std::filesystem::path scratch = argv[2];

  struct Criterion {
    int id;
    const char* title;
    double budget_s;  // 0: no runtime requirement
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "stabilizer bounds", 30, stabilizer_bounds},
      {2, "line structure", 10, line_structure},
      {3, "sphere and group sizes", 0, sphere_group_sizes},
      {4, "Fourier identities", 0, fourier_identities},
      {5, "spectral identity", 0, spectral_identity},
      {6, "moment lemma and triangle chain", 0, moment_lemma},
      {7, "stratum counting", 0, stratum_counting},
      {8, "triangle classes at threshold", 5, theorem1},
      {9, "nonzero areas", 60, theorem2},
      {10, "dot products of product sets", 10, theorem3},
      {11, "Hensel lifting", 0, hensel},
      {12, "CLI determinism", 0, [&] { return determinism(cli, scratch); }},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_s > 0 && secs > c.budget_s) {
      o.pass = false;
      o.detail += "; took " + fmt(secs) + " s, budget " + fmt(c.budget_s) + " s";
    }
    failed += !o.pass;
    std::printf("%s %2d %-32s %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", c.id, c.title,
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
