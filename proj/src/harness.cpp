#include "zqgeom/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "trial_rng.hpp"
#include "zqgeom/errors.hpp"

namespace zqgeom {

namespace {

using u128 = unsigned __int128;

std::int64_t parse_int(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(text, &used);
  } catch (const std::exception&) {
    throw ConfigError("expected an integer for " + what + ", got '" + text + "'");
  }
  if (used != text.size()) {
    throw ConfigError("expected an integer for " + what + ", got '" + text + "'");
  }
  return v;
}

bool is_integer_list(const std::string& text) {
  if (text.empty()) return false;
  return std::all_of(text.begin(), text.end(), [](char c) {
    return (c >= '0' && c <= '9') || c == ',' || c == '-' || c == ' ';
  });
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  return out;
}

u128 checked_pow(u128 base, std::int64_t e) {
  u128 r = 1;
  for (std::int64_t i = 0; i < e; ++i) {
    if (base != 0 && r > std::numeric_limits<u128>::max() / base) {
      throw TooLarge("threshold arithmetic overflows 128 bits");
    }
    r *= base;
  }
  return r;
}

u128 checked_mul(u128 a, u128 b) {
  if (a != 0 && b > std::numeric_limits<u128>::max() / a) {
    throw TooLarge("threshold arithmetic overflows 128 bits");
  }
  return a * b;
}

std::int64_t space_size(const Modulus& m, int d) {
  std::int64_t n = 1;
  for (int i = 0; i < d; ++i) {
    if (n > (std::int64_t{1} << 40) / m.q()) throw TooLarge("q^d is too large");
    n *= m.q();
  }
  return n;
}

std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  u128 r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    r = r * static_cast<u128>(n - k + i) / static_cast<u128>(i);
    if (r > (u128{1} << 62)) throw TooLarge("too many subsets to sweep");
  }
  return static_cast<std::int64_t>(r);
}

// The rank-th k-subset of {0, ..., n-1} in lexicographic order.
std::vector<std::int64_t> unrank_subset(std::int64_t n, std::int64_t k, std::int64_t rank) {
  std::vector<std::int64_t> out;
  std::int64_t next = 0;
  for (std::int64_t slot = 0; slot < k; ++slot) {
    for (;; ++next) {
      const std::int64_t with = binomial(n - next - 1, k - slot - 1);
      if (rank < with) break;
      rank -= with;
    }
    out.push_back(next++);
  }
  return out;
}

std::vector<std::int64_t> random_subset(TrialRng& rng, std::int64_t universe, std::int64_t k) {
  std::vector<std::int64_t> pool(static_cast<std::size_t>(universe));
  for (std::int64_t i = 0; i < universe; ++i) pool[static_cast<std::size_t>(i)] = i;
  for (std::int64_t i = 0; i < k; ++i) {
    const auto j =
        i + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(universe - i)));
    std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
  }
  pool.resize(static_cast<std::size_t>(k));
  std::sort(pool.begin(), pool.end());
  return pool;
}

std::vector<std::int64_t> read_base_file(const std::string& path, const Modulus& m) {
  const PointSet a = read_point_set_file(path);
  if (a.dim() != 1) throw ConfigError("product base file must have d=1: " + path);
  if (!(a.modulus() == m)) throw ConfigError("product base file has a different q: " + path);
  std::vector<std::int64_t> base;
  for (const auto& v : a) base.push_back(v[0]);
  return base;
}

std::string format_number(double v) { return nlohmann::json(v).dump(); }

}  // namespace

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::t2: return "t2";
    case ExperimentKind::v2: return "v2";
    case ExperimentKind::dotprod: return "dotprod";
    case ExperimentKind::lemmas: return "lemmas";
  }
  return "unknown";
}

ExperimentKind parse_experiment_kind(const std::string& name) {
  if (name == "t2") return ExperimentKind::t2;
  if (name == "v2") return ExperimentKind::v2;
  if (name == "dotprod") return ExperimentKind::dotprod;
  if (name == "lemmas") return ExperimentKind::lemmas;
  throw ConfigError("unknown experiment kind '" + name + "'");
}

SetSource parse_set_source(const std::string& spec) {
  if (spec == "full") return FullSource{};
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw ConfigError("malformed set source '" + spec + "'");
  const std::string head = spec.substr(0, colon);
  const std::string rest = spec.substr(colon + 1);
  if (head == "random") {
    const auto n = parse_int(rest, "random set size");
    if (n < 0) throw ConfigError("random set size must be >= 0");
    return RandomSource{n};
  }
  if (head == "file") {
    if (rest.empty()) throw ConfigError("file source needs a path");
    return FileSource{rest};
  }
  if (head == "product") {
    ProductSource src;
    if (rest.rfind("all:", 0) == 0 || rest.rfind("random:", 0) == 0) {
      src.mode = rest[0] == 'a' ? ProductSource::Mode::all_bases
                                : ProductSource::Mode::random_base;
      src.base_size = parse_int(rest.substr(rest.find(':') + 1), "product base size");
      if (src.base_size < 1) throw ConfigError("product base size must be >= 1");
    } else if (is_integer_list(rest)) {
      for (const auto& tok : split(rest, ',')) src.base.push_back(parse_int(tok, "base element"));
      if (src.base.empty()) throw ConfigError("product base must be nonempty");
    } else if (!rest.empty()) {
      src.mode = ProductSource::Mode::file_base;
      src.base_file = rest;
    } else {
      throw ConfigError("product source needs a base");
    }
    return src;
  }
  throw ConfigError("unknown set source '" + spec + "'");
}

std::string describe(const SetSource& source) {
  struct Visitor {
    std::string operator()(const RandomSource& s) const {
      return "random:" + std::to_string(s.size);
    }
    std::string operator()(const FileSource& s) const { return "file:" + s.path; }
    std::string operator()(const FullSource&) const { return "full"; }
    std::string operator()(const ProductSource& s) const {
      switch (s.mode) {
        case ProductSource::Mode::all_bases: return "product:all:" + std::to_string(s.base_size);
        case ProductSource::Mode::random_base:
          return "product:random:" + std::to_string(s.base_size);
        case ProductSource::Mode::file_base: return "product:" + s.base_file;
        case ProductSource::Mode::explicit_base: break;
      }
      std::string out = "product:";
      for (std::size_t i = 0; i < s.base.size(); ++i) {
        out += (i ? "," : "") + std::to_string(s.base[i]);
      }
      return out;
    }
  };
  return std::visit(Visitor{}, source);
}

ReportFormat parse_report_format(const std::string& name) {
  if (name == "json") return ReportFormat::json;
  if (name == "csv") return ReportFormat::csv;
  throw ConfigError("unknown report format '" + name + "'");
}

void validate(const ExperimentConfig& cfg) {
  const Modulus m = cfg.modulus();
  if (cfg.d < 1) throw ConfigError("dimension must be >= 1");
  if ((cfg.kind == ExperimentKind::t2 || cfg.kind == ExperimentKind::v2) && cfg.d != 2) {
    throw ConfigError(to_string(cfg.kind) + " experiments live in the plane; use --d 2");
  }
  if (cfg.trials < 1) throw ConfigError("trials must be >= 1");
  const std::int64_t n = space_size(m, cfg.d);
  if (const auto* r = std::get_if<RandomSource>(&cfg.set_source)) {
    if (r->size > n) {
      throw SizeTooLarge("random set of size " + std::to_string(r->size) + " exceeds q^d = " +
                         std::to_string(n));
    }
  }
  if (const auto* s = std::get_if<ProductSource>(&cfg.set_source)) {
    if ((s->mode == ProductSource::Mode::all_bases ||
         s->mode == ProductSource::Mode::random_base) &&
        s->base_size > m.q()) {
      throw SizeTooLarge("product base of size " + std::to_string(s->base_size) +
                         " exceeds q = " + std::to_string(m.q()));
    }
  }
}

std::int64_t effective_trials(const ExperimentConfig& cfg) {
  if (const auto* s = std::get_if<ProductSource>(&cfg.set_source)) {
    if (s->mode == ProductSource::Mode::all_bases) {
      return binomial(cfg.modulus().q(), s->base_size);
    }
  }
  return cfg.trials;
}

PointSet generate_set(const ExperimentConfig& cfg, std::int64_t trial) {
  validate(cfg);
  const Modulus m = cfg.modulus();
  struct Visitor {
    const ExperimentConfig& cfg;
    const Modulus& m;
    std::int64_t trial;

    PointSet operator()(const FullSource&) const { return PointSet::full(m, cfg.d); }
    PointSet operator()(const FileSource& s) const {
      PointSet e = read_point_set_file(s.path);
      if (!(e.modulus() == m) || e.dim() != cfg.d) {
        throw ConfigError("point-set file " + s.path + " does not match q=" +
                          std::to_string(m.q()) + " d=" + std::to_string(cfg.d));
      }
      return e;
    }
    PointSet operator()(const RandomSource& s) const {
      TrialRng rng(cfg.seed, static_cast<std::uint64_t>(trial));
      std::vector<Vector> pts;
      for (auto k : random_subset(rng, space_size(m, cfg.d), s.size)) {
        pts.push_back(from_flat_index(m, cfg.d, k));
      }
      return PointSet(m, cfg.d, std::move(pts));
    }
    PointSet operator()(const ProductSource& s) const {
      switch (s.mode) {
        case ProductSource::Mode::explicit_base: return PointSet::product(m, cfg.d, s.base);
        case ProductSource::Mode::file_base:
          return PointSet::product(m, cfg.d, read_base_file(s.base_file, m));
        case ProductSource::Mode::all_bases: {
          const std::int64_t total = binomial(m.q(), s.base_size);
          if (trial < 0 || trial >= total) {
            throw ConfigError("trial " + std::to_string(trial) + " outside the " +
                              std::to_string(total) + " bases of the sweep");
          }
          return PointSet::product(m, cfg.d, unrank_subset(m.q(), s.base_size, trial));
        }
        case ProductSource::Mode::random_base: {
          TrialRng rng(cfg.seed, static_cast<std::uint64_t>(trial));
          return PointSet::product(m, cfg.d, random_subset(rng, m.q(), s.base_size));
        }
      }
      throw ConfigError("unknown product mode");
    }
  };
  return std::visit(Visitor{cfg, m, trial}, cfg.set_source);
}

PointSet read_point_set(std::istream& in) {
  std::string line;
  std::optional<Modulus> m;
  int d = 0;
  std::vector<Vector> pts;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(lineno);
    if (!m) {
      std::istringstream hs(line);
      std::string a, b, extra;
      hs >> a >> b;
      if (a.rfind("q=", 0) != 0 || b.rfind("d=", 0) != 0 || (hs >> extra)) {
        throw ConfigError(where + ": expected header 'q=<q> d=<d>'");
      }
      m = Modulus::from_q(parse_int(a.substr(2), "q"));
      d = static_cast<int>(parse_int(b.substr(2), "d"));
      if (d < 1) throw ConfigError(where + ": d must be >= 1");
      continue;
    }
    const auto fields = split(line, ',');
    if (static_cast<int>(fields.size()) != d) {
      throw ConfigError(where + ": expected " + std::to_string(d) + " coordinates");
    }
    std::vector<std::int64_t> c;
    for (const auto& f : fields) {
      const auto v = parse_int(f, "coordinate");
      if (v < 0 || v >= m->q()) throw ConfigError(where + ": coordinate out of [0, q)");
      c.push_back(v);
    }
    pts.emplace_back(*m, std::span<const std::int64_t>(c));
  }
  if (!m) throw ConfigError("point-set file has no header");
  return PointSet(*m, d, std::move(pts));
}

PointSet read_point_set_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open point-set file " + path);
  return read_point_set(in);
}

void write_point_set(std::ostream& out, const PointSet& e) {
  out << "q=" << e.modulus().q() << " d=" << e.dim() << '\n';
  for (const auto& v : e) {
    for (int i = 0; i < v.dim(); ++i) out << (i ? "," : "") << v[i];
    out << '\n';
  }
}

SizeThreshold size_threshold(ExperimentKind kind, const Modulus& m, int d) {
  SizeThreshold t;
  const double p = static_cast<double>(m.p()), q = static_cast<double>(m.q());
  const int l = m.l();
  switch (kind) {
    case ExperimentKind::t2:
      t.condition = "|E|^3 >= 3*p^(6l-1)";
      t.size_threshold = std::cbrt(3.0) * std::pow(p, 2.0 * l - 1.0 / 3.0);
      break;
    case ExperimentKind::v2:
      t.condition = "|E|^2 > p^(4l-1)";
      t.size_threshold = std::pow(p, 2.0 * l - 0.5);
      break;
    case ExperimentKind::dotprod:
      t.condition = "|E|^(2l) >= q^(d(2l-1)+1)";
      t.size_threshold = std::pow(q, d * (2.0 * l - 1) / (2.0 * l) + 1.0 / (2.0 * l));
      break;
    case ExperimentKind::lemmas: throw ConfigError("the lemma suite has no size threshold");
  }
  const std::int64_t n = space_size(m, d);
  std::int64_t lo = 0, hi = n + 1;  // hi is "unattainable" when nothing fits
  if (!meets_threshold(kind, m, d, n)) {
    t.min_size = n + 1;
    return t;
  }
  hi = n;
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (meets_threshold(kind, m, d, mid)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  t.min_size = lo;
  return t;
}

bool meets_threshold(ExperimentKind kind, const Modulus& m, int d, std::int64_t set_size) {
  const auto e = static_cast<u128>(set_size);
  const auto p = static_cast<u128>(m.p());
  const int l = m.l();
  switch (kind) {
    case ExperimentKind::t2: return checked_pow(e, 3) >= checked_mul(3, checked_pow(p, 6 * l - 1));
    case ExperimentKind::v2: return checked_pow(e, 2) > checked_pow(p, 4 * l - 1);
    case ExperimentKind::dotprod:
      return checked_pow(e, 2 * l) >=
             checked_pow(static_cast<u128>(m.q()), std::int64_t{d} * (2 * l - 1) + 1);
    case ExperimentKind::lemmas: break;
  }
  throw ConfigError("the lemma suite has no size threshold");
}

std::int64_t statistic_bound(ExperimentKind kind, const Modulus& m) {
  const std::int64_t p = m.p(), q = m.q();
  switch (kind) {
    case ExperimentKind::t2: {
      const std::int64_t cube = q * q * q;
      return (cube + 1) / 2;
    }
    case ExperimentKind::v2: {
      // q(1+p)/(4p) - 1 = (q(1+p) - 4p) / (4p); the numerator is >= 0 for p >= 3.
      const std::int64_t num = q * (1 + p) - 4 * p;
      return (num + 4 * p - 1) / (4 * p);
    }
    case ExperimentKind::dotprod: return (q + 1) / 2;
    case ExperimentKind::lemmas: break;
  }
  throw ConfigError("the lemma suite has no statistic bound");
}

bool Report::all_pass() const {
  const bool trials_ok =
      std::all_of(trials.begin(), trials.end(), [](const TrialRecord& t) { return t.pass; });
  const bool checks_ok = std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) {
    return c.skipped || c.pass;
  });
  return trials_ok && checks_ok;
}

nlohmann::json to_json(const Report& r) {
  using nlohmann::json;
  json j;
  j["schema"] = r.schema;
  j["kind"] = r.kind;
  j["config"] = r.config;
  if (r.threshold) {
    j["threshold"] = {{"condition", r.threshold->condition},
                      {"size_threshold", r.threshold->size_threshold},
                      {"min_size", r.threshold->min_size}};
  } else {
    j["threshold"] = nullptr;
  }
  j["below_threshold"] = r.below_threshold;
  j["warnings"] = r.warnings;
  j["trials"] = json::array();
  for (const auto& t : r.trials) {
    j["trials"].push_back({{"trial", t.trial},
                           {"set_size", t.set_size},
                           {"statistic", t.statistic},
                           {"bound", t.bound},
                           {"pass", t.pass},
                           {"ratio", t.ratio}});
  }
  j["checks"] = json::array();
  for (const auto& c : r.checks) {
    j["checks"].push_back({{"name", c.name},
                           {"anchor", c.anchor},
                           {"relation", c.relation},
                           {"statistic", c.statistic},
                           {"bound", c.bound},
                           {"cases", c.cases},
                           {"witness", c.witness},
                           {"pass", c.pass},
                           {"skipped", c.skipped},
                           {"note", c.note}});
  }
  j["aggregate"] = {{"min", r.aggregate.min},
                    {"max", r.aggregate.max},
                    {"mean", r.aggregate.mean},
                    {"min_ratio", r.aggregate.min_ratio}};
  j["wall_time_s"] = r.wall_time_s;
  return j;
}

Report report_from_json(const nlohmann::json& j) {
  try {
    Report r;
    r.schema = j.at("schema").get<int>();
    if (r.schema != 1) throw ConfigError("unsupported report schema " + std::to_string(r.schema));
    r.kind = j.at("kind").get<std::string>();
    r.config = j.at("config");
    if (!j.at("threshold").is_null()) {
      const auto& t = j.at("threshold");
      r.threshold = SizeThreshold{t.at("condition").get<std::string>(),
                                  t.at("size_threshold").get<double>(),
                                  t.at("min_size").get<std::int64_t>()};
    }
    r.below_threshold = j.at("below_threshold").get<bool>();
    r.warnings = j.at("warnings").get<std::vector<std::string>>();
    for (const auto& t : j.at("trials")) {
      r.trials.push_back({t.at("trial").get<std::int64_t>(), t.at("set_size").get<std::int64_t>(),
                          t.at("statistic").get<std::int64_t>(), t.at("bound").get<std::int64_t>(),
                          t.at("pass").get<bool>(), t.at("ratio").get<double>()});
    }
    for (const auto& c : j.at("checks")) {
      r.checks.push_back({c.at("name").get<std::string>(), c.at("anchor").get<std::string>(),
                          c.at("relation").get<std::string>(), c.at("statistic").get<double>(),
                          c.at("bound").get<double>(), c.at("cases").get<std::int64_t>(),
                          c.at("witness").get<std::string>(), c.at("pass").get<bool>(),
                          c.at("skipped").get<bool>(), c.at("note").get<std::string>()});
    }
    const auto& a = j.at("aggregate");
    r.aggregate = {a.at("min").get<std::int64_t>(), a.at("max").get<std::int64_t>(),
                   a.at("mean").get<double>(), a.at("min_ratio").get<double>()};
    r.wall_time_s = j.at("wall_time_s").get<double>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed report: ") + e.what());
  }
}

std::string render_report(const Report& r, ReportFormat format) {
  if (format == ReportFormat::json) return to_json(r).dump(2) + "\n";
  std::ostringstream out;
  out << "trial,set_size,statistic,bound,pass\n";
  for (const auto& t : r.trials) {
    out << t.trial << ',' << t.set_size << ',' << t.statistic << ',' << t.bound << ','
        << (t.pass ? "true" : "false") << '\n';
  }
  for (std::size_t i = 0; i < r.checks.size(); ++i) {
    const auto& c = r.checks[i];
    out << i << ',' << c.cases << ',' << format_number(c.statistic) << ','
        << format_number(c.bound) << ',' << (c.skipped || c.pass ? "true" : "false") << '\n';
  }
  return out.str();
}

void write_report(const Report& r, ReportFormat format, const std::string& path) {
  const std::string text = render_report(r, format);
  if (path.empty()) {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw IoError("failed writing report to standard output");
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open report file " + path);
  out << text;
  if (!out.flush()) throw IoError("failed writing report file " + path);
}

}  // namespace zqgeom
