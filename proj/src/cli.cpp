#include "gmlab/cli.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "gmlab/gm_classes.hpp"
#include "gmlab/series_lab.hpp"

namespace gmlab::cli {

namespace {

// Every key accepted on the command line (as --key) and in config files.
const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys{
      "family", "r",     "r1",     "r2",     "c",      "m-max",         "n-max",         "grid-size",
      "N-max",  "cap",   "seed",   "trials", "out",    "format",        "strict",        "slope-bounded",
      "slope-growing", "remainder-tol"};
  return keys;
}

using RawConfig = std::map<std::string, std::string>;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

RawConfig read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path.string() + "'");
  RawConfig raw;
  std::string line;
  int lineno = 0;
  const auto& keys = known_keys();
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path.string() + ":" + std::to_string(lineno) + ": expected key=value");
    }
    auto key = trim(std::string_view(body).substr(0, eq));
    auto value = trim(std::string_view(body).substr(eq + 1));
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw UsageError(path.string() + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    raw[key] = value;
  }
  return raw;
}

Index to_index(const std::string& key, const std::string& text) {
  Index v = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end) throw UsageError("--" + key + ": expected an integer, got '" + text + "'");
  return v;
}

double to_real(const std::string& key, const std::string& text) {
  if (text.empty()) throw UsageError("--" + key + ": expected a number");
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || errno == ERANGE || !std::isfinite(v)) {
    throw UsageError("--" + key + ": expected a finite number, got '" + text + "'");
  }
  return v;
}

bool to_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text.empty()) return true;
  if (text == "false" || text == "0") return false;
  throw UsageError("--" + key + ": expected true or false, got '" + text + "'");
}

Index require_min(const std::string& key, Index v, Index min) {
  if (v < min) throw UsageError("--" + key + " must be >= " + std::to_string(min) + ", got " + std::to_string(v));
  return v;
}

Command parse_command(const std::string& name) {
  static const std::map<std::string, Command> table{{"defect", Command::Defect},   {"embed", Command::Embed},
                                                    {"lemma1", Command::Lemma1},   {"converge", Command::Converge},
                                                    {"diverge", Command::Diverge}, {"report", Command::Report}};
  const auto it = table.find(name);
  if (it == table.end()) throw UsageError("unknown command '" + name + "'");
  return it->second;
}

// Resolves the family from "--family name[:args]" plus the period/seed flags.
// An inline argument that disagrees with an explicit flag is contradictory.
FamilySpec resolve_family(const RawConfig& raw, const RunConfig& cfg) {
  FamilySpec fam;
  std::string text = raw.count("family") ? raw.at("family") : "powerlog";
  std::string inline_args;
  if (const auto colon = text.find(':'); colon != std::string::npos) {
    inline_args = text.substr(colon + 1);
    text = text.substr(0, colon);
  }
  fam.kind = text;
  fam.seed = cfg.seed;

  auto period_from = [&](const char* flag, Index fallback, bool flag_given) -> Index {
    if (!inline_args.empty()) {
      const Index v = to_index("family", inline_args);
      if (flag_given && v != fallback) {
        throw UsageError(std::string("contradictory family period: inline ") + inline_args + " vs --" + flag +
                         " " + std::to_string(fallback));
      }
      return v;
    }
    return fallback;
  };

  if (fam.kind == "thm2") {
    fam.period = require_min("r2", period_from("r2", cfg.r2, raw.count("r2") > 0), 1);
  } else if (fam.kind == "thm3") {
    fam.period = require_min("r1", period_from("r1", cfg.r1, raw.count("r1") > 0), 1);
  } else if (fam.kind == "remark4") {
    const bool has_r2 = raw.count("r2") > 0;
    const Index fallback = has_r2 ? cfg.r2 : (raw.count("r") ? cfg.r : 3);
    fam.period = period_from(has_r2 ? "r2" : "r", fallback, has_r2 || raw.count("r") > 0);
    if (fam.period < 3) throw UsageError("family remark4 needs a period >= 3");
  } else if (fam.kind == "remark3") {
    if (!inline_args.empty()) throw UsageError("family remark3 takes no parameters");
  } else if (fam.kind == "powerlog") {
    if (!inline_args.empty()) {
      const auto comma = inline_args.find(',');
      fam.p = to_real("family", inline_args.substr(0, comma));
      fam.q = comma == std::string::npos ? 0.0 : to_real("family", inline_args.substr(comma + 1));
    }
    if (fam.p < 0.0 || fam.q < 0.0) throw UsageError("family powerlog needs p >= 0 and q >= 0");
  } else if (fam.kind == "random") {
    if (!inline_args.empty()) fam.length = require_min("family", to_index("family", inline_args), 1);
  } else {
    throw UsageError("unknown family '" + fam.kind + "'");
  }
  return fam;
}

std::vector<Index> dyadic_between(Index lo, Index hi) {
  std::vector<Index> out;
  for (Index n = 1; n <= hi; n *= 2) {
    if (n >= lo) out.push_back(n);
  }
  return out;
}

std::string summary_real(double v) { return format_real(v); }

ClassifyThresholds thresholds_of(const RunConfig& cfg) {
  ClassifyThresholds t;
  t.bounded_slope_max = cfg.slope_bounded;
  t.growing_slope_min = cfg.slope_growing;
  return t;
}

std::vector<double> membership_cs(double c) { return {c, 2.0 * c, 4.0 * c}; }

std::vector<Index> converge_grid(const RunConfig& cfg) {
  const Index lo = std::min<Index>(16, cfg.n_max);
  return dyadic_between(lo, cfg.n_max);
}

int run_defect(const RunConfig& cfg, std::ostream& out) {
  const auto seq = cfg.family.build();
  const auto rep = defect_profile(seq, cfg.r, BetaSpec::star(cfg.r, cfg.c), dyadic_grid(cfg.m_max), thresholds_of(cfg));
  write_report(rep, cfg.format, cfg.output_path);
  out << "verdict=" << to_string(rep.verdict) << " max_ratio=" << summary_real(rep.max_ratio)
      << " slope=" << summary_real(rep.slope) << "\n";
  return kOk;
}

int run_embed(const RunConfig& cfg, std::ostream& out) {
  const auto seq = cfg.family.build();
  const auto grid = dyadic_grid(cfg.m_max);
  SummaryReport summary;
  Verdict verdicts[2];
  const Index steps[2] = {cfg.r1, cfg.r2};
  for (int i = 0; i < 2; ++i) {
    const auto mem = membership_profile(seq, steps[i], membership_cs(cfg.c), grid, thresholds_of(cfg));
    verdicts[i] = mem.verdict;
    for (std::size_t j = 0; j < mem.per_c.size(); ++j) {
      const auto& rep = mem.per_c[j];
      summary.rows.push_back({cfg.family.label(), steps[i], mem.cs[j], rep.verdict, rep.max_ratio, rep.slope});
    }
  }
  write_report(summary, cfg.format, cfg.output_path);
  std::string token = "inconclusive";
  if (verdicts[0] == Verdict::Growing && verdicts[1] == Verdict::Bounded) token = "separated";
  if (verdicts[0] == Verdict::Bounded && verdicts[1] == Verdict::Growing) token = "reverse_separated";
  if (verdicts[0] == Verdict::Bounded && verdicts[1] == Verdict::Bounded) token = "both_bounded";
  if (verdicts[0] == Verdict::Growing && verdicts[1] == Verdict::Growing) token = "both_growing";
  out << "verdict=" << token << " r1_verdict=" << to_string(verdicts[0]) << " r2_verdict=" << to_string(verdicts[1])
      << "\n";
  return kOk;
}

int run_lemma1(const RunConfig& cfg, std::ostream& out) {
  Lemma1SuiteOptions opt;
  opt.seed = cfg.seed;
  opt.trials = cfg.trials;
  opt.n_max = cfg.n_max;
  opt.r_max = cfg.r;
  const auto rep = lemma1_suite(opt);
  write_report(rep, cfg.format, cfg.output_path);
  out << "max_residual=" << summary_real(rep.max_residual) << " pass=" << (rep.pass ? "true" : "false") << "\n";
  return kOk;
}

int run_converge(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const SineSeries series{cfg.family.build(), cfg.family.label()};
  ConvergenceOptions opt;
  opt.r = cfg.r;
  opt.c = cfg.c;
  opt.n_grid = converge_grid(cfg);
  opt.N_max = cfg.N_max;
  opt.cap = cfg.cap;
  opt.remainder_tol = cfg.remainder_tol;
  const auto grid = EvalGrid::chebyshev(cfg.grid_size, cfg.r);
  const auto rep = convergence_report(series, grid, opt);
  write_report(rep, cfg.format, cfg.output_path);
  out << "verdict=" << to_string(rep.verdict) << " final_sup_remainder=" << summary_real(rep.sup_remainder.back())
      << " tail_bound=" << summary_real(rep.tail_bound) << " cap_attained=" << (rep.cap_attained ? "true" : "false")
      << "\n";
  if (rep.cap_attained) {
    err << "warning: an epsilon supremum was first attained at the cap (" << cfg.cap << ")\n";
    if (cfg.strict) return kNumericalGuard;
  }
  return kOk;
}

int run_diverge(const RunConfig& cfg, std::ostream& out) {
  const auto rep = remark3_checkpoints(cfg.n_max);
  write_report(rep, cfg.format, cfg.output_path);
  const auto& last = rep.rows.back();
  out << "verdict=" << to_string(rep.verdict) << " partial_sum=" << summary_real(last.partial_sum)
      << " lower_bound=" << summary_real(last.lower_bound) << "\n";
  return kOk;
}

int run_report(const RunConfig& cfg, std::ostream& out) {
  const std::vector<FamilySpec> families = [] {
    std::vector<FamilySpec> f;
    auto add = [&](std::string kind, Index period, double p = 1.0, double q = 0.0) {
      FamilySpec s;
      s.kind = std::move(kind);
      s.period = period;
      s.p = p;
      s.q = q;
      f.push_back(s);
    };
    add("thm2", 2);
    add("thm2", 4);
    add("thm3", 2);
    add("remark3", 0);
    add("remark4", 3);
    add("remark4", 4);
    add("remark4", 5);
    add("powerlog", 0, 1.0, 0.0);
    add("powerlog", 0, 2.0, 0.0);
    add("powerlog", 0, 1.0, 1.0);
    return f;
  }();
  const auto grid = dyadic_grid(cfg.m_max);
  SummaryReport summary;
  for (const auto& fam : families) {
    const auto seq = fam.build();
    for (Index r = 1; r <= 5; ++r) {
      const auto mem = membership_profile(seq, r, membership_cs(cfg.c), grid, thresholds_of(cfg));
      // Representative c: the first bounded one, else the one with the smallest slope.
      std::size_t pick = 0;
      for (std::size_t j = 0; j < mem.per_c.size(); ++j) {
        if (mem.per_c[j].verdict == Verdict::Bounded) {
          pick = j;
          break;
        }
        if (mem.per_c[j].slope < mem.per_c[pick].slope) pick = j;
      }
      const auto& rep = mem.per_c[pick];
      summary.rows.push_back({fam.label(), r, mem.cs[pick], mem.verdict, rep.max_ratio, rep.slope});
    }
  }
  write_report(summary, cfg.format, cfg.output_path);
  out << "verdict=complete rows=" << summary.rows.size() << "\n";
  return kOk;
}

}  // namespace

RealSequence FamilySpec::build() const {
  if (kind == "thm2") return family_theorem2(period);
  if (kind == "thm3") return family_theorem3(period);
  if (kind == "remark3") return family_remark3();
  if (kind == "remark4") return family_remark4(period);
  if (kind == "powerlog") return family_power_log(p, q);
  if (kind == "random") return family_random(seed, length, 1.0);
  throw UsageError("unknown family '" + kind + "'");
}

std::string FamilySpec::label() const {
  if (kind == "thm2" || kind == "thm3" || kind == "remark4") return kind + ":" + std::to_string(period);
  if (kind == "powerlog") return kind + ":" + format_real(p) + ";" + format_real(q);
  if (kind == "random") return kind + ":" + std::to_string(length) + ";seed=" + std::to_string(seed);
  return kind;
}

std::string_view to_string(Command c) {
  switch (c) {
    case Command::Defect:
      return "defect";
    case Command::Embed:
      return "embed";
    case Command::Lemma1:
      return "lemma1";
    case Command::Converge:
      return "converge";
    case Command::Diverge:
      return "diverge";
    case Command::Report:
      return "report";
  }
  return "defect";
}

RunConfig parse_config(const std::vector<std::string>& args, const std::optional<std::filesystem::path>& file) {
  CLI::App app{"gmlab: general monotone sequence and sine series laboratory", "gmlab"};
  std::string command;
  app.add_option("command", command, "defect | embed | lemma1 | converge | diverge | report")->required();
  std::map<std::string, std::string> flag_values;
  std::map<std::string, CLI::Option*> flag_opts;
  for (const auto& key : known_keys()) {
    if (key == "strict") {
      flag_opts[key] = app.add_flag("--strict", "exit 2 when a numerical guard trips");
    } else {
      flag_opts[key] = app.add_option("--" + key, flag_values[key]);
    }
  }
  std::string config_path;
  app.add_option("--config", config_path, "key=value configuration file");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  RawConfig raw;
  if (file) raw = read_config_file(*file);
  if (!config_path.empty()) {
    if (file) throw UsageError("contradictory configuration: both a config file argument and --config given");
    raw = read_config_file(config_path);
  }
  for (const auto& [key, opt] : flag_opts) {
    if (opt->count() == 0) continue;
    raw[key] = key == "strict" ? "true" : flag_values[key];
  }

  RunConfig cfg;
  cfg.command = parse_command(command);
  if (cfg.command == Command::Lemma1) {
    cfg.r = 8;
    cfg.n_max = 64;
  } else if (cfg.command == Command::Converge) {
    cfg.r = 2;
  } else if (cfg.command == Command::Diverge) {
    cfg.n_max = 1'000'000;
  }
  auto get = [&](const char* key) -> const std::string* {
    const auto it = raw.find(key);
    return it == raw.end() ? nullptr : &it->second;
  };
  if (auto* v = get("r")) cfg.r = require_min("r", to_index("r", *v), 1);
  if (auto* v = get("r1")) cfg.r1 = require_min("r1", to_index("r1", *v), 1);
  if (auto* v = get("r2")) cfg.r2 = require_min("r2", to_index("r2", *v), 1);
  if (auto* v = get("c")) cfg.c = to_real("c", *v);
  if (!(cfg.c > 1.0)) throw UsageError("--c must exceed 1");
  if (auto* v = get("m-max")) cfg.m_max = require_min("m-max", to_index("m-max", *v), 1);
  if (auto* v = get("n-max")) cfg.n_max = require_min("n-max", to_index("n-max", *v), 1);
  if (auto* v = get("grid-size")) cfg.grid_size = static_cast<std::size_t>(require_min("grid-size", to_index("grid-size", *v), 1));
  if (auto* v = get("N-max")) cfg.N_max = require_min("N-max", to_index("N-max", *v), 1);
  if (auto* v = get("cap")) cfg.cap = require_min("cap", to_index("cap", *v), 1);
  if (auto* v = get("seed")) cfg.seed = static_cast<std::uint64_t>(require_min("seed", to_index("seed", *v), 0));
  if (auto* v = get("trials")) cfg.trials = require_min("trials", to_index("trials", *v), 1);
  if (auto* v = get("slope-bounded")) cfg.slope_bounded = to_real("slope-bounded", *v);
  if (auto* v = get("slope-growing")) cfg.slope_growing = to_real("slope-growing", *v);
  if (!(cfg.slope_bounded < cfg.slope_growing)) {
    throw UsageError("--slope-bounded must be below --slope-growing");
  }
  if (auto* v = get("remainder-tol")) cfg.remainder_tol = to_real("remainder-tol", *v);
  if (!(cfg.remainder_tol >= 0.0)) throw UsageError("--remainder-tol must be >= 0");
  if (auto* v = get("strict")) cfg.strict = to_bool("strict", *v);
  if (auto* v = get("format")) {
    if (*v == "csv") {
      cfg.format = Format::Csv;
    } else if (*v == "json") {
      cfg.format = Format::Json;
    } else {
      throw UsageError("--format must be csv or json, got '" + *v + "'");
    }
  }
  if (auto* v = get("out")) {
    if (v->empty()) throw UsageError("--out must not be empty");
    cfg.output_path = *v;
  } else {
    cfg.output_path = "gmlab_" + std::string(to_string(cfg.command)) + (cfg.format == Format::Csv ? ".csv" : ".json");
  }

  cfg.family = resolve_family(raw, cfg);

  if (cfg.command == Command::Embed && cfg.r1 >= cfg.r2) {
    throw UsageError("contradictory steps: embed needs --r1 < --r2");
  }
  if (cfg.command == Command::Converge) {
    const auto grid = converge_grid(cfg);
    if (cfg.N_max < 2 * grid.back()) throw UsageError("--N-max must be at least 2 * --n-max");
    if (cfg.cap < cfg.N_max) throw UsageError("--cap must be at least --N-max");
  }
  if (cfg.command == Command::Lemma1 && cfg.family.kind != "powerlog" && raw.count("family")) {
    throw UsageError("lemma1 draws its own random series; --family is not accepted");
  }
  return cfg;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  switch (cfg.command) {
    case Command::Defect:
      return run_defect(cfg, out);
    case Command::Embed:
      return run_embed(cfg, out);
    case Command::Lemma1:
      return run_lemma1(cfg, out);
    case Command::Converge:
      return run_converge(cfg, out, err);
    case Command::Diverge:
      return run_diverge(cfg, out);
    case Command::Report:
      return run_report(cfg, out);
  }
  return kUsage;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = parse_config(args);
  } catch (const UsageError& e) {
    if (std::find(args.begin(), args.end(), "--help") != args.end() ||
        std::find(args.begin(), args.end(), "-h") != args.end()) {
      out << "usage: gmlab <defect|embed|lemma1|converge|diverge|report> [--family NAME[:ARGS]] [--r N] [--r1 N]\n"
             "             [--r2 N] [--c X] [--m-max N] [--n-max N] [--grid-size N] [--N-max N] [--cap N]\n"
             "             [--seed N] [--trials N] [--out PATH] [--format csv|json] [--config FILE] [--strict]\n";
      return kOk;
    }
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }
  try {
    return run(cfg, out, err);
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << "\n";
    return kIo;
  } catch (const SingularityError& e) {
    err << "numerical guard: " << e.what() << "\n";
    return cfg.strict ? kNumericalGuard : kUsage;
  } catch (const std::domain_error& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace gmlab::cli
