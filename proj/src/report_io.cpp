#include "gmlab/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace gmlab {

namespace {

using nlohmann::json;

std::string cell_text(const Cell& cell) {
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&cell)) return format_real(*d);
  return std::get<std::string>(cell);
}

// JSON has no infinity; such entries become null.
json real_json(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json reals_json(const std::vector<double>& vs) {
  json arr = json::array();
  for (double v : vs) arr.push_back(real_json(v));
  return arr;
}

std::string beta_kind(const BetaSpec& b) {
  switch (b.kind) {
    case BetaSpec::Kind::BetaStar:
      return "beta_star";
    case BetaSpec::Kind::V1:
      return "v1";
    case BetaSpec::Kind::V2:
      return "v2";
    case BetaSpec::Kind::V3:
      return "v3";
    case BetaSpec::Kind::V4:
      return "v4";
    case BetaSpec::Kind::V5:
      return "v5";
  }
  return "unknown";
}

}  // namespace

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

std::string render_csv(const Table& table) {
  std::string out;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) out += ',';
    out += table.header[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += cell_text(row[i]);
    }
    out += '\n';
  }
  return out;
}

Table to_table(const DefectReport& report) {
  Table t{{"m", "lhs", "beta", "ratio", "zero_beta"}, {}};
  for (const auto& s : report.samples) {
    t.rows.push_back({s.m, s.lhs, s.beta, s.ratio, std::int64_t{s.zero_beta ? 1 : 0}});
  }
  return t;
}

Table to_table(const ConvergenceReport& report) {
  Table t{{"n", "eps1", "eps2", "sup_remainder", "side_condition_partial", "nbn_sup"}, {}};
  for (std::size_t i = 0; i < report.n_grid.size(); ++i) {
    Cell eps2 = report.eps2.empty() ? Cell{std::string{}} : Cell{report.eps2[i]};
    t.rows.push_back({report.n_grid[i], report.eps1[i], eps2, report.sup_remainder[i],
                      report.side_condition_partials[i], report.nbn_sup[i]});
  }
  return t;
}

Table to_table(const Lemma1Report& report) {
  Table t{{"trial", "n", "r", "x", "block_sum", "rhs", "residual"}, {}};
  for (const auto& r : report.rows) t.rows.push_back({r.trial, r.n, r.r, r.x, r.block_sum, r.rhs, r.residual});
  return t;
}

Table to_table(const DivergeReport& report) {
  Table t{{"M", "N", "partial_sum", "telescoped", "lower_bound"}, {}};
  for (const auto& r : report.rows) t.rows.push_back({r.M, r.N, r.partial_sum, r.telescoped, r.lower_bound});
  return t;
}

Table to_table(const SummaryReport& report) {
  Table t{{"family", "r", "c", "verdict", "max_ratio", "slope"}, {}};
  for (const auto& r : report.rows) {
    t.rows.push_back({r.family, r.r, r.c, std::string(to_string(r.verdict)), r.max_ratio, r.slope});
  }
  return t;
}

json to_json(const DefectReport& report) {
  json j;
  j["r"] = report.r;
  j["beta"] = {{"kind", beta_kind(report.beta)}, {"r", report.beta.r}, {"c", report.beta.c},
               {"N", report.beta.N}, {"base", report.beta.base}};
  json m = json::array(), lhs = json::array(), beta = json::array(), ratio = json::array(),
       zero = json::array();
  for (const auto& s : report.samples) {
    m.push_back(s.m);
    lhs.push_back(real_json(s.lhs));
    beta.push_back(real_json(s.beta));
    ratio.push_back(real_json(s.ratio));
    zero.push_back(s.zero_beta);
  }
  j["m"] = m;
  j["lhs"] = lhs;
  j["beta_values"] = beta;
  j["ratio"] = ratio;
  j["zero_beta"] = zero;
  j["max_ratio"] = real_json(report.max_ratio);
  j["infinite_count"] = report.infinite_count;
  j["slope"] = real_json(report.slope);
  j["verdict"] = std::string(to_string(report.verdict));
  return j;
}

json to_json(const ConvergenceReport& report) {
  json j;
  j["n_grid"] = report.n_grid;
  j["eps1"] = reals_json(report.eps1);
  j["eps2"] = reals_json(report.eps2);
  j["sup_remainder"] = reals_json(report.sup_remainder);
  j["side_condition_partials"] = reals_json(report.side_condition_partials);
  j["nbn_sup"] = reals_json(report.nbn_sup);
  j["verdict"] = std::string(to_string(report.verdict));
  return j;
}

json to_json(const Lemma1Report& report) {
  json j;
  json trial = json::array(), n = json::array(), r = json::array(), x = json::array(),
       lhs = json::array(), rhs = json::array(), res = json::array();
  for (const auto& row : report.rows) {
    trial.push_back(row.trial);
    n.push_back(row.n);
    r.push_back(row.r);
    x.push_back(real_json(row.x));
    lhs.push_back(real_json(row.block_sum));
    rhs.push_back(real_json(row.rhs));
    res.push_back(real_json(row.residual));
  }
  j["trial"] = trial;
  j["n"] = n;
  j["r"] = r;
  j["x"] = x;
  j["block_sum"] = lhs;
  j["rhs"] = rhs;
  j["residual"] = res;
  j["max_residual"] = real_json(report.max_residual);
  j["pass"] = report.pass;
  return j;
}

json to_json(const DivergeReport& report) {
  json j;
  json M = json::array(), N = json::array(), ps = json::array(), tel = json::array(), lb = json::array();
  for (const auto& row : report.rows) {
    M.push_back(row.M);
    N.push_back(row.N);
    ps.push_back(real_json(row.partial_sum));
    tel.push_back(real_json(row.telescoped));
    lb.push_back(real_json(row.lower_bound));
  }
  j["M"] = M;
  j["N"] = N;
  j["partial_sum"] = ps;
  j["telescoped"] = tel;
  j["lower_bound"] = lb;
  j["verdict"] = std::string(to_string(report.verdict));
  return j;
}

json to_json(const SummaryReport& report) {
  json j;
  json fam = json::array(), r = json::array(), c = json::array(), v = json::array(), mr = json::array(),
       sl = json::array();
  for (const auto& row : report.rows) {
    fam.push_back(row.family);
    r.push_back(row.r);
    c.push_back(real_json(row.c));
    v.push_back(std::string(to_string(row.verdict)));
    mr.push_back(real_json(row.max_ratio));
    sl.push_back(real_json(row.slope));
  }
  j["family"] = fam;
  j["r"] = r;
  j["c"] = c;
  j["verdict"] = v;
  j["max_ratio"] = mr;
  j["slope"] = sl;
  return j;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace gmlab
