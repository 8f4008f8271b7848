/*
 * (C) Copyright 2026 rdet developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
// Command-line front end over the rdet C API.
//
// Exit codes: 0 success, 1 failing verification checks, 2 usage or
// configuration error, 3 I/O failure, 4 domain or numerical error.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rdet/rdet.h"

namespace {

using nlohmann::ordered_json;

enum Exit { kOk = 0, kChecksFailed = 1, kUsage = 2, kIo = 3, kDomain = 4 };

struct Failure {
  int exit_code;
  std::string message;
};

int exit_for(rdet_status s) {
  switch (s) {
    case RDET_OK: return kOk;
    case RDET_ERR_INVALID_ARGUMENT: return kUsage;
    case RDET_ERR_IO: return kIo;
    default: return kDomain;
  }
}

void check(rdet_status s) {
  if (s != RDET_OK)
    throw Failure{exit_for(s), rdet_last_error()};
}

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

ordered_json jnum(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

// RFC 4180 field quoting.
std::string field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

class Table {
public:
  explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}
  void row(std::vector<std::string> cells) { rows_.push_back(std::move(cells)); }
  void write_csv(std::ostream& out) const {
    line(out, header_);
    for (const auto& r : rows_) line(out, r);
  }

private:
  static void line(std::ostream& out, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << field(cells[i]);
    out << "\r\n";
  }
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

struct Global {
  std::string format = "csv";
  std::string out_path;
  std::uint64_t seed = 42;
};

// Data sink: the --out file or stdout.
class Output {
public:
  explicit Output(const std::string& path) {
    if (path.empty()) return;
    file_.open(path, std::ios::binary);
    if (!file_) throw Failure{kIo, "cannot open output file " + path};
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }
  void finish() {
    stream().flush();
    if (!stream()) throw Failure{kIo, "write failed"};
  }

private:
  std::ofstream file_;
};

rdet_kind kind_of(const std::string& name) {
  rdet_kind k;
  const rdet_status s = rdet_parse_kind(name.c_str(), &k);
  if (s != RDET_OK) throw Failure{kUsage, std::string("invalid --kind: ") + rdet_last_error()};
  return k;
}

void echo_config(const std::string& command, const ordered_json& config) {
  std::cerr << "# rdet " << rdet_version() << " " << command << " " << config.dump() << "\n";
}

// ---- sample ----

struct SampleArgs {
  std::string kind = "gram";
  std::int64_t n = 100;
  int reps = 1;
};

int cmd_sample(const Global& g, const SampleArgs& a) {
  const rdet_kind kind = kind_of(a.kind);
  if (a.n < 2) throw Failure{kUsage, "--n must be >= 2"};
  if (a.reps < 1) throw Failure{kUsage, "--reps must be >= 1"};
  ordered_json config{{"kind", rdet_kind_string(kind)}, {"n", a.n}, {"reps", a.reps}, {"seed", g.seed},
                      {"format", g.format}};
  echo_config("sample", config);
  Output out(g.out_path);
  std::vector<double> values(static_cast<std::size_t>(a.n) + 1);
  Table table({"replicate", "r", "t", "value"});
  ordered_json paths = ordered_json::array();
  for (int rep = 0; rep < a.reps; ++rep) {
    rdet_stream* stream = nullptr;
    check(rdet_stream_derive(g.seed, static_cast<std::uint64_t>(rep), &stream));
    std::unique_ptr<rdet_stream, decltype(&rdet_stream_destroy)> sguard(stream, rdet_stream_destroy);
    rdet_path* path = nullptr;
    check(rdet_path_sample(kind, a.n, stream, &path));
    std::unique_ptr<rdet_path, decltype(&rdet_path_destroy)> pguard(path, rdet_path_destroy);
    check(rdet_path_values(path, values.data(), values.size()));
    if (g.format == "csv") {
      for (std::int64_t r = 0; r <= a.n; ++r)
        table.row({std::to_string(rep), std::to_string(r),
                   num(static_cast<double>(r) / static_cast<double>(a.n)),
                   num(values[static_cast<std::size_t>(r)])});
    } else {
      paths.push_back({{"replicate", rep}, {"values", values}});
    }
  }
  if (g.format == "csv")
    table.write_csv(out.stream());
  else
    out.stream() << ordered_json{{"config", config}, {"paths", paths}}.dump(2) << "\n";
  out.finish();
  return kOk;
}

// ---- theory ----

struct TheoryArgs {
  std::string kind = "gram";
  std::vector<double> t{0.5};
  std::int64_t n = 0;
  std::int64_t p = 0;
  std::int64_t r = 0;
  double s = 1.0;
  double c = 0.5;
  double sigma2 = 1.0;
  double x = 1.0;
  std::string what = "log-moment";
};

void emit(const Global& g, const std::string& command, const ordered_json& config, const Table& table,
          const ordered_json& json_rows) {
  ordered_json resolved = config;
  resolved["seed"] = g.seed;
  echo_config(command, resolved);
  Output out(g.out_path);
  if (g.format == "csv")
    table.write_csv(out.stream());
  else
    out.stream() << ordered_json{{"config", resolved}, {"results", json_rows}}.dump(2) << "\n";
  out.finish();
}

int cmd_theory(const Global& g, const std::string& query, const TheoryArgs& a) {
  ordered_json rows = ordered_json::array();
  if (query == "lln") {
    Table table({"t", "value"});
    for (double t : a.t) {
      double v;
      check(rdet_lln_limit(t, &v));
      table.row({num(t), num(v)});
      rows.push_back({{"t", t}, {"value", jnum(v)}});
    }
    emit(g, "theory lln", {{"t", a.t}, {"format", g.format}}, table, rows);
  } else if (query == "clt") {
    const rdet_kind kind = kind_of(a.kind);
    Table table({"kind", "t", "drift", "variance"});
    for (double t : a.t) {
      double d, v;
      check(rdet_clt_curves(kind, t, &d, &v));
      table.row({rdet_kind_string(kind), num(t), num(d), num(v)});
      rows.push_back({{"kind", rdet_kind_string(kind)}, {"t", t}, {"drift", jnum(d)}, {"variance", jnum(v)}});
    }
    emit(g, "theory clt", {{"kind", rdet_kind_string(kind)}, {"t", a.t}, {"format", g.format}}, table, rows);
  } else if (query == "moments") {
    const rdet_kind kind = kind_of(a.kind);
    const std::int64_t p = a.p > 0 ? a.p : a.n;
    double m, v;
    check(rdet_exact_moments(kind, a.n, p, &m, &v));
    Table table({"kind", "n", "p", "mean", "variance"});
    table.row({rdet_kind_string(kind), std::to_string(a.n), std::to_string(p), num(m), num(v)});
    rows.push_back({{"kind", rdet_kind_string(kind)}, {"n", a.n}, {"p", p}, {"mean", jnum(m)}, {"variance", jnum(v)}});
    emit(g, "theory moments", {{"kind", rdet_kind_string(kind)}, {"n", a.n}, {"p", p}, {"format", g.format}},
         table, rows);
  } else if (query == "mp") {
    ordered_json config{{"c", a.c}, {"sigma2", a.sigma2}, {"what", a.what}, {"format", g.format}};
    if (a.what == "log-moment") {
      if (a.sigma2 != 1.0) throw Failure{kUsage, "log-moment is defined for the unit-scale law (--sigma2 1)"};
      double v;
      check(rdet_mp_log_moment(a.c, &v));
      Table table({"c", "log_moment"});
      table.row({num(a.c), num(v)});
      rows.push_back({{"c", a.c}, {"log_moment", jnum(v)}});
      emit(g, "theory mp", config, table, rows);
    } else if (a.what == "density") {
      double v;
      check(rdet_mp_density(a.c, a.sigma2, a.x, &v));
      config["x"] = a.x;
      Table table({"c", "sigma2", "x", "density"});
      table.row({num(a.c), num(a.sigma2), num(a.x), num(v)});
      rows.push_back({{"c", a.c}, {"sigma2", a.sigma2}, {"x", a.x}, {"density", jnum(v)}});
      emit(g, "theory mp", config, table, rows);
    } else if (a.what == "support") {
      double lo, hi, atom;
      check(rdet_mp_support(a.c, a.sigma2, &lo, &hi, &atom));
      Table table({"c", "sigma2", "lower", "upper", "atom"});
      table.row({num(a.c), num(a.sigma2), num(lo), num(hi), num(atom)});
      rows.push_back({{"c", a.c}, {"sigma2", a.sigma2}, {"lower", lo}, {"upper", hi}, {"atom", atom}});
      emit(g, "theory mp", config, table, rows);
    } else {
      throw Failure{kUsage, "--what must be log-moment, density or support"};
    }
  } else if (query == "mellin") {
    double v;
    check(rdet_mellin_log_det(a.n, a.r, a.s, &v));
    Table table({"n", "r", "s", "log_mellin"});
    table.row({std::to_string(a.n), std::to_string(a.r), num(a.s), num(v)});
    rows.push_back({{"n", a.n}, {"r", a.r}, {"s", a.s}, {"log_mellin", jnum(v)}});
    emit(g, "theory mellin", {{"n", a.n}, {"r", a.r}, {"s", a.s}, {"format", g.format}}, table, rows);
  }
  return kOk;
}

// ---- rate ----

struct RateArgs {
  std::string kind = "gram";
  double T = 0.5;
  std::string xi;
  double theta = 0.0;
  bool has_theta = false;
  bool path = false;
  int points = 201;
};

int cmd_rate(const Global& g, const RateArgs& a) {
  const rdet_kind kind = kind_of(a.kind);
  if (a.xi.empty() == !a.has_theta) throw Failure{kUsage, "give exactly one of --xi or --theta"};
  double xi = 0.0;
  if (a.has_theta) {
    check(rdet_phi(kind, a.T, a.theta, &xi));
  } else if (a.xi == "lln") {
    check(rdet_lln_limit(a.T, &xi));
  } else {
    try {
      std::size_t used = 0;
      xi = std::stod(a.xi, &used);
      if (used != a.xi.size()) throw std::invalid_argument(a.xi);
    } catch (const std::exception&) {
      throw Failure{kUsage, "--xi must be a number or 'lln'"};
    }
  }
  rdet_rate_result r;
  check(rdet_marginal_rate(kind, a.T, xi, &r));
  ordered_json config{{"kind", rdet_kind_string(kind)}, {"T", a.T}, {"format", g.format}};
  if (a.has_theta)
    config["theta"] = a.theta;
  else
    config["xi"] = a.xi;
  config["path"] = a.path;
  config["seed"] = g.seed;

  std::vector<double> pt, pv, pd;
  if (a.path) {
    double theta_path = 0.0;
    if (r.branch == RDET_BRANCH_INTERIOR)
      theta_path = r.theta;
    else if (r.branch != RDET_BRANCH_ZERO)
      throw Failure{kDomain, std::string("no smooth optimal path on the ") + rdet_branch_string(r.branch) +
                                 " branch"};
    rdet_smooth_path* sp = nullptr;
    check(rdet_optimal_path(kind, a.T, theta_path, a.points, &sp));
    std::unique_ptr<rdet_smooth_path, decltype(&rdet_smooth_path_destroy)> guard(sp, rdet_smooth_path_destroy);
    std::size_t size = 0;
    check(rdet_smooth_path_size(sp, &size));
    pt.resize(size);
    pv.resize(size);
    pd.resize(size);
    check(rdet_smooth_path_data(sp, pt.data(), pv.data(), pd.data(), size));
  }

  echo_config("rate", config);
  Output out(g.out_path);
  const std::string theta_text = r.has_theta ? num(r.theta) : "";
  if (g.format == "csv") {
    Table table({"kind", "T", "xi", "value", "theta", "branch"});
    table.row({rdet_kind_string(kind), num(a.T), num(xi), num(r.value), theta_text, rdet_branch_string(r.branch)});
    table.write_csv(out.stream());
    if (a.path) {
      out.stream() << "\r\n";
      Table path({"t", "value", "derivative"});
      for (std::size_t i = 0; i < pt.size(); ++i) path.row({num(pt[i]), num(pv[i]), num(pd[i])});
      path.write_csv(out.stream());
    }
  } else {
    ordered_json result{{"kind", rdet_kind_string(kind)}, {"T", a.T},         {"xi", xi},
                        {"value", jnum(r.value)},         {"theta", nullptr}, {"branch", rdet_branch_string(r.branch)}};
    if (r.has_theta) result["theta"] = r.theta;
    ordered_json doc{{"config", config}, {"result", result}};
    if (a.path) doc["path"] = {{"t", pt}, {"value", pv}, {"derivative", pd}};
    out.stream() << doc.dump(2) << "\n";
  }
  out.finish();
  return kOk;
}

// ---- verify ----

struct VerifyArgs {
  std::string name;
  bool all = false;
  std::vector<std::int64_t> n;
  int reps = 0;
  bool heavy = false;
  std::string dump_dir;
  bool seed_given = false;
};

int cmd_verify(const Global& g, const VerifyArgs& a) {
  if (a.all == !a.name.empty()) throw Failure{kUsage, "give an experiment name or --all"};
  bool known = a.all;
  for (std::size_t i = 0; i < rdet_experiment_count(); ++i)
    if (a.name == rdet_experiment_name(i)) known = true;
  if (!known) throw Failure{kUsage, "unknown experiment '" + a.name + "'"};
  if (g.format != "json") throw Failure{kUsage, "verify writes JSON reports (--format json)"};

  rdet_verify_options opts;
  rdet_verify_options_init(&opts);
  opts.base_seed = g.seed;
  opts.has_seed = 1;
  opts.replicates = a.reps;
  opts.n = a.n.empty() ? nullptr : a.n.data();
  opts.n_count = a.n.size();
  opts.heavy = a.heavy ? 1 : 0;
  opts.dump_dir = a.dump_dir.empty() ? nullptr : a.dump_dir.c_str();

  ordered_json config{{"experiment", a.all ? "all" : a.name}, {"seed", g.seed}, {"heavy", a.heavy}};
  if (!a.n.empty()) config["n"] = a.n;
  if (a.reps > 0) config["reps"] = a.reps;
  if (!a.dump_dir.empty()) config["dump_samples"] = a.dump_dir;
  if (const char* t = std::getenv("RDET_THREADS")) config["RDET_THREADS"] = t;
  echo_config("verify", config);
  Output out(g.out_path);

  rdet_report* report = nullptr;
  check(rdet_verify(a.all ? "all" : a.name.c_str(), &opts, &report));
  std::unique_ptr<rdet_report, decltype(&rdet_report_destroy)> guard(report, rdet_report_destroy);
  std::size_t count = 0;
  check(rdet_report_check_count(report, &count));
  for (std::size_t i = 0; i < count; ++i) {
    rdet_check_view v;
    check(rdet_report_check(report, i, &v));
    std::cerr << (v.pass ? "PASS " : "FAIL ") << v.experiment << "/" << v.kind << " " << v.name
              << " observed=" << num(v.observed) << " expected=" << num(v.expected) << " "
              << v.comparison << " tol=" << num(v.tolerance) << "\n";
  }
  const char* json = nullptr;
  check(rdet_report_json(report, &json));
  out.stream() << json << "\n";
  out.finish();
  int pass = 0;
  check(rdet_report_pass(report, &pass));
  std::cerr << (pass ? "verify: all checks passed" : "verify: some checks FAILED") << "\n";
  return pass ? kOk : kChecksFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rdet: log-determinant processes of Gram and Wishart random matrices"};
  app.require_subcommand(1);
  Global g_sample, g_theory, g_rate, g_verify;
  auto add_common = [](CLI::App* sub, Global& g, const std::string& default_format) {
    sub->add_option("--format", g.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->default_val(default_format);
    sub->add_option("--out", g.out_path, "Output file (default stdout)");
    sub->add_option("--seed", g.seed, "Base seed")->default_val(42);
  };

  SampleArgs sa;
  auto* sample = app.add_subcommand("sample", "Sample log-determinant paths");
  sample->add_option("--kind", sa.kind, "gram, wishart or radial")->default_val("gram");
  sample->add_option("--n", sa.n, "Matrix dimension n")->default_val(100);
  sample->add_option("--reps", sa.reps, "Number of replicates")->default_val(1);
  add_common(sample, g_sample, "csv");

  TheoryArgs ta;
  std::string query;
  auto* theory = app.add_subcommand("theory", "Evaluate limit-theory quantities");
  theory->add_option("query", query, "lln, clt, moments, mp or mellin")
      ->required()
      ->check(CLI::IsMember({"lln", "clt", "moments", "mp", "mellin"}));
  theory->add_option("--kind", ta.kind, "gram, wishart or radial")->default_val("gram");
  theory->add_option("--t", ta.t, "Time(s) in [0, 1]");
  theory->add_option("--n", ta.n, "Dimension n");
  theory->add_option("--p", ta.p, "Number of columns (default n)");
  theory->add_option("--r", ta.r, "Number of columns for mellin");
  theory->add_option("--s", ta.s, "Mellin exponent");
  theory->add_option("--c", ta.c, "Marchenko-Pastur ratio");
  theory->add_option("--sigma2", ta.sigma2, "Marchenko-Pastur scale");
  theory->add_option("--x", ta.x, "Density abscissa");
  theory->add_option("--what", ta.what, "log-moment, density or support");
  add_common(theory, g_theory, "csv");

  RateArgs ra;
  auto* rate = app.add_subcommand("rate", "Evaluate the marginal rate function");
  rate->add_option("--kind", ra.kind, "gram or wishart")->default_val("gram");
  rate->add_option("--T", ra.T, "Horizon T in (0, 1)")->default_val(0.5);
  auto* xi_opt = rate->add_option("--xi", ra.xi, "Level xi, or 'lln' for the law-of-large-numbers value");
  auto* theta_opt = rate->add_option("--theta", ra.theta, "Dual parameter theta");
  xi_opt->excludes(theta_opt);
  rate->add_flag("--path", ra.path, "Also emit the optimal path");
  rate->add_option("--points", ra.points, "Optimal path grid size")->default_val(201);
  add_common(rate, g_rate, "csv");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Run verification experiments");
  verify->add_option("name", va.name, "lln, clt, endpoint, sde, cgf or rates");
  verify->add_flag("--all", va.all, "Run every experiment");
  verify->add_option("--n", va.n, "Override the n list");
  verify->add_option("--reps", va.reps, "Override the replicate count");
  verify->add_flag("--heavy", va.heavy, "Use the n = 10^6 exact-moment endpoints");
  verify->add_option("--dump-samples", va.dump_dir, "Directory for per-sample CSV files");
  add_common(verify, g_verify, "json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }
  ra.has_theta = theta_opt->count() > 0;

  try {
    if (sample->parsed()) return cmd_sample(g_sample, sa);
    if (theory->parsed()) return cmd_theory(g_theory, query, ta);
    if (rate->parsed()) return cmd_rate(g_rate, ra);
    if (verify->parsed()) return cmd_verify(g_verify, va);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    if (f.exit_code == kUsage) std::cerr << "run with --help for usage\n";
    return f.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomain;
  }
  return kUsage;
}
