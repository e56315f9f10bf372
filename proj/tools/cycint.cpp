#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cycint/acceptance.hpp"
#include "cycint/bounds.hpp"
#include "cycint/config.hpp"
#include "cycint/cyclevalue.hpp"
#include "cycint/minuscf.hpp"
#include "cycint/traces.hpp"
#include "cycint/unit.hpp"
#include "json.hpp"

using namespace cycint;
using Json = nlohmann::ordered_json;

namespace {

// Exit codes.
constexpr int kOk = 0;
constexpr int kNumerical = 1;
constexpr int kUsage = 2;

/// Everything a subcommand produces. JSON output prints `doc`; CSV output
/// prints `header` and `rows`, falling back to flattening `doc` when a
/// command has no natural table.
struct Output {
  Json doc;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  int status = kOk;
};

std::string num(const Real& x) { return x.str(); }
std::string num(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

Json digits_json(const Digits& d) {
  Json out = Json::array();
  for (const auto& a : d) {
    if (a.fits_slong_p()) {
      out.push_back(a.get_si());
    } else {
      out.push_back(to_string(a));
    }
  }
  return out;
}

Digits parse_digits(std::string text) {
  for (char& ch : text) {
    if (ch == '[' || ch == ']' || ch == ',' || ch == ';') ch = ' ';
  }
  std::istringstream in(text);
  Digits out;
  std::string tok;
  while (in >> tok) out.push_back(parse_int(tok));
  if (out.empty()) throw DomainError("empty period");
  return out;
}

std::vector<long> parse_long_list(std::string text) {
  for (char& ch : text) {
    if (ch == ',') ch = ' ';
  }
  std::istringstream in(text);
  std::vector<long> out;
  long v;
  while (in >> v) out.push_back(v);
  if (!in.eof()) throw DomainError("cannot parse list '" + text + "'");
  return out;
}

QForm parse_form(std::string text) {
  const Digits abc = parse_digits(std::move(text));
  if (abc.size() != 3) throw DomainError("a form needs three coefficients a,b,c");
  return QForm(abc[0], abc[1], abc[2]);
}

Method parse_method(const std::string& m) {
  if (m == "kernel") return Method::kernel;
  if (m == "direct") return Method::direct;
  throw DomainError("unknown method '" + m + "'");
}

Json value_json(const CycleValue& v) {
  Json j;
  j["method"] = to_string(v.method);
  j["D"] = to_string(v.D);
  j["raw_re"] = num(v.raw.re);
  j["raw_im"] = num(v.raw.im);
  j["normalized_re"] = num(v.normalized.re);
  j["normalized_im"] = num(v.normalized.im);
  j["two_log_eps"] = num(v.two_log_eps);
  j["quad_err"] = num(v.quad_err);
  j["evaluations"] = v.evaluations;
  return j;
}

Json report_json(const SweepReport& rep) {
  Json j;
  j["suite"] = rep.suite;
  j["instances"] = rep.instances;
  j["violation_count"] = rep.violation_count;
  Json list = Json::array();
  for (const auto& v : rep.violations) {
    list.push_back(Json{{"check", v.check}, {"instance", v.instance}, {"r", v.r}, {"x", v.x}, {"y", v.y},
                        {"theta", v.theta}, {"value", v.value}, {"bound", v.bound}});
  }
  j["violations"] = list;
  Json ext = Json::object();
  for (const auto& [k, v] : rep.extremes) ext[k] = v;
  j["extremes"] = ext;
  return j;
}

void flatten(const Json& j, const std::string& prefix, std::vector<std::string>& keys,
             std::vector<std::string>& values) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, keys, values);
  } else {
    keys.push_back(prefix);
    values.push_back(j.is_string() ? j.get<std::string>() : j.dump());
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

void print(const Output& out, const std::string& command, OutputFormat format) {
  if (format == OutputFormat::json) {
    Json doc;
    doc["version"] = kVersion;
    doc["command"] = command;
    for (const auto& [k, v] : out.doc.items()) doc[k] = v;
    if (!out.rows.empty() && !out.doc.contains("rows")) {
      Json rows = Json::array();
      for (const auto& row : out.rows) {
        Json r;
        for (std::size_t i = 0; i < out.header.size(); ++i) r[out.header[i]] = row[i];
        rows.push_back(r);
      }
      doc["rows"] = rows;
    }
    std::cout << doc.dump(2) << "\n";
    return;
  }
  std::cout << "# cycint " << kVersion << " " << command << "\n";
  std::vector<std::string> header = out.header;
  std::vector<std::vector<std::string>> rows = out.rows;
  if (header.empty()) {
    std::vector<std::string> values;
    flatten(out.doc, "", header, values);
    rows.push_back(values);
  }
  for (std::size_t i = 0; i < header.size(); ++i) std::cout << (i ? "," : "") << csv_field(header[i]);
  std::cout << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) std::cout << (i ? "," : "") << csv_field(row[i]);
    std::cout << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cycle integrals of modular functions at real quadratic irrationalities"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  RunConfig cfg;
  std::string output = "json";
  app.add_option("--precision", cfg.precision_bits, "working precision in bits (env CYCINT_PRECISION)")
      ->capture_default_str();
  app.add_option("--tol", cfg.tol, "absolute tolerance on normalized values")->capture_default_str();
  app.add_option("--ntrunc", cfg.n_trunc, "number of stored q-expansion coefficients")->capture_default_str();
  app.add_option("--workers", cfg.workers, "worker threads for scans")->capture_default_str();
  app.add_option("--output", output, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  app.add_option("--seed", cfg.seed, "seed for randomized batteries")->capture_default_str();
  std::string memo;
  app.add_option("--memo", memo, "directory caching class lists as D.json files");

  std::string function = "j";
  auto add_function = [&](CLI::App* sub) {
    sub->add_option("--function", function, "j, 1, or a JSON q-expansion file")->capture_default_str();
  };

  Output out;
  std::function<void()> action;
  auto opts = [&]() {
    ValueOptions vo;
    vo.bits = cfg.precision_bits;
    return vo;
  };

  // value
  auto* value = app.add_subcommand("value", "value of f at one quadratic irrational");
  add_function(value);
  std::string quad, period, form, method = "kernel";
  auto* o_quad = value->add_option("--quad", quad, "\"(P+sqrt(D))/Q\"");
  auto* o_period = value->add_option("--period", period, "purely periodic minus continued fraction, e.g. 3,2");
  auto* o_form = value->add_option("--form", form, "first root of a,b,c");
  o_quad->excludes(o_period)->excludes(o_form);
  o_period->excludes(o_form);
  value->add_option("--method", method, "kernel, direct or both")
      ->check(CLI::IsMember({"kernel", "direct", "both"}))
      ->capture_default_str();
  value->callback([&] {
    action = [&] {
      const FourierSeries f = load_function(function, cfg.n_trunc);
      QuadIrr x = QuadIrr::parse("(1+sqrt(5))/2");
      if (!quad.empty()) {
        x = QuadIrr::parse(quad);
      } else if (!period.empty()) {
        const Digits p = parse_digits(period);
        validate_period(p);
        x = from_period(p);
      } else if (!form.empty()) {
        x = roots_of_form(parse_form(form)).first;
      } else {
        throw CLI::RequiredError("one of --quad, --period, --form");
      }
      const MinusCF cf = expand(x);
      out.doc["input"] = x.str();
      out.doc["function"] = f.name();
      out.doc["period"] = digits_json(cf.period);
      const Real tol = cfg.tolerance();
      auto direct = [&] { return value_direct(f, form_of(from_period(cf.period)), tol, opts()); };
      if (method == "both") {
        const CycleValue k = value_kernel(f, cf.period, tol, opts());
        const CycleValue d = direct();
        out.doc["kernel"] = value_json(k);
        out.doc["direct"] = value_json(d);
        out.doc["difference"] = num(abs(k.normalized - d.normalized));
      } else {
        const CycleValue v = method == "kernel" ? value_kernel(f, cf.period, tol, opts()) : direct();
        const Json fields = value_json(v);
        for (const auto& [k, val] : fields.items()) out.doc[k] = val;
      }
    };
  });

  // cfrac
  auto* cfrac = app.add_subcommand("cfrac", "minus continued fraction of a quadratic irrational");
  std::string cf_input;
  cfrac->add_option("x", cf_input, "\"(P+sqrt(D))/Q\" or \"period:[a1,a2,...]\"")->required();
  long nu_q = 0;
  cfrac->add_option("--nu", nu_q, "also estimate nu(x) = liminf q||qx|| up to this denominator");
  cfrac->callback([&] {
    action = [&] {
      QuadIrr x = QuadIrr::parse("(1+sqrt(5))/2");
      if (cf_input.rfind("period:", 0) == 0) {
        const Digits p = parse_digits(cf_input.substr(7));
        validate_period(p);
        x = from_period(p);
      } else {
        x = QuadIrr::parse(cf_input);
      }
      const MinusCF cf = expand(x);
      out.doc["x"] = x.str();
      out.doc["preperiod"] = digits_json(cf.preperiod);
      out.doc["period"] = digits_json(cf.period);
      out.doc["D"] = to_string(form_of(x).disc());
      out.doc["w_float"] = num(x.to_real(cfg.precision_bits));
      out.doc["canonical_period"] = digits_json(canonical_rotation(cf.period));
      if (nu_q > 0) {
        out.doc["nu_estimate"] = num(nu_estimate(x, nu_q, cfg.precision_bits));
        out.doc["nu_digit_bound"] = num(nu_digit_bound(cf));
      }
    };
  });

  // pell
  auto* pell = app.add_subcommand("pell", "fundamental solution of t^2 - D u^2 = 4");
  std::string pell_D;
  pell->add_option("D", pell_D, "discriminant")->required();
  pell->callback([&] {
    action = [&] {
      const Int D = parse_int(pell_D);
      if (!is_discriminant(D)) throw DomainError(pell_D + " is not a positive non-square discriminant");
      const PellSolution s = pell_fundamental(D);
      out.doc["D"] = to_string(D);
      out.doc["t"] = to_string(s.t);
      out.doc["u"] = to_string(s.u);
      out.doc["eps"] = num(s.eps(cfg.precision_bits));
      out.doc["two_log_eps"] = num(geodesic_length(D, cfg.precision_bits));
    };
  });

  // trace
  auto* trace_cmd = app.add_subcommand("trace", "trace over the classes of discriminant D");
  add_function(trace_cmd);
  std::string trace_D;
  std::string trace_method = "kernel";
  trace_cmd->add_option("--D", trace_D, "discriminant")->required();
  trace_cmd->add_option("--method", trace_method, "kernel or direct")
      ->check(CLI::IsMember({"kernel", "direct"}))
      ->capture_default_str();
  trace_cmd->callback([&] {
    action = [&] {
      const FourierSeries f = load_function(function, cfg.n_trunc);
      const Int D = parse_int(trace_D);
      const TraceResult t = trace(f, D, cfg.tolerance(), opts(), cfg.workers, parse_method(trace_method));
      const ClassList cl = class_list(D);
      out.doc["function"] = f.name();
      out.doc["D"] = to_string(D);
      out.doc["h"] = t.h;
      out.doc["h_plus"] = cl.h_plus;
      out.doc["method"] = trace_method;
      out.doc["tr_re"] = num(t.tr_f.re);
      out.doc["tr_im"] = num(t.tr_f.im);
      out.doc["tr_1"] = num(t.tr_1);
      out.doc["ratio_re"] = num(t.ratio.re);
      out.doc["ratio_im"] = num(t.ratio.im);
      out.doc["err"] = num(t.err);
      Json classes = Json::array();
      for (std::size_t i = 0; i < cl.representatives.size(); ++i) {
        classes.push_back(Json{{"form", cl.representatives[i].str()},
                               {"normalized_re", num(t.values[i].normalized.re)},
                               {"normalized_im", num(t.values[i].normalized.im)}});
      }
      out.doc["classes"] = classes;
    };
  });

  // scan-limit
  auto* scan_limit = app.add_subcommand("scan-limit", "normalized values at the periods (N) as N grows");
  add_function(scan_limit);
  std::string limit_N = "10,100,1000,10000";
  scan_limit->add_option("--N", limit_N, "comma separated list")->capture_default_str();
  scan_limit->callback([&] {
    action = [&] {
      const FourierSeries f = load_function(function, cfg.n_trunc);
      const LimitScan s = limit_scan(f, parse_long_list(limit_N), cfg.tolerance(), cfg.workers, opts());
      out.doc["function"] = f.name();
      out.doc["arc_integral"] = num(s.arc.value.re);
      out.doc["arc_gap"] = num(s.arc_gap);
      out.header = {"N", "re", "im", "gap"};
      for (const auto& r : s.rows) {
        out.rows.push_back({std::to_string(r.N), num(r.normalized.re), num(r.normalized.im), num(r.gap)});
      }
    };
  });

  // scan-ratio
  auto* scan_ratio = app.add_subcommand("scan-ratio", "trace ratios Tr f / Tr 1 over discriminants");
  add_function(scan_ratio);
  bool fundamental = false;
  long D_max = 2000, D_min = 5;
  std::string ratio_method = "kernel";
  scan_ratio->add_flag("--fundamental", fundamental, "fundamental discriminants only");
  scan_ratio->add_option("--Dmax", D_max)->capture_default_str();
  scan_ratio->add_option("--Dmin", D_min)->capture_default_str();
  scan_ratio->add_option("--method", ratio_method, "kernel or direct")
      ->check(CLI::IsMember({"kernel", "direct"}))
      ->capture_default_str();
  scan_ratio->callback([&] {
    action = [&] {
      const FourierSeries f = load_function(function, cfg.n_trunc);
      std::vector<long> Ds;
      if (fundamental) {
        Ds = fundamental_discriminants(D_max, D_min);
      } else {
        for (long D = std::max(D_min, 5L); D <= D_max; ++D) {
          if (is_discriminant(Int(D))) Ds.push_back(D);
        }
      }
      const RatioScan s = ratio_scan(f, Ds, cfg.tolerance(), opts(), cfg.workers, parse_method(ratio_method));
      out.doc["function"] = f.name();
      out.doc["count"] = s.rows.size();
      out.doc["min_re"] = s.min_re;
      out.doc["max_re"] = s.max_re;
      out.doc["mean_bottom_decile"] = s.mean_bottom;
      out.doc["mean_top_decile"] = s.mean_top;
      out.doc["top_closer_to_720"] = s.top_closer;
      out.header = {"D", "h", "ratio_re", "ratio_im"};
      for (const auto& r : s.rows) {
        out.rows.push_back({to_string(r.D), std::to_string(r.h), num(r.ratio.re), num(r.ratio.im)});
      }
    };
  });

  // scan-class-number
  auto* scan_cn = app.add_subcommand("scan-class-number", "class numbers and values along D = N^2 - 4");
  add_function(scan_cn);
  long N_max = 200;
  scan_cn->add_option("--Nmax", N_max)->capture_default_str();
  scan_cn->callback([&] {
    action = [&] {
      const FourierSeries f = load_function(function, cfg.n_trunc);
      const auto rows = class_number_one_scan(f, N_max, cfg.tolerance(), opts(), cfg.workers);
      out.doc["function"] = f.name();
      out.header = {"N", "D", "h", "jnor", "gap720"};
      for (const auto& r : rows) {
        out.rows.push_back(
            {std::to_string(r.N), to_string(r.D), std::to_string(r.h), num(r.jnor.re), num(r.gap720)});
      }
    };
  });

  // verify-bounds
  auto* verify = app.add_subcommand("verify-bounds", "numerical checks of the inequalities behind the ordering");
  std::string suite;
  SweepOptions sweep;
  int pairs = 50;
  double theta_step = 1e-3, log_M = 55.0;
  long a_max = 100;
  std::string pair_w, pair_v;
  verify->add_option("--suite", suite, "lemmaF, lemmaG, theoremS or envelope")
      ->required()
      ->check(CLI::IsMember({"lemmaF", "lemmaG", "theoremS", "envelope"}));
  verify->add_option("--grid", sweep.grid, "x, y, theta grid for the bound sweeps")->capture_default_str();
  verify->add_option("--pairs", pairs, "random period pairs for theoremS")->capture_default_str();
  verify->add_option("--theta-step", theta_step, "theta spacing for theoremS")->capture_default_str();
  verify->add_option("--w", pair_w, "theoremS for one pair: period w");
  verify->add_option("--v", pair_v, "theoremS for one pair: period v");
  verify->add_option("--logM", log_M, "envelope: log of the digit ratio")->capture_default_str();
  verify->add_option("--amax", a_max, "envelope: largest a_r")->capture_default_str();
  verify->callback([&] {
    action = [&] {
      sweep.workers = cfg.workers;
      SweepReport rep;
      if (suite == "lemmaF") {
        rep = sweep_lemma_F(sweep);
      } else if (suite == "lemmaG") {
        rep = sweep_lemma_G(sweep);
      } else if (suite == "theoremS") {
        if (!pair_w.empty() || !pair_v.empty()) {
          if (pair_w.empty() || pair_v.empty()) throw CLI::ValidationError("--w and --v go together");
          rep = verify_theorem_S(parse_digits(pair_w), parse_digits(pair_v), theta_step);
        } else {
          PairSpec spec;
          spec.count = pairs;
          spec.seed = cfg.seed;
          rep = verify_theorem_S_random(spec, theta_step, cfg.workers);
        }
      } else {
        rep = sweep_envelope(log_M, 2, a_max);
      }
      out.doc = report_json(rep);
      out.header = {"check", "instance", "r", "x", "y", "theta", "value", "bound"};
      for (const auto& v : rep.violations) {
        out.rows.push_back({v.check, std::to_string(v.instance), std::to_string(v.r), num(v.x), num(v.y),
                            num(v.theta), num(v.value), num(v.bound)});
      }
      if (!rep.ok()) out.status = kNumerical;
    };
  });

  // selftest
  auto* selftest = app.add_subcommand("selftest", "run the acceptance suite");
  std::vector<int> only;
  selftest->add_option("--only", only, "criterion numbers to run");
  selftest->callback([&] {
    action = [&] {
      AcceptanceOptions ao;
      ao.bits = cfg.precision_bits;
      ao.workers = cfg.workers;
      ao.seed = cfg.seed;
      ao.only = only;
      const bool json = cfg.output == OutputFormat::json;
      const auto results = run_acceptance(ao, [&](const CriterionResult& r) {
        if (!json) std::cerr << format_result(r) << std::endl;
      });
      out.header = {"id", "pass", "name", "seconds", "detail"};
      Json list = Json::array();
      std::size_t failed = 0;
      for (const auto& r : results) {
        if (!r.pass) ++failed;
        list.push_back(Json{{"id", r.id}, {"pass", r.pass}, {"name", r.name}, {"seconds", r.seconds},
                            {"detail", r.detail}});
        out.rows.push_back({std::to_string(r.id), r.pass ? "PASS" : "FAIL", r.name, num(r.seconds), r.detail});
      }
      out.doc["criteria"] = list;
      out.doc["failed"] = failed;
      if (failed) out.status = kNumerical;
    };
  });

  try {
    app.parse(argc, argv);
    cfg.output = output == "csv" ? OutputFormat::csv : OutputFormat::json;
    cfg.validate();
    if (!memo.empty()) set_memo_directory(std::filesystem::path(memo));
    PrecisionScope scope(cfg.precision_bits);
    action();
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ToleranceUnreachable& e) {
    std::cerr << "tolerance not reached: " << e.what() << "\n";
    return kNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumerical;
  }
  print(out, app.get_subcommands().front()->get_name(), cfg.output);
  return out.status;
}
