#include "zetaburst_cli/cli.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <future>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "zetaburst/afe.hpp"
#include "zetaburst/errors.hpp"
#include "zetaburst/exactvals.hpp"
#include "zetaburst/incgamma.hpp"
#include "zetaburst/oracles.hpp"

namespace zetaburst::cli {

using json = nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct LResult {
  ComplexBall value;
  bool is_real = true;
  std::string algorithm;
  std::int64_t n1 = 0;
  std::int64_t n2 = 0;
  std::int64_t terms = 0;
  long prec = 0;
  double seconds = 0.0;
};

LResult compute_lvalue(const DirichletChar& chi, const Rational& s, long prec,
                       const Rational& alpha, std::string algorithm) {
  if (algorithm == "auto") algorithm = "afe";
  auto t0 = Clock::now();
  LResult r;
  r.algorithm = algorithm;
  r.prec = prec;
  r.is_real = chi.is_real();
  if (algorithm == "afe") {
    LValueRequest req;
    req.chi = chi;
    req.s = s;
    req.prec = prec;
    req.alpha = alpha;
    LValue v = lfunc_eval(req);
    r.value = v.value;
    r.n1 = v.plan.series[0].terms;
    r.n2 = v.plan.series[1].terms;
    r.terms = r.n1 + (v.plan.symmetric ? 0 : r.n2);
    r.prec = std::max<long>(prec, v.plan.prec);
  } else if (algorithm == "em" || algorithm == "ep" || algorithm == "ramanujan") {
    OracleResult o;
    if (algorithm == "em") {
      o = l_em(chi, s, prec);
    } else if (algorithm == "ep") {
      o = zeta_euler_product(s, chi, prec);
    } else {
      if (chi.modulus() != 1 || !(s == Rational(1, 2))) {
        throw DomainError("the ramanujan algorithm only computes zeta(1/2)");
      }
      o = ramanujan_zeta_half(prec);
    }
    r.value = o.value;
    r.terms = o.terms;
  } else {
    throw DomainError("unknown algorithm '" + algorithm + "'");
  }
  r.seconds = seconds_since(t0);
  return r;
}

std::pair<std::string, std::string> split_decimal(const std::string& text) {
  auto pos = text.find(" +/- ");
  if (pos == std::string::npos) return {text, "0"};
  return {text.substr(0, pos), text.substr(pos + 5)};
}

std::string ball_digest(const Ball& b) {
  std::string mid = split_decimal(to_decimal(Ball(b.mid()), 32)).first;
  long re = b.rad().is_zero() ? 0 : b.rad().log2_ceil();
  return mid + " r" + std::to_string(re);
}

std::string digest_of(const LResult& r) {
  if (r.is_real) return ball_digest(r.value.re);
  return ball_digest(r.value.re) + " | " + ball_digest(r.value.im);
}

std::string exact_text(const mpq_class& v) {
  if (v.get_den() == 1) return v.get_num().get_str();
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

std::string exact_digest(const ExactNumberResult& r) {
  return std::to_string(r.numerator_digits) + ":" + r.value.get_num().get_str().substr(0, 33);
}

ExactAlgorithm parse_exact_algorithm(const std::string& s) {
  if (s == "afe" || s == "auto") return ExactAlgorithm::afe;
  if (s == "ep") return ExactAlgorithm::ep;
  throw DomainError("unknown algorithm '" + s + "'");
}

const char* algorithm_name(ExactAlgorithm a) { return a == ExactAlgorithm::ep ? "ep" : "afe"; }

json exact_record(const ExactNumberResult& r) {
  return json{{"n", r.n},
              {"value", exact_text(r.value)},
              {"numerator_digits", r.numerator_digits},
              {"denominator", r.value.get_den().get_str()},
              {"prec", r.prec},
              {"algorithm", algorithm_name(r.algorithm)},
              {"seconds", r.seconds}};
}

struct Preset {
  const char* label;
  const char* s;
};

const std::map<std::string, Preset>& presets() {
  static const std::map<std::string, Preset> m{
      {"zeta-half", {"1.1", "1/2"}},
      {"zeta-4/3", {"1.1", "4/3"}},
      {"l23-half", {"23.19", "1/2"}},
      {"l23-4/3", {"23.19", "4/3"}},
  };
  return m;
}

}  // namespace

long digits_to_bits(long digits) {
  return static_cast<long>(std::ceil(static_cast<double>(digits) * std::log2(10.0))) + 10;
}

BenchRecord run_cell(const std::string& task, long digits, const std::string& algorithm) {
  BenchRecord rec;
  rec.task = task;
  rec.digits = digits;
  rec.algorithm = algorithm;
  auto t0 = Clock::now();
  try {
    if (task == "bernoulli" || task == "euler") {
      ExactAlgorithm alg = parse_exact_algorithm(algorithm);
      ExactNumberResult r = task == "bernoulli" ? bernoulli_exact(digits, alg) : euler_exact(digits, alg);
      rec.peak_prec = r.prec;
      rec.digest = exact_digest(r);
    } else {
      auto it = presets().find(task);
      if (it == presets().end()) throw DomainError("unknown task '" + task + "'");
      LResult r = compute_lvalue(DirichletChar::parse(it->second.label),
                                 Rational::parse(it->second.s), digits_to_bits(digits),
                                 Rational(1), algorithm);
      rec.terms = r.terms;
      rec.peak_prec = r.prec;
      rec.digest = digest_of(r);
    }
  } catch (const std::exception& e) {
    rec.error = e.what();
  }
  rec.seconds = seconds_since(t0);
  return rec;
}

BenchTable bench_suite(const std::string& spec_json, bool parallel) {
  json spec;
  try {
    spec = json::parse(spec_json);
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed bench spec: ") + e.what());
  }
  struct Cell {
    std::string task;
    long digits;
    std::string algorithm;
  };
  std::vector<Cell> cells;
  if (spec.contains("tasks")) {
    if (!spec["tasks"].is_array()) throw DomainError("bench spec: 'tasks' must be an array");
    for (const auto& t : spec["tasks"]) {
      if (!t.contains("task") || !t["task"].is_string()) throw DomainError("bench spec: task without a name");
      std::string name = t["task"].get<std::string>();
      const char* key = t.contains("n") ? "n" : "digits";
      std::vector<long> sizes;
      std::vector<std::string> algs{"afe"};
      try {
        if (t.contains(key)) sizes = t[key].get<std::vector<long>>();
        if (t.contains("algorithms")) algs = t["algorithms"].get<std::vector<std::string>>();
      } catch (const json::exception& e) {
        throw DomainError(std::string("bench spec: ") + e.what());
      }
      for (long d : sizes) {
        for (const auto& a : algs) cells.push_back({name, d, a});
      }
    }
  }

  BenchTable table;
  if (parallel) {
    std::vector<std::future<BenchRecord>> futs;
    for (const auto& c : cells) {
      futs.push_back(std::async(std::launch::async, [c] { return run_cell(c.task, c.digits, c.algorithm); }));
    }
    for (auto& f : futs) table.records.push_back(f.get());
  } else {
    for (const auto& c : cells) table.records.push_back(run_cell(c.task, c.digits, c.algorithm));
  }

  std::map<std::pair<std::string, std::string>, std::vector<const BenchRecord*>> groups;
  for (const auto& r : table.records) {
    if (r.error.empty()) groups[{r.task, r.algorithm}].push_back(&r);
  }
  for (auto& [key, rs] : groups) {
    std::sort(rs.begin(), rs.end(), [](auto* a, auto* b) { return a->digits < b->digits; });
    for (std::size_t i = 1; i < rs.size(); ++i) {
      const BenchRecord* a = rs[i - 1];
      const BenchRecord* b = rs[i];
      if (a->digits == b->digits || a->seconds <= 0.0 || b->seconds <= 0.0) continue;
      double e = std::log(b->seconds / a->seconds) /
                 std::log(static_cast<double>(b->digits) / static_cast<double>(a->digits));
      table.scaling.push_back({key.first, key.second, a->digits, b->digits, e});
    }
  }
  return table;
}

std::string to_csv(const BenchTable& t) {
  std::ostringstream os;
  os << "task,digits,algorithm,seconds,terms,digest\n";
  for (const auto& r : t.records) {
    os << r.task << ',' << r.digits << ',' << r.algorithm << ',' << std::setprecision(6)
       << r.seconds << ',' << r.terms << ",\"" << (r.error.empty() ? r.digest : "error: " + r.error)
       << "\"\n";
  }
  if (!t.scaling.empty()) {
    os << "\ntask,algorithm,d1,d2,exponent\n";
    for (const auto& s : t.scaling) {
      os << s.task << ',' << s.algorithm << ',' << s.d1 << ',' << s.d2 << ','
         << std::setprecision(4) << s.exponent << '\n';
    }
  }
  return os.str();
}

std::string to_json(const BenchTable& t) {
  json recs = json::array();
  for (const auto& r : t.records) {
    json j{{"task", r.task},         {"digits", r.digits},       {"algorithm", r.algorithm},
           {"seconds", r.seconds},   {"terms", r.terms},         {"peak_prec", r.peak_prec},
           {"digest", r.digest}};
    if (!r.error.empty()) j["error"] = r.error;
    recs.push_back(j);
  }
  json sc = json::array();
  for (const auto& s : t.scaling) {
    sc.push_back({{"task", s.task}, {"algorithm", s.algorithm}, {"d1", s.d1}, {"d2", s.d2},
                  {"exponent", s.exponent}});
  }
  return json{{"records", recs}, {"scaling", sc}}.dump(2) + "\n";
}

std::string to_text(const BenchTable& t) {
  std::ostringstream os;
  os << std::left << std::setw(12) << "task" << std::setw(8) << "digits" << std::setw(11)
     << "algorithm" << std::setw(11) << "seconds" << std::setw(8) << "terms" << "digest\n";
  for (const auto& r : t.records) {
    os << std::left << std::setw(12) << r.task << std::setw(8) << r.digits << std::setw(11)
       << r.algorithm << std::setw(11) << std::setprecision(4) << r.seconds << std::setw(8)
       << r.terms << (r.error.empty() ? r.digest : "error: " + r.error) << '\n';
  }
  for (const auto& s : t.scaling) {
    os << "scaling " << s.task << '/' << s.algorithm << ' ' << s.d1 << " -> " << s.d2 << ": "
       << std::setprecision(3) << s.exponent << '\n';
  }
  return os.str();
}

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Arbitrary-precision Dirichlet L-values, incomplete gamma and exact numbers",
               "zetaburst"};
  app.require_subcommand(1);

  std::string label = "1.1", s_text, alpha_text = "1", algorithm = "auto";
  long digits = 30;
  auto* lvalue = app.add_subcommand("lvalue", "L(s, chi) for rational s");
  lvalue->add_option("--char", label, "Conrey label q.n")->capture_default_str();
  lvalue->add_option("--s", s_text, "rational s")->required();
  lvalue->add_option("--digits", digits, "decimal digits")->capture_default_str();
  lvalue->add_option("--alpha", alpha_text, "AFE free parameter")->capture_default_str();
  lvalue->add_option("--algorithm", algorithm, "afe|em|ep|ramanujan|auto")->capture_default_str();

  std::string a_text, z_text;
  auto* incg = app.add_subcommand("incgamma", "upper incomplete gamma function");
  incg->add_option("--a", a_text, "rational a")->required();
  incg->add_option("--z", z_text, "decimal z > 0")->required();
  incg->add_option("--digits", digits, "absolute accuracy in decimal digits")->capture_default_str();

  long n = 0;
  std::string exact_alg = "afe";
  auto* bern = app.add_subcommand("bernoulli", "exact Bernoulli number B_n");
  bern->add_option("n", n)->required();
  bern->add_option("--algorithm", exact_alg, "afe|ep")->capture_default_str();
  auto* eul = app.add_subcommand("euler", "exact Euler number E_n");
  eul->add_option("n", n)->required();
  eul->add_option("--algorithm", exact_alg, "afe|ep")->capture_default_str();

  std::string constant_name;
  auto* cons = app.add_subcommand("constant", "mathematical constants");
  cons->add_option("name", constant_name, "landau-ramanujan")->required();
  cons->add_option("--digits", digits, "decimal digits")->capture_default_str();

  std::string spec_path;
  bool csv = false, as_json = false, parallel = false;
  auto* bench = app.add_subcommand("bench", "run a benchmark spec");
  bench->add_option("spec", spec_path, "JSON spec file")->required();
  bench->add_flag("--csv", csv, "CSV output");
  bench->add_flag("--json", as_json, "JSON output");
  bench->add_flag("--parallel", parallel, "run cells concurrently");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kDomainError;
  }

  try {
    if (digits < 1) throw DomainError("--digits must be positive");
    const int shown = static_cast<int>(std::min<long>(digits, 1'000'000));
    if (*lvalue) {
      DirichletChar chi = DirichletChar::parse(label);
      Rational s = Rational::parse(s_text);
      Rational alpha = Rational::parse(alpha_text);
      if (alpha.sign() <= 0) throw DomainError("--alpha must be positive");
      LResult r = compute_lvalue(chi, s, digits_to_bits(digits), alpha, algorithm);
      std::string text = r.is_real ? to_decimal(r.value.re, shown) : to_decimal(r.value, shown);
      out << text << '\n';
      json rec{{"char", chi.label()}, {"s", s.to_string()}, {"digits", digits},
               {"algorithm", r.algorithm}, {"seconds", r.seconds}, {"N1", r.n1}, {"N2", r.n2}};
      auto re = split_decimal(to_decimal(r.value.re, shown));
      rec["value"] = re.first;
      rec["radius"] = re.second;
      if (!r.is_real) {
        auto im = split_decimal(to_decimal(r.value.im, shown));
        rec["value_imag"] = im.first;
        rec["radius_imag"] = im.second;
      }
      out << rec.dump() << '\n';
    } else if (*incg) {
      Rational a = Rational::parse(a_text);
      long prec = digits_to_bits(digits);
      Ball z = parse_decimal(z_text, prec + 128);
      auto t0 = Clock::now();
      BitBurstPath path;
      Ball y = incgamma_bitburst(a, z, prec, &path);
      double secs = seconds_since(t0);
      // Absolute accuracy: print enough digits to show it.
      long mag = y.mid().is_zero() ? 0 : static_cast<long>(std::floor(std::log10(2.0) * static_cast<double>(y.mid().exponent())));
      int shown_abs = static_cast<int>(std::max(1L, std::min<long>(digits + mag + 1, 1'000'000)));
      std::string text = to_decimal(y, shown_abs);
      out << text << '\n';
      auto parts = split_decimal(text);
      out << json{{"a", a.to_string()}, {"z", z_text}, {"digits", digits}, {"value", parts.first},
                  {"radius", parts.second}, {"seconds", secs}, {"steps", path.steps.size()}}
                 .dump()
          << '\n';
    } else if (*bern || *eul) {
      ExactAlgorithm alg = parse_exact_algorithm(exact_alg);
      if (n < 0) throw DomainError("n must be nonnegative");
      ExactNumberResult r = *bern ? bernoulli_exact(n, alg) : euler_exact(n, alg);
      out << exact_text(r.value) << '\n';
      out << exact_record(r).dump() << '\n';
    } else if (*cons) {
      if (constant_name != "landau-ramanujan") throw DomainError("unknown constant '" + constant_name + "'");
      auto t0 = Clock::now();
      Ball v = landau_ramanujan(digits_to_bits(digits));
      double secs = seconds_since(t0);
      std::string text = to_decimal(v, shown);
      out << text << '\n';
      auto parts = split_decimal(text);
      out << json{{"constant", constant_name}, {"digits", digits}, {"value", parts.first},
                  {"radius", parts.second}, {"seconds", secs}}
                 .dump()
          << '\n';
    } else if (*bench) {
      std::ifstream in(spec_path);
      if (!in) throw DomainError("cannot read bench spec '" + spec_path + "'");
      std::stringstream buf;
      buf << in.rdbuf();
      BenchTable t = bench_suite(buf.str(), parallel);
      out << (csv ? to_csv(t) : as_json ? to_json(t) : to_text(t));
    }
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kDomainError;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kDomainError;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << '\n';
    return kResourceError;
  }
  return kOk;
}

}  // namespace zetaburst::cli
