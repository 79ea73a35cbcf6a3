#include "evendct/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"

#include "evendct/complexity.hpp"
#include "evendct/factorizer.hpp"
#include "evendct/fold.hpp"
#include "evendct/oracle.hpp"
#include "evendct/plan_io.hpp"

namespace evendct::cli {
namespace {

constexpr std::size_t kMaxLength = 4096;

// A usage problem detected after parsing; maps to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string fmt_err(double v) {
  if (!std::isfinite(v)) return "inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::scientific, 2);
  return std::string(buf, res.ptr);
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + fmt(v[i]);
  return s;
}

struct Options {
  std::optional<long long> n;
  std::optional<long long> q;
  std::optional<long long> m;
  bool scaled = false;
  bool fold = false;
  bool compare = false;
  bool pfa_scaled = false;
  bool pfa_lower = false;
  std::string format;
  std::uint64_t seed = 1;
  double tol = 1e-9;
  long long max_n = 64;
  unsigned max_m = 7;
  std::string input;
  std::vector<std::string> plans;
};

const char* kFamilies =
    "supported lengths are N = q*2^m with q odd and 1 <= N <= 4096; scaled plans need m >= 1";

std::size_t resolve_length(const Options& o) {
  long long n = 0;
  if (o.n) {
    if (o.q || o.m) throw UsageError("give either --n or --q/--m, not both");
    n = *o.n;
  } else if (o.q && o.m) {
    if (*o.q < 1 || *o.m < 0 || *o.m > 12) throw UsageError("unsupported --q/--m; " + std::string(kFamilies));
    n = *o.q << *o.m;
  } else {
    throw UsageError("a length is required: --n N or --q Q --m M");
  }
  if (n < 1 || n > static_cast<long long>(kMaxLength))
    throw UsageError("unsupported N=" + std::to_string(n) + "; " + kFamilies);
  if (o.scaled && n % 2 != 0)
    throw UsageError("unsupported N=" + std::to_string(n) + " for a scaled plan; " + kFamilies);
  return static_cast<std::size_t>(n);
}

struct Generated {
  PlanGraph plan;
  std::optional<std::vector<std::size_t>> pi;
  std::optional<std::vector<double>> delta;
};

Generated generate(std::size_t n, bool scaled, bool do_fold) {
  if (scaled) {
    ScaledFactorization sf = scaled_plan(n);
    if (do_fold) sf = fold(sf);
    return {std::move(sf.plan), std::move(sf.pi), std::move(sf.delta)};
  }
  PlanGraph p = kok_plan(n);
  if (do_fold) p = fold(p);
  return {std::move(p), std::nullopt, std::nullopt};
}

// Closed-form reference for the plan `count` instruments, with base costs
// taken from the plans the library actually uses.
OpCount reference_counts(std::size_t n, bool scaled, bool folded) {
  Length len = decompose(n);
  if (len.q == 1) {
    if (len.m == 0) return {0, 0, 0};
    if (scaled && folded) return complexity::dyadic_scaled_folded(len.m);
    len = {2, len.m - 1};
  }
  if (scaled && folded && len.q == 3) return complexity::three_scaled_folded(len.m);
  const BaseLibrary& lib = BaseLibrary::standard();
  const complexity::BaseCounts base{static_cast<long long>(len.q), count_ops(lib.unscaled(len.q)),
                                    count_ops(lib.scaled(len.q).plan)};
  return scaled ? complexity::scaled_counts(base, len.m) : complexity::kok_counts(base, len.m);
}

void print_counts(std::ostream& out, const std::string& format, const OpCount& main,
                  const std::optional<OpCount>& other, const char* main_name, const char* other_name) {
  if (format == "json") {
    auto obj = [](const OpCount& c) { return nlohmann::json{{"mu", c.mu}, {"alpha", c.alpha}, {"sigma", c.sigma}}; };
    nlohmann::json doc{{main_name, obj(main)}};
    if (other) {
      doc[other_name] = obj(*other);
      doc["difference"] = obj(main - *other);
    }
    out << doc.dump() << "\n";
  } else if (format == "csv") {
    out << "source,mu,alpha,sigma\n" << main_name << "," << main.to_string() << "\n";
    if (other) {
      out << other_name << "," << other->to_string() << "\n";
      out << "difference," << (main - *other).to_string() << "\n";
    }
  } else if (other) {
    out << main_name << " " << main.to_string() << "\n"
        << other_name << " " << other->to_string() << "\n"
        << "difference " << (main - *other).to_string() << "\n";
  } else {
    out << main.to_string() << "\n";
  }
}

int cmd_gen(const Options& o, std::ostream& out) {
  const std::size_t n = resolve_length(o);
  const Generated g = generate(n, o.scaled, o.fold);
  if (o.format == "dot") {
    out << to_dot(g.plan);
  } else {
    out << to_json(g.plan, g.pi ? &*g.pi : nullptr, g.delta ? &*g.delta : nullptr);
  }
  return kExitOk;
}

std::vector<double> parse_input(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    double d = 0;
    const char* b = item.data();
    const char* e = b + item.size();
    while (b < e && *b == ' ') ++b;
    auto res = std::from_chars(b, e, d);
    if (res.ec != std::errc() || res.ptr != e || !std::isfinite(d))
      throw UsageError("bad --input value '" + item + "'");
    v.push_back(d);
  }
  return v;
}

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = dist(rng);
  return v;
}

int cmd_eval(const Options& o, std::ostream& out) {
  Generated g = [&] {
    if (!o.plans.empty()) {
      if (o.plans.size() > 1) throw UsageError("eval takes a single --plan");
      PlanFile f = read_plan_file(o.plans.front());
      return Generated{std::move(f.plan), std::move(f.pi), std::move(f.delta)};
    }
    return generate(resolve_length(o), o.scaled, o.fold);
  }();
  const std::size_t n = g.plan.n_inputs();
  std::vector<double> x;
  bool random = o.input.empty();
  if (random) {
    std::mt19937_64 rng(o.seed);
    x = random_vector(rng, n);
  } else {
    x = parse_input(o.input);
    if (x.size() != n)
      throw UsageError("--input has " + std::to_string(x.size()) + " values, plan expects " + std::to_string(n));
  }
  std::vector<double> y;
  if (g.pi) {
    y = apply_scaled(ScaledFactorization{g.plan, *g.pi, *g.delta}, x);
  } else {
    y = evaluate(g.plan, x);
  }
  std::optional<double> err;
  if (y.size() == n) {
    const DenseMatrix c = oracle::dct2_matrix(n);
    double e = 0;
    for (std::size_t k = 0; k < n; ++k) {
      double ref = 0;
      for (std::size_t i = 0; i < n; ++i) ref += c(k, i) * x[i];
      e = std::max(e, std::abs(ref - y[k]));
    }
    err = e;
  }
  if (o.format == "csv") {
    out << "k,x,y\n";
    for (std::size_t k = 0; k < std::max(x.size(), y.size()); ++k)
      out << k << "," << (k < x.size() ? fmt(x[k]) : "") << "," << (k < y.size() ? fmt(y[k]) : "") << "\n";
  } else {
    if (random) out << "seed: " << o.seed << "\n";
    out << "x: " << join(x) << "\n" << "y: " << join(y) << "\n";
    if (err) out << "max_abs_error_vs_dct2: " << fmt_err(*err) << "\n";
  }
  return kExitOk;
}

int cmd_count(const Options& o, std::ostream& out) {
  const std::size_t n = resolve_length(o);
  const OpCount c = count_ops(generate(n, o.scaled, o.fold).plan);
  std::optional<OpCount> ref;
  if (o.compare) ref = reference_counts(n, o.scaled, o.fold);
  print_counts(out, o.format, c, ref, "count", "formula");
  return kExitOk;
}

int cmd_formula(const Options& o, std::ostream& out) {
  if (!o.q || !o.m) throw UsageError("formula needs --q and --m");
  if (*o.m < 0 || *o.m > 30) throw UsageError("--m must be in 0..30");
  const auto m = static_cast<unsigned>(*o.m);
  const long long q = *o.q;
  const complexity::ComplexityRegistry& reg = complexity::ComplexityRegistry::standard();
  auto base = [&]() -> const complexity::BaseCounts& {
    try {
      return reg.at(q);
    } catch (const std::out_of_range& e) {
      throw UsageError(e.what());
    }
  };
  if (o.pfa_scaled || o.pfa_lower) {
    if (o.pfa_scaled && o.pfa_lower) throw UsageError("--pfa-scaled and --pfa-lower are exclusive");
    if (m < 1) throw UsageError("prime-factor bounds need --m >= 1");
    const long long v = o.pfa_scaled ? complexity::pfa_scaled_bound(base(), m)
                                     : complexity::pfa_unscaled_lower_bound(base(), m);
    out << v << "\n";
    return kExitOk;
  }
  OpCount f;
  if (o.fold) {
    if (!o.scaled) throw UsageError("formula --fold applies to --scaled only");
    if (q == 1) {
      if (m < 1) throw UsageError("--q 1 needs --m >= 1");
      f = complexity::dyadic_scaled_folded(m);
    } else if (q == 3) {
      f = complexity::three_scaled_folded(m);
    } else {
      throw UsageError("folded closed forms exist for --q 1 and --q 3 only");
    }
  } else {
    f = o.scaled ? complexity::scaled_counts(base(), m) : complexity::kok_counts(base(), m);
  }
  std::optional<OpCount> measured;
  if (o.compare) {
    Options g = o;
    g.n.reset();
    g.q = q;
    g.m = m;
    measured = count_ops(generate(resolve_length(g), o.scaled, o.fold).plan);
  }
  print_counts(out, o.format, f, measured, "formula", "count");
  return kExitOk;
}

// ---------------------------------------------------------------------------
// verify

struct Check {
  std::string identity;
  std::string subject;  // "N=12" or a file name
  double error = 0;
};

class Verifier {
 public:
  Verifier(const Options& o) : opt_(o), rng_(o.seed) {}

  void run() {
    const auto max_n = static_cast<std::size_t>(opt_.max_n);
    for (std::size_t n = 1; n <= max_n; ++n) dct4_via_dct2(n);
    involution(max_n);
    for (std::size_t n = 2; n <= max_n; n += 2) even_odd_split(n);
    for (std::size_t n = 1; n <= max_n; ++n) dct4_via_dct3(n);
    for (std::size_t n = 1; n <= max_n; ++n) dct3_is_transpose(n);
    std::vector<std::size_t> lengths;
    for (std::size_t q : {1, 3, 5, 15})
      for (std::size_t n = q; n <= max_n; n *= 2) lengths.push_back(n);
    std::sort(lengths.begin(), lengths.end());
    for (std::size_t n : lengths) plans(n);
    for (const std::string& path : opt_.plans) plan_file(path);
  }

  int report(std::ostream& out) const {
    out << "seed: " << opt_.seed << "\n";
    out << "tolerance: " << fmt_err(opt_.tol) << "\n";
    std::vector<std::string> order;
    for (const Check& c : checks_)
      if (std::find(order.begin(), order.end(), c.identity) == order.end()) order.push_back(c.identity);
    bool ok = true;
    for (const std::string& id : order) {
      double worst = 0;
      std::size_t count = 0;
      bool pass = true;
      for (const Check& c : checks_) {
        if (c.identity != id) continue;
        ++count;
        worst = std::max(worst, c.error);
        if (!(c.error < opt_.tol)) pass = false;
      }
      ok = ok && pass;
      out << id << " checks=" << count << " max_error=" << fmt_err(worst) << (pass ? " ok" : " FAIL") << "\n";
    }
    for (const Check& c : checks_)
      if (!(c.error < opt_.tol)) out << "failed: " << c.identity << " " << c.subject << "\n";
    out << (ok ? "all identities pass" : "verification failed") << "\n";
    return ok ? kExitOk : kExitVerifyFailed;
  }

 private:
  void add(std::string identity, std::size_t n, double error) {
    checks_.push_back({std::move(identity), "N=" + std::to_string(n), error});
  }

  void dct4_via_dct2(std::size_t n) {
    using namespace oracle;
    add("dct4_via_dct2", n, max_abs_diff(dct4_matrix(n), r_matrix(n) * dct2_matrix(n) * d_matrix(n)));
  }

  void involution(std::size_t max_n) {
    using namespace oracle;
    // Proportionality constant measured at N = 2 and then asserted as c*N/2.
    const DenseMatrix c4_2 = dct4_matrix(2);
    const double c = (c4_2 * c4_2)(0, 0);
    for (std::size_t n = 1; n <= max_n; ++n) {
      const DenseMatrix c4 = dct4_matrix(n);
      const double s = c * static_cast<double>(n) / 2.0;
      add("involution", n, max_abs_diff(c4 * c4, DenseMatrix::identity(n).scaled(s)));
    }
  }

  void even_odd_split(std::size_t n) {
    using namespace oracle;
    const std::size_t h = n / 2;
    const DenseMatrix mid = block_diag(dct2_matrix(h), dct4_matrix(h) * j_matrix(h));
    add("even_odd_split", n, max_abs_diff(dct2_matrix(n), p_matrix(n) * mid * b_matrix(n)));
  }

  void dct4_via_dct3(std::size_t n) {
    using namespace oracle;
    add("dct4_via_dct3", n, max_abs_diff(dct4_matrix(n), d_matrix(n) * dct3_matrix(n) * r_matrix(n).transposed()));
  }

  void dct3_is_transpose(std::size_t n) {
    add("dct3_transpose", n, oracle::dct3_matrix(n) == oracle::dct2_matrix(n).transposed() ? 0.0 : kInf);
  }

  void plans(std::size_t n) {
    const DenseMatrix c2 = oracle::dct2_matrix(n);
    const PlanGraph kok = kok_plan(n);
    add("kok_oracle", n, oracle_error(kok));
    transpose_check(kok, n);
    linearity(kok, n);
    const PlanGraph kok_f = fold(kok);
    add("kok_folded", n, dominated(kok_f, kok) ? oracle_error(kok_f) : kInf);
    add("dct3_kok", n, max_abs_diff(to_matrix(dct3_plan(n)), oracle::dct3_matrix(n)));
    if (n % 2 != 0) return;
    const ScaledFactorization sf = scaled_plan(n);
    add("scaled_oracle", n, oracle_error(sf));
    transpose_check(sf.plan, n);
    const ScaledFactorization sf_f = fold(sf);
    add("scaled_folded", n, dominated(sf_f.plan, sf.plan) ? oracle_error(sf_f) : kInf);
    add("dct3_scaled", n, max_abs_diff(to_matrix(dct3_plan_via_scaled(n)), oracle::dct3_matrix(n)));
  }

  static bool dominated(const PlanGraph& folded, const PlanGraph& original) {
    const OpCount a = count_ops(folded);
    const OpCount b = count_ops(original);
    return a.mu <= b.mu && a.alpha <= b.alpha && a.sigma <= b.sigma;
  }

  void transpose_check(const PlanGraph& p, std::size_t n) {
    const PlanGraph t = transpose(p);
    const bool same_cost = count_ops(t) == count_ops(p);
    add("transpose", n, same_cost ? max_abs_diff(to_matrix(t), to_matrix(p).transposed()) : kInf);
  }

  void linearity(const PlanGraph& p, std::size_t n) {
    const std::vector<double> x = random_vector(rng_, n);
    const std::vector<double> y = random_vector(rng_, n);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    const double a = dist(rng_);
    const double b = dist(rng_);
    std::vector<double> z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = a * x[i] + b * y[i];
    const auto fx = evaluate(p, x);
    const auto fy = evaluate(p, y);
    const auto fz = evaluate(p, z);
    double e = 0;
    for (std::size_t i = 0; i < n; ++i) e = std::max(e, std::abs(fz[i] - (a * fx[i] + b * fy[i])));
    add("linearity", n, e);
  }

  void plan_file(const std::string& path) {
    double error = kInf;
    try {
      PlanFile f = read_plan_file(path);
      if (f.plan.is_square()) {
        error = f.pi ? oracle_error(ScaledFactorization{f.plan, *f.pi, *f.delta}) : oracle_error(f.plan);
      }
    } catch (const std::exception&) {
      error = kInf;
    }
    checks_.push_back({"plan_file", path, error});
  }

  static constexpr double kInf = std::numeric_limits<double>::infinity();
  const Options& opt_;
  std::mt19937_64 rng_;
  std::vector<Check> checks_;
};

int cmd_verify(const Options& o, std::ostream& out) {
  if (o.max_n < 1 || o.max_n > static_cast<long long>(kMaxLength))
    throw UsageError("--max-n must be in 1..4096");
  Verifier v(o);
  v.run();
  return v.report(out);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fast even-length DCT flowgraphs: generation, verification and operation counts", "evendct"};
  app.require_subcommand(1);
  Options o;

  auto length_opts = [&](CLI::App* sub) {
    sub->add_option("--n", o.n, "Transform length N");
    sub->add_option("--q", o.q, "Odd factor q of N = q*2^m");
    sub->add_option("--m", o.m, "Exponent m of N = q*2^m");
  };
  auto plan_opts = [&](CLI::App* sub) {
    length_opts(sub);
    sub->add_flag("--scaled", o.scaled, "Use the scaled factorization");
    sub->add_flag("--fold", o.fold, "Run the constant-folding pass");
  };
  auto format_opt = [&](CLI::App* sub, std::vector<std::string> allowed, std::string def) {
    o.format = def;
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember(std::move(allowed)));
  };
  auto seed_opt = [&](CLI::App* sub) { sub->add_option("--seed", o.seed, "Seed for random test vectors (mt19937_64)"); };

  CLI::App* gen = app.add_subcommand("gen", "Write a plan as JSON or DOT");
  plan_opts(gen);
  format_opt(gen, {"json", "dot"}, "json");

  CLI::App* eval = app.add_subcommand("eval", "Apply a plan to a vector");
  plan_opts(eval);
  eval->add_option("--input", o.input, "Comma-separated input (default: random)");
  eval->add_option("--plan", o.plans, "Evaluate a plan file instead")->check(CLI::ExistingFile);
  seed_opt(eval);
  format_opt(eval, {"text", "csv"}, "text");

  CLI::App* count = app.add_subcommand("count", "Count the operations of a generated plan");
  plan_opts(count);
  count->add_flag("--compare", o.compare, "Also print the closed form and the difference");
  format_opt(count, {"text", "csv", "json"}, "text");

  CLI::App* formula = app.add_subcommand("formula", "Evaluate a closed-form operation count");
  formula->add_option("--q", o.q, "Registry length q")->required();
  formula->add_option("--m", o.m, "Exponent m")->required();
  formula->add_flag("--scaled", o.scaled, "Scaled recursion");
  formula->add_flag("--fold", o.fold, "Folded scaled count (q = 1 or 3)");
  formula->add_flag("--pfa-scaled", o.pfa_scaled, "Scaled prime-factor upper bound (mu only)");
  formula->add_flag("--pfa-lower", o.pfa_lower, "Unscaled prime-factor lower bound (mu only)");
  formula->add_flag("--compare", o.compare, "Also count the generated plan of length q*2^m");
  format_opt(formula, {"text", "csv", "json"}, "text");

  app.add_subcommand("table2", "Scaled composite-length comparison table (CSV)");

  CLI::App* fig5 = app.add_subcommand("fig5", "Normalized multiplicative complexity data (CSV)");
  fig5->add_option("--max-m", o.max_m, "Largest exponent m")->check(CLI::Range(1u, 20u));

  CLI::App* verify = app.add_subcommand("verify", "Run the identity and oracle suite");
  verify->add_option("--max-n", o.max_n, "Largest length checked");
  verify->add_option("--tol", o.tol, "Pass threshold on max-abs error");
  verify->add_option("--plan", o.plans, "Also verify these plan files against the DCT-II oracle");
  seed_opt(verify);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(std::move(rev));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "evendct: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (!(o.tol > 0.0 && o.tol <= 1e-3)) throw UsageError("--tol must be in (0, 1e-3]");
    if (app.got_subcommand(gen)) return cmd_gen(o, out);
    if (app.got_subcommand(eval)) return cmd_eval(o, out);
    if (app.got_subcommand(count)) return cmd_count(o, out);
    if (app.got_subcommand(formula)) return cmd_formula(o, out);
    if (app.got_subcommand("table2")) {
      out << complexity::table2_csv();
      return kExitOk;
    }
    if (app.got_subcommand(fig5)) {
      out << complexity::fig5_csv(o.max_m);
      return kExitOk;
    }
    return cmd_verify(o, out);
  } catch (const UsageError& e) {
    err << "evendct: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "evendct: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace evendct::cli
