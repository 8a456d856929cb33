#include "cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <random>
#include <sstream>

#include "nilsolve/additive.hpp"
#include "nilsolve/error.hpp"
#include "nilsolve/oracle.hpp"
#include "nilsolve/poly.hpp"
#include "nilsolve/ring.hpp"
#include "nilsolve/ring_io.hpp"
#include "nilsolve/solver.hpp"
#include "nilsolve/support.hpp"

namespace nilsolve::cli {

namespace {

// Plain "key: value" lines, or "key=value" with --porcelain.
class Report {
 public:
  Report(std::ostream& out, bool porcelain) : out_(out), porcelain_(porcelain) {}

  bool porcelain() const { return porcelain_; }

  template <class T>
  void field(const std::string& key, const T& value) {
    out_ << key << (porcelain_ ? "=" : ": ") << value << '\n';
  }

  std::ostream& raw() { return out_; }

 private:
  std::ostream& out_;
  bool porcelain_;
};

std::string element_text(const FiniteRing& ring, Elem e, bool porcelain) {
  std::string text = "e" + std::to_string(e);
  if (!porcelain && ring.has_labels()) text += "[" + ring.label(e) + "]";
  return text;
}

std::string point_text(const FiniteRing& ring, const Point& point, bool porcelain) {
  if (point.empty()) return "()";
  std::string text;
  for (std::size_t j = 0; j < point.size(); ++j) {
    if (porcelain) {
      text += (j == 0 ? "" : ",") + std::to_string(point[j]);
    } else {
      text += (j == 0 ? "" : " ") + std::string("x") + std::to_string(j + 1) + "=" + element_text(ring, point[j], false);
    }
  }
  return text;
}

std::string u128_text(unsigned __int128 value) {
  if (value == 0) return "0";
  std::string digits;
  while (value > 0) {
    digits.insert(digits.begin(), static_cast<char>('0' + static_cast<int>(value % 10)));
    value /= 10;
  }
  return digits;
}

// Polynomial arguments are inline text, or @PATH to read the text from a file.
PolyExpr read_poly(const std::string& arg, const FiniteRing& ring) {
  std::string text = arg;
  if (!arg.empty() && arg.front() == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open " + arg.substr(1));
    std::ostringstream buffer;
    buffer << in.rdbuf();
    text = buffer.str();
  }
  return parse_poly(text, ring);
}

std::uint32_t to_u32(const std::string& text, const char* what) {
  std::size_t used = 0;
  unsigned long value = 0;
  try {
    value = std::stoul(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty() || text.front() == '-' || value > 0xFFFFFFFFUL)
    throw Error(ErrorCode::InvalidArgument, std::string("expected ") + what + ", got '" + text + "'");
  return static_cast<std::uint32_t>(value);
}

void print_range(Report& report, const FiniteRing& ring, const RangeReport& range, const char* method) {
  report.field("method", method);
  report.field("variables", range.num_vars);
  if (range.k) report.field("k", *range.k);
  report.field("evaluations", range.evaluations_used);
  std::string values;
  for (Elem v : range.values) values += (values.empty() ? "" : report.porcelain() ? "," : " ") + element_text(ring, v, report.porcelain());
  report.field("values", values);
  for (const auto& [value, witness] : range.witnesses)
    report.field("witness." + element_text(ring, value, true), point_text(ring, witness, report.porcelain()));
}

// ---------------------------------------------------------------------------

struct RingMakeArgs {
  std::string kind;
  std::vector<std::string> params;
  std::string output;
};

FiniteRing make_ring(const RingMakeArgs& args) {
  auto expect = [&](std::size_t count) {
    if (args.params.size() != count)
      throw Error(ErrorCode::InvalidArgument,
                  "'" + args.kind + "' takes " + std::to_string(count) + " arguments");
  };
  if (args.kind == "scaled-zmod") {
    expect(2);
    return make_scaled_zmod(to_u32(args.params[0], "prime"), to_u32(args.params[1], "exponent"));
  }
  if (args.kind == "strict-upper") {
    expect(2);
    return make_strict_upper(to_u32(args.params[0], "matrix size"), to_u32(args.params[1], "prime"));
  }
  if (args.kind == "direct-sum") {
    expect(2);
    return direct_sum(load_ring(args.params[0]), load_ring(args.params[1]));
  }
  if (args.kind == "zero-mul") {
    expect(1);
    return make_zero_mul(to_u32(args.params[0], "order"));
  }
  if (args.kind == "zmod") {
    expect(1);
    return make_zmod(to_u32(args.params[0], "order"));
  }
  throw Error(ErrorCode::InvalidArgument, "unknown ring kind '" + args.kind + "'");
}

int ring_info(Report& report, const std::string& file) {
  const FiniteRing ring = load_ring(file);
  const auto chain = power_ideals(ring);
  const auto decomposition = primary_decomposition(ring);
  report.field("order", ring.order());
  report.field("zero", element_text(ring, ring.zero(), report.porcelain()));
  report.field("class", chain.nilpotency_class ? std::to_string(*chain.nilpotency_class) : "NOT-NILPOTENT");
  std::string sizes;
  for (const auto& ideal : chain.subsets) sizes += (sizes.empty() ? "" : " ") + std::to_string(ideal.size());
  report.field("chain", sizes);
  std::string components = "[";
  for (const auto& comp : decomposition.components)
    components += (components.size() > 1 ? ", (" : "(") + std::to_string(comp.prime) + "," +
                  std::to_string(comp.exponent) + ")";
  report.field("components", components + "]");
  return kPositive;
}

struct SolveArgs {
  std::string file;
  std::string poly;
  std::string other;
  std::optional<std::size_t> k;
  bool oracle = false;
  bool tighten = false;
  std::size_t jobs = 1;
};

SolverOptions solver_options(const SolveArgs& args) {
  SolverOptions options;
  options.k = args.k;
  options.tighten = args.tighten;
  options.jobs = args.jobs;
  return options;
}

int cmd_range(Report& report, const SolveArgs& args) {
  const FiniteRing ring = load_ring(args.file);
  const PolyExpr f = read_poly(args.poly, ring);
  if (args.oracle) {
    print_range(report, ring, brute_range(ring, f, num_variables(f)), "exhaustive");
  } else {
    print_range(report, ring, range(ring, f, solver_options(args)), "support-set");
  }
  return kPositive;
}

int cmd_solve(Report& report, const SolveArgs& args) {
  const FiniteRing ring = load_ring(args.file);
  const PolyExpr f = read_poly(args.poly, ring);
  const PolyExpr g = args.other.empty() ? PolyExpr::constant(ring.zero()) : read_poly(args.other, ring);
  const SolveVerdict verdict =
      args.oracle ? brute_solvable(ring, f, g, std::max(num_variables(f), num_variables(g)))
                  : solvable(ring, f, g, solver_options(args));
  report.field("method", args.oracle ? "exhaustive" : "support-set");
  report.field("variables", verdict.num_vars);
  if (verdict.k) report.field("k", *verdict.k);
  report.field("verdict", verdict.solvable ? "solvable" : "unsolvable");
  if (verdict.witness) report.field("witness", point_text(ring, *verdict.witness, report.porcelain()));
  report.field("examined", verdict.points_examined);
  return verdict.solvable ? kPositive : kNegative;
}

int cmd_equiv(Report& report, const SolveArgs& args) {
  const FiniteRing ring = load_ring(args.file);
  const PolyExpr f = read_poly(args.poly, ring);
  const PolyExpr g = read_poly(args.other, ring);
  const EquivVerdict verdict =
      args.oracle ? brute_equivalent(ring, f, g, std::max(num_variables(f), num_variables(g)))
                  : equivalent(ring, f, g, solver_options(args));
  report.field("method", args.oracle ? "exhaustive" : "support-set");
  report.field("variables", verdict.num_vars);
  if (verdict.k) report.field("k", *verdict.k);
  report.field("verdict", verdict.equivalent ? "equivalent" : "inequivalent");
  if (verdict.counterexample) report.field("counterexample", point_text(ring, *verdict.counterexample, report.porcelain()));
  report.field("examined", verdict.points_examined);
  return verdict.equivalent ? kPositive : kNegative;
}

// x1*x2 + x2*x3 + ... + x(n-1)*xn + xn; the zero constant for n = 0.
PolyExpr bench_polynomial(std::size_t n, const FiniteRing& ring) {
  if (n == 0) return PolyExpr::constant(ring.zero());
  PolyExpr f = PolyExpr::var(static_cast<std::uint32_t>(n));
  for (std::size_t j = n - 1; j >= 1; --j)
    f = PolyExpr::var(static_cast<std::uint32_t>(j)) * PolyExpr::var(static_cast<std::uint32_t>(j + 1)) + f;
  return f;
}

struct BenchArgs {
  std::string file;
  std::vector<std::size_t> ns;
  std::optional<std::size_t> k;
  bool no_time = false;
  std::size_t jobs = 1;
};

int cmd_bench(Report& report, const BenchArgs& args) {
  const FiniteRing ring = load_ring(args.file);
  const NilpotentSolver solver(ring);
  std::ostream& out = report.raw();
  if (report.porcelain()) {
    out << "n,k,count,stream,full,ratio" << (args.no_time ? "" : ",ms") << '\n';
  } else {
    out << std::setw(4) << "n" << std::setw(4) << "k" << std::setw(14) << "count" << std::setw(14) << "stream"
        << std::setw(42) << "m^n" << std::setw(14) << "ratio";
    if (!args.no_time) out << std::setw(12) << "ms";
    out << '\n';
  }
  for (std::size_t n : args.ns) {
    const PolyExpr f = bench_polynomial(n, ring);
    SolverOptions options;
    options.k = args.k;
    options.jobs = args.jobs;
    const std::size_t k = solver.choose_k(f, n, options);
    const std::uint64_t count = count_support_points(solver.decomposition(), make_profile(solver.decomposition(), n, k));

    unsigned __int128 full = 1;
    bool saturated = false;
    for (std::size_t j = 0; j < n && !saturated; ++j) {
      if (full > (~static_cast<unsigned __int128>(0)) / ring.order()) saturated = true;
      else full *= ring.order();
    }
    const auto start = std::chrono::steady_clock::now();
    const RangeReport result = solver.range(f, options);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    char ratio[32];
    std::snprintf(ratio, sizeof ratio, "%.3e",
                  saturated ? 0.0 : static_cast<double>(count) / static_cast<double>(full));
    const std::string full_text = saturated ? ">2^128" : u128_text(full);
    if (report.porcelain()) {
      out << n << ',' << k << ',' << count << ',' << result.evaluations_used << ',' << full_text << ',' << ratio;
      if (!args.no_time) out << ',' << std::fixed << std::setprecision(3) << ms << std::defaultfloat;
    } else {
      out << std::setw(4) << n << std::setw(4) << k << std::setw(14) << count << std::setw(14)
          << result.evaluations_used << std::setw(42) << full_text << std::setw(14) << ratio;
      if (!args.no_time) out << std::setw(12) << std::fixed << std::setprecision(3) << ms << std::defaultfloat;
    }
    out << '\n';
  }
  return kPositive;
}

// ---------------------------------------------------------------------------
// verify

additive::AbelianPGroup group_from(const std::vector<std::string>& params) {
  if (params.size() < 2) throw Error(ErrorCode::InvalidArgument, "expected a prime and at least one exponent");
  std::vector<std::uint32_t> alphas;
  for (std::size_t i = 1; i < params.size(); ++i) alphas.push_back(to_u32(params[i], "exponent"));
  return additive::AbelianPGroup(to_u32(params[0], "prime"), std::move(alphas));
}

std::string group_text(const additive::AbelianPGroup& group) {
  std::string text;
  for (std::uint64_t m : group.moduli()) text += (text.empty() ? "Z/" : "+Z/") + std::to_string(m);
  return text;
}

std::string subset_text(const additive::Subset& subset) {
  std::string text = "{";
  for (std::size_t i = 0; i < subset.size(); ++i) text += (i ? "," : "") + std::to_string(subset[i] + 1);
  return text + "}";
}

int verify_davenport(Report& report, const std::vector<std::string>& params) {
  const auto group = group_from(params);
  const std::uint64_t computed = additive::davenport_constant(group);
  const std::uint64_t expected = 1 + group.olson_sum();
  report.field("group", group_text(group));
  report.field("davenport", computed);
  report.field("olson", expected);
  report.field("verdict", computed == expected ? "verified" : "mismatch");
  return computed == expected ? kPositive : kNegative;
}

additive::SetFunction random_set_function(const additive::AbelianPGroup& group, std::size_t h, std::size_t k,
                                          std::mt19937_64& rng) {
  additive::SetFunction phi(group, h, k);
  std::vector<std::size_t> all(h);
  for (std::size_t i = 0; i < h; ++i) all[i] = i;
  // Every subset of size <= k, by increasing size and lexicographically.
  for (std::size_t size = 0; size <= std::min(k, h); ++size) {
    std::vector<std::size_t> pick(size);
    for (std::size_t i = 0; i < size; ++i) pick[i] = i;
    while (true) {
      if (rng() % 2 == 0) {
        additive::AbelianPGroup::Element value(group.rank());
        for (std::size_t j = 0; j < group.rank(); ++j) value[j] = rng() % group.moduli()[j];
        phi.set(pick, value);
      }
      std::size_t i = size;
      while (i > 0 && pick[i - 1] == h - size + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return phi;
}

struct AdditiveArgs {
  std::vector<std::string> params;
  std::size_t h = 8;
  std::size_t k = 1;
  std::size_t trials = 100;
  std::uint64_t seed = 1;
};

int verify_additive(Report& report, const AdditiveArgs& args) {
  const auto group = group_from(args.params);
  const std::uint64_t bound = additive::subset_bound(group, args.k);
  std::mt19937_64 rng(args.seed);
  additive::Subset everything(args.h);
  for (std::size_t i = 0; i < args.h; ++i) everything[i] = i;
  std::size_t failures = 0, largest = 0;
  for (std::size_t t = 0; t < args.trials; ++t) {
    const auto phi = random_set_function(group, args.h, args.k, rng);
    try {
      const auto u = additive::find_small_subset(phi);
      largest = std::max(largest, u.size());
      if (u.size() > bound || additive::phi_bar(phi, u) != additive::phi_bar(phi, everything)) ++failures;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DescentStuck) throw;
      ++failures;
    }
  }
  report.field("group", group_text(group));
  report.field("ground", args.h);
  report.field("k", args.k);
  report.field("trials", args.trials);
  report.field("bound", bound);
  report.field("largest", largest);
  report.field("failures", failures);
  report.field("verdict", failures == 0 ? "verified" : "counterexample");
  return failures == 0 ? kPositive : kNegative;
}

int verify_tightness(Report& report, const std::vector<std::string>& params, std::size_t k,
                     std::optional<std::size_t> h) {
  const auto group = group_from(params);
  const std::uint64_t bound = additive::subset_bound(group, k);
  const auto phi = additive::tightness_instance(group, k, h.value_or(static_cast<std::size_t>(bound)));
  const std::size_t minimal = additive::min_matching_subset_size(phi);
  const auto descent = additive::find_small_subset(phi);
  report.field("group", group_text(group));
  report.field("ground", phi.ground_size());
  report.field("k", k);
  report.field("bound", bound);
  report.field("minimal", minimal);
  report.field("descent", subset_text(descent));
  report.field("verdict", minimal == bound ? "tight" : "not-tight");
  return minimal == bound ? kPositive : kNegative;
}

additive::BrinkInstance brink_from_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open " + path);
  try {
    const auto doc = nlohmann::json::parse(in);
    additive::BrinkInstance instance;
    instance.p = doc.at("p").get<std::uint32_t>();
    instance.alphas = doc.at("alphas").get<std::vector<std::uint32_t>>();
    instance.sets = doc.at("sets").get<std::vector<std::vector<std::int64_t>>>();
    for (const auto& poly : doc.at("polys")) {
      additive::IntPoly f;
      for (const auto& term : poly)
        f.terms.push_back({term.at("coef").get<std::int64_t>(), term.at("exp").get<std::vector<std::uint32_t>>()});
      instance.polys.push_back(std::move(f));
    }
    return instance;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
}

int verify_brink(Report& report, const std::string& path) {
  const auto verdict = additive::brink_check(brink_from_json(path));
  report.field("freedom", verdict.freedom);
  report.field("weighted_degree", verdict.weighted_degree);
  switch (verdict.kind) {
    case additive::BrinkVerdict::Kind::HypothesisFails: report.field("result", "hypothesis-fails"); break;
    case additive::BrinkVerdict::Kind::Empty: report.field("result", "empty"); break;
    case additive::BrinkVerdict::Kind::Count: report.field("result", "count " + std::to_string(verdict.count)); break;
  }
  report.field("verdict", verdict.consistent() ? "consistent" : "counterexample");
  return verdict.consistent() ? kPositive : kNegative;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Value sets and equation solvability over finite nilpotent rings", "nilsolve"};
  app.require_subcommand(1);
  bool porcelain = false;
  app.add_flag("--porcelain", porcelain, "Emit key=value records");
  app.fallthrough();

  auto* ring_cmd = app.add_subcommand("ring", "Build or inspect ring files")->require_subcommand(1);
  RingMakeArgs make_args;
  auto* make_cmd = ring_cmd->add_subcommand("make", "Write a ring file");
  make_cmd->add_option("kind", make_args.kind, "scaled-zmod P A | strict-upper T P | direct-sum F1 F2 | zero-mul N | zmod N")
      ->required();
  make_cmd->add_option("params", make_args.params, "Constructor arguments")->required();
  make_cmd->add_option("-o,--output", make_args.output, "Output file")->required();
  std::string info_file;
  auto* info_cmd = ring_cmd->add_subcommand("info", "Describe a ring file");
  info_cmd->add_option("file", info_file)->required();

  SolveArgs range_args, solve_args, equiv_args;
  auto* range_cmd = app.add_subcommand("range", "Value set of a polynomial");
  range_cmd->add_option("file", range_args.file)->required();
  range_cmd->add_option("poly", range_args.poly, "Polynomial text, or @PATH")->required();
  range_cmd->add_option("--k", range_args.k, "Variables-per-monomial bound");
  range_cmd->add_flag("--tighten", range_args.tighten, "Lower k by expanding the polynomial");
  range_cmd->add_flag("--oracle", range_args.oracle, "Exhaustive evaluation over R^n");
  range_cmd->add_option("--jobs", range_args.jobs)->check(CLI::PositiveNumber);

  auto* solve_cmd = app.add_subcommand("solve", "Decide whether POLY = POLY2 has a solution");
  solve_cmd->add_option("file", solve_args.file)->required();
  solve_cmd->add_option("poly", solve_args.poly, "Polynomial text, or @PATH")->required();
  solve_cmd->add_option("--equals", solve_args.other, "Right-hand side (default: zero)");
  solve_cmd->add_option("--k", solve_args.k, "Variables-per-monomial bound");
  solve_cmd->add_flag("--tighten", solve_args.tighten, "Lower k by expanding the polynomial");
  solve_cmd->add_flag("--oracle", solve_args.oracle, "Exhaustive evaluation over R^n");
  solve_cmd->add_option("--jobs", solve_args.jobs)->check(CLI::PositiveNumber);

  auto* equiv_cmd = app.add_subcommand("equiv", "Decide whether two polynomials define the same function");
  equiv_cmd->add_option("file", equiv_args.file)->required();
  equiv_cmd->add_option("poly", equiv_args.poly)->required();
  equiv_cmd->add_option("poly2", equiv_args.other)->required();
  equiv_cmd->add_flag("--oracle", equiv_args.oracle, "Exhaustive evaluation over R^n");
  equiv_cmd->add_option("--jobs", equiv_args.jobs)->check(CLI::PositiveNumber);

  BenchArgs bench_args;
  auto* bench_cmd = app.add_subcommand("bench", "Restricted set size against m^n");
  bench_cmd->add_option("file", bench_args.file)->required();
  bench_cmd->add_option("--n", bench_args.ns, "Comma-separated variable counts")->required()->delimiter(',');
  bench_cmd->add_option("--k", bench_args.k, "Variables-per-monomial bound");
  bench_cmd->add_flag("--no-time", bench_args.no_time, "Omit the wall-time column");
  bench_cmd->add_option("--jobs", bench_args.jobs)->check(CLI::PositiveNumber);

  auto* verify_cmd = app.add_subcommand("verify", "Check the additive results on explicit instances")
                         ->require_subcommand(1);
  std::vector<std::string> davenport_params;
  auto* davenport_cmd = verify_cmd->add_subcommand("davenport", "Davenport constant against 1 + sum(p^a - 1)");
  davenport_cmd->add_option("group", davenport_params, "P ALPHA...")->required();
  AdditiveArgs additive_args;
  auto* additive_cmd = verify_cmd->add_subcommand("additive", "Small-subset extraction on random set functions");
  additive_cmd->set_help_flag("--help", "Print this help message and exit");  // frees -h for --h
  additive_cmd->add_option("group", additive_args.params, "P ALPHA...")->required();
  additive_cmd->add_option("--h", additive_args.h, "Ground set size")->required()->check(CLI::Range(0, 64));
  additive_cmd->add_option("--k", additive_args.k, "Subset size cap")->required();
  additive_cmd->add_option("--trials", additive_args.trials)->required();
  additive_cmd->add_option("--seed", additive_args.seed);
  std::vector<std::string> tightness_params;
  std::size_t tightness_k = 1;
  std::optional<std::size_t> tightness_h;
  auto* tightness_cmd = verify_cmd->add_subcommand("tightness", "Extremal instance needs the full bound");
  tightness_cmd->set_help_flag("--help", "Print this help message and exit");
  tightness_cmd->add_option("group", tightness_params, "P ALPHA...")->required();
  tightness_cmd->add_option("--k", tightness_k)->required();
  tightness_cmd->add_option("--h", tightness_h, "Ground set size (default: the bound)");
  std::string brink_file;
  auto* brink_cmd = verify_cmd->add_subcommand("brink", "Count solutions of a congruence system (JSON)");
  brink_cmd->add_option("specfile", brink_file)->required();

  std::vector<const char*> argv{"nilsolve"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPositive;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  Report report(out, porcelain);
  try {
    if (*make_cmd) {
      save_ring(make_args.output, make_ring(make_args));
      return kPositive;
    }
    if (*info_cmd) return ring_info(report, info_file);
    if (*range_cmd) return cmd_range(report, range_args);
    if (*solve_cmd) return cmd_solve(report, solve_args);
    if (*equiv_cmd) return cmd_equiv(report, equiv_args);
    if (*bench_cmd) return cmd_bench(report, bench_args);
    if (*davenport_cmd) return verify_davenport(report, davenport_params);
    if (*additive_cmd) return verify_additive(report, additive_args);
    if (*tightness_cmd) return verify_tightness(report, tightness_params, tightness_k, tightness_h);
    if (*brink_cmd) return verify_brink(report, brink_file);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::NotNilpotentRing ? kInapplicable : kUsageError;
  }
  err << "error: no command\n";
  return kUsageError;
}

}  // namespace nilsolve::cli
