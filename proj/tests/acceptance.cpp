// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "nilsolve/additive.hpp"
#include "nilsolve/error.hpp"
#include "nilsolve/oracle.hpp"
#include "nilsolve/solver.hpp"
#include "test_util.hpp"

using namespace nilsolve;
using namespace nilsolve::testing;
namespace add = nilsolve::additive;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

// Records the first mismatch; later ones only count.
class Checker {
 public:
  void expect(bool condition, const std::function<std::string()>& describe) {
    ++checks_;
    if (condition) return;
    if (failures_++ == 0) first_ = describe();
  }
  Outcome outcome(const std::string& summary) const {
    if (failures_ == 0) return {true, summary + " (" + std::to_string(checks_) + " checks)"};
    return {false, std::to_string(failures_) + "/" + std::to_string(checks_) + " checks failed; first: " + first_};
  }

 private:
  std::size_t checks_ = 0;
  std::size_t failures_ = 0;
  std::string first_;
};

std::string elems(const std::vector<Elem>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "}";
}

std::string group_name(const add::AbelianPGroup& g) {
  std::string s;
  for (std::size_t j = 0; j < g.rank(); ++j) s += (j ? "+" : "") + std::string("Z/") + std::to_string(g.moduli()[j]);
  return s;
}

std::vector<add::AbelianPGroup> criterion_groups() {
  return {add::AbelianPGroup(2, {1}), add::AbelianPGroup(2, {2}), add::AbelianPGroup(2, {1, 1}),
          add::AbelianPGroup(3, {1}), add::AbelianPGroup(3, {2})};
}

// 1. Restricted-set solver against exhaustive search.
Outcome oracle_equivalence() {
  Checker check;
  std::mt19937_64 rng(1);
  for (const auto& [name, ring] : nilpotent_test_rings()) {
    const NilpotentSolver solver(ring);
    for (int trial = 0; trial < 100; ++trial) {
      const auto f = random_poly(rng, ring, 3, 20);
      const auto g = random_poly(rng, ring, 3, 20);
      const std::size_t n = num_variables(f);
      const std::size_t ng = std::max<std::size_t>(n, num_variables(g));
      const auto fast = solver.range(f);
      const auto slow = brute_range(ring, f, n);
      auto where = [&] { return std::string(name) + " f=" + to_string(f) + " g=" + to_string(g); };
      check.expect(fast.values == slow.values,
                   [&] { return where() + " range " + elems(fast.values) + " vs " + elems(slow.values); });
      check.expect(solver.solvable(f, g).solvable == brute_solvable(ring, f, g, ng).solvable,
                   [&] { return where() + " solvable"; });
      check.expect(solver.equivalent(f, g).equivalent == brute_equivalent(ring, f, g, ng).equivalent,
                   [&] { return where() + " equivalent"; });
    }
  }
  return check.outcome("5 rings x 100 polynomials: range, solvable, equivalent agree with exhaustive search");
}

// 2. Twelve variables over 2Z/4Z with k = 1.
Outcome substitution_count() {
  Checker check;
  const auto ring = ring_2z4();
  const auto dec = primary_decomposition(ring);
  const auto profile = make_profile(dec, 12, 1);
  const auto count = count_support_points(dec, profile);
  check.expect(count == 79, [&] { return "count " + std::to_string(count); });
  SupportEnumerator it(ring, dec, profile);
  std::vector<Point> stream;
  for (; !it.done(); it.advance()) stream.emplace_back(it.point().begin(), it.point().end());
  check.expect(stream.size() == 79, [&] { return "stream " + std::to_string(stream.size()); });
  const auto cube = all_points(ring, 12);
  check.expect(cube.size() == 4096, [&] { return "cube " + std::to_string(cube.size()); });

  std::mt19937_64 rng(2);
  const NilpotentSolver solver(ring);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = random_expr(rng, ring, 12, 1 + rng() % 20);
    std::set<Elem> over_s, over_cube;
    for (const auto& p : stream) over_s.insert(evaluate(f, ring, p));
    for (const auto& p : cube) over_cube.insert(evaluate(f, ring, p));
    check.expect(over_s == over_cube, [&] { return "f=" + to_string(f); });
    const auto via_solver = solver.range(f).values;
    check.expect(std::set<Elem>(via_solver.begin(), via_solver.end()) == over_cube,
                 [&] { return "solver f=" + to_string(f); });
  }
  return check.outcome("|S| = 79 = streamed, m^n = 4096, 20 ranges over S equal ranges over R^12");
}

// 3. Nilpotency classes.
Outcome nilpotency_classes() {
  Checker check;
  for (std::uint32_t t : {2u, 3u})
    for (std::uint32_t p : {2u, 3u}) {
      const auto cls = nilpotency_class(make_strict_upper(t, p));
      check.expect(cls == t, [&] { return "strict_upper(" + std::to_string(t) + "," + std::to_string(p) + ")"; });
    }
  for (std::uint32_t p : {2u, 3u})
    for (std::uint32_t a : {2u, 3u}) {
      const auto cls = nilpotency_class(make_scaled_zmod(p, a));
      check.expect(cls == a, [&] { return "scaled_zmod(" + std::to_string(p) + "," + std::to_string(a) + ")"; });
    }
  std::vector<NamedRing> rings = nilpotent_test_rings();
  rings.push_back({"strict_upper(3,3)", make_strict_upper(3, 3)});
  rings.push_back({"strict_upper(2,3)", make_strict_upper(2, 3)});
  rings.push_back({"scaled_zmod(3,3)", make_scaled_zmod(3, 3)});
  for (const auto& [name, ring] : rings) {
    const auto cls = nilpotency_class(ring);
    check.expect(cls && std::size_t{1} << (*cls - 1) <= ring.order(), [&] { return std::string(name); });
  }
  return check.outcome("strict_upper(t,p) has class t, scaled_zmod(p,a) has class a, l-1 <= log2 m");
}

// 4. Davenport constants of every abelian p-group of order at most 16.
Outcome davenport() {
  Checker check;
  const std::vector<std::pair<std::uint32_t, std::vector<std::uint32_t>>> groups = {
      {2, {1}},    {2, {2}},       {2, {1, 1}},    {2, {3}},          {2, {2, 1}},    {2, {1, 1, 1}},
      {2, {4}},    {2, {3, 1}},    {2, {2, 2}},    {2, {2, 1, 1}},    {2, {1, 1, 1, 1}},
      {3, {1}},    {3, {2}},       {3, {1, 1}},    {5, {1}},          {7, {1}},       {11, {1}},
      {13, {1}}};
  for (const auto& [p, alphas] : groups) {
    const add::AbelianPGroup g(p, alphas);
    const auto d = add::davenport_constant(g);
    check.expect(d == 1 + g.olson_sum(), [&] { return group_name(g) + " D=" + std::to_string(d); });
  }
  return check.outcome("D(G) = 1 + sum(p^a - 1) for all 18 abelian p-groups of order <= 16");
}

// 5. Small-subset descent on random set functions.
Outcome small_subset() {
  Checker check;
  std::mt19937_64 rng(5);
  for (const auto& group : criterion_groups())
    for (std::size_t k : {1u, 2u})
      for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = rng() % 9;
        add::SetFunction phi(group, n, k);
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
          if (static_cast<std::size_t>(__builtin_popcountll(mask)) > k || rng() % 2) continue;
          add::Subset key;
          for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1U) key.push_back(i);
          phi.set(key, group.decode(rng() % group.order()));
        }
        add::Subset whole(n);
        for (std::size_t i = 0; i < n; ++i) whole[i] = i;
        try {
          const auto u = add::find_small_subset(phi);
          check.expect(u.size() <= add::subset_bound(group, k), [&] { return group_name(group) + " size"; });
          check.expect(add::phi_bar(phi, u) == add::phi_bar(phi, whole), [&] { return group_name(group) + " value"; });
        } catch (const Error& e) {
          check.expect(false, [&] { return group_name(group) + " " + e.what(); });
        }
      }
  return check.outcome("2000 random set functions: |U| <= k*sum(p^a - 1), phi_bar(U) = phi_bar(H)");
}

// 6. Extremal instances attain the bound.
Outcome tightness() {
  Checker check;
  for (const auto& group : criterion_groups())
    for (std::size_t k : {1u, 2u}) {
      const std::size_t bound = add::subset_bound(group, k);
      for (std::size_t extra : {0u, 2u}) {
        const auto phi = add::tightness_instance(group, k, bound + extra);
        const auto minimal = add::min_matching_subset_size(phi);
        check.expect(minimal == bound, [&] {
          return group_name(group) + " k=" + std::to_string(k) + " minimal " + std::to_string(minimal);
        });
      }
    }
  return check.outcome("minimal U has size exactly k*sum(p^a - 1) for 5 groups, k in {1,2}");
}

// 7. Random instances of the Chevalley-type theorem.
Outcome brink() {
  Checker check;
  std::mt19937_64 rng(7);
  int checked = 0, attempts = 0;
  while (checked < 100 && attempts < 100000) {
    ++attempts;
    add::BrinkInstance inst;
    inst.p = (rng() % 2) ? 2 : 3;
    const std::size_t n = 2 + rng() % 5;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::int64_t> set;
      for (std::uint32_t r = 0; r < inst.p; ++r)
        if (r == 0 || rng() % 4) set.push_back(static_cast<std::int64_t>(r) + inst.p * static_cast<std::int64_t>(rng() % 3) - inst.p);
      inst.sets.push_back(set);
    }
    const std::size_t polys = 1 + rng() % 2;
    for (std::size_t j = 0; j < polys; ++j) {
      inst.alphas.push_back(1 + (inst.p == 2 && rng() % 3 == 0));
      add::IntPoly f;
      const std::size_t terms = 1 + rng() % 4;
      for (std::size_t t = 0; t < terms; ++t) {
        add::IntMonomial m{static_cast<std::int64_t>(rng() % 9) - 4, std::vector<std::uint32_t>(n, 0)};
        const std::size_t deg = rng() % 3;
        for (std::size_t d = 0; d < deg; ++d) ++m.exponents[rng() % n];
        f.terms.push_back(m);
      }
      inst.polys.push_back(f);
    }
    const auto v = add::brink_check(inst);
    if (v.kind == add::BrinkVerdict::Kind::HypothesisFails) continue;
    ++checked;
    check.expect(v.consistent(), [&] { return "single solution at attempt " + std::to_string(attempts); });
  }
  check.expect(checked == 100, [&] { return "only " + std::to_string(checked) + " instances met the hypothesis"; });
  return check.outcome("100 instances meeting the degree hypothesis, none with exactly one solution");
}

// 8. Over a ring with two primary components the range is the sum of the
// component ranges of the projected polynomials.
Outcome minkowski() {
  Checker check;
  const auto ring = ring_order6();
  const NilpotentSolver solver(ring);
  const auto& dec = solver.decomposition();
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = random_poly(rng, ring, 2, 20);
    const std::size_t n = num_variables(f);
    std::set<Elem> sum{ring.zero()};
    for (const auto& comp : dec.components) {
      const auto g = map_constants(f, [&](Elem c) { return comp.projection[c]; });
      std::vector<Point> points{{}};
      for (std::size_t j = 0; j < n; ++j) {
        std::vector<Point> next;
        for (const auto& p : points)
          for (Elem e : comp.elements) {
            auto q = p;
            q.push_back(e);
            next.push_back(std::move(q));
          }
        points = std::move(next);
      }
      std::set<Elem> part;
      for (const auto& p : points) part.insert(evaluate(g, ring, p));
      std::set<Elem> next;
      for (Elem a : sum)
        for (Elem b : part) next.insert(ring.add(a, b));
      sum = std::move(next);
    }
    const auto got = solver.range(f).values;
    check.expect(std::set<Elem>(got.begin(), got.end()) == sum, [&] { return "f=" + to_string(f); });
  }
  return check.outcome("20 polynomials over 2Z/4Z+3Z/9Z: range = R_1-range + R_2-range");
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"oracle equivalence", oracle_equivalence}, {"substitution count", substitution_count},
      {"nilpotency classes", nilpotency_classes}, {"davenport constants", davenport},
      {"small subsets", small_subset},            {"tightness", tightness},
      {"chevalley instances", brink},             {"minkowski sum", minkowski},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criteria[i].second();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    failed += !outcome.ok;
    std::printf("%s [%zu] %s: %s [%lld ms]\n", outcome.ok ? "PASS" : "FAIL", i + 1, criteria[i].first,
                outcome.detail.c_str(), static_cast<long long>(ms.count()));
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
