#include "nilsolve/solver.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "nilsolve/batch_eval.hpp"
#include "nilsolve/error.hpp"

namespace nilsolve {

namespace {

constexpr std::uint64_t kChunkPoints = BatchEvaluator::kBatch * 16;
constexpr std::uint64_t kUnset = std::numeric_limits<std::uint64_t>::max();

struct Scan {
  const FiniteRing& ring;
  const PrimaryDecomposition& decomposition;
  SupportProfile profile;
  std::uint64_t total;
  BatchEvaluator evaluator;

  std::uint64_t chunks() const { return total / kChunkPoints + (total % kChunkPoints != 0); }

  // Feeds stream positions [begin, end) through the evaluator one batch at a
  // time. on_batch(first_position, values) returns false to stop early.
  template <class OnBatch>
  void run_chunk(SupportEnumerator& points, BatchEvaluator::Workspace& ws, std::uint64_t begin,
                 std::uint64_t end, OnBatch&& on_batch) const {
    points.seek(begin);
    const std::size_t n = profile.n;
    while (points.position() < end) {
      const std::uint64_t first = points.position();
      std::size_t lanes = 0;
      for (; lanes < BatchEvaluator::kBatch && points.position() < end; ++lanes, points.advance()) {
        const auto point = points.point();
        for (std::size_t j = 0; j < n; ++j) ws.column(j)[lanes] = point[j];
      }
      if (!on_batch(first, evaluator.run(ws, lanes))) return;
    }
  }
};

// Runs body(worker) on `jobs` threads, rethrowing the first failure.
template <class Body>
void run_workers(std::size_t jobs, Body&& body) {
  if (jobs <= 1) {
    body(std::size_t{0});
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_lock;
  {
    std::vector<std::jthread> threads;
    threads.reserve(jobs);
    for (std::size_t w = 0; w < jobs; ++w)
      threads.emplace_back([&, w] {
        try {
          body(w);
        } catch (...) {
          std::lock_guard lock(failure_lock);
          if (!failure) failure = std::current_exception();
        }
      });
  }
  if (failure) std::rethrow_exception(failure);
}

std::size_t worker_count(const SolverOptions& options, std::uint64_t chunks) {
  return static_cast<std::size_t>(std::clamp<std::uint64_t>(options.jobs, 1, std::max<std::uint64_t>(chunks, 1)));
}

// Position of the first point, in stream order, whose value equals (or
// differs from) `target`; kUnset when there is none. Parallel workers take
// chunks in increasing order and stop once a smaller position is known, so
// the answer does not depend on the number of workers.
std::uint64_t first_position(const Scan& scan, Elem target, bool want_equal, const SolverOptions& options) {
  const std::uint64_t chunks = scan.chunks();
  std::atomic<std::uint64_t> next_chunk{0};
  std::atomic<std::uint64_t> best{kUnset};
  run_workers(worker_count(options, chunks), [&](std::size_t) {
    SupportEnumerator points(scan.ring, scan.decomposition, scan.profile);
    auto ws = scan.evaluator.make_workspace();
    const auto& kernels = scan.evaluator.kernels();
    while (true) {
      const std::uint64_t chunk = next_chunk.fetch_add(1);
      if (chunk >= chunks) return;
      const std::uint64_t begin = chunk * kChunkPoints;
      if (begin >= best.load()) return;
      bool found = false;
      scan.run_chunk(points, ws, begin, std::min(begin + kChunkPoints, scan.total),
                     [&](std::uint64_t first, std::span<const Elem> values) {
                       if (first >= best.load()) return false;
                       const std::size_t hit = kernels.find_first(values.data(), values.size(), target, want_equal);
                       if (hit == values.size()) return true;
                       std::uint64_t position = first + hit;
                       std::uint64_t current = best.load();
                       while (position < current && !best.compare_exchange_weak(current, position)) {
                       }
                       found = true;
                       return false;
                     });
      if (found) return;
    }
  });
  return best.load();
}

Point point_at(const Scan& scan, std::uint64_t position) {
  SupportEnumerator points(scan.ring, scan.decomposition, scan.profile);
  points.seek(position);
  return Point(points.point().begin(), points.point().end());
}

}  // namespace

NilpotentSolver::NilpotentSolver(const FiniteRing& ring) : ring_(&ring) {
  const auto chain = power_ideals(ring);
  if (!chain.nilpotency_class)
    throw Error(ErrorCode::NotNilpotentRing,
                "power ideals stabilize at " + std::to_string(chain.subsets.back().size()) +
                    " elements; the restricted substitution set is only valid for nilpotent rings");
  class_ = *chain.nilpotency_class;
  decomposition_ = primary_decomposition(ring);
}

std::size_t NilpotentSolver::choose_k(const PolyExpr& f, std::size_t n, const SolverOptions& options) const {
  std::size_t k = class_ - 1;
  if (options.tighten) {
    try {
      k = std::min(k, max_distinct_vars(expand_standard(f, *ring_, class_, options.monomial_budget)));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::BudgetExceeded) throw;
    }
  }
  if (options.k) k = *options.k;
  return std::min(k, n);
}

RangeReport NilpotentSolver::range(const PolyExpr& f, const SolverOptions& options) const {
  const std::size_t n = num_variables(f);
  const std::size_t k = choose_k(f, n, options);
  const auto profile = make_profile(decomposition_, n, k);
  const auto& kernels = options.kernels ? *options.kernels : simd::default_kernels();
  const Scan scan{*ring_, decomposition_, profile, count_support_points(decomposition_, profile),
                  BatchEvaluator(f, *ring_, n, kernels)};

  const std::uint64_t chunks = scan.chunks();
  const std::size_t jobs = worker_count(options, chunks);
  std::vector<std::vector<std::uint64_t>> first_seen(jobs, std::vector<std::uint64_t>(ring_->order(), kUnset));
  std::atomic<std::uint64_t> next_chunk{0};
  run_workers(jobs, [&](std::size_t worker) {
    SupportEnumerator points(*ring_, decomposition_, profile);
    auto ws = scan.evaluator.make_workspace();
    auto& seen = first_seen[worker];
    while (true) {
      const std::uint64_t chunk = next_chunk.fetch_add(1);
      if (chunk >= chunks) return;
      const std::uint64_t begin = chunk * kChunkPoints;
      scan.run_chunk(points, ws, begin, std::min(begin + kChunkPoints, scan.total),
                     [&](std::uint64_t first, std::span<const Elem> values) {
                       for (std::size_t lane = 0; lane < values.size(); ++lane)
                         seen[values[lane]] = std::min(seen[values[lane]], first + lane);
                       return true;
                     });
    }
  });

  RangeReport report;
  report.num_vars = n;
  report.k = k;
  report.evaluations_used = scan.total;
  for (Elem v = 0; v < ring_->order(); ++v) {
    std::uint64_t position = kUnset;
    for (const auto& seen : first_seen) position = std::min(position, seen[v]);
    if (position == kUnset) continue;
    report.values.push_back(v);
    report.witnesses.emplace(v, point_at(scan, position));
  }
  return report;
}

SolveVerdict NilpotentSolver::solvable(const PolyExpr& f, const PolyExpr& g, const SolverOptions& options) const {
  const PolyExpr h = difference(f, g);
  const std::size_t n = num_variables(h);
  const std::size_t k = choose_k(h, n, options);
  const auto profile = make_profile(decomposition_, n, k);
  const auto& kernels = options.kernels ? *options.kernels : simd::default_kernels();
  const Scan scan{*ring_, decomposition_, profile, count_support_points(decomposition_, profile),
                  BatchEvaluator(h, *ring_, n, kernels)};

  SolveVerdict verdict;
  verdict.num_vars = n;
  verdict.k = k;
  const std::uint64_t position = first_position(scan, ring_->zero(), true, options);
  if (position == kUnset) {
    verdict.points_examined = scan.total;
    return verdict;
  }
  verdict.solvable = true;
  verdict.witness = point_at(scan, position);
  verdict.points_examined = position + 1;
  return verdict;
}

EquivVerdict NilpotentSolver::equivalent(const PolyExpr& f, const PolyExpr& g, const SolverOptions& options) const {
  const PolyExpr h = difference(f, g);
  const std::size_t n = num_variables(h);
  const std::size_t k = choose_k(h, n, options);
  const auto profile = make_profile(decomposition_, n, k);
  const auto& kernels = options.kernels ? *options.kernels : simd::default_kernels();
  const Scan scan{*ring_, decomposition_, profile, count_support_points(decomposition_, profile),
                  BatchEvaluator(h, *ring_, n, kernels)};

  EquivVerdict verdict;
  verdict.num_vars = n;
  verdict.k = k;
  const std::uint64_t position = first_position(scan, ring_->zero(), false, options);
  if (position == kUnset) {
    verdict.equivalent = true;
    verdict.points_examined = scan.total;
    return verdict;
  }
  verdict.counterexample = point_at(scan, position);
  verdict.points_examined = position + 1;
  return verdict;
}

}  // namespace nilsolve
