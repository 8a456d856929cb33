#include "nilsolve/support.hpp"

#include <algorithm>
#include <limits>

#include "nilsolve/error.hpp"

namespace nilsolve {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorCode::CountOverflow, "point count exceeds 64 bits");
  return r;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorCode::CountOverflow, "point count exceeds 64 bits");
  return r;
}

std::uint64_t checked_pow(std::uint64_t base, std::size_t exp) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) r = checked_mul(r, base);
  return r;
}

// Points of one component with support size exactly t.
std::uint64_t block_size(std::size_t n, std::size_t t, std::uint64_t nonzero) {
  return checked_mul(binomial(n, t), checked_pow(nonzero, t));
}

std::uint64_t component_count(std::size_t n, std::size_t budget, std::uint64_t nonzero) {
  std::uint64_t total = 0;
  for (std::size_t t = 0; t <= budget; ++t) total = checked_add(total, block_size(n, t, nonzero));
  return total;
}

}  // namespace

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  // Multiplicative formula over 128 bits: each prefix r * (n-k+i) / i is exact.
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > std::numeric_limits<std::uint64_t>::max())
      throw Error(ErrorCode::CountOverflow, "binomial coefficient exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(r);
}

SupportProfile make_profile(const PrimaryDecomposition& decomposition, std::size_t n, std::size_t k) {
  SupportProfile profile{n, k, {}};
  for (const auto& comp : decomposition.components) {
    const std::uint64_t bound = k == 0 ? 0 : (comp.size > n / k ? n : k * comp.size);
    profile.budgets.push_back(static_cast<std::size_t>(std::min<std::uint64_t>(n, bound)));
  }
  return profile;
}

std::uint64_t count_support_points(const PrimaryDecomposition& decomposition, const SupportProfile& profile) {
  if (profile.budgets.size() != decomposition.components.size())
    throw Error(ErrorCode::InvalidArgument, "profile does not match decomposition");
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < decomposition.components.size(); ++i)
    total = checked_mul(total, component_count(profile.n, profile.budgets[i], decomposition.components[i].size - 1));
  return total;
}

bool SupportEnumerator::Cursor::advance(std::size_t n) {
  const auto q = nonzero.size();
  for (std::size_t i = support; i-- > 0;) {
    if (++digits[i] < q) return true;
    digits[i] = 0;
  }
  for (std::size_t i = support; i-- > 0;) {
    if (coords[i] < n - support + i) {
      ++coords[i];
      for (std::size_t j = i + 1; j < support; ++j) coords[j] = coords[j - 1] + 1;
      return true;
    }
  }
  if (support < budget) {
    ++support;
  } else {
    support = 0;
  }
  coords.resize(support);
  digits.assign(support, 0);
  for (std::size_t i = 0; i < support; ++i) coords[i] = i;
  return support != 0;
}

void SupportEnumerator::Cursor::unrank(std::uint64_t rank, std::size_t n) {
  const std::uint64_t q = nonzero.size();
  support = 0;
  while (true) {
    const std::uint64_t block = block_size(n, support, q);
    if (rank < block) break;
    rank -= block;
    ++support;
  }
  const std::uint64_t assignments = checked_pow(q, support);
  std::uint64_t subset_rank = rank / assignments;
  std::uint64_t digit_rank = rank % assignments;

  digits.assign(support, 0);
  for (std::size_t i = support; i-- > 0;) {
    digits[i] = static_cast<std::size_t>(digit_rank % q);
    digit_rank /= q;
  }
  coords.assign(support, 0);
  std::size_t candidate = 0;
  for (std::size_t i = 0; i < support; ++i) {
    while (true) {
      const std::uint64_t with_candidate = binomial(n - candidate - 1, support - i - 1);
      if (subset_rank < with_candidate) break;
      subset_rank -= with_candidate;
      ++candidate;
    }
    coords[i] = candidate++;
  }
}

SupportEnumerator::SupportEnumerator(const FiniteRing& ring, const PrimaryDecomposition& decomposition,
                                     const SupportProfile& profile)
    : ring_(&ring), n_(profile.n), point_(profile.n, ring.zero()) {
  size_ = count_support_points(decomposition, profile);
  for (std::size_t i = 0; i < decomposition.components.size(); ++i) {
    const auto& comp = decomposition.components[i];
    Cursor cursor;
    for (Elem e : comp.elements)
      if (e != ring.zero()) cursor.nonzero.push_back(e);
    cursor.budget = profile.budgets[i];
    cursor.size = component_count(n_, cursor.budget, cursor.nonzero.size());
    cursors_.push_back(std::move(cursor));
  }
}

void SupportEnumerator::rebuild_point() {
  std::fill(point_.begin(), point_.end(), ring_->zero());
  for (const auto& cursor : cursors_)
    for (std::size_t i = 0; i < cursor.support; ++i) {
      Elem& slot = point_[cursor.coords[i]];
      slot = ring_->add(slot, cursor.nonzero[cursor.digits[i]]);
    }
}

void SupportEnumerator::advance() {
  if (done()) return;
  ++position_;
  for (std::size_t i = cursors_.size(); i-- > 0;)
    if (cursors_[i].advance(n_)) break;
  rebuild_point();
}

void SupportEnumerator::seek(std::uint64_t position) {
  if (position > size_) throw Error(ErrorCode::InvalidArgument, "seek past end of stream");
  position_ = position;
  std::uint64_t rest = position == size_ ? 0 : position;
  for (std::size_t i = cursors_.size(); i-- > 0;) {
    cursors_[i].unrank(rest % cursors_[i].size, n_);
    rest /= cursors_[i].size;
  }
  rebuild_point();
}

}  // namespace nilsolve
