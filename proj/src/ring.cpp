#include "nilsolve/ring.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <tuple>

#include "nilsolve/error.hpp"

namespace nilsolve {

namespace {

std::string triple(Elem a, Elem b, Elem c) {
  std::ostringstream out;
  out << "(" << a << ", " << b << ", " << c << ")";
  return out.str();
}

std::uint64_t ipow(std::uint64_t base, std::uint32_t exp) {
  std::uint64_t result = 1;
  while (exp-- > 0) result *= base;
  return result;
}

void require_prime(std::uint32_t p) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
}

// Modular inverse of a modulo mod, for coprime a and mod.
std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t mod) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(mod), new_r = static_cast<std::int64_t>(a % mod);
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::tie(t, new_t) = std::make_pair(new_t, t - q * new_t);
    std::tie(r, new_r) = std::make_pair(new_r, r - q * new_r);
  }
  if (t < 0) t += static_cast<std::int64_t>(mod);
  return static_cast<std::uint64_t>(t) % mod;
}

}  // namespace

Elem FiniteRing::scale(std::uint64_t count, Elem a) const noexcept {
  Elem result = zero_;
  Elem power = a;
  while (count > 0) {
    if (count & 1U) result = add(result, power);
    power = add(power, power);
    count >>= 1U;
  }
  return result;
}

std::string FiniteRing::label(Elem a) const {
  return labels_.empty() ? std::to_string(a) : labels_[a];
}

FiniteRing validate_ring(std::size_t order, std::vector<Elem> add_table, std::vector<Elem> mul_table,
                         std::vector<std::string> labels) {
  if (order == 0 || order > kMaxRingOrder)
    throw Error(ErrorCode::InvalidArgument,
                "ring order must lie in 1.." + std::to_string(kMaxRingOrder));
  const std::size_t m = order;
  if (add_table.size() != m * m || mul_table.size() != m * m)
    throw Error(ErrorCode::InvalidArgument, "tables must have m*m entries");
  auto in_range = [m](Elem e) { return e < m; };
  if (!std::all_of(add_table.begin(), add_table.end(), in_range) ||
      !std::all_of(mul_table.begin(), mul_table.end(), in_range))
    throw Error(ErrorCode::InvalidArgument, "table entry out of range");
  if (!labels.empty()) {
    if (labels.size() != m) throw Error(ErrorCode::InvalidArgument, "need one label per element");
    for (const auto& l : labels)
      if (l.empty() || std::any_of(l.begin(), l.end(), [](unsigned char c) { return std::isspace(c); }))
        throw Error(ErrorCode::InvalidArgument, "labels must be nonempty and whitespace-free");
  }

  auto add = [&](Elem a, Elem b) { return add_table[a * m + b]; };
  auto mul = [&](Elem a, Elem b) { return mul_table[a * m + b]; };

  for (Elem a = 0; a < m; ++a)
    for (Elem b = 0; b < m; ++b)
      if (add(a, b) != add(b, a))
        throw AxiomError(ErrorCode::NotAGroup, "addition not commutative at " + triple(a, b, 0),
                         {a, b, 0});
  for (Elem a = 0; a < m; ++a)
    for (Elem b = 0; b < m; ++b)
      for (Elem c = 0; c < m; ++c)
        if (add(add(a, b), c) != add(a, add(b, c)))
          throw AxiomError(ErrorCode::NotAGroup, "addition not associative at " + triple(a, b, c),
                           {a, b, c});

  std::optional<Elem> zero;
  for (Elem z = 0; z < m && !zero; ++z) {
    bool identity = true;
    for (Elem a = 0; a < m && identity; ++a) identity = add(z, a) == a;
    if (identity) zero = z;
  }
  if (!zero) throw AxiomError(ErrorCode::NotAGroup, "addition has no identity", {0, 0, 0});

  std::vector<Elem> neg(m, 0);
  for (Elem a = 0; a < m; ++a) {
    const Elem* row = &add_table[a * m];
    const Elem* hit = std::find(row, row + m, *zero);
    if (hit == row + m)
      throw AxiomError(ErrorCode::NotAGroup, "element " + std::to_string(a) + " has no inverse",
                       {a, *zero, 0});
    neg[a] = static_cast<Elem>(hit - row);
  }

  for (Elem a = 0; a < m; ++a)
    for (Elem b = 0; b < m; ++b)
      for (Elem c = 0; c < m; ++c) {
        if (mul(mul(a, b), c) != mul(a, mul(b, c)))
          throw AxiomError(ErrorCode::NotAssociativeMul,
                           "multiplication not associative at " + triple(a, b, c), {a, b, c});
        if (mul(a, add(b, c)) != add(mul(a, b), mul(a, c)))
          throw AxiomError(ErrorCode::NotDistributive,
                           "left distributivity fails at " + triple(a, b, c), {a, b, c});
        if (mul(add(a, b), c) != add(mul(a, c), mul(b, c)))
          throw AxiomError(ErrorCode::NotDistributive,
                           "right distributivity fails at " + triple(a, b, c), {a, b, c});
      }

  FiniteRing ring;
  ring.order_ = m;
  ring.zero_ = *zero;
  ring.add_ = std::move(add_table);
  ring.mul_ = std::move(mul_table);
  ring.neg_ = std::move(neg);
  ring.labels_ = std::move(labels);
  return ring;
}

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::pair<std::uint64_t, std::uint32_t>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, std::uint32_t>> factors;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    std::uint32_t e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e > 0) factors.emplace_back(d, e);
  }
  if (n > 1) factors.emplace_back(n, 1);
  return factors;
}

FiniteRing make_scaled_zmod(std::uint32_t p, std::uint32_t a) {
  require_prime(p);
  if (a == 0) throw Error(ErrorCode::InvalidArgument, "exponent must be at least 1");
  if (a > 40 || ipow(p, a - 1) > kMaxRingOrder)
    throw Error(ErrorCode::InvalidArgument, "ring too large");
  const std::uint64_t modulus = ipow(p, a);
  const std::size_t m = ipow(p, a - 1);
  std::vector<Elem> add(m * m), mul(m * m);
  std::vector<std::string> labels(m);
  // Index i represents the residue i*p; a residue v maps back to v/p.
  for (std::size_t i = 0; i < m; ++i) {
    labels[i] = std::to_string(i * p);
    for (std::size_t j = 0; j < m; ++j) {
      add[i * m + j] = static_cast<Elem>(((i * p + j * p) % modulus) / p);
      mul[i * m + j] = static_cast<Elem>(((i * p) * (j * p) % modulus) / p);
    }
  }
  return validate_ring(m, std::move(add), std::move(mul), std::move(labels));
}

FiniteRing make_strict_upper(std::uint32_t t, std::uint32_t p) {
  require_prime(p);
  if (t < 2) throw Error(ErrorCode::InvalidArgument, "matrix size must be at least 2");
  const std::size_t entries = static_cast<std::size_t>(t) * (t - 1) / 2;
  std::uint64_t m64 = 1;
  for (std::size_t e = 0; e < entries; ++e) {
    m64 *= p;
    if (m64 > kMaxRingOrder) throw Error(ErrorCode::InvalidArgument, "ring too large");
  }
  const std::size_t m = m64;

  // Positions (r, c) with r < c in row-major order; the first position is the
  // most significant base-p digit of the element index.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> positions;
  for (std::uint32_t r = 0; r < t; ++r)
    for (std::uint32_t c = r + 1; c < t; ++c) positions.emplace_back(r, c);

  using Matrix = std::vector<std::uint32_t>;
  auto decode = [&](std::size_t index) {
    Matrix mat(static_cast<std::size_t>(t) * t, 0);
    for (std::size_t e = entries; e-- > 0;) {
      mat[positions[e].first * t + positions[e].second] = index % p;
      index /= p;
    }
    return mat;
  };
  auto encode = [&](const Matrix& mat) {
    std::size_t index = 0;
    for (const auto& [r, c] : positions) index = index * p + mat[r * t + c];
    return static_cast<Elem>(index);
  };

  std::vector<Matrix> mats(m);
  std::vector<std::string> labels(m);
  for (std::size_t i = 0; i < m; ++i) {
    mats[i] = decode(i);
    std::string label = "[";
    for (std::size_t e = 0; e < entries; ++e) {
      if (e > 0) label += ',';
      label += std::to_string(mats[i][positions[e].first * t + positions[e].second]);
    }
    labels[i] = label + "]";
  }

  std::vector<Elem> add(m * m), mul(m * m);
  Matrix scratch(static_cast<std::size_t>(t) * t);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t q = 0; q < scratch.size(); ++q) scratch[q] = (mats[i][q] + mats[j][q]) % p;
      add[i * m + j] = encode(scratch);
      for (std::uint32_t r = 0; r < t; ++r)
        for (std::uint32_t c = 0; c < t; ++c) {
          std::uint64_t sum = 0;
          for (std::uint32_t q = 0; q < t; ++q) sum += std::uint64_t{mats[i][r * t + q]} * mats[j][q * t + c];
          scratch[r * t + c] = static_cast<std::uint32_t>(sum % p);
        }
      mul[i * m + j] = encode(scratch);
    }
  }
  return validate_ring(m, std::move(add), std::move(mul), std::move(labels));
}

FiniteRing make_zero_mul(std::uint32_t n) {
  if (n == 0 || n > kMaxRingOrder) throw Error(ErrorCode::InvalidArgument, "order out of range");
  std::vector<Elem> add(std::size_t{n} * n), mul(std::size_t{n} * n, 0);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) add[i * n + j] = (i + j) % n;
  return validate_ring(n, std::move(add), std::move(mul));
}

FiniteRing make_zmod(std::uint32_t n) {
  if (n == 0 || n > kMaxRingOrder) throw Error(ErrorCode::InvalidArgument, "order out of range");
  std::vector<Elem> add(std::size_t{n} * n), mul(std::size_t{n} * n);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) {
      add[i * n + j] = (i + j) % n;
      mul[i * n + j] = (i * j) % n;
    }
  return validate_ring(n, std::move(add), std::move(mul));
}

FiniteRing direct_sum(const FiniteRing& left, const FiniteRing& right) {
  const std::size_t m1 = left.order(), m2 = right.order();
  const std::size_t m = m1 * m2;
  if (m > kMaxRingOrder) throw Error(ErrorCode::InvalidArgument, "ring too large");
  std::vector<Elem> add(m * m), mul(m * m);
  std::vector<std::string> labels(m);
  for (Elem a1 = 0; a1 < m1; ++a1)
    for (Elem a2 = 0; a2 < m2; ++a2) {
      const std::size_t a = a1 * m2 + a2;
      labels[a] = "(" + left.label(a1) + "," + right.label(a2) + ")";
      for (Elem b1 = 0; b1 < m1; ++b1)
        for (Elem b2 = 0; b2 < m2; ++b2) {
          const std::size_t b = b1 * m2 + b2;
          add[a * m + b] = static_cast<Elem>(left.add(a1, b1) * m2 + right.add(a2, b2));
          mul[a * m + b] = static_cast<Elem>(left.mul(a1, b1) * m2 + right.mul(a2, b2));
        }
    }
  return validate_ring(m, std::move(add), std::move(mul), std::move(labels));
}

std::vector<Elem> additive_closure(const FiniteRing& ring, std::span<const Elem> generators) {
  std::vector<bool> member(ring.order(), false);
  std::vector<Elem> closed{ring.zero()};
  member[ring.zero()] = true;
  std::vector<Elem> gens;
  for (Elem g : generators)
    if (g != ring.zero() && std::find(gens.begin(), gens.end(), g) == gens.end()) gens.push_back(g);
  // Breadth-first: every element reached is a finite sum of generators. In a
  // finite group, closure under adding generators is closure under addition.
  for (std::size_t head = 0; head < closed.size(); ++head) {
    for (Elem g : gens) {
      Elem s = ring.add(closed[head], g);
      if (!member[s]) {
        member[s] = true;
        closed.push_back(s);
      }
    }
  }
  std::sort(closed.begin(), closed.end());
  return closed;
}

IdealChain power_ideals(const FiniteRing& ring) {
  IdealChain chain;
  std::vector<Elem> all(ring.order());
  std::iota(all.begin(), all.end(), Elem{0});
  chain.subsets.push_back(all);
  while (true) {
    const auto& current = chain.subsets.back();
    if (current.size() == 1) {
      chain.nilpotency_class = chain.subsets.size();
      return chain;
    }
    std::vector<bool> seen(ring.order(), false);
    std::vector<Elem> products;
    for (Elem a : current)
      for (Elem b = 0; b < ring.order(); ++b) {
        Elem ab = ring.mul(a, b);
        if (!seen[ab]) {
          seen[ab] = true;
          products.push_back(ab);
        }
      }
    auto next = additive_closure(ring, products);
    if (next.size() == current.size()) return chain;  // stabilized at a nonzero ideal
    chain.subsets.push_back(std::move(next));
  }
}

PrimaryDecomposition primary_decomposition(const FiniteRing& ring) {
  const std::uint64_t m = ring.order();
  PrimaryDecomposition result;
  for (const auto& [p, beta] : factorize(m)) {
    PrimaryComponent comp;
    comp.prime = static_cast<std::uint32_t>(p);
    comp.exponent = beta;
    comp.size = ipow(p, beta);
    for (Elem r = 0; r < m; ++r)
      if (ring.scale(comp.size, r) == ring.zero()) comp.elements.push_back(r);
    if (comp.elements.size() != comp.size)
      throw Error(ErrorCode::InternalInconsistency,
                  "component for prime " + std::to_string(p) + " has " +
                      std::to_string(comp.elements.size()) + " elements, expected " +
                      std::to_string(comp.size));
    const std::uint64_t cofactor = m / comp.size;
    comp.multiplier = cofactor == 1 ? 1 : (cofactor * inverse_mod(cofactor % comp.size, comp.size)) % m;
    comp.projection.resize(m);
    for (Elem r = 0; r < m; ++r) comp.projection[r] = ring.scale(comp.multiplier, r);
    result.components.push_back(std::move(comp));
  }
  return result;
}

}  // namespace nilsolve
