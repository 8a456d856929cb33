#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "nilsolve/error.hpp"
#include "nilsolve/ring.hpp"
#include "nilsolve/ring_io.hpp"
#include "test_util.hpp"

using namespace nilsolve;
using namespace nilsolve::testing;

namespace {

std::vector<Elem> zmod_add(std::uint32_t n) {
  std::vector<Elem> t(n * n);
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b) t[a * n + b] = (a + b) % n;
  return t;
}

std::vector<Elem> zmod_mul(std::uint32_t n) {
  std::vector<Elem> t(n * n);
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b) t[a * n + b] = (a * b) % n;
  return t;
}

ErrorCode error_of(const std::function<void()>& action) {
  try {
    action();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorCode::InvalidArgument;
}

}  // namespace

// =============================================================================
// validate_ring
// =============================================================================

TEST(ValidateRing, ZeroRing) {
  const auto ring = validate_ring(1, {0}, {0});
  EXPECT_EQ(ring.order(), 1u);
  EXPECT_EQ(ring.zero(), 0u);
}

TEST(ValidateRing, TwoElementZeroProductRing) {
  // Elements {0, 2} of Z/4Z, listed with 2 first so that zero is index 1.
  const auto ring = validate_ring(2, {1, 0, 0, 1}, {1, 1, 1, 1});
  EXPECT_EQ(ring.zero(), 1u);
  EXPECT_EQ(ring.neg(0), 0u);
  EXPECT_EQ(ring.add(0, 0), 1u);
}

TEST(ValidateRing, CorruptedDistributivityNamesWitness) {
  auto mul = zmod_mul(4);
  mul[1 * 4 + 1] = 3;
  try {
    validate_ring(4, zmod_add(4), mul);
    FAIL() << "corrupted table accepted";
  } catch (const AxiomError& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotDistributive);
    const auto [a, b, c] = e.witness();
    EXPECT_EQ(e.witness(), (std::array<Elem, 3>{1, 1, 2}));
    auto m = [&](Elem x, Elem y) { return mul[x * 4 + y]; };
    auto s = [](Elem x, Elem y) { return (x + y) % 4; };
    EXPECT_TRUE(m(a, s(b, c)) != s(m(a, b), m(a, c)) || m(s(a, b), c) != s(m(a, c), m(b, c)));
  }
}

TEST(ValidateRing, RejectsBrokenAddition) {
  auto add = zmod_add(3);
  add[0 * 3 + 1] = 2;  // no longer commutative
  EXPECT_EQ(error_of([&] { validate_ring(3, add, std::vector<Elem>(9, 0)); }), ErrorCode::NotAGroup);

  // Constant addition: commutative and associative but without identity.
  EXPECT_EQ(error_of([&] { validate_ring(2, {0, 0, 0, 0}, {0, 0, 0, 0}); }), ErrorCode::NotAGroup);
}

TEST(ValidateRing, RejectsNonAssociativeMultiplication) {
  // F2^2 with the bilinear product e0*e0 = e1, e1*e0 = e0, everything else 0.
  std::vector<Elem> add(16), mul(16);
  for (Elem x = 0; x < 4; ++x)
    for (Elem y = 0; y < 4; ++y) {
      add[x * 4 + y] = x ^ y;
      const Elem x0 = x & 1U, x1 = x >> 1U, y0 = y & 1U;
      mul[x * 4 + y] = static_cast<Elem>((x1 & y0) | ((x0 & y0) << 1U));
    }
  EXPECT_EQ(error_of([&] { validate_ring(4, add, mul); }), ErrorCode::NotAssociativeMul);
}

TEST(ValidateRing, RejectsMalformedInput) {
  EXPECT_EQ(error_of([] { validate_ring(0, {}, {}); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(error_of([] { validate_ring(2, {0, 1, 1}, {0, 0, 0, 0}); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(error_of([] { validate_ring(2, {0, 1, 1, 2}, {0, 0, 0, 0}); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(error_of([] { validate_ring(2, {0, 1, 1, 0}, {0, 0, 0, 0}, {"a b", "c"}); }), ErrorCode::InvalidArgument);
}

// Corrupting one entry of a valid table must be rejected unless the result
// happens to be a ring again, in which case it is re-validated consistently.
TEST(ValidateRing, PropertyCorruptionRejectedOrStillARing) {
  std::mt19937_64 rng(7);
  const std::vector<FiniteRing> rings = {ring_2z8(), ring_upper3(), ring_order6(), make_zmod(6)};
  int rejected = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto& ring = rings[trial % rings.size()];
    const std::size_t m = ring.order();
    std::vector<Elem> add(ring.add_table().begin(), ring.add_table().end());
    std::vector<Elem> mul(ring.mul_table().begin(), ring.mul_table().end());
    auto& table = (rng() % 2 == 0) ? add : mul;
    const std::size_t slot = rng() % (m * m);
    table[slot] = static_cast<Elem>((table[slot] + 1 + rng() % (m - 1)) % m);
    try {
      const auto again = validate_ring(m, add, mul);
      // Accepted: spot-check that distributivity really holds.
      for (Elem a = 0; a < m; ++a)
        for (Elem b = 0; b < m; ++b)
          ASSERT_EQ(again.mul(a, again.add(b, b)), again.add(again.mul(a, b), again.mul(a, b)));
    } catch (const Error&) {
      ++rejected;
    }
  }
  EXPECT_GT(rejected, 190);
}

// =============================================================================
// Constructors
// =============================================================================

TEST(Constructors, ScaledZmod) {
  const auto r4 = ring_2z4();
  EXPECT_EQ(r4.order(), 2u);
  EXPECT_EQ(r4.mul(1, 1), r4.zero());
  EXPECT_EQ(nilpotency_class(r4), 2u);

  // 2Z/8Z: index i stands for 2i. 2*2=4, 2*6=12=4, 4*4=16=0.
  const auto r8 = ring_2z8();
  EXPECT_EQ(r8.order(), 4u);
  EXPECT_EQ(r8.mul(1, 1), 2u);
  EXPECT_EQ(r8.mul(1, 3), 2u);
  EXPECT_EQ(r8.mul(2, 2), 0u);
  EXPECT_EQ(r8.label(2), "4");
  EXPECT_EQ(nilpotency_class(r8), 3u);

  const auto r9 = ring_3z9();
  EXPECT_EQ(r9.order(), 3u);
  EXPECT_EQ(r9.mul(1, 1), r9.zero());
  EXPECT_EQ(nilpotency_class(r9), 2u);

  EXPECT_EQ(error_of([] { make_scaled_zmod(4, 2); }), ErrorCode::NotPrime);
  EXPECT_EQ(make_scaled_zmod(5, 1).order(), 1u);
}

TEST(Constructors, StrictUpper) {
  EXPECT_EQ(make_strict_upper(2, 2).order(), 2u);
  EXPECT_EQ(make_strict_upper(3, 2).order(), 8u);
  EXPECT_EQ(make_strict_upper(3, 3).order(), 27u);
  const auto r = make_strict_upper(2, 2);
  EXPECT_EQ(r.mul(1, 1), r.zero());
  EXPECT_EQ(error_of([] { make_strict_upper(3, 6); }), ErrorCode::NotPrime);
  EXPECT_EQ(error_of([] { make_strict_upper(1, 2); }), ErrorCode::InvalidArgument);
}

TEST(Constructors, StrictUpperClassIsSize) {
  for (std::uint32_t t : {2u, 3u})
    for (std::uint32_t p : {2u, 3u}) EXPECT_EQ(nilpotency_class(make_strict_upper(t, p)), t) << t << "," << p;
}

TEST(Constructors, DirectSum) {
  const auto zero = validate_ring(1, {0}, {0});
  const auto r8 = ring_2z8();
  const auto sum = direct_sum(zero, r8);
  EXPECT_EQ(sum.order(), r8.order());
  EXPECT_EQ(std::vector<Elem>(sum.mul_table().begin(), sum.mul_table().end()),
            std::vector<Elem>(r8.mul_table().begin(), r8.mul_table().end()));

  const auto six = ring_order6();
  EXPECT_EQ(six.order(), 6u);
  EXPECT_EQ(nilpotency_class(six), 2u);  // max(2, 2)
  EXPECT_EQ(nilpotency_class(direct_sum(ring_2z8(), ring_3z9())), 3u);
}

// =============================================================================
// power_ideals
// =============================================================================

TEST(PowerIdeals, ScaledZmod8) {
  const auto chain = power_ideals(ring_2z8());
  ASSERT_EQ(chain.subsets.size(), 3u);
  EXPECT_EQ(chain.subsets[0], (std::vector<Elem>{0, 1, 2, 3}));  // {0,2,4,6}
  EXPECT_EQ(chain.subsets[1], (std::vector<Elem>{0, 2}));        // {0,4}
  EXPECT_EQ(chain.subsets[2], (std::vector<Elem>{0}));
  EXPECT_EQ(chain.nilpotency_class, 3u);
}

TEST(PowerIdeals, FieldIsNotNilpotent) {
  const auto chain = power_ideals(make_zmod(2));
  EXPECT_FALSE(chain.nilpotency_class.has_value());
  EXPECT_EQ(chain.subsets.back().size(), 2u);
}

TEST(PowerIdeals, ZeroRingHasClassOne) { EXPECT_EQ(nilpotency_class(validate_ring(1, {0}, {0})), 1u); }

TEST(PowerIdeals, ChainInvariants) {
  std::vector<FiniteRing> rings;
  for (auto& named : nilpotent_test_rings()) rings.push_back(named.ring);
  rings.push_back(make_strict_upper(3, 3));
  rings.push_back(make_strict_upper(4, 2));
  rings.push_back(make_zero_mul(12));
  rings.push_back(make_zmod(12));
  for (const auto& ring : rings) {
    const auto chain = power_ideals(ring);
    for (std::size_t i = 0; i + 1 < chain.subsets.size(); ++i) {
      const auto& big = chain.subsets[i];
      const auto& small = chain.subsets[i + 1];
      EXPECT_LT(small.size(), big.size());
      EXPECT_TRUE(std::includes(big.begin(), big.end(), small.begin(), small.end()));
    }
    // Each entry is an additive subgroup absorbing multiplication from both sides.
    for (const auto& ideal : chain.subsets) {
      std::vector<bool> in(ring.order(), false);
      for (Elem e : ideal) in[e] = true;
      for (Elem a : ideal) {
        for (Elem b : ideal) EXPECT_TRUE(in[ring.add(a, b)]);
        for (Elem r = 0; r < ring.order(); ++r) {
          EXPECT_TRUE(in[ring.mul(a, r)]);
          EXPECT_TRUE(in[ring.mul(r, a)]);
        }
      }
    }
    if (chain.nilpotency_class) {
      const std::size_t l = *chain.nilpotency_class;
      EXPECT_EQ(chain.subsets[l - 1], std::vector<Elem>{ring.zero()});
      EXPECT_LE(static_cast<double>(l - 1), std::log2(static_cast<double>(ring.order())));
      // Every product of l elements vanishes (checked on random products).
      std::mt19937_64 rng(l);
      for (int trial = 0; trial < 200; ++trial) {
        Elem product = static_cast<Elem>(rng() % ring.order());
        for (std::size_t i = 1; i < l; ++i) product = ring.mul(product, static_cast<Elem>(rng() % ring.order()));
        EXPECT_EQ(product, ring.zero());
      }
    }
  }
}

// =============================================================================
// primary_decomposition
// =============================================================================

TEST(PrimaryDecomposition, OrderSixMultipliers) {
  const auto ring = ring_order6();
  const auto dec = primary_decomposition(ring);
  ASSERT_EQ(dec.components.size(), 2u);
  EXPECT_EQ(dec.components[0].prime, 2u);
  EXPECT_EQ(dec.components[0].size, 2u);
  EXPECT_EQ(dec.components[0].multiplier, 3u);
  EXPECT_EQ(dec.components[1].prime, 3u);
  EXPECT_EQ(dec.components[1].size, 3u);
  EXPECT_EQ(dec.components[1].multiplier, 4u);
  const auto& pi1 = dec.components[0].projection;
  const auto& pi2 = dec.components[1].projection;
  for (Elem r = 0; r < 6; ++r) {
    EXPECT_EQ(ring.add(pi1[r], pi2[r]), r);
    EXPECT_EQ(pi1[pi2[r]], ring.zero());
    EXPECT_EQ(pi2[pi1[r]], ring.zero());
  }
}

TEST(PrimaryDecomposition, PrimePowerOrderIsSingleIdentityComponent) {
  for (const auto& ring : {ring_2z8(), ring_upper3(), make_strict_upper(3, 3)}) {
    const auto dec = primary_decomposition(ring);
    ASSERT_EQ(dec.components.size(), 1u);
    EXPECT_EQ(dec.components[0].size, ring.order());
    for (Elem r = 0; r < ring.order(); ++r) EXPECT_EQ(dec.components[0].projection[r], r);
  }
  EXPECT_TRUE(primary_decomposition(validate_ring(1, {0}, {0})).components.empty());
}

TEST(PrimaryDecomposition, ProjectionLawsExhaustive) {
  const std::vector<FiniteRing> rings = {ring_order6(), make_zero_mul(12), make_zmod(12), make_zmod(30),
                                         direct_sum(ring_2z8(), make_zero_mul(5)),
                                         direct_sum(ring_upper3(), ring_3z9())};
  for (const auto& ring : rings) {
    ASSERT_LE(ring.order(), 64u);
    const auto dec = primary_decomposition(ring);
    std::uint64_t product = 1;
    for (const auto& comp : dec.components) product *= comp.size;
    EXPECT_EQ(product, ring.order());
    for (Elem r = 0; r < ring.order(); ++r) {
      Elem sum = ring.zero();
      for (const auto& comp : dec.components) sum = ring.add(sum, comp.projection[r]);
      EXPECT_EQ(sum, r);
    }
    for (std::size_t i = 0; i < dec.components.size(); ++i) {
      const auto& pi = dec.components[i].projection;
      for (Elem e : dec.components[i].elements) EXPECT_EQ(pi[e], e);
      for (std::size_t j = 0; j < dec.components.size(); ++j) {
        if (i == j) continue;
        for (Elem e : dec.components[j].elements) EXPECT_EQ(pi[e], ring.zero());
      }
      for (Elem a = 0; a < ring.order(); ++a)
        for (Elem b = 0; b < ring.order(); ++b) {
          EXPECT_EQ(pi[ring.add(a, b)], ring.add(pi[a], pi[b]));
          EXPECT_EQ(pi[ring.mul(a, b)], ring.mul(pi[a], pi[b]));
        }
    }
  }
}

// =============================================================================
// Ring files
// =============================================================================

TEST(RingFile, RoundTripIsBitExact) {
  for (const auto& ring : {ring_2z8(), ring_order6(), make_zero_mul(3)}) {
    std::ostringstream first;
    write_ring(first, ring);
    std::istringstream in(first.str());
    const auto back = read_ring(in);
    EXPECT_EQ(back, ring);
    std::ostringstream second;
    write_ring(second, back);
    EXPECT_EQ(first.str(), second.str());
  }
}

TEST(RingFile, ExactLayout) {
  std::ostringstream out;
  write_ring(out, ring_2z4());
  EXPECT_EQ(out.str(), "ring 2\n0 1\n1 0\n0 0\n0 0\nlabels 0 2\n");
}

TEST(RingFile, RejectsGarbage) {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return read_ring(in);
  };
  EXPECT_EQ(error_of([&] { parse("ring 1\n0\n0\nextra\n"); }), ErrorCode::ParseError);
  EXPECT_EQ(error_of([&] { parse("ring 1\n0\n0\nlabels a b\n"); }), ErrorCode::ParseError);
  EXPECT_EQ(error_of([&] { parse("ring 2\n0 1\n1 0\n0 0\n"); }), ErrorCode::ParseError);
  EXPECT_EQ(error_of([&] { parse("ring 2\n0 1\n1 0\n0 0\n0 5\n"); }), ErrorCode::ParseError);
  EXPECT_EQ(error_of([&] { parse("rng 1\n0\n0\n"); }), ErrorCode::ParseError);
  EXPECT_EQ(error_of([&] { parse("ring 2\n0 1\n1 1\n0 0\n0 0\n"); }), ErrorCode::NotAGroup);
  EXPECT_EQ(parse("ring 1 0 0").order(), 1u);
}
