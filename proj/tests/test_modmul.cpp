#include <doctest.h>

#include "fomul/error.hpp"
#include "fomul/montgomery.hpp"
#include "support.hpp"

using namespace fomul;
using fomul::test::Rng;

namespace {

/// Digit-free reference: a * b * r^{-1} mod m by brute-force search for the inverse.
Integer reference_montgomery_product(const Integer& a, const Integer& b, const Integer& m,
                                     unsigned k) {
  const Integer r = Integer(1) << k;
  Integer rinv = 1;
  while ((r * rinv) % m != 1) ++rinv;
  return a * b % m * rinv % m;
}

/// Schoolbook convolution with explicit index arithmetic on LSB-first arrays.
Integer reference_convolve_value(const DigitVector& x, const DigitVector& y) {
  Integer acc = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j)
      acc += Integer(x[i]) * y[j] << ((x.size() - 1 - i) + (y.size() - 1 - j));
  return acc;
}

Integer random_integer(Rng& rng, unsigned bits) {
  Integer v = 0;
  for (unsigned i = 0; i < bits; ++i) v = (v << 1) | Integer(rng.below(2));
  return v;
}

Integer random_odd_modulus(Rng& rng, unsigned bits) {
  Integer m = random_integer(rng, bits - 1) | (Integer(1) << (bits - 1)) | 1;
  return m < 3 ? Integer(3) : m;
}

const DigitVector kK1{1, 1, 2, 3, 2, 4, 4, 3, 5, 4, 4, 5, 4, 4, 6, 6, 5, 3, 3,
                      4, 3, 2, 3, 2, 1, 1, 2, 2, 1};
const DigitVector kK5Hi{32, 28, 25, 25, 53, 78, 71, 64, 91, 109, 95,
                        120, 137, 118, 107, 126, 104, 92, 85, 71, 54, 46};

}  // namespace

TEST_SUITE("modmul") {
  TEST_CASE("setup for the 16-bit example") {
    const auto ctx = montgomery_setup(36057, 17);
    CHECK(ctx.r == 131072);
    CHECK(ctx.M == 52375);
    CHECK(ctx.R == 14408);
    CHECK(to_montgomery(28510, ctx) == 23411);
    CHECK(to_montgomery(38672, ctx) == 31495);
    CHECK(operand_width_k(28510, 38672, 36057) == 17);
    // Minimal k for 36057 is 16.
    CHECK(montgomery_setup(36057).k == 16);
  }

  TEST_CASE("unsupported moduli") {
    CHECK_THROWS_AS(montgomery_setup(36058), UnsupportedModulus);
    CHECK_THROWS_AS(montgomery_setup(1), UnsupportedModulus);
    CHECK_THROWS_AS(montgomery_setup(2), UnsupportedModulus);
    CHECK_THROWS_AS(montgomery_setup(0), UnsupportedModulus);
    CHECK_THROWS_AS(montgomery_setup(-7), UnsupportedModulus);
    CHECK_THROWS_AS(montgomery_setup(37, 5), ConfigError);
    const auto ctx = montgomery_setup(37);
    CHECK_THROWS_AS(montgomery_mul_exact(37, 1, ctx), ConfigError);
    CHECK_THROWS_AS(montgomery_mul_conv(1, 1, ctx, 0), ConfigError);
    CHECK_THROWS_AS(montgomery_mul_conv(1, 1, ctx, ctx.k), ConfigError);
  }

  TEST_CASE("exact chain for 28510 * 38672 mod 36057") {
    const auto ctx = montgomery_setup(36057, 17);
    const auto t = montgomery_mul_exact(23411, 31495, ctx);
    CHECK(t.k1 == 737329445);
    CHECK(t.k2 == Integer("38617629681875"));
    CHECK(t.k3 == 92371);
    CHECK(t.k4 == Integer("3330621147"));
    CHECK(t.k5 == Integer("4067950592"));
    CHECK(t.c_bar == 31036);
    CHECK(from_montgomery(t.c_bar, ctx) == 23831);
  }

  TEST_CASE("hi/lo chain for the 16-bit example") {
    const auto ctx = montgomery_setup(36057, 17);
    const auto t = montgomery_mul_hilo(23411, 31495, ctx);
    CHECK(t.k1_lo == 49445);
    CHECK(t.k1_hi == 22501);
    CHECK(t.k2 == Integer("2589681875"));
    CHECK(t.k3 == 92371);
    CHECK(t.k4_hi == 101642);
    CHECK(t.k5_hi == 124144);
    CHECK(t.c_bar == 31036);
  }

  TEST_CASE("digit-convolution chain for the 16-bit example") {
    const auto ctx = montgomery_setup(36057, 17);
    const auto t = montgomery_mul_conv(23411, 31495, ctx, 6);
    CHECK(t.m == DigitVector{1, 0, 0, 0, 1, 1, 0, 0, 1, 1, 0, 1, 1, 0, 0, 1});
    CHECK(t.M == DigitVector{1, 1, 0, 0, 1, 1, 0, 0, 1, 0, 0, 1, 0, 1, 1, 1});
    CHECK(t.k1 == kK1);
    CHECK(evaluate(t.k1) == 737329445);
    CHECK(evaluate(t.k1_hi) == 720045);
    CHECK(evaluate(t.k1_lo) == 573733);
    CHECK(evaluate(t.k2) == Integer("30049265875"));
    CHECK(t.k3 == DigitVector{32, 28, 25, 24, 20, 16, 15, 13, 11, 9, 8, 6, 5, 5, 5, 3, 1});
    CHECK(evaluate(t.k3) == 3762387);
    CHECK(evaluate(t.k4) == Integer("135660388059"));
    CHECK(evaluate(t.k4_hi) == 132480817);
    CHECK(t.k5_hi == kK5Hi);
    CHECK(evaluate(t.k5_hi) == 133200926);
    CHECK(t.c_bar == 1040632);
    CHECK(from_montgomery(t.c_bar, ctx) == 23831);
    CHECK(t.max_digit() == 137);
  }

  TEST_CASE("trace report lists every intermediate") {
    const auto ctx = montgomery_setup(36057, 17);
    const std::string s = format_trace(montgomery_mul_conv(23411, 31495, ctx, 6), ctx);
    CHECK(s.find("k5_hi = (32,28,25,25,") != std::string::npos);
    CHECK(s.find("c_bar = 1040632\n") != std::string::npos);
    CHECK(s.find("c = 23831\n") != std::string::npos);
  }

  TEST_CASE("smallest modulus, exhaustively") {
    for (unsigned k : {2u, 3u, 5u}) {
      const auto ctx = montgomery_setup(3, k);
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
          const auto t = montgomery_mul_exact(a, b, ctx);
          CHECK(t.c_bar == reference_montgomery_product(a, b, 3, k));
          CHECK(from_montgomery(montgomery_mul_exact(to_montgomery(a, ctx), to_montgomery(b, ctx), ctx).c_bar, ctx) ==
                a * b % 3);
        }
    }
  }

  TEST_CASE("domain conversions are mutually inverse") {
    Rng rng(41);
    for (int trial = 0; trial < 500; ++trial) {
      const unsigned bits = 2 + static_cast<unsigned>(rng.below(63));
      const Integer m = random_odd_modulus(rng, bits);
      const auto ctx = montgomery_setup(m);
      const Integer a = random_integer(rng, bits + 3) % m;
      CHECK(from_montgomery(to_montgomery(a, ctx), ctx) == a);
      CHECK((ctx.m * ctx.M + 1) % ctx.r == 0);
      CHECK((ctx.r * ctx.R) % ctx.m == 1);
    }
  }

  TEST_CASE("exact product agrees with direct modular multiplication") {
    Rng rng(42);
    for (int trial = 0; trial < 1000; ++trial) {
      const unsigned bits = 2 + static_cast<unsigned>(rng.below(127));
      const Integer m = random_odd_modulus(rng, bits);
      const auto ctx = montgomery_setup(m, bits + static_cast<unsigned>(rng.below(3)));
      const Integer a = random_integer(rng, bits + 4), b = random_integer(rng, bits + 4);
      const auto t = montgomery_mul_exact(to_montgomery(a, ctx), to_montgomery(b, ctx), ctx);
      CHECK(t.c_bar < m);
      CHECK(t.c_bar_unreduced < 2 * m);
      CHECK(from_montgomery(t.c_bar, ctx) == a * b % m);
    }
  }

  TEST_CASE("hi/lo result is congruent to the exact one") {
    Rng rng(43);
    for (int trial = 0; trial < 10000; ++trial) {
      const unsigned bits = 3 + static_cast<unsigned>(rng.below(30));
      const Integer m = random_odd_modulus(rng, bits);
      const auto ctx = montgomery_setup(m, bits + 1);
      const Integer a = random_integer(rng, bits + 2) % m, b = random_integer(rng, bits + 2) % m;
      const auto h = montgomery_mul_hilo(a, b, ctx);
      const auto e = montgomery_mul_exact(a, b, ctx);
      CHECK(h.c_bar % m == e.c_bar_unreduced % m);
      CHECK(h.c_bar % m == a * b * ctx.R % m);
    }
  }

  TEST_CASE("digit convolution") {
    CHECK(digit_convolve({1, 1}, {1, 1}) == DigitVector{1, 2, 1});
    CHECK(digit_convolve({1, 0, 1}, {1, 1, 0}) == DigitVector{1, 1, 1, 1, 0});
    CHECK(digit_convolve({0}, {1, 1}) == DigitVector{0, 0});
    CHECK(to_digits(0) == DigitVector{0});
    CHECK(to_digits(6) == DigitVector{1, 1, 0});
    CHECK(evaluate({3, 0, 5}) == 17);
    CHECK(bit_length(0) == 0);
    CHECK(bit_length(36057) == 16);
    CHECK_THROWS_AS(to_digits(-1), ConfigError);
  }

  TEST_CASE("convolution evaluates to the product, exhaustively up to 8 digits") {
    for (unsigned x = 0; x < 256; ++x)
      for (unsigned y = 0; y < 256; ++y) {
        const auto c = digit_convolve(to_digits(x), to_digits(y));
        REQUIRE(evaluate(c) == x * y);
      }
  }

  TEST_CASE("convolution is commutative and associative") {
    Rng rng(44);
    for (int trial = 0; trial < 300; ++trial) {
      const auto x = test::random_digits(rng, 1 + rng.below(12), 9);
      const auto y = test::random_digits(rng, 1 + rng.below(12), 9);
      const auto z = test::random_digits(rng, 1 + rng.below(12), 9);
      CHECK(digit_convolve(x, y) == digit_convolve(y, x));
      CHECK(digit_convolve(digit_convolve(x, y), z) == digit_convolve(x, digit_convolve(y, z)));
      CHECK(evaluate(digit_convolve(x, y)) == reference_convolve_value(x, y));
      CHECK(evaluate(digit_convolve(x, y)) == evaluate(x) * evaluate(y));
    }
  }

  TEST_CASE("high and low digit selection") {
    CHECK(take_low({1, 2, 3, 4}, 2) == DigitVector{3, 4});
    CHECK(take_low({1, 2}, 5) == DigitVector{1, 2});
    CHECK(take_high({1, 2, 3, 4, 5}, 4, 1) == DigitVector{1, 2, 3});
    CHECK(take_high({1, 2}, 6, 1) == DigitVector{0});
    CHECK_THROWS_AS(take_high({1, 2, 3}, 3, 3), ConfigError);

    Rng rng(45);
    for (int trial = 0; trial < 500; ++trial) {
      const auto v = test::random_digits(rng, 1 + rng.below(30), 50);
      const unsigned k = 2 + static_cast<unsigned>(rng.below(20));
      const unsigned o = 1 + static_cast<unsigned>(rng.below(k - 1));
      const unsigned drop = k - o - 1;
      CHECK(evaluate(take_low(v, k)) % (Integer(1) << k) == evaluate(v) % (Integer(1) << k));
      if (drop < v.size())
        CHECK(evaluate(take_high(v, k, o)) * (Integer(1) << drop) + evaluate(DigitVector(
                  std::vector<std::uint64_t>(v.digits().end() - drop, v.digits().end()))) ==
              evaluate(v));
    }
  }

  TEST_CASE("carry-corrected addition") {
    CHECK(digit_add_carry_corrected({1, 2}, {3}, 0) == DigitVector{1, 6});
    CHECK(digit_add_carry_corrected({1}, {1}, 2) == DigitVector{1, 0, 2});
    Rng rng(46);
    for (int trial = 0; trial < 500; ++trial) {
      const auto u = test::random_digits(rng, 1 + rng.below(20), 30);
      const auto v = test::random_digits(rng, 1 + rng.below(20), 30);
      const unsigned o = static_cast<unsigned>(rng.below(8));
      CHECK(evaluate(digit_add_carry_corrected(u, v, o)) ==
            evaluate(u) + evaluate(v) + (Integer(1) << o));
    }
  }

  TEST_CASE("zero operand gives zero through every variant") {
    const auto ctx = montgomery_setup(36057, 17);
    CHECK(montgomery_mul_exact(0, 31495, ctx).c_bar == 0);
    CHECK(from_montgomery(montgomery_mul_conv(0, 31495, ctx, 6).c_bar, ctx) == 0);
  }

  TEST_CASE("convolution chain digits stay detectable for 16-bit operands") {
    Rng rng(47);
    for (int trial = 0; trial < 300; ++trial) {
      const Integer m = random_odd_modulus(rng, 16);
      const Integer a = random_integer(rng, 16) % m, b = random_integer(rng, 16) % m;
      const auto ctx = montgomery_setup(m, operand_width_k(a, b, m));
      const auto t = montgomery_mul_conv(to_montgomery(a, ctx), to_montgomery(b, ctx), ctx, 6);
      CHECK(t.max_digit() <= 4096);
    }
  }
}
