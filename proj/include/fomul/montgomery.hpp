#pragma once

#include <optional>
#include <string>

#include "fomul/digits.hpp"

namespace fomul {

/// Modulus m with r = 2^k > m, M = -m^{-1} mod r and R = r^{-1} mod m.
struct MontgomeryContext {
  Integer m;
  unsigned k = 0;
  Integer r;
  Integer M;
  Integer R;
};

/// Minimal k (2^(k-1) <= m < 2^k) unless k is given; an explicit k must satisfy 2^k > m.
MontgomeryContext montgomery_setup(const Integer& m, std::optional<unsigned> k = std::nullopt);

/// k = bitlen(max(a, b, m)) + 1, the operand width used for the optical layout.
unsigned operand_width_k(const Integer& a, const Integer& b, const Integer& m);

Integer to_montgomery(const Integer& a, const MontgomeryContext& ctx);
Integer from_montgomery(const Integer& c_bar, const MontgomeryContext& ctx);

struct ExactTrace {
  Integer k1, k2, k3, k4, k5;
  /// k5 / r, before the final conditional subtraction (< 2m).
  Integer c_bar_unreduced;
  Integer c_bar;
};

ExactTrace montgomery_mul_exact(const Integer& a_bar, const Integer& b_bar,
                                const MontgomeryContext& ctx);

struct HiloTrace {
  Integer k1, k1_lo, k1_hi, k2, k3, k4, k4_hi, k5_hi;
  /// k5_hi >> 2; no conditional subtraction.
  Integer c_bar;
};

HiloTrace montgomery_mul_hilo(const Integer& a_bar, const Integer& b_bar,
                              const MontgomeryContext& ctx);

struct ConvTrace {
  unsigned overlap = 0;
  DigitVector a_bar, b_bar, M, m;
  DigitVector k1, k1_hi, k1_lo, k2, k3, k4, k4_hi, k5_hi;
  Integer c_bar;

  /// Largest digit over every intermediate.
  std::uint64_t max_digit() const;
};

ConvTrace montgomery_mul_conv(const Integer& a_bar, const Integer& b_bar,
                              const MontgomeryContext& ctx, unsigned overlap = 6);

/// Key/value report of a trace; one `name = (digits) = value` line per intermediate.
std::string format_trace(const ExactTrace& t, const MontgomeryContext& ctx);
std::string format_trace(const HiloTrace& t, const MontgomeryContext& ctx);
std::string format_trace(const ConvTrace& t, const MontgomeryContext& ctx);

}  // namespace fomul
