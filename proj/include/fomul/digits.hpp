#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace fomul {

using Integer = boost::multiprecision::cpp_int;

/// Base-2 positional digits, most significant first. Digits may exceed 1 when carries
/// have not been propagated.
class DigitVector {
 public:
  DigitVector() = default;
  DigitVector(std::initializer_list<std::uint64_t> digits) : digits_(digits) {}
  explicit DigitVector(std::vector<std::uint64_t> digits) : digits_(std::move(digits)) {}

  std::size_t size() const { return digits_.size(); }
  bool empty() const { return digits_.empty(); }
  std::uint64_t operator[](std::size_t i) const { return digits_[i]; }
  const std::vector<std::uint64_t>& digits() const { return digits_; }
  std::uint64_t max_digit() const;

  /// "(1,0,1)"
  std::string str() const;

  bool operator==(const DigitVector&) const = default;

 private:
  std::vector<std::uint64_t> digits_;
};

/// Binary expansion; 0 maps to (0). Throws ConfigError for negative x.
DigitVector to_digits(const Integer& x);
Integer evaluate(const DigitVector& v);

/// Carry-free product: out_j = sum_i x_i y_{j-i}, length |x| + |y| - 1.
DigitVector digit_convolve(const DigitVector& x, const DigitVector& y);

/// Last k digits (weights below 2^k); the whole vector if it is shorter.
DigitVector take_low(const DigitVector& v, unsigned k);

/// Drops the k - overlap - 1 least significant digits. Returns (0) when nothing is left.
DigitVector take_high(const DigitVector& v, unsigned k, unsigned overlap);

/// LSB-aligned sum plus 1 at weight 2^overlap.
DigitVector digit_add_carry_corrected(const DigitVector& u, const DigitVector& v,
                                      unsigned overlap);

/// Bit length of a non-negative integer (0 for 0).
unsigned bit_length(const Integer& x);

}  // namespace fomul
