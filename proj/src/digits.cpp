#include "fomul/digits.hpp"

#include <algorithm>

#include "fomul/error.hpp"

namespace fomul {

std::uint64_t DigitVector::max_digit() const {
  return digits_.empty() ? 0 : *std::max_element(digits_.begin(), digits_.end());
}

std::string DigitVector::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < digits_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(digits_[i]);
  }
  return s + ")";
}

unsigned bit_length(const Integer& x) {
  if (x < 0) throw ConfigError("bit length of a negative integer");
  return x == 0 ? 0u : static_cast<unsigned>(boost::multiprecision::msb(x)) + 1u;
}

DigitVector to_digits(const Integer& x) {
  if (x < 0) throw ConfigError("cannot expand a negative integer into digits");
  if (x == 0) return DigitVector{0};
  const unsigned n = bit_length(x);
  std::vector<std::uint64_t> d(n);
  for (unsigned i = 0; i < n; ++i) d[n - 1 - i] = boost::multiprecision::bit_test(x, i) ? 1 : 0;
  return DigitVector(std::move(d));
}

Integer evaluate(const DigitVector& v) {
  Integer acc = 0;
  for (std::uint64_t d : v.digits()) acc = (acc << 1) + d;
  return acc;
}

DigitVector digit_convolve(const DigitVector& x, const DigitVector& y) {
  if (x.empty() || y.empty()) throw ConfigError("digit convolution of an empty vector");
  std::vector<std::uint64_t> out(x.size() + y.size() - 1, 0);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) out[i + j] += x[i] * y[j];
  return DigitVector(std::move(out));
}

DigitVector take_low(const DigitVector& v, unsigned k) {
  if (k >= v.size()) return v;
  const auto& d = v.digits();
  return DigitVector(std::vector<std::uint64_t>(d.end() - k, d.end()));
}

DigitVector take_high(const DigitVector& v, unsigned k, unsigned overlap) {
  if (overlap + 1 > k) throw ConfigError("overlap must be below k");
  const std::size_t drop = k - overlap - 1;
  if (drop >= v.size()) return DigitVector{0};
  const auto& d = v.digits();
  return DigitVector(std::vector<std::uint64_t>(d.begin(), d.end() - static_cast<std::ptrdiff_t>(drop)));
}

DigitVector digit_add_carry_corrected(const DigitVector& u, const DigitVector& v,
                                      unsigned overlap) {
  const std::size_t n = std::max({u.size(), v.size(), static_cast<std::size_t>(overlap) + 1});
  std::vector<std::uint64_t> out(n, 0);
  for (std::size_t i = 0; i < u.size(); ++i) out[n - 1 - i] += u[u.size() - 1 - i];
  for (std::size_t i = 0; i < v.size(); ++i) out[n - 1 - i] += v[v.size() - 1 - i];
  out[n - 1 - overlap] += 1;
  return DigitVector(std::move(out));
}

}  // namespace fomul
