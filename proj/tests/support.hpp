#pragma once

#include <cstdint>
#include <random>

#include "fomul/digits.hpp"
#include "fomul/field.hpp"

namespace fomul::test {

/// Portable uniform draws; std::uniform_*_distribution differs between standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  std::uint64_t below(std::uint64_t n) { return gen_() % n; }
  std::uint64_t range(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }
  double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double symmetric() { return 2.0 * unit() - 1.0; }

 private:
  std::mt19937_64 gen_;
};

inline ComplexField random_field(Rng& rng, const GridSpec& g) {
  ComplexField f(g);
  for (Complex& s : f.samples()) s = Complex(rng.symmetric(), rng.symmetric());
  return f;
}

inline DigitVector random_digits(Rng& rng, std::size_t len, std::uint64_t max_digit) {
  std::vector<std::uint64_t> d(len);
  for (auto& x : d) x = rng.below(max_digit + 1);
  return DigitVector(std::move(d));
}

inline double max_abs_diff(const ComplexField& a, const ComplexField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.samples().size(); ++i)
    m = std::max(m, std::abs(a.samples()[i] - b.samples()[i]));
  return m;
}

inline double max_abs(const ComplexField& a) {
  double m = 0.0;
  for (const Complex& s : a.samples()) m = std::max(m, std::abs(s));
  return m;
}

}  // namespace fomul::test
