#include "fomul/montgomery.hpp"

#include <algorithm>
#include <sstream>

#include "fomul/error.hpp"

namespace fomul {
namespace {

/// Inverse of a modulo n via extended Euclid; requires gcd(a, n) = 1.
Integer mod_inverse(Integer a, const Integer& n) {
  Integer t = 0, new_t = 1, r = n, new_r = a % n;
  while (new_r != 0) {
    const Integer q = r / new_r;
    Integer next_t = t - q * new_t;
    t = std::move(new_t);
    new_t = std::move(next_t);
    Integer next_r = r - q * new_r;
    r = std::move(new_r);
    new_r = std::move(next_r);
  }
  if (r != 1) throw UnsupportedModulus("value is not invertible");
  if (t < 0) t += n;
  return t;
}

void require_residue(const Integer& x, const MontgomeryContext& ctx) {
  if (x < 0 || x >= ctx.m) throw ConfigError("Montgomery operand must lie in [0, m)");
}

Integer low_bits(const Integer& x, unsigned k) { return x & ((Integer(1) << k) - 1); }

}  // namespace

MontgomeryContext montgomery_setup(const Integer& m, std::optional<unsigned> k) {
  if (m < 3) throw UnsupportedModulus("modulus must be at least 3");
  if ((m & 1) == 0) throw UnsupportedModulus("modulus must be odd");
  MontgomeryContext ctx;
  ctx.m = m;
  ctx.k = k.value_or(bit_length(m));
  if (ctx.k < bit_length(m)) throw ConfigError("2^k must exceed the modulus");
  ctx.r = Integer(1) << ctx.k;
  ctx.M = ctx.r - mod_inverse(m, ctx.r);
  if (ctx.M == ctx.r) ctx.M = 0;
  ctx.R = mod_inverse(ctx.r % m, m);
  return ctx;
}

unsigned operand_width_k(const Integer& a, const Integer& b, const Integer& m) {
  return bit_length(std::max({a, b, m})) + 1;
}

Integer to_montgomery(const Integer& a, const MontgomeryContext& ctx) {
  if (a < 0) throw ConfigError("operand must be non-negative");
  return (a << ctx.k) % ctx.m;
}

Integer from_montgomery(const Integer& c_bar, const MontgomeryContext& ctx) {
  if (c_bar < 0) throw ConfigError("operand must be non-negative");
  return c_bar * ctx.R % ctx.m;
}

ExactTrace montgomery_mul_exact(const Integer& a_bar, const Integer& b_bar,
                                const MontgomeryContext& ctx) {
  require_residue(a_bar, ctx);
  require_residue(b_bar, ctx);
  ExactTrace t;
  t.k1 = a_bar * b_bar;
  t.k2 = t.k1 * ctx.M;
  t.k3 = low_bits(t.k2, ctx.k);
  t.k4 = t.k3 * ctx.m;
  t.k5 = t.k1 + t.k4;
  t.c_bar_unreduced = t.k5 >> ctx.k;
  t.c_bar = t.c_bar_unreduced >= ctx.m ? t.c_bar_unreduced - ctx.m : t.c_bar_unreduced;
  return t;
}

HiloTrace montgomery_mul_hilo(const Integer& a_bar, const Integer& b_bar,
                              const MontgomeryContext& ctx) {
  require_residue(a_bar, ctx);
  require_residue(b_bar, ctx);
  if (ctx.k < 2) throw ConfigError("hilo split needs k >= 2");
  HiloTrace t;
  t.k1 = a_bar * b_bar;
  t.k1_lo = low_bits(t.k1, ctx.k);
  t.k1_hi = t.k1 >> (ctx.k - 2);
  t.k2 = t.k1_lo * ctx.M;
  t.k3 = low_bits(t.k2, ctx.k);
  t.k4 = t.k3 * ctx.m;
  t.k4_hi = t.k4 >> (ctx.k - 2);
  t.k5_hi = t.k1_hi + t.k4_hi + 1;
  t.c_bar = t.k5_hi >> 2;
  return t;
}

std::uint64_t ConvTrace::max_digit() const {
  std::uint64_t mx = 0;
  for (const DigitVector* v : {&k1, &k1_hi, &k1_lo, &k2, &k3, &k4, &k4_hi, &k5_hi})
    mx = std::max(mx, v->max_digit());
  return mx;
}

ConvTrace montgomery_mul_conv(const Integer& a_bar, const Integer& b_bar,
                              const MontgomeryContext& ctx, unsigned overlap) {
  require_residue(a_bar, ctx);
  require_residue(b_bar, ctx);
  if (overlap < 1 || overlap + 1 > ctx.k) throw ConfigError("overlap must lie in [1, k - 1]");
  ConvTrace t;
  t.overlap = overlap;
  t.a_bar = to_digits(a_bar);
  t.b_bar = to_digits(b_bar);
  t.M = to_digits(ctx.M);
  t.m = to_digits(ctx.m);
  t.k1 = digit_convolve(t.a_bar, t.b_bar);
  t.k1_hi = take_high(t.k1, ctx.k, overlap);
  t.k1_lo = take_low(t.k1, ctx.k);
  t.k2 = digit_convolve(t.k1_lo, t.M);
  t.k3 = take_low(t.k2, ctx.k);
  t.k4 = digit_convolve(t.k3, t.m);
  t.k4_hi = take_high(t.k4, ctx.k, overlap);
  t.k5_hi = digit_add_carry_corrected(t.k1_hi, t.k4_hi, overlap);
  t.c_bar = evaluate(t.k5_hi) >> (overlap + 1);
  return t;
}

namespace {

void header(std::ostringstream& os, const MontgomeryContext& ctx) {
  os << "m = " << ctx.m << "\nk = " << ctx.k << "\nr = " << ctx.r << "\nM = " << ctx.M
     << "\nR = " << ctx.R << "\n";
}

void line(std::ostringstream& os, const char* name, const Integer& v) {
  os << name << " = " << v << "\n";
}

void line(std::ostringstream& os, const char* name, const DigitVector& v) {
  os << name << " = " << v.str() << " = " << evaluate(v) << "\n";
}

}  // namespace

std::string format_trace(const ExactTrace& t, const MontgomeryContext& ctx) {
  std::ostringstream os;
  os << "variant = exact\n";
  header(os, ctx);
  line(os, "k1", t.k1);
  line(os, "k2", t.k2);
  line(os, "k3", t.k3);
  line(os, "k4", t.k4);
  line(os, "k5", t.k5);
  line(os, "c_bar", t.c_bar);
  line(os, "c", from_montgomery(t.c_bar, ctx));
  return os.str();
}

std::string format_trace(const HiloTrace& t, const MontgomeryContext& ctx) {
  std::ostringstream os;
  os << "variant = hilo\n";
  header(os, ctx);
  line(os, "k1", t.k1);
  line(os, "k1_lo", t.k1_lo);
  line(os, "k1_hi", t.k1_hi);
  line(os, "k2", t.k2);
  line(os, "k3", t.k3);
  line(os, "k4", t.k4);
  line(os, "k4_hi", t.k4_hi);
  line(os, "k5_hi", t.k5_hi);
  line(os, "c_bar", t.c_bar);
  line(os, "c", from_montgomery(t.c_bar, ctx));
  return os.str();
}

std::string format_trace(const ConvTrace& t, const MontgomeryContext& ctx) {
  std::ostringstream os;
  os << "variant = conv\noverlap = " << t.overlap << "\n";
  header(os, ctx);
  line(os, "a_bar", t.a_bar);
  line(os, "b_bar", t.b_bar);
  line(os, "k1", t.k1);
  line(os, "k1_hi", t.k1_hi);
  line(os, "k1_lo", t.k1_lo);
  line(os, "k2", t.k2);
  line(os, "k3", t.k3);
  line(os, "k4", t.k4);
  line(os, "k4_hi", t.k4_hi);
  line(os, "k5_hi", t.k5_hi);
  line(os, "c_bar", t.c_bar);
  line(os, "c", from_montgomery(t.c_bar, ctx));
  return os.str();
}

}  // namespace fomul
