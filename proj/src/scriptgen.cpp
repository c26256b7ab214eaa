#include "fomul/scriptgen.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fomul/error.hpp"
#include "fomul/optics.hpp"

namespace fomul::script {
namespace {

double round6(double v) { return std::round(v * 1e6) / 1e6; }

class Builder {
 public:
  Builder(std::size_t n_cells, const ScriptGeometry& g, double z)
      : n_(n_cells), centre_(static_cast<long>(n_cells - 1) / 2), geo_(g), z_(z) {
    cell_pixels_ = g.grid / n_cells;
  }

  /// Digits of v at u0 + dir * 2w, one amplitude per cell.
  std::vector<double> place(const Integer& v, long u0, int dir) const {
    std::vector<double> cells(n_, 0.0);
    const DigitVector d = to_digits(v);
    for (std::size_t w = 0; w < d.size(); ++w) {
      const long u = u0 + dir * 2 * static_cast<long>(w);
      const std::uint64_t digit = d[d.size() - 1 - w];
      if (digit == 0) continue;
      cells.at(cell(u)) = static_cast<double>(digit);
    }
    return cells;
  }

  std::vector<double> unit(long u) const {
    std::vector<double> cells(n_, 0.0);
    cells.at(cell(u)) = 1.0;
    return cells;
  }

  void generate(std::vector<double> cells) {
    ops_.push_back(Generate{static_cast<int>(cell_pixels_), static_cast<int>(n_), std::move(cells)});
  }

  void tap() {
    if (geo_.taps) ops_.push_back(Tap{});
  }

  /// focal = z / divisor
  void lens(int beam, double divisor) {
    const double f = z_ / divisor;
    const double radius = round6(2.0 * (geo_.refractive_index - 1.0) * f);
    ops_.push_back(Lens{beam,
                        {radius, -radius, geo_.refractive_index, geo_.thickness, z_, 1.0, 1.0}});
  }

  void mul(int a, int b) { ops_.push_back(PointwiseMul{a, b}); }
  void add(int a, int b) { ops_.push_back(PointwiseAdd{a, b}); }
  void split(int a) { ops_.push_back(BeamSplitter{a}); }
  void filter(int a, double g) { ops_.push_back(Filter{a, g}); }

  /// Keep cells with offset <= u (lower-left of the guard cell at u).
  void keep_below(int beam, long u) {
    const double b = boundary(u);
    ops_.push_back(Mask{beam, {-0.5, b}, {b, -0.5}});
  }

  /// Keep cells with offset >= u.
  void keep_above(int beam, long u) {
    const double b = boundary(u);
    ops_.push_back(Mask{beam, {b, 0.5}, {0.5, b}});
  }

  void finish(double width) {
    ops_.push_back(ReadOut{1});
    ops_.push_back(Detector{1, width, static_cast<int>(n_)});
  }

  std::vector<Op> ops_;

 private:
  std::size_t cell(long u) const {
    const long q = centre_ + u;
    if (q < 0 || q >= static_cast<long>(n_)) throw ConfigError("digit falls outside the cell grid");
    return static_cast<std::size_t>(q);
  }

  /// Normalized coordinate of the center of the cell at offset u.
  double boundary(long u) const {
    return round6(static_cast<double>(u) * static_cast<double>(cell_pixels_) /
                  static_cast<double>(geo_.grid));
  }

  std::size_t n_;
  long centre_;
  const ScriptGeometry& geo_;
  double z_;
  std::size_t cell_pixels_ = 0;
};

}  // namespace

GeneratedScript generate_modmul_script(const Integer& a, const Integer& b, const Integer& m,
                                       const ScriptGeometry& geo) {
  if (a < 0 || b < 0) throw ConfigError("operands must be non-negative");
  const GridSpec grid{geo.grid, geo.pitch, geo.wavelength};
  grid.validate();

  GeneratedScript out;
  const unsigned k = operand_width_k(a, b, m);
  out.ctx = montgomery_setup(m, k);
  const long W = static_cast<long>(k) - 1;
  out.width_bits = static_cast<unsigned>(W);
  if (W < 2) throw ConfigError("operands must be at least 2 bits wide");
  const unsigned overlap = geo.overlap.value_or(std::min<unsigned>(6, static_cast<unsigned>(W - 1)));
  if (overlap < 1 || static_cast<long>(overlap) > W - 1)
    throw ConfigError("overlap must lie in [1, W - 1] for W-bit operands");
  const long d = W - static_cast<long>(overlap);  // digits dropped by take_high

  out.n_cells = static_cast<std::size_t>(4 * W + 3);
  if (geo.grid / out.n_cells < geo.min_cell_pixels)
    throw ConfigError("grid of " + std::to_string(geo.grid) + " pixels is too small for " +
                      std::to_string(out.n_cells) + " cells");
  out.separation = geo.separation.value_or(
      round6(3.0 * static_cast<double>(geo.grid) * geo.pitch * geo.pitch / geo.wavelength));
  if (!(out.separation > 0.0)) throw ConfigError("separation must be positive");

  out.a_bar = to_montgomery(a, out.ctx);
  out.b_bar = to_montgomery(b, out.ctx);
  out.trace = montgomery_mul_conv(out.a_bar, out.b_bar, out.ctx, overlap);

  // The two shifting units must differ by one cell pair so the high part of k1 lines up
  // with the high part of k4; the first must not push k1_hi off the grid.
  const long u7 = std::min(W + 1, 2 * d + 3);
  const long u8 = u7 - 1;

  Builder s(out.n_cells, geo, out.separation);
  s.generate(s.place(out.a_bar, 1, +1));
  s.generate(s.place(out.b_bar, 1 - 2 * W, +1));
  s.generate(s.place(out.ctx.M, 1, -1));
  s.generate(s.place(out.ctx.m, 0, +1));
  s.generate(s.unit(-(2 * W - 6)));
  s.generate(s.unit(2 * W - 4));
  s.generate(s.unit(u7));
  s.generate(s.unit(u8));
  s.tap();

  constexpr double fresh = 1.0, transform = 2.0, image = 3.0;
  // k1 = a_bar (x) b_bar, then split into high and low parts.
  s.lens(1, fresh);
  s.lens(2, fresh);
  s.tap();
  s.mul(1, 2);
  s.lens(1, image);
  s.tap();
  s.split(1);
  s.keep_below(1, 2 * W - 1 - 2 * d);
  s.keep_above(2, -3);
  s.tap();
  // k2 = k1_lo (x) M, keep the low k digits.
  s.lens(2, transform);
  s.lens(3, fresh);
  s.tap();
  s.mul(2, 3);
  s.lens(2, image);
  s.tap();
  s.keep_below(2, 2);
  s.tap();
  // k4 = k3 (x) m, keep the high part.
  s.lens(2, transform);
  s.lens(3, fresh);
  s.tap();
  s.mul(2, 3);
  s.lens(2, image);
  s.tap();
  s.keep_below(2, 2 * W - 2 * d);
  s.tap();
  // Carry unit: product of two units, attenuated to match the split beams.
  s.lens(3, fresh);
  s.lens(4, fresh);
  s.tap();
  s.mul(3, 4);
  s.lens(3, image);
  s.tap();
  s.filter(3, 0.5);
  s.tap();
  s.add(1, 3);
  s.tap();
  // Two multiplications by one shift k1_hi + 1 onto k4_hi and restore its phase.
  for (int rep = 0; rep < 2; ++rep) {
    s.lens(1, transform);
    s.lens(3, fresh);
    s.tap();
    s.mul(1, 3);
    s.lens(1, image);
    s.tap();
  }
  s.add(1, 2);
  s.tap();
  s.lens(1, transform);
  s.lens(1, transform);
  s.tap();
  s.finish(geo.detector_width);

  Program& p = out.program;
  p.output_dir = geo.output_dir;
  p.tap_dir = geo.tap_dir;
  p.wavelength = geo.wavelength;
  p.grid_size = geo.grid;
  p.pixel_pitch = geo.pitch;
  if (geo.pitch != 0.001) p.instructions.push_back({Pitch{geo.pitch}, 0});
  for (Op& op : s.ops_) p.instructions.push_back({std::move(op), 0});

  std::string text = emit_program(p);
  std::size_t pos = 0;
  for (int i = 0; i < 4; ++i) pos = text.find('\n', pos) + 1;
  std::ostringstream comment;
  comment << "#### " << a << " * " << b << " mod " << m << " = " << (a * b) % m << "\n";
  text.insert(pos, comment.str());
  out.text = std::move(text);

  // Slot s reads the cell at offset 2W + 1 - 2s, which holds weight 2W - s.
  const std::size_t slots = (out.n_cells + 1) / 2;
  const DigitVector& k5 = out.trace.k5_hi;
  std::vector<std::uint64_t> expected(slots, 0);
  for (std::size_t slot = 0; slot < slots; ++slot) {
    const long rel = 2 * W - static_cast<long>(slot) - d;
    if (rel >= 0 && rel < static_cast<long>(k5.size())) expected[slot] = k5[k5.size() - 1 - rel];
  }
  out.expected_slots = DigitVector(std::move(expected));
  return out;
}

}  // namespace fomul::script
