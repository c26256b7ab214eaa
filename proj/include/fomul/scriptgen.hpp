#pragma once

#include <optional>
#include <string>

#include "fomul/montgomery.hpp"
#include "fomul/program.hpp"

namespace fomul::script {

struct ScriptGeometry {
  std::size_t grid = 1005;
  double pitch = 0.001;
  double wavelength = 0.0002;
  /// Lens-to-lens distance (mm). Default: 3 N pitch^2 / wavelength, rounded to 1e-6.
  std::optional<double> separation;
  /// Default: min(6, W - 1) for W-bit operands.
  std::optional<unsigned> overlap;
  double refractive_index = 1.5;
  double thickness = 2.0;
  double detector_width = 12.0;
  bool taps = true;
  std::string output_dir = "output";
  std::string tap_dir = "tap";
  std::size_t min_cell_pixels = 3;
};

struct GeneratedScript {
  Program program;
  /// emit_program output with a comment naming the instance.
  std::string text;
  MontgomeryContext ctx;
  Integer a_bar, b_bar;
  ConvTrace trace;
  unsigned width_bits = 0;
  std::size_t n_cells = 0;
  double separation = 0.0;
  /// Digit the detector should read in each slot (k5_hi placed at its cells, zeros
  /// elsewhere).
  DigitVector expected_slots;
};

/// Builds the eight-beam optical Montgomery multiplier for a * b mod m.
///
/// With W = bitlen(max(a, b, m)) and k = W + 1, the diagonal has 4W + 3 cells and
/// digits sit on every other cell. Cell offsets u are counted from the central cell;
/// a beam carrying digit w at u0 + 2w runs "forward", one at u0 - 2w "backward".
///
///   beam 1  a_bar  forward,  u0 = 1
///   beam 2  b_bar  forward,  u0 = 1 - 2W
///   beam 3  M      backward, u0 = 1
///   beam 4  m      forward,  u0 = 0
///   beams 5-8  single unit cells that shift and re-phase partial results
///
/// A product of two Fourier planes lands at the sum of the offsets and the next lens
/// inverts it, so each stage alternates direction. Lens focal lengths are z for a fresh
/// beam, z/2 for the transform of an earlier product and z/3 to image a product.
GeneratedScript generate_modmul_script(const Integer& a, const Integer& b, const Integer& m,
                                       const ScriptGeometry& geometry = {});

}  // namespace fomul::script
