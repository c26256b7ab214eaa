#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fomul/field.hpp"
#include "fomul/optics.hpp"

namespace fomul::script {

/// `generate meta n v_0 ... v_{n-1}`: one amplitude per diagonal cell, cell 0 at the
/// lower-left. `meta` is carried through but does not affect the layout.
struct Generate {
  int meta = 0;
  int n_cells = 0;
  std::vector<double> values;
  bool operator==(const Generate&) const = default;
};

struct Tap {
  bool operator==(const Tap&) const = default;
};

/// Lens line parameters in file order: surface radii, index, thickness, distance to the
/// next plane, output scale factors. The focal length follows from the lensmaker
/// relation on the radii.
struct LensParams {
  double front_radius = 0.0;
  double back_radius = 0.0;
  double refractive_index = 1.5;
  double thickness = 0.0;
  double distance = 0.0;
  double scale_x = 1.0;
  double scale_y = 1.0;

  LensSpec spec() const;
  bool operator==(const LensParams&) const = default;
};

struct Lens {
  int beam = 0;
  LensParams params;
  bool operator==(const Lens&) const = default;
};

struct PointwiseMul {
  int a = 0, b = 0;
  bool operator==(const PointwiseMul&) const = default;
};

struct PointwiseAdd {
  int a = 0, b = 0;
  bool operator==(const PointwiseAdd&) const = default;
};

struct BeamSplitter {
  int beam = 0;
  bool operator==(const BeamSplitter&) const = default;
};

struct Mask {
  int beam = 0;
  NormPoint corner1, corner2;
  bool operator==(const Mask&) const = default;
};

/// Intensity transmission g; amplitudes scale by sqrt(g).
struct Filter {
  int beam = 0;
  double gain = 1.0;
  bool operator==(const Filter&) const = default;
};

struct ReadOut {
  int beam = 0;
  bool operator==(const ReadOut&) const = default;
};

struct Detector {
  int beam = 0;
  double width = 0.0;
  int n_cells = 0;
  bool operator==(const Detector&) const = default;
};

struct Pitch {
  double mm = 0.001;
  bool operator==(const Pitch&) const = default;
};

using Op = std::variant<Generate, Tap, Lens, PointwiseMul, PointwiseAdd, BeamSplitter, Mask,
                        Filter, ReadOut, Detector, Pitch>;

struct Instruction {
  Op op;
  /// Source line of the keyword; 0 for programs built in memory. Ignored by ==.
  std::size_t line = 0;

  bool operator==(const Instruction& o) const { return op == o.op; }
};

struct Program {
  std::string output_dir;
  std::string tap_dir;
  double wavelength = 0.0002;
  std::size_t grid_size = 0;
  /// Set by a leading `pitch` instruction.
  double pixel_pitch = 0.001;
  std::vector<Instruction> instructions;

  GridSpec grid() const { return {grid_size, pixel_pitch, wavelength}; }
  bool operator==(const Program&) const = default;
};

std::string_view keyword(const Op& op);

Program parse_program(std::string_view text);
std::string emit_program(const Program& p);

/// Formats a number with six decimals when that reads back exactly, otherwise with
/// the shortest exact representation.
std::string format_number(double v);

}  // namespace fomul::script
