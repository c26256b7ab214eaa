#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fomul/digitcodec.hpp"
#include "fomul/optics.hpp"
#include "fomul/program.hpp"

namespace fomul::script {

struct ExecOptions {
  Backend backend = Backend::Fft;
  /// Write tap and read_out images.
  bool write_images = true;
  /// Replace the directories named in the program header.
  std::optional<std::filesystem::path> output_dir;
  std::optional<std::filesystem::path> tap_dir;
  /// Expected digits for the i-th detector instruction, one per slot.
  std::vector<std::optional<DigitVector>> expected;
};

struct DetectorEvent {
  std::size_t step = 0;
  int beam = 0;
  CellLayout layout;
  bool mirrored = false;
  DetectorReadout readout;
};

struct StepRecord {
  std::size_t step = 0;
  std::size_t line = 0;
  std::string keyword;
  double seconds = 0.0;
};

struct ExecutionReport {
  std::vector<DetectorEvent> detections;
  std::vector<StepRecord> steps;
  std::vector<std::filesystem::path> files;

  /// Stable key/value text. Wall times are only included on request since they vary
  /// from run to run.
  std::string format(bool with_timings = false) const;
};

/// Runs the program on simulated fields.
///
/// Beam ids are positions in a compact table: generate appends, beam_splitter inserts the
/// copy right after its source, and pointwise_mul/add keep the result in the first
/// operand and remove the second, shifting higher ids down. beam_splitter halves the
/// intensity of both outputs. A lens takes a beam from an image plane to a Fourier plane
/// or back; the return trip inverts the image, which flips the beam's mirror flag, and
/// the detector reads mirrored beams from the lower-left corner.
ExecutionReport execute(const Program& program, const ExecOptions& options = {});

/// Same instruction semantics on per-cell amplitudes instead of fields: a lens is a
/// plane change (with cell reversal on the return trip) and pointwise_mul of two Fourier
/// planes is a convolution over cell offsets. No diffraction, no images written.
ExecutionReport execute_ideal(const Program& program, const ExecOptions& options = {});

}  // namespace fomul::script
