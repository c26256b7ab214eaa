#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fomul/digits.hpp"
#include "fomul/field.hpp"

namespace fomul {

/// Square cells along the anti-diagonal of an N x N grid. Cell q = 0 sits at the
/// lower-left, q = n_cells - 1 at the upper-right (the MSB corner). The block of
/// cells is centered in the grid.
///
/// With `interleaved` set, digits occupy every other cell counted from the MSB
/// corner and the cells between them stay dark as guards.
struct CellLayout {
  std::size_t grid = 0;
  std::size_t n_cells = 0;
  std::size_t cell_pixels = 0;
  std::size_t offset = 0;
  bool interleaved = true;

  /// cell_pixels = grid / n_cells.
  static CellLayout fit(std::size_t grid, std::size_t n_cells, bool interleaved = true);
  /// Cells spanning `width` (mm, clamped to the extent) centered in the grid.
  static CellLayout spanning(const GridSpec& grid, double width, std::size_t n_cells,
                             bool interleaved = true);

  void validate() const;
  /// Number of digit slots.
  std::size_t capacity() const;
  /// Cell holding slot s, slots counted from the MSB corner.
  std::size_t slot_cell(std::size_t slot) const;
  std::size_t first_row(std::size_t cell) const;
  std::size_t first_col(std::size_t cell) const;
};

/// Per-cell real amplitudes (indexed by cell q) scaled by 1/max, rendered as uniform squares.
ComplexField encode_cells(const std::vector<double>& cell_values, const CellLayout& layout,
                          const GridSpec& grid);

/// Digits (MSB first) into consecutive slots starting at `first_slot`; amplitude v / max.
ComplexField encode_diagonal(const DigitVector& values, const CellLayout& layout,
                             const GridSpec& grid, std::size_t first_slot = 0);

/// Full-width horizontal bands, first value on top; remainder rows go to the edge bands.
ComplexField encode_banded(const DigitVector& values, std::size_t n_bands, const GridSpec& grid);

struct DetectorReadout {
  /// Per slot, MSB first.
  std::vector<double> raw;
  std::vector<double> amplitudes;
  double fitted_scale = 0.0;
  std::vector<std::uint64_t> digits;
  bool has_expected = false;
  double max_abs_err = 0.0;
  double rms_err = 0.0;

  /// `key = value` lines, each prefixed with `prefix`.
  std::string serialize(const std::string& prefix = "detector.") const;
};

/// Largest digit the unsupervised scale search will consider.
inline constexpr std::uint64_t kMaxDetectableDigit = 4096;

/// Integrated intensity per slot, MSB first; reversed order when `mirrored`.
std::vector<double> integrate_slots(const IntensityImage& img, const CellLayout& layout,
                                    bool mirrored = false);

/// Fit and rounding on already-integrated slot intensities.
DetectorReadout readout_from_raw(std::vector<double> raw,
                                 const std::optional<DigitVector>& expected);

/// `expected`, if given, has one digit per slot.
DetectorReadout detect(const IntensityImage& img, const CellLayout& layout,
                       const std::optional<DigitVector>& expected = std::nullopt,
                       bool mirrored = false);

}  // namespace fomul
