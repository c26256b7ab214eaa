#include <algorithm>

#include "fomul/error.hpp"
#include "fomul/executor.hpp"
#include "interpreter.hpp"

namespace fomul::script {
namespace {

using Cells = std::vector<double>;

class IdealDevice {
 public:
  explicit IdealDevice(const Program& p) : grid_(p.grid()) { grid_.validate(); }

  Cells generate(const Generate& g) {
    const auto n = static_cast<std::size_t>(g.n_cells);
    if (layout_.n_cells == 0) {
      if (n % 2 == 0) throw ConfigError("cell arithmetic needs an odd cell count");
      layout_ = CellLayout::fit(grid_.size, n, false);
    } else if (layout_.n_cells != n) {
      throw ConfigError("all generate lines must use the same cell count");
    }
    double peak = 0.0;
    for (double v : g.values) peak = std::max(peak, v);
    Cells c(n, 0.0);
    if (peak > 0.0)
      for (std::size_t q = 0; q < g.values.size(); ++q) c[q] = g.values[q] / peak;
    return c;
  }

  Cells lens(const Cells& c, const Lens&, bool to_fourier) {
    if (to_fourier) return c;
    return Cells(c.rbegin(), c.rend());
  }

  Cells mul(const Cells& a, const Cells& b) {
    const auto n = static_cast<std::ptrdiff_t>(a.size());
    const std::ptrdiff_t centre = (n - 1) / 2;
    Cells out(a.size(), 0.0);
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      if (a[i] == 0.0) continue;
      for (std::ptrdiff_t j = 0; j < n; ++j) {
        const std::ptrdiff_t q = i + j - centre;
        if (q >= 0 && q < n) out[q] += a[i] * b[j];
      }
    }
    return out;
  }

  Cells add(const Cells& a, const Cells& b) {
    Cells out(a.size());
    for (std::size_t q = 0; q < a.size(); ++q) out[q] = a[q] + b[q];
    return out;
  }

  Cells scale(const Cells& c, double g) {
    Cells out(c);
    for (double& v : out) v *= g;
    return out;
  }

  /// A cell survives when its center passes the pixel mask test.
  Cells mask(const Cells& c, const Mask& m) {
    const double x_lo = std::min(m.corner1.x, m.corner2.x), x_hi = std::max(m.corner1.x, m.corner2.x);
    const double y_lo = std::min(m.corner1.y, m.corner2.y), y_hi = std::max(m.corner1.y, m.corner2.y);
    const double n = static_cast<double>(grid_.size);
    const double half_cell = 0.5 * static_cast<double>(layout_.cell_pixels - 1);
    Cells out(c.size(), 0.0);
    for (std::size_t q = 0; q < c.size(); ++q) {
      const double col = static_cast<double>(layout_.first_col(q)) + half_cell;
      const double row = static_cast<double>(layout_.first_row(q)) + half_cell;
      const double x = (col - 0.5 * (n - 1.0)) / n;
      const double y = (0.5 * (n - 1.0) - row) / n;
      if (x >= x_lo && x <= x_hi && y >= y_lo && y <= y_hi) out[q] = c[q];
    }
    return out;
  }

  void tap(std::size_t, const std::vector<detail::Beam<Cells>>&, ExecutionReport&) {}
  void read_out(int, const detail::Beam<Cells>&, ExecutionReport&) {}

  DetectorEvent detect(const detail::Beam<Cells>& beam, const Detector& d,
                       const std::optional<DigitVector>& expected) {
    if (static_cast<std::size_t>(d.n_cells) != beam.data.size())
      throw ConfigError("detector cell count differs from the generated layout");
    DetectorEvent ev;
    ev.layout = CellLayout::spanning(grid_, d.width, beam.data.size(), true);
    const std::size_t cap = ev.layout.capacity();
    std::vector<double> raw(cap);
    for (std::size_t s = 0; s < cap; ++s) {
      const double a = beam.data[ev.layout.slot_cell(beam.mirrored ? cap - 1 - s : s)];
      raw[s] = a * a;
    }
    ev.readout = readout_from_raw(std::move(raw), expected);
    return ev;
  }

 private:
  GridSpec grid_;
  CellLayout layout_;
};

}  // namespace

ExecutionReport execute_ideal(const Program& program, const ExecOptions& options) {
  IdealDevice dev(program);
  return detail::interpret<Cells>(program, options, dev);
}

}  // namespace fomul::script
