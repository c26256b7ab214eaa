#include <cstdio>
#include <filesystem>

#include "fomul/executor.hpp"
#include "fomul/image_io.hpp"
#include "interpreter.hpp"

namespace fomul::script {
namespace {

namespace fs = std::filesystem;

class OpticalDevice {
 public:
  OpticalDevice(const Program& p, const ExecOptions& o)
      : grid_(p.grid()),
        backend_(o.backend),
        write_(o.write_images),
        out_dir_(o.output_dir.value_or(p.output_dir)),
        tap_dir_(o.tap_dir.value_or(p.tap_dir)) {
    grid_.validate();
  }

  ComplexField generate(const Generate& g) {
    const CellLayout layout = CellLayout::fit(grid_.size, static_cast<std::size_t>(g.n_cells), false);
    return encode_cells(g.values, layout, grid_);
  }

  ComplexField lens(const ComplexField& f, const Lens& l, bool) {
    return apply_lens(f, l.params.spec(), backend_);
  }

  ComplexField mul(const ComplexField& a, const ComplexField& b) { return pointwise_mul(a, b); }
  ComplexField add(const ComplexField& a, const ComplexField& b) { return pointwise_add(a, b); }
  ComplexField scale(const ComplexField& f, double g) { return fomul::scale(f, g); }
  ComplexField mask(const ComplexField& f, const Mask& m) {
    return mask_rect(f, m.corner1, m.corner2);
  }

  void tap(std::size_t step, const std::vector<detail::Beam<ComplexField>>& beams,
           ExecutionReport& report) {
    if (!write_) return;
    fs::create_directories(tap_dir_);
    for (std::size_t i = 0; i < beams.size(); ++i) {
      const fs::path p = tap_dir_ / ("tap_" + std::to_string(step) + "_beam_" +
                                     std::to_string(i + 1) + ".pgm");
      write_intensity(intensity(beams[i].data), p);
      report.files.push_back(p);
    }
  }

  void read_out(int id, const detail::Beam<ComplexField>& beam, ExecutionReport& report) {
    if (!write_) return;
    fs::create_directories(out_dir_);
    const fs::path p = out_dir_ / ("readout_beam_" + std::to_string(id) + ".pgm");
    write_intensity(intensity(beam.data), p);
    report.files.push_back(p);
  }

  DetectorEvent detect(const detail::Beam<ComplexField>& beam, const Detector& d,
                       const std::optional<DigitVector>& expected) {
    DetectorEvent ev;
    ev.layout = CellLayout::spanning(grid_, d.width, static_cast<std::size_t>(d.n_cells), true);
    ev.readout = fomul::detect(intensity(beam.data), ev.layout, expected, beam.mirrored);
    return ev;
  }

 private:
  GridSpec grid_;
  Backend backend_;
  bool write_;
  fs::path out_dir_;
  fs::path tap_dir_;
};

std::string fixed(double v, const char* spec) {
  char buf[48];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

}  // namespace

ExecutionReport execute(const Program& program, const ExecOptions& options) {
  OpticalDevice dev(program, options);
  return detail::interpret<ComplexField>(program, options, dev);
}

std::string ExecutionReport::format(bool with_timings) const {
  std::string s;
  s += "steps = " + std::to_string(steps.size()) + "\n";
  s += "images_written = " + std::to_string(files.size()) + "\n";
  s += "detector_events = " + std::to_string(detections.size()) + "\n";
  for (std::size_t i = 0; i < detections.size(); ++i) {
    const DetectorEvent& e = detections[i];
    const std::string pre = "detector[" + std::to_string(i + 1) + "].";
    s += pre + "step = " + std::to_string(e.step) + "\n";
    s += pre + "beam = " + std::to_string(e.beam) + "\n";
    s += pre + "cells = " + std::to_string(e.layout.n_cells) + "\n";
    s += pre + "cell_pixels = " + std::to_string(e.layout.cell_pixels) + "\n";
    s += pre + "mirrored = " + (e.mirrored ? "true" : "false") + "\n";
    s += e.readout.serialize(pre);
  }
  if (with_timings) {
    double total = 0.0;
    for (const StepRecord& r : steps) {
      s += "step[" + std::to_string(r.step) + "] = " + r.keyword + " line " +
           std::to_string(r.line) + " " + fixed(r.seconds, "%.6f") + " s\n";
      total += r.seconds;
    }
    s += "total_seconds = " + fixed(total, "%.6f") + "\n";
  }
  return s;
}

}  // namespace fomul::script
