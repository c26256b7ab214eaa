#pragma once

#include <chrono>
#include <cmath>
#include <string>
#include <vector>

#include "fomul/error.hpp"
#include "fomul/executor.hpp"

namespace fomul::script::detail {

template <typename Payload>
struct Beam {
  Payload data;
  bool fourier = false;
  bool mirrored = false;
};

/// Shared instruction walk. `Device` supplies the payload operations:
///   Payload generate(const Generate&)
///   Payload lens(const Payload&, const Lens&, bool to_fourier)
///   Payload mul(const Payload&, const Payload&)
///   Payload add(const Payload&, const Payload&)
///   Payload scale(const Payload&, double amplitude_gain)
///   Payload mask(const Payload&, const Mask&)
///   void tap(std::size_t step, const std::vector<Beam<Payload>>&, ExecutionReport&)
///   void read_out(int id, const Beam<Payload>&, ExecutionReport&)
///   DetectorEvent detect(const Beam<Payload>&, const Detector&, const std::optional<DigitVector>&)
template <typename Payload, typename Device>
ExecutionReport interpret(const Program& program, const ExecOptions& options, Device& dev) {
  std::vector<Beam<Payload>> beams;
  ExecutionReport report;
  std::size_t n_detectors = 0;

  for (std::size_t idx = 0; idx < program.instructions.size(); ++idx) {
    const Instruction& ins = program.instructions[idx];
    const std::size_t step = idx + 1;
    const auto t0 = std::chrono::steady_clock::now();

    auto index_of = [&](int id) -> std::size_t {
      if (id < 1 || static_cast<std::size_t>(id) > beams.size())
        throw ExecutionError(step, "beam " + std::to_string(id) + " is not live (" +
                                       std::to_string(beams.size()) + " live beams)");
      return static_cast<std::size_t>(id - 1);
    };

    try {
      std::visit(
          [&](const auto& op) {
            using T = std::decay_t<decltype(op)>;
            if constexpr (std::is_same_v<T, Generate>) {
              beams.push_back({dev.generate(op), false, false});
            } else if constexpr (std::is_same_v<T, Tap>) {
              dev.tap(step, beams, report);
            } else if constexpr (std::is_same_v<T, Lens>) {
              auto& b = beams[index_of(op.beam)];
              const bool to_fourier = !b.fourier;
              b.data = dev.lens(b.data, op, to_fourier);
              if (!to_fourier) b.mirrored = !b.mirrored;
              b.fourier = to_fourier;
            } else if constexpr (std::is_same_v<T, PointwiseMul> ||
                                 std::is_same_v<T, PointwiseAdd>) {
              const std::size_t ia = index_of(op.a), ib = index_of(op.b);
              if (ia == ib) throw ExecutionError(step, "operands must be distinct beams");
              auto& a = beams[ia];
              if constexpr (std::is_same_v<T, PointwiseMul>)
                a.data = dev.mul(a.data, beams[ib].data);
              else
                a.data = dev.add(a.data, beams[ib].data);
              beams.erase(beams.begin() + static_cast<std::ptrdiff_t>(ib));
            } else if constexpr (std::is_same_v<T, BeamSplitter>) {
              const std::size_t i = index_of(op.beam);
              beams[i].data = dev.scale(beams[i].data, 1.0 / std::sqrt(2.0));
              Beam<Payload> copy = beams[i];
              beams.insert(beams.begin() + static_cast<std::ptrdiff_t>(i + 1), std::move(copy));
            } else if constexpr (std::is_same_v<T, Mask>) {
              auto& b = beams[index_of(op.beam)];
              b.data = dev.mask(b.data, op);
            } else if constexpr (std::is_same_v<T, Filter>) {
              auto& b = beams[index_of(op.beam)];
              b.data = dev.scale(b.data, std::sqrt(op.gain));
            } else if constexpr (std::is_same_v<T, ReadOut>) {
              dev.read_out(op.beam, beams[index_of(op.beam)], report);
            } else if constexpr (std::is_same_v<T, Detector>) {
              const auto& b = beams[index_of(op.beam)];
              const std::optional<DigitVector> expected =
                  n_detectors < options.expected.size() ? options.expected[n_detectors]
                                                        : std::nullopt;
              DetectorEvent ev = dev.detect(b, op, expected);
              ev.step = step;
              ev.beam = op.beam;
              ev.mirrored = b.mirrored;
              report.detections.push_back(std::move(ev));
              ++n_detectors;
            } else if constexpr (std::is_same_v<T, Pitch>) {
              // consumed by the parser
            }
          },
          ins.op);
    } catch (const ExecutionError&) {
      throw;
    } catch (const std::exception& e) {
      throw ExecutionError(step, std::string(keyword(ins.op)) + ": " + e.what());
    }

    const double dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report.steps.push_back({step, ins.line, std::string(keyword(ins.op)), dt});
  }
  return report;
}

}  // namespace fomul::script::detail
