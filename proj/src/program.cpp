#include "fomul/program.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace fomul::script {

LensSpec LensParams::spec() const {
  LensSpec s;
  s.focal_length = lensmaker_focal_length(front_radius, back_radius, refractive_index);
  s.refractive_index = refractive_index;
  s.thickness = thickness;
  s.distance_after = distance;
  s.scale_x = scale_x;
  s.scale_y = scale_y;
  return s;
}

std::string_view keyword(const Op& op) {
  struct Visitor {
    std::string_view operator()(const Generate&) const { return "generate"; }
    std::string_view operator()(const Tap&) const { return "tap"; }
    std::string_view operator()(const Lens&) const { return "lens"; }
    std::string_view operator()(const PointwiseMul&) const { return "pointwise_mul"; }
    std::string_view operator()(const PointwiseAdd&) const { return "pointwise_add"; }
    std::string_view operator()(const BeamSplitter&) const { return "beam_splitter"; }
    std::string_view operator()(const Mask&) const { return "mask"; }
    std::string_view operator()(const Filter&) const { return "filter"; }
    std::string_view operator()(const ReadOut&) const { return "read_out"; }
    std::string_view operator()(const Detector&) const { return "detector"; }
    std::string_view operator()(const Pitch&) const { return "pitch"; }
  };
  return std::visit(Visitor{}, op);
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  double back = 0.0;
  std::from_chars(buf, buf + std::char_traits<char>::length(buf), back);
  if (back == v) return buf;
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf, end);
}

namespace {

std::string format_value(double v) {
  if (v == std::floor(v) && std::abs(v) < 1e15) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.0f", v);
    return buf;
  }
  return format_number(v);
}

constexpr std::size_t kWrap = 80;

void emit_generate(std::string& out, const Generate& g) {
  std::string line = "generate " + std::to_string(g.meta) + " " + std::to_string(g.n_cells);
  for (double v : g.values) {
    const std::string tok = format_value(v);
    if (line.size() + 1 + tok.size() > kWrap) {
      out += line + "\n";
      line.clear();
    }
    line += " " + tok;
  }
  out += line + "\n";
}

}  // namespace

std::string emit_program(const Program& p) {
  std::string out;
  out += p.output_dir + "\n" + p.tap_dir + "\n" + format_number(p.wavelength) + "\n" +
         std::to_string(p.grid_size) + "\n";
  const auto n = [](double v) { return " " + format_number(v); };
  const auto id = [](int b) { return " " + std::to_string(b); };
  for (const Instruction& ins : p.instructions) {
    std::visit(
        [&](const auto& op) {
          using T = std::decay_t<decltype(op)>;
          if constexpr (std::is_same_v<T, Generate>) {
            emit_generate(out, op);
            return;
          }
          out += keyword(ins.op);
          if constexpr (std::is_same_v<T, Lens>) {
            const LensParams& l = op.params;
            out += id(op.beam) + n(l.front_radius) + n(l.back_radius) + n(l.refractive_index) +
                   n(l.thickness) + n(l.distance) + n(l.scale_x) + n(l.scale_y);
          } else if constexpr (std::is_same_v<T, PointwiseMul> || std::is_same_v<T, PointwiseAdd>) {
            out += id(op.a) + id(op.b);
          } else if constexpr (std::is_same_v<T, BeamSplitter> || std::is_same_v<T, ReadOut>) {
            out += id(op.beam);
          } else if constexpr (std::is_same_v<T, Mask>) {
            out += id(op.beam) + n(op.corner1.x) + n(op.corner1.y) + n(op.corner2.x) +
                   n(op.corner2.y);
          } else if constexpr (std::is_same_v<T, Filter>) {
            out += id(op.beam) + n(op.gain);
          } else if constexpr (std::is_same_v<T, Detector>) {
            out += id(op.beam) + n(op.width) + " " + std::to_string(op.n_cells);
          } else if constexpr (std::is_same_v<T, Pitch>) {
            out += n(op.mm);
          }
          out += "\n";
        },
        ins.op);
  }
  return out;
}

}  // namespace fomul::script
