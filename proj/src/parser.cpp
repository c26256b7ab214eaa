#include <charconv>
#include <cmath>
#include <string>

#include "fomul/error.hpp"
#include "fomul/program.hpp"

namespace fomul::script {
namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

std::vector<std::string> split(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double to_double(const std::string& tok, std::size_t line) {
  double v = 0.0;
  const char* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v))
    throw ParseError(line, "expected a number, got '" + tok + "'");
  return v;
}

long to_long(const std::string& tok, std::size_t line) {
  long v = 0;
  const char* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, v);
  if (ec != std::errc() || ptr != end)
    throw ParseError(line, "expected an integer, got '" + tok + "'");
  return v;
}

class BodyParser {
 public:
  BodyParser(std::vector<Line> lines, Program& prog) : lines_(std::move(lines)), prog_(prog) {}

  void run() {
    if (lines_.empty()) throw ParseError(last_line_, "program has no instructions");
    while (pos_ < lines_.size()) parse_instruction();
  }

  std::size_t last_line_ = 0;

 private:
  const Line& cur() const { return lines_[pos_]; }

  void arity(const Line& l, std::size_t expected) const {
    if (l.tokens.size() - 1 != expected)
      throw ParseError(l.number, "'" + l.tokens[0] + "' takes " + std::to_string(expected) +
                                     " arguments, got " + std::to_string(l.tokens.size() - 1));
  }

  int beam(const Line& l, std::size_t idx) const {
    const long b = to_long(l.tokens[idx], l.number);
    if (b < 1) throw ParseError(l.number, "beam ids start at 1");
    if (b > live_)
      throw ParseError(l.number, "beam " + std::to_string(b) + " is not live here (" +
                                     std::to_string(live_) + " live beams)");
    return static_cast<int>(b);
  }

  double num(const Line& l, std::size_t idx) const { return to_double(l.tokens[idx], l.number); }

  void push(Op op, std::size_t line) { prog_.instructions.push_back({std::move(op), line}); }

  void parse_instruction() {
    const Line& l = cur();
    const std::string& kw = l.tokens[0];
    const std::size_t ln = l.number;
    ++pos_;
    if (kw == "generate") {
      parse_generate(l);
    } else if (kw == "tap") {
      arity(l, 0);
      push(Tap{}, ln);
    } else if (kw == "lens") {
      arity(l, 8);
      Lens op{beam(l, 1),
              {num(l, 2), num(l, 3), num(l, 4), num(l, 5), num(l, 6), num(l, 7), num(l, 8)}};
      try {
        op.params.spec().validate();
      } catch (const ConfigError& e) {
        throw ParseError(ln, e.what());
      }
      push(op, ln);
    } else if (kw == "pointwise_mul" || kw == "pointwise_add") {
      arity(l, 2);
      const int a = beam(l, 1), b = beam(l, 2);
      if (a == b) throw ParseError(ln, "'" + kw + "' needs two distinct beams");
      --live_;
      if (kw == "pointwise_mul")
        push(PointwiseMul{a, b}, ln);
      else
        push(PointwiseAdd{a, b}, ln);
    } else if (kw == "beam_splitter") {
      arity(l, 1);
      push(BeamSplitter{beam(l, 1)}, ln);
      ++live_;
    } else if (kw == "mask") {
      arity(l, 5);
      Mask op{beam(l, 1), {num(l, 2), num(l, 3)}, {num(l, 4), num(l, 5)}};
      for (double v : {op.corner1.x, op.corner1.y, op.corner2.x, op.corner2.y})
        if (v < -0.5 || v > 0.5) throw ParseError(ln, "mask corner outside [-0.5, 0.5]");
      push(op, ln);
    } else if (kw == "filter") {
      arity(l, 2);
      Filter op{beam(l, 1), num(l, 2)};
      if (op.gain < 0.0) throw ParseError(ln, "filter transmission must be non-negative");
      push(op, ln);
    } else if (kw == "read_out") {
      arity(l, 1);
      push(ReadOut{beam(l, 1)}, ln);
    } else if (kw == "detector") {
      arity(l, 3);
      Detector op{beam(l, 1), num(l, 2), static_cast<int>(to_long(l.tokens[3], ln))};
      if (!(op.width > 0.0)) throw ParseError(ln, "detector width must be positive");
      if (op.n_cells < 1) throw ParseError(ln, "detector needs at least one cell");
      push(op, ln);
    } else if (kw == "pitch") {
      arity(l, 1);
      Pitch op{num(l, 1)};
      if (!(op.mm > 0.0)) throw ParseError(ln, "pitch must be positive");
      if (live_ > 0) throw ParseError(ln, "pitch must precede the first generate");
      prog_.pixel_pitch = op.mm;
      push(op, ln);
    } else {
      throw ParseError(ln, "unknown keyword '" + kw + "'");
    }
  }

  void parse_generate(const Line& l) {
    if (l.tokens.size() < 3) throw ParseError(l.number, "'generate' needs meta and cell count");
    Generate g;
    g.meta = static_cast<int>(to_long(l.tokens[1], l.number));
    const long n = to_long(l.tokens[2], l.number);
    if (n < 1) throw ParseError(l.number, "'generate' needs at least one cell");
    g.n_cells = static_cast<int>(n);
    auto take = [&](const Line& src, std::size_t from) {
      for (std::size_t i = from; i < src.tokens.size(); ++i) {
        if (g.values.size() == static_cast<std::size_t>(n))
          throw ParseError(src.number, "'generate' has more than " + std::to_string(n) + " values");
        const double v = to_double(src.tokens[i], src.number);
        if (v < 0.0) throw ParseError(src.number, "generate values must be non-negative");
        g.values.push_back(v);
      }
    };
    take(l, 3);
    while (g.values.size() < static_cast<std::size_t>(n)) {
      if (pos_ >= lines_.size() || !is_number(cur().tokens[0]))
        throw ParseError(l.number, "'generate' expects " + std::to_string(n) + " values, got " +
                                       std::to_string(g.values.size()));
      take(cur(), 0);
      ++pos_;
    }
    push(std::move(g), l.number);
    ++live_;
  }

  static bool is_number(const std::string& tok) {
    double v;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    return ec == std::errc() && ptr == tok.data() + tok.size();
  }

  std::vector<Line> lines_;
  Program& prog_;
  std::size_t pos_ = 0;
  long live_ = 0;
};

}  // namespace

Program parse_program(std::string_view text) {
  Program prog;
  std::vector<std::string> header;
  std::vector<std::size_t> header_lines;
  std::vector<Line> body;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view raw = text.substr(start, end - start);
    start = end + 1;
    ++number;
    const std::string_view t = trim(raw);
    if (t.empty() || t.front() == '#') {
      if (end == text.size()) break;
      continue;
    }
    if (header.size() < 4) {
      header.emplace_back(t);
      header_lines.push_back(number);
    } else {
      body.push_back({number, split(t)});
    }
    if (end == text.size()) break;
  }
  if (header.size() < 4)
    throw ParseError(number, "header needs output dir, tap dir, wavelength and grid size");
  prog.output_dir = header[0];
  prog.tap_dir = header[1];
  prog.wavelength = to_double(header[2], header_lines[2]);
  if (!(prog.wavelength > 0.0)) throw ParseError(header_lines[2], "wavelength must be positive");
  const long grid = to_long(header[3], header_lines[3]);
  if (grid < 2) throw ParseError(header_lines[3], "grid size must be at least 2");
  prog.grid_size = static_cast<std::size_t>(grid);

  BodyParser parser(std::move(body), prog);
  parser.last_line_ = number;
  parser.run();
  return prog;
}

}  // namespace fomul::script
