#include "rfcomp/pulse_text.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "rfcomp/error.hpp"

namespace rfcomp {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  PulseProgram program() {
    PulseProgram p;
    skip_ws();
    if (at_end()) fail("empty pulse program");
    while (!at_end()) {
      p.blocks.push_back(block());
      skip_ws();
    }
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  bool at_end() const { return pos_ >= s_.size(); }

  void skip_ws() {
    while (!at_end() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\r' ||
                         s_[pos_] == '\n')) {
      ++pos_;
    }
  }

  bool accept(std::string_view token) {
    skip_ws();
    if (s_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view token, const char* what) {
    if (!accept(token)) fail(std::string("expected ") + what);
  }

  bool peek(char c) {
    skip_ws();
    return !at_end() && s_[pos_] == c;
  }

  double decimal() {
    skip_ws();
    const std::size_t start = pos_;
    bool negative = false;
    if (accept("-") || accept("\xE2\x88\x92")) {
      negative = true;
    } else {
      accept("+");
    }
    skip_ws();
    const std::size_t digits = pos_;
    bool seen_digit = false;
    bool seen_dot = false;
    while (!at_end()) {
      const char c = s_[pos_];
      if (c >= '0' && c <= '9') {
        seen_digit = true;
      } else if (c == '.' && !seen_dot) {
        seen_dot = true;
      } else {
        break;
      }
      ++pos_;
    }
    if (!seen_digit) {
      pos_ = start;
      fail("expected a decimal number");
    }
    std::string buf(s_.substr(digits, pos_ - digits));
    if (buf.front() == '.') buf.insert(buf.begin(), '0');
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc() || ptr != buf.data() + buf.size()) {
      pos_ = start;
      fail("malformed decimal number");
    }
    return negative ? -value : value;
  }

  int integer() {
    skip_ws();
    const std::size_t start = pos_;
    while (!at_end() && s_[pos_] >= '0' && s_[pos_] <= '9') ++pos_;
    if (pos_ == start) fail("missing repetition count");
    int value = 0;
    const auto [ptr, ec] = std::from_chars(s_.data() + start, s_.data() + pos_, value);
    if (ec != std::errc() || value < 1) {
      pos_ = start;
      fail("repetition count must be a positive integer");
    }
    return value;
  }

  Event segment() {
    expect("(", "'('");
    const double angle = decimal();
    expect(")", "')'");
    expect("_", "'_' before the phase");
    if (accept("{")) {
      if (accept("z")) {
        expect("}", "'}'");
        return ZShift{angle};
      }
      const double phase = decimal();
      expect("}", "'}'");
      return rf(angle, phase);
    }
    if (accept("z")) return ZShift{angle};
    return rf(angle, decimal());
  }

  bool has_marker() {
    skip_ws();
    const std::string_view rest = s_.substr(pos_);
    return rest.starts_with("\xC3\x97") || rest.starts_with("\\times") ||
           rest.starts_with("x") || rest.starts_with("X");
  }

  void repetition_marker() {
    if (accept("\xC3\x97") || accept("\\times") || accept("x") || accept("X")) return;
    fail("missing repetition count");
  }

  Block block() {
    expect("[", "'[' to open a block");
    Block b;
    while (peek('(')) b.events.push_back(segment());
    if (b.events.empty()) fail("block has no segments");
    if (!accept("]")) fail(at_end() ? "unbalanced brackets" : "expected ']' to close block");
    const bool caret = accept("^");
    if (accept("{")) {
      repetition_marker();
      b.reps = integer();
      expect("}", "'}' after repetition count");
    } else if (caret || has_marker()) {
      repetition_marker();
      b.reps = integer();
    }
    return b;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

std::string format_phase(double phase_deg) {
  double p = std::round(normalize_phase_deg(phase_deg) * 10.0) / 10.0;
  if (p >= 360.0) p -= 360.0;
  char buf[32];
  if (p == std::floor(p)) {
    std::snprintf(buf, sizeof buf, "%d", static_cast<int>(p));
  } else {
    std::snprintf(buf, sizeof buf, "%.1f", p);
  }
  std::string s(buf);
  return s.size() == 1 ? s : "{" + s + "}";
}

}  // namespace

PulseProgram parse_program(std::string_view text) {
  return Parser(text).program();
}

std::string format_deg(double deg) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.1f", deg);
  std::string s(buf);
  if (s == "-0.0") s = "0.0";
  return s;
}

std::string serialize_block(const Block& block) {
  std::string out = "[";
  for (const Event& e : block.events) {
    if (const auto* seg = std::get_if<RfSegment>(&e)) {
      out += "(" + format_deg(seg->flip_deg) + ")_" + format_phase(seg->phase_deg);
    } else {
      out += "(" + format_deg(std::get<ZShift>(e).angle_deg) + ")_z";
    }
  }
  out += "]^{\xC3\x97" + std::to_string(block.reps) + "}";
  return out;
}

std::string serialize_program(const PulseProgram& program) {
  std::string out;
  for (const Block& b : program.blocks) out += serialize_block(b);
  return out;
}

}  // namespace rfcomp
