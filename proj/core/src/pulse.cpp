#include "rfcomp/pulse.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <string>

#include "rfcomp/error.hpp"

namespace rfcomp {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

constexpr double kDeg = std::numbers::pi / 180.0;
constexpr double kPhaseTol = 1e-6;

bool phase_is(double phase_deg, double expected) {
  double d = std::fmod(std::abs(phase_deg - expected), 360.0);
  d = std::min(d, 360.0 - d);
  return d <= kPhaseTol;
}

const RfSegment* as_rf(const Event& e) { return std::get_if<RfSegment>(&e); }
const ZShift* as_z(const Event& e) { return std::get_if<ZShift>(&e); }

}  // namespace

std::string_view to_string(Method m) {
  return m == Method::fsm ? "fsm" : "dmod";
}

std::string_view to_string(Selection s) {
  switch (s) {
    case Selection::heuristic:
      return "heuristic";
    case Selection::greedy:
      return "greedy";
    case Selection::gradient:
      return "gradient";
  }
  return "heuristic";
}

Method parse_method(std::string_view text) {
  const std::string t = lower(text);
  if (t == "fsm") return Method::fsm;
  if (t == "dmod" || t == "delta_mod" || t == "deltamod") return Method::delta_mod;
  throw PreconditionError("unknown method '" + std::string(text) + "'");
}

Selection parse_selection(std::string_view text) {
  const std::string t = lower(text);
  if (t == "heuristic") return Selection::heuristic;
  if (t == "greedy") return Selection::greedy;
  if (t == "gradient") return Selection::gradient;
  throw PreconditionError("unknown selection '" + std::string(text) + "'");
}

double normalize_phase_deg(double phase_deg) {
  double p = std::fmod(phase_deg, 360.0);
  if (p < 0.0) p += 360.0;
  if (p >= 360.0) p = 0.0;
  return p;
}

RfSegment rf(double flip_deg, double phase_deg) {
  return RfSegment{flip_deg, normalize_phase_deg(phase_deg)};
}

std::size_t PulseProgram::expanded_event_count() const {
  std::size_t n = 0;
  for (const Block& b : blocks) n += b.events.size() * static_cast<std::size_t>(b.reps);
  return n;
}

void validate(const PulseProgram& program) {
  if (program.blocks.empty()) {
    throw PreconditionError("pulse program has no blocks");
  }
  for (const Block& b : program.blocks) {
    if (b.events.empty()) throw PreconditionError("pulse block has no events");
    if (b.reps < 1) throw PreconditionError("pulse block repetition count must be >= 1");
    for (const Event& e : b.events) {
      const double v = as_rf(e) ? as_rf(e)->flip_deg : as_z(e)->angle_deg;
      if (!std::isfinite(v)) throw PreconditionError("pulse event angle is not finite");
    }
  }
}

void validate(const DesignRecord& design) {
  if (design.gammas_deg.empty()) {
    throw PreconditionError("design has no frequencies");
  }
  if (design.gammas_deg.size() != design.alphas_deg.size()) {
    throw PreconditionError("design gammas_deg and alphas_deg differ in length");
  }
  for (std::size_t i = 0; i < design.gammas_deg.size(); ++i) {
    if (!(design.gammas_deg[i] > 0.0)) {
      throw PreconditionError("design frequencies must be positive");
    }
    if (i > 0 && !(design.gammas_deg[i] > design.gammas_deg[i - 1])) {
      throw PreconditionError("design frequencies must be strictly ascending");
    }
    if (!std::isfinite(design.alphas_deg[i])) {
      throw PreconditionError("design amplitude is not finite");
    }
  }
  if (!(design.delta > 0.0 && design.delta < 1.0)) {
    throw PreconditionError("design delta must lie in (0, 1)");
  }
}

AmplitudeSplit split_amplitude(double alpha_deg, double threshold_deg) {
  if (!(threshold_deg > 0.0)) {
    throw PreconditionError("split_amplitude: threshold must be positive");
  }
  if (!std::isfinite(alpha_deg)) {
    throw PreconditionError("split_amplitude: amplitude is not finite");
  }
  const int reps = std::max(1, static_cast<int>(std::ceil(std::abs(alpha_deg) / threshold_deg)));
  return {reps, alpha_deg / reps};
}

Block dmod_element(double gamma_deg, double alpha_deg, DmodForm form) {
  Block b;
  if (form == DmodForm::phase_encoded) {
    b.events = {rf(gamma_deg, 0.0), rf(2.0 * gamma_deg, 180.0 - 0.5 * alpha_deg),
                rf(gamma_deg, 0.0)};
  } else {
    b.events = {rf(gamma_deg, 0.0), ZShift{0.5 * alpha_deg}, rf(2.0 * gamma_deg, 180.0),
                ZShift{-0.5 * alpha_deg}, rf(gamma_deg, 0.0)};
  }
  return b;
}

Block fsm_element(double gamma_deg, double beta_deg) {
  Block b;
  b.events = {rf(gamma_deg, 0.0), rf(0.5 * beta_deg, 90.0), rf(2.0 * gamma_deg, 180.0),
              rf(0.5 * beta_deg, 90.0), rf(gamma_deg, 0.0)};
  return b;
}

namespace {

template <class MakeElement>
PulseProgram compile_with(const DesignRecord& design, double threshold_deg, BlockOrder order,
                          MakeElement&& make) {
  validate(design);
  if (!(threshold_deg > 0.0)) {
    throw PreconditionError("compile: threshold must be positive");
  }
  PulseProgram program;
  program.meta = ProgramMeta{design.method, design.theta_deg, design.delta};
  for (std::size_t k = 0; k < design.gammas_deg.size(); ++k) {
    const AmplitudeSplit split = split_amplitude(design.alphas_deg[k], threshold_deg);
    Block b = make(design.gammas_deg[k], split.per_rep_deg);
    b.reps = split.reps;
    program.blocks.push_back(std::move(b));
  }
  if (order == BlockOrder::descending_gamma) {
    std::reverse(program.blocks.begin(), program.blocks.end());
  }
  return program;
}

}  // namespace

PulseProgram compile_dmod(const DesignRecord& design, double threshold_deg, BlockOrder order,
                          DmodForm form) {
  if (design.method != Method::delta_mod) {
    throw PreconditionError("compile_dmod: design method is not dmod");
  }
  return compile_with(design, threshold_deg, order,
                      [form](double g, double a) { return dmod_element(g, a, form); });
}

PulseProgram compile_fsm(const DesignRecord& design, double threshold_deg, BlockOrder order) {
  if (design.method != Method::fsm) {
    throw PreconditionError("compile_fsm: design method is not fsm");
  }
  return compile_with(design, threshold_deg, order,
                      [](double g, double b) { return fsm_element(g, b); });
}

PulseProgram compile(const DesignRecord& design, double threshold_deg, BlockOrder order) {
  return design.method == Method::fsm ? compile_fsm(design, threshold_deg, order)
                                      : compile_dmod(design, threshold_deg, order);
}

BlockKind classify(const Block& block) {
  const auto& ev = block.events;
  auto rf_at = [&](std::size_t i) { return as_rf(ev[i]); };
  if (ev.size() == 5 && rf_at(0) && rf_at(1) && rf_at(2) && rf_at(3) && rf_at(4) &&
      phase_is(rf_at(0)->phase_deg, 0.0) && phase_is(rf_at(1)->phase_deg, 90.0) &&
      phase_is(rf_at(2)->phase_deg, 180.0) && phase_is(rf_at(3)->phase_deg, 90.0) &&
      phase_is(rf_at(4)->phase_deg, 0.0)) {
    return BlockKind::fsm_element;
  }
  if (ev.size() == 3 && rf_at(0) && rf_at(1) && rf_at(2) && phase_is(rf_at(0)->phase_deg, 0.0) &&
      phase_is(rf_at(2)->phase_deg, 0.0)) {
    return BlockKind::dmod_phase_encoded;
  }
  if (ev.size() == 5 && rf_at(0) && as_z(ev[1]) && rf_at(2) && as_z(ev[3]) && rf_at(4) &&
      phase_is(rf_at(0)->phase_deg, 0.0) && phase_is(rf_at(2)->phase_deg, 180.0) &&
      phase_is(rf_at(4)->phase_deg, 0.0)) {
    return BlockKind::dmod_explicit_z;
  }
  return BlockKind::other;
}

std::optional<double> element_amplitude_deg(const Block& block) {
  switch (classify(block)) {
    case BlockKind::fsm_element:
      return 2.0 * std::get<RfSegment>(block.events[1]).flip_deg;
    case BlockKind::dmod_phase_encoded: {
      // Phase 180 - a/2 folded into (-180, 180] around 180.
      double half = 180.0 - std::get<RfSegment>(block.events[1]).phase_deg;
      if (half <= -180.0) half += 360.0;
      return 2.0 * half;
    }
    case BlockKind::dmod_explicit_z:
      return 2.0 * std::get<ZShift>(block.events[1]).angle_deg;
    case BlockKind::other:
      break;
  }
  return std::nullopt;
}

std::optional<double> element_gamma_deg(const Block& block) {
  if (classify(block) == BlockKind::other) return std::nullopt;
  return std::get<RfSegment>(block.events[0]).flip_deg;
}

double total_flip_angle(const PulseProgram& program, FlipConvention convention) {
  double total_deg = 0.0;
  for (const Block& b : program.blocks) {
    double per_rep = 0.0;
    const BlockKind kind =
        convention == FlipConvention::rf_sum ? BlockKind::other : classify(b);
    for (std::size_t i = 0; i < b.events.size(); ++i) {
      if (const RfSegment* s = as_rf(b.events[i])) {
        if (kind == BlockKind::fsm_element && (i == 1 || i == 3)) continue;
        per_rep += std::abs(s->flip_deg);
      } else if (convention == FlipConvention::table) {
        per_rep += std::abs(as_z(b.events[i])->angle_deg);
      }
    }
    if (kind == BlockKind::dmod_phase_encoded) {
      per_rep += std::abs(*element_amplitude_deg(b));
    }
    total_deg += per_rep * b.reps;
  }
  return total_deg * kDeg;
}

bool programs_match(const PulseProgram& a, const PulseProgram& b, double tol_deg) {
  if (a.blocks.size() != b.blocks.size()) return false;
  for (std::size_t i = 0; i < a.blocks.size(); ++i) {
    const Block& x = a.blocks[i];
    const Block& y = b.blocks[i];
    if (x.reps != y.reps || x.events.size() != y.events.size()) return false;
    for (std::size_t k = 0; k < x.events.size(); ++k) {
      if (x.events[k].index() != y.events[k].index()) return false;
      if (const RfSegment* s = as_rf(x.events[k])) {
        const RfSegment* t = as_rf(y.events[k]);
        const double dphi = std::abs(normalize_phase_deg(s->phase_deg - t->phase_deg + 180.0) - 180.0);
        if (std::abs(s->flip_deg - t->flip_deg) > tol_deg || dphi > tol_deg) return false;
      } else if (std::abs(as_z(x.events[k])->angle_deg - as_z(y.events[k])->angle_deg) > tol_deg) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace rfcomp
