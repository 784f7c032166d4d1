#pragma once

// Pulse programs: blocks of RF segments and instantaneous z-frame shifts,
// repeated n times. Everything is in flip-angle units (degrees), with the
// RF amplitude normalized to one radian per unit time.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace rfcomp {

enum class Method { fsm, delta_mod };
enum class Selection { heuristic, greedy, gradient };

std::string_view to_string(Method m);
std::string_view to_string(Selection s);
/// Accepts "fsm", "dmod", "delta_mod", "deltamod" (case-insensitive).
Method parse_method(std::string_view text);
Selection parse_selection(std::string_view text);

/// Wrap an angle in degrees into [0, 360).
double normalize_phase_deg(double phase_deg);

/// Hard pulse: rotation by eps * flip about (cos phase, sin phase, 0).
struct RfSegment {
  double flip_deg = 0.0;   // signed, scaled by eps in simulation
  double phase_deg = 0.0;  // [0, 360)

  friend bool operator==(const RfSegment&, const RfSegment&) = default;
};

/// Exact, instantaneous frame rotation about z. Not scaled by eps.
struct ZShift {
  double angle_deg = 0.0;

  friend bool operator==(const ZShift&, const ZShift&) = default;
};

using Event = std::variant<RfSegment, ZShift>;

/// RF segment with the phase normalized into [0, 360).
RfSegment rf(double flip_deg, double phase_deg);

struct Block {
  std::vector<Event> events;
  int reps = 1;
};

struct ProgramMeta {
  std::optional<Method> method;
  double theta_deg = 90.0;
  double delta = 0.5;
};

struct PulseProgram {
  std::vector<Block> blocks;
  ProgramMeta meta;

  /// Number of events after expanding repetitions.
  std::size_t expanded_event_count() const;
};

/// Throws PreconditionError if the program is empty, a block is empty, or reps < 1.
void validate(const PulseProgram& program);

struct DesignRecord {
  Method method = Method::delta_mod;
  double theta_deg = 90.0;
  double delta = 0.5;
  std::vector<double> gammas_deg;
  std::vector<double> alphas_deg;
  Selection selection = Selection::heuristic;
  std::uint64_t seed = 0;
};

/// Throws PreconditionError unless the lists are non-empty, equally long,
/// and gammas are positive and strictly ascending.
void validate(const DesignRecord& design);

struct AmplitudeSplit {
  int reps;
  double per_rep_deg;
};

/// reps = ceil(|alpha| / threshold) (at least 1), per_rep = alpha / reps.
AmplitudeSplit split_amplitude(double alpha_deg, double threshold_deg);

enum class BlockOrder { ascending_gamma, descending_gamma };

/// How a delta-modulation element encodes its z kicks.
enum class DmodForm {
  phase_encoded,  // (g)_0 (2g)_{180 - a/2} (g)_0
  explicit_z,     // (g)_0 Z(+a/2) (2g)_180 Z(-a/2) (g)_0
};

/// Delta-modulation element for one repetition with per-rep amplitude `alpha_deg`.
Block dmod_element(double gamma_deg, double alpha_deg, DmodForm form = DmodForm::phase_encoded);

/// Fourier-synthesis element (g)_0 (b/2)_90 (2g)_180 (b/2)_90 (g)_0.
Block fsm_element(double gamma_deg, double beta_deg);

PulseProgram compile_dmod(const DesignRecord& design, double threshold_deg = 9.0,
                          BlockOrder order = BlockOrder::ascending_gamma,
                          DmodForm form = DmodForm::phase_encoded);

PulseProgram compile_fsm(const DesignRecord& design, double threshold_deg = 9.0,
                         BlockOrder order = BlockOrder::ascending_gamma);

/// Dispatch on design.method.
PulseProgram compile(const DesignRecord& design, double threshold_deg = 9.0,
                     BlockOrder order = BlockOrder::ascending_gamma);

enum class BlockKind { fsm_element, dmod_phase_encoded, dmod_explicit_z, other };

/// Recognize the compiled element shapes (phase tolerance 1e-6 degrees).
BlockKind classify(const Block& block);

/// Per-repetition amplitude carried by a recognized element, in degrees.
/// Returns nullopt for BlockKind::other.
std::optional<double> element_amplitude_deg(const Block& block);

/// Element frequency gamma (the first segment's flip) for recognized elements.
std::optional<double> element_gamma_deg(const Block& block);

enum class FlipConvention {
  /// Sum of |flip| over every RF segment.
  rf_sum,
  /// Tabulated duration proxy: FSM elements count only their x-axis
  /// rotations (4 gamma per rep); delta-modulation elements count 4 gamma
  /// plus the z-kick area |a| per rep. Other blocks count |RF| + |Z|.
  table,
};

/// Total flip angle in radians.
double total_flip_angle(const PulseProgram& program, FlipConvention convention);

/// Same block structure, repetition counts and event kinds, with every flip,
/// shift and (circular) phase within `tol_deg`.
bool programs_match(const PulseProgram& a, const PulseProgram& b, double tol_deg);

}  // namespace rfcomp
