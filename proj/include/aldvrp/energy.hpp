#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "aldvrp/model.hpp"
#include "aldvrp/timetravel.hpp"

namespace aldvrp {

enum class Phase { Accel, Cruise, Decel, Idle };

std::string_view phase_name(Phase phase);
Phase classify_phase(double speed, double accel);

/// Instantaneous power r*v + s*v^2 + c*v^3 + (M + L)*|a|*v.
double power(double speed, double accel, double load, const VehicleParams& params);

struct SegmentEnergy {
  double t_start = 0.0;
  double t_end = 0.0;
  double v_start = 0.0;
  double v_end = 0.0;
  double accel = 0.0;
  double load = 0.0;
  Phase phase = Phase::Idle;
  double energy = 0.0;
};

/// Exact integral of power over [t_start, t_end] with constant acceleration.
/// Throws ValidationError("invalid segment") if the speed would turn negative.
SegmentEnergy segment_energy(double t_start, double t_end, double v_start, double accel,
                             double load, const VehicleParams& params);

/// Selects how arc energy is integrated: the exact cubic closed form, or the
/// midpoint/gamma expressions of the MINLP formulation (parity reporting).
enum class EnergyMode { Exact, MinlpApprox };

/// Energy is affine in payload: drive + (M + L) * inertia, where drive is the
/// r/s/c part and inertia is the integral of |a|*v.
struct EnergyTerms {
  double drive = 0.0;
  double inertia = 0.0;

  double at_load(double mass, double load) const { return drive + (mass + load) * inertia; }
  EnergyTerms& operator+=(const EnergyTerms& o) {
    drive += o.drive;
    inertia += o.inertia;
    return *this;
  }
};

/// Load-independent summary of one arc traversal.
struct ArcTraversal {
  double arrival = 0.0;
  EnergyTerms exact;
  EnergyTerms approx;  // filled only when requested

  const EnergyTerms& terms(EnergyMode mode) const {
    return mode == EnergyMode::Exact ? exact : approx;
  }
};

/// Non-throwing traversal used on hot paths; nullopt if the horizon is hit.
std::optional<ArcTraversal> traverse_arc(const SpeedProfile& profile, double distance,
                                         double depart, const VehicleParams& params,
                                         double horizon, bool with_approx = false);

struct ArcEnergy {
  double energy = 0.0;
  double arrival = 0.0;
};

/// Energy of driving `distance` from `depart` with constant payload `load`,
/// summed over the profile pieces crossed. Throws HorizonExceeded.
ArcEnergy arc_energy(const SpeedProfile& profile, double distance, double depart, double load,
                     const VehicleParams& params, double horizon = kNoHorizon,
                     EnergyMode mode = EnergyMode::Exact);

/// Per-piece breakdown of the same traversal.
std::vector<SegmentEnergy> arc_segments(const SpeedProfile& profile, double distance,
                                        double depart, double load,
                                        const VehicleParams& params,
                                        double horizon = kNoHorizon);

}  // namespace aldvrp
