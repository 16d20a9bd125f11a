#include "aldvrp/energy.hpp"

#include <cmath>

#include "aldvrp/errors.hpp"

namespace aldvrp {

namespace {

// Integrals of v, v^2, v^3 over a span where v moves linearly from v0 to v1.
// Written in v0/v1 so that every term is non-negative.
struct SpeedMoments {
  double m1, m2, m3;
};

SpeedMoments moments(double dt, double v0, double v1) {
  return {dt * (v0 + v1) / 2.0, dt * (v0 * v0 + v0 * v1 + v1 * v1) / 3.0,
          dt * (v0 + v1) * (v0 * v0 + v1 * v1) / 4.0};
}

EnergyTerms exact_terms(double dt, double v0, double v1, double a, const VehicleParams& p) {
  const SpeedMoments m = moments(dt, v0, v1);
  return {p.coeff_r * m.m1 + p.coeff_s * m.m2 + p.coeff_c * m.m3, std::abs(a) * m.m1};
}

// Per-phase expressions of the MINLP energy recursions, applied piecewise:
// acceleration and cruising charge [gamma + |a|(M+L)] at the midpoint speed,
// deceleration charges gamma at the entry speed, idling is free.
EnergyTerms approx_terms(double dt, double v0, double v1, double a, const VehicleParams& p) {
  const double v_mid = (v0 + v1) / 2.0;
  switch (classify_phase(v0, a)) {
    case Phase::Accel:
    case Phase::Cruise:
      return {p.gamma * v_mid * dt, std::abs(a) * v_mid * dt};
    case Phase::Decel:
      return {p.gamma * v0 * dt, 0.0};
    case Phase::Idle:
      break;
  }
  return {};
}

}  // namespace

std::string_view phase_name(Phase phase) {
  switch (phase) {
    case Phase::Accel: return "accel";
    case Phase::Cruise: return "cruise";
    case Phase::Decel: return "decel";
    case Phase::Idle: return "idle";
  }
  return "?";
}

Phase classify_phase(double speed, double accel) {
  if (accel > 0.0) return Phase::Accel;
  if (accel < 0.0) return Phase::Decel;
  return speed > 0.0 ? Phase::Cruise : Phase::Idle;
}

double power(double speed, double accel, double load, const VehicleParams& p) {
  const double v = speed;
  return ((p.coeff_c * v + p.coeff_s) * v + p.coeff_r) * v +
         (p.mass + load) * std::abs(accel) * v;
}

SegmentEnergy segment_energy(double t_start, double t_end, double v_start, double accel,
                             double load, const VehicleParams& params) {
  if (!(t_end >= t_start)) throw ValidationError("invalid segment: t_end < t_start");
  if (v_start < 0.0 || load < 0.0) throw ValidationError("invalid segment: negative speed or load");
  const double dt = t_end - t_start;
  double v_end = v_start + accel * dt;
  if (v_end < 0.0) {
    if (v_end < -1e-12 * std::max(1.0, v_start)) throw ValidationError("invalid segment");
    v_end = 0.0;
  }
  SegmentEnergy seg;
  seg.t_start = t_start;
  seg.t_end = t_end;
  seg.v_start = v_start;
  seg.v_end = v_end;
  seg.accel = accel;
  seg.load = load;
  seg.phase = classify_phase(v_start, accel);
  seg.energy = exact_terms(dt, v_start, v_end, accel, params).at_load(params.mass, load);
  return seg;
}

std::optional<ArcTraversal> traverse_arc(const SpeedProfile& profile, double distance,
                                         double depart, const VehicleParams& params,
                                         double horizon, bool with_approx) {
  ArcTraversal out;
  auto arrival = traverse(profile, distance, depart, horizon,
                          [&](double t0, double t1, double v0, double v1, double a) {
                            const double dt = t1 - t0;
                            out.exact += exact_terms(dt, v0, v1, a, params);
                            if (with_approx) out.approx += approx_terms(dt, v0, v1, a, params);
                          });
  if (!arrival) return std::nullopt;
  out.arrival = *arrival;
  return out;
}

ArcEnergy arc_energy(const SpeedProfile& profile, double distance, double depart, double load,
                     const VehicleParams& params, double horizon, EnergyMode mode) {
  if (!(depart >= 0.0)) throw ValidationError("departure time must be >= 0");
  if (load < 0.0) throw ValidationError("load must be >= 0");
  auto trav = traverse_arc(profile, distance, depart, params, horizon,
                           mode == EnergyMode::MinlpApprox);
  if (!trav) throw HorizonExceeded();
  return {trav->terms(mode).at_load(params.mass, load), trav->arrival};
}

std::vector<SegmentEnergy> arc_segments(const SpeedProfile& profile, double distance,
                                        double depart, double load,
                                        const VehicleParams& params, double horizon) {
  std::vector<SegmentEnergy> segs;
  auto arrival = traverse(profile, distance, depart, horizon,
                          [&](double t0, double t1, double v0, double, double a) {
                            segs.push_back(segment_energy(t0, t1, v0, a, load, params));
                          });
  if (!arrival) throw HorizonExceeded();
  return segs;
}

}  // namespace aldvrp
