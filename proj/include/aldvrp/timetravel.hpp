#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "aldvrp/model.hpp"

namespace aldvrp {

inline constexpr double kNoHorizon = std::numeric_limits<double>::infinity();

/// Walks the profile pieces covered when driving `distance` km from `depart`.
///
/// `visit(t_start, t_end, v_start, v_end, accel)` is called once per piece
/// actually driven (zero-speed spans included). Returns the arrival time, or
/// nullopt when the distance cannot be covered by `horizon`. Distance inside
/// a piece is quadratic in time, so the final partial piece is solved with
/// the (cancellation-free) quadratic formula.
template <typename Visitor>
std::optional<double> traverse(const SpeedProfile& profile, double distance, double depart,
                               double horizon, Visitor&& visit) {
  if (depart > horizon) return std::nullopt;
  if (!(distance > 0.0)) return depart;
  double t = depart;
  double remaining = distance;
  for (std::size_t k = profile.piece_index(t);; ++k) {
    const SpeedProfile::Piece p = profile.piece(k);
    const double a = p.accel;
    const double v0 = a == 0.0 ? p.v_start : std::max(0.0, p.v_start + a * (t - p.t_start));
    if (a == 0.0) {
      if (v0 > 0.0) {
        const double need = remaining / v0;
        if (t + need <= p.t_end) {
          const double arrival = t + need;
          if (arrival > horizon) return std::nullopt;
          visit(t, arrival, v0, v0, 0.0);
          return arrival;
        }
        remaining -= v0 * (p.t_end - t);
      } else if (p.t_end > horizon || std::isinf(p.t_end)) {
        return std::nullopt;  // stopped for good
      }
      visit(t, p.t_end, v0, v0, 0.0);
    } else {
      const double dt = p.t_end - t;
      const double v1 = std::max(0.0, v0 + a * dt);
      const double cover = dt * (v0 + v1) / 2.0;
      if (cover >= remaining) {
        const double disc = std::max(0.0, v0 * v0 + 2.0 * a * remaining);
        const double step = std::min(dt, 2.0 * remaining / (v0 + std::sqrt(disc)));
        const double arrival = t + step;
        if (arrival > horizon) return std::nullopt;
        visit(t, arrival, v0, std::max(0.0, v0 + a * step), a);
        return arrival;
      }
      remaining -= cover;
      visit(t, p.t_end, v0, v1, a);
    }
    t = p.t_end;
    if (t > horizon) return std::nullopt;
  }
}

/// Earliest time at which `distance` km have been driven after `depart`.
/// Throws HorizonExceeded when that time is later than `horizon`.
double arrival_time(const SpeedProfile& profile, double distance, double depart,
                    double horizon = kNoHorizon);

using ArrivalFunction = std::function<double(double)>;

struct FifoViolation {
  double earlier_departure = 0.0;
  double later_departure = 0.0;
  double earlier_arrival = 0.0;
  double later_arrival = 0.0;
};

/// Consecutive grid departures whose arrivals come out in inverted order.
/// The grid must be sorted ascending.
std::vector<FifoViolation> validate_fifo(const ArrivalFunction& arrival,
                                         std::span<const double> grid);
std::vector<FifoViolation> validate_fifo(const SpeedProfile& profile, double distance,
                                         std::span<const double> grid,
                                         double horizon = kNoHorizon);

/// travel_time(s) ~= theta*s^2 + phi*s + eta for departures s in
/// [t_start, t_end], interpolating the exact travel time at both ends and
/// the midpoint. `max_abs_error` is sampled on 11 evenly spaced departures.
struct TravelTimeQuadratic {
  std::size_t interval = 0;
  double t_start = 0.0;
  double t_end = 0.0;
  double theta = 0.0;
  double phi = 0.0;
  double eta = 0.0;
  double max_abs_error = 0.0;

  double operator()(double depart) const { return (theta * depart + phi) * depart + eta; }
};

/// Fit over profile interval m = [t_{m-1}, t_m], 1 <= m <= interval_count().
TravelTimeQuadratic fit_quadratic(const SpeedProfile& profile, double distance,
                                  std::size_t interval, double horizon = kNoHorizon);
/// Fit over an explicit departure window; throws on zero or negative width.
TravelTimeQuadratic fit_quadratic(const SpeedProfile& profile, double distance,
                                  double t_start, double t_end, double horizon = kNoHorizon);

}  // namespace aldvrp
