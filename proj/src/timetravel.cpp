#include "aldvrp/timetravel.hpp"

#include <algorithm>

#include "aldvrp/errors.hpp"

namespace aldvrp {

double arrival_time(const SpeedProfile& profile, double distance, double depart,
                    double horizon) {
  if (!(depart >= 0.0)) throw ValidationError("departure time must be >= 0");
  if (distance < 0.0) throw ValidationError("distance must be >= 0");
  auto arrival = traverse(profile, distance, depart, horizon,
                          [](double, double, double, double, double) {});
  if (!arrival) throw HorizonExceeded();
  return *arrival;
}

std::vector<FifoViolation> validate_fifo(const ArrivalFunction& arrival,
                                         std::span<const double> grid) {
  std::vector<FifoViolation> violations;
  if (grid.size() < 2) return violations;
  double prev_depart = grid[0];
  double prev_arrival = arrival(prev_depart);
  for (std::size_t k = 1; k < grid.size(); ++k) {
    const double depart = grid[k];
    const double arr = arrival(depart);
    if (arr < prev_arrival) violations.push_back({prev_depart, depart, prev_arrival, arr});
    prev_depart = depart;
    prev_arrival = arr;
  }
  return violations;
}

std::vector<FifoViolation> validate_fifo(const SpeedProfile& profile, double distance,
                                         std::span<const double> grid, double horizon) {
  return validate_fifo(
      [&](double depart) { return arrival_time(profile, distance, depart, horizon); }, grid);
}

TravelTimeQuadratic fit_quadratic(const SpeedProfile& profile, double distance,
                                  std::size_t interval, double horizon) {
  if (interval == 0 || interval > profile.interval_count()) {
    throw ValidationError("profile interval does not exist");
  }
  auto fit = fit_quadratic(profile, distance, profile.breakpoints()[interval - 1],
                           profile.breakpoints()[interval], horizon);
  fit.interval = interval;
  return fit;
}

TravelTimeQuadratic fit_quadratic(const SpeedProfile& profile, double distance,
                                  double t_start, double t_end, double horizon) {
  if (!(t_end > t_start)) throw ValidationError("degenerate interval: zero width");
  auto travel = [&](double s) { return arrival_time(profile, distance, s, horizon) - s; };

  // Newton divided differences on (t0, y0), (tm, ym), (t1, y1), expanded
  // into monomial coefficients in absolute departure time.
  const double t0 = t_start;
  const double t1 = t_end;
  const double tm = 0.5 * (t0 + t1);
  const double y0 = travel(t0);
  const double ym = travel(tm);
  const double y1 = travel(t1);
  const double d01 = (ym - y0) / (tm - t0);
  const double d12 = (y1 - ym) / (t1 - tm);
  const double d012 = (d12 - d01) / (t1 - t0);

  TravelTimeQuadratic fit;
  fit.t_start = t0;
  fit.t_end = t1;
  fit.theta = d012;
  fit.phi = d01 - d012 * (t0 + tm);
  fit.eta = y0 - d01 * t0 + d012 * t0 * tm;

  constexpr int kSamples = 11;
  for (int k = 0; k < kSamples; ++k) {
    const double s = t0 + (t1 - t0) * k / (kSamples - 1);
    fit.max_abs_error = std::max(fit.max_abs_error, std::abs(fit(s) - travel(s)));
  }
  return fit;
}

}  // namespace aldvrp
