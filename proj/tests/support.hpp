#pragma once

#include <cmath>
#include <vector>

#include "aldvrp/model.hpp"

namespace testsupport {

using aldvrp::Instance;
using aldvrp::Node;
using aldvrp::SpeedProfile;
using aldvrp::VehicleParams;

// Speed straight from the breakpoint lists, clamped outside them.
inline double lerp_speed(const std::vector<double>& t, const std::vector<double>& v, double x) {
  if (x <= t.front()) return v.front();
  if (x >= t.back()) return v.back();
  std::size_t k = 1;
  while (t[k] < x) ++k;
  const double w = (x - t[k - 1]) / (t[k] - t[k - 1]);
  return v[k - 1] + w * (v[k] - v[k - 1]);
}

// Fine fixed-step integration of distance. Each step adds the trapezoid of
// the speed samples; the last step is interpolated linearly.
inline double stepped_arrival(const std::vector<double>& t, const std::vector<double>& v,
                              double d, double depart, double h) {
  double x = 0.0;
  double now = depart;
  double v0 = lerp_speed(t, v, now);
  for (;;) {
    const double v1 = lerp_speed(t, v, now + h);
    const double dx = 0.5 * h * (v0 + v1);
    if (x + dx >= d) {
      // solve the trapezoid with linearly varying speed within the step
      const double a = (v1 - v0) / h;
      const double rem = d - x;
      const double s = a == 0.0 ? rem / v0 : (-v0 + std::sqrt(v0 * v0 + 2.0 * a * rem)) / a;
      return now + s;
    }
    x += dx;
    now += h;
    v0 = v1;
  }
}

inline double poly_power(double v, double a, double load, const VehicleParams& p) {
  return p.coeff_r * v + p.coeff_s * v * v + p.coeff_c * v * v * v + (p.mass + load) * std::abs(a) * v;
}

// Composite Simpson over [t0, t1] with speed and slope from breakpoint data.
// [t0, t1] must lie inside one linear piece.
inline double simpson_piece(const std::vector<double>& t, const std::vector<double>& v, double t0,
                            double t1, double load, const VehicleParams& p, int m) {
  if (m % 2) ++m;
  const double mid = 0.5 * (t0 + t1);
  double slope = 0.0;
  for (std::size_t k = 1; k < t.size(); ++k) {
    if (mid > t[k - 1] && mid < t[k]) slope = (v[k] - v[k - 1]) / (t[k] - t[k - 1]);
  }
  const double h = (t1 - t0) / m;
  auto f = [&](double x) { return poly_power(lerp_speed(t, v, x), slope, load, p); };
  double s = f(t0) + f(t1);
  for (int j = 1; j < m; ++j) s += (j % 2 ? 4.0 : 2.0) * f(t0 + j * h);
  return s * h / 3.0;
}

inline double simpson_energy(const std::vector<double>& t, const std::vector<double>& v, double t0,
                             double t1, double load, const VehicleParams& p, int steps) {
  std::vector<double> cuts{t0};
  for (double b : t) {
    if (b > t0 && b < t1) cuts.push_back(b);
  }
  cuts.push_back(t1);
  double e = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const int m = std::max(2, static_cast<int>(steps * (cuts[i + 1] - cuts[i]) / (t1 - t0)));
    e += simpson_piece(t, v, cuts[i], cuts[i + 1], load, p, m);
  }
  return e;
}

inline VehicleParams unit_vehicle() {
  VehicleParams p;
  p.mass = 1000.0;
  p.load_capacity = 500.0;
  p.battery_capacity = 1e9;
  p.coeff_r = 1.0;
  p.coeff_s = 0.5;
  p.coeff_c = 0.1;
  p.gamma = 2.0;
  return p;
}

// Customers at the given points (depot at the origin), Euclidean distances,
// one shared profile.
inline Instance point_instance(const std::vector<std::pair<double, double>>& pts,
                               const std::vector<double>& demands, const SpeedProfile& profile,
                               VehicleParams vehicle = unit_vehicle(), int fleet = 1,
                               double horizon = 1e6) {
  const int n = static_cast<int>(pts.size());
  std::vector<Node> nodes{{0, 0.0, 0.0, 0.0}};
  for (int i = 0; i < n; ++i) {
    nodes.push_back({i + 1, pts[static_cast<std::size_t>(i)].first,
                     pts[static_cast<std::size_t>(i)].second, demands[static_cast<std::size_t>(i)]});
  }
  nodes.push_back({n + 1, 0.0, 0.0, 0.0});
  const std::size_t size = nodes.size();
  std::vector<double> dist(size * size, 0.0);
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) {
      if (i == j) continue;
      double d = std::hypot(nodes[i].x - nodes[j].x, nodes[i].y - nodes[j].y);
      if (d == 0.0 && !(i == 0 && j == size - 1) && !(j == 0 && i == size - 1)) d = 1e-3;
      dist[i * size + j] = d;
    }
  }
  return Instance(std::move(nodes), std::move(dist), {profile},
                  std::vector<int>(size * size, 0), vehicle, fleet, horizon);
}

}  // namespace testsupport
