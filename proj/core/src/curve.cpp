#include "netcas/curve.hpp"

#include <algorithm>

#include "netcas/error.hpp"

namespace netcas {

PiecewiseCurve::PiecewiseCurve(std::vector<Knot> knots) : knots_(std::move(knots)) {
  for (std::size_t i = 0; i < knots_.size(); ++i) {
    if (i > 0 && knots_[i].first <= knots_[i - 1].first) {
      throw ConfigError("curve knot x values must be strictly increasing");
    }
    if (knots_[i].second <= 0.0) {
      throw ConfigError("curve values must be positive");
    }
  }
}

double PiecewiseCurve::operator()(double x) const {
  if (knots_.empty()) return 1.0;
  if (x <= knots_.front().first) return knots_.front().second;
  if (x >= knots_.back().first) return knots_.back().second;
  auto it = std::lower_bound(knots_.begin(), knots_.end(), x,
                             [](const Knot& k, double v) { return k.first < v; });
  // it points at the first knot with x_knot >= x, and we are strictly inside
  // the knot range here, so both neighbors exist.
  const Knot& hi = *it;
  const Knot& lo = *(it - 1);
  if (hi.first == x) return hi.second;
  double w = (x - lo.first) / (hi.first - lo.first);
  return lo.second + w * (hi.second - lo.second);
}

}  // namespace netcas
