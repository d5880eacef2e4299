#pragma once

#include <utility>
#include <vector>

namespace netcas {

// Piecewise-linear curve with clamped ends: queries left of the first knot
// return the first value, right of the last knot the last value. Knot x
// coordinates must be strictly increasing and values positive.
class PiecewiseCurve {
 public:
  using Knot = std::pair<double, double>;

  PiecewiseCurve() = default;  // empty curve evaluates to 1.0 (identity)
  explicit PiecewiseCurve(std::vector<Knot> knots);

  double operator()(double x) const;
  bool empty() const { return knots_.empty(); }
  const std::vector<Knot>& knots() const { return knots_; }

 private:
  std::vector<Knot> knots_;
};

// Convenience for scenario defaults: a constant-1 multiplier.
inline PiecewiseCurve identity_curve() { return PiecewiseCurve{}; }

}  // namespace netcas
