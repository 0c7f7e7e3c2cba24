#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace mrbot {

// Piecewise cubic Hermite interpolant with Fritsch-Carlson monotone
// tangents. Knots must be strictly increasing.
// 
// Interior tangents start from the centred three-point estimate and are set
// to zero where the data has a local extremum. Endpoint tangents use the
// one-sided three-point formula, clamped so they keep the sign of the end
// secant. A final limiting pass scales any (alpha, beta) pair outside the
// radius-3 circle, which guarantees monotonicity on every monotone span.
class MonotoneCubic {
 public:
  struct Sample {
    double value;
    double d1;
    double d2;
  };

  MonotoneCubic() = default;
  MonotoneCubic(std::vector<double> knots, std::vector<double> values);

  // Index of the piece containing x. Nodes belong to the piece on their
  // right except the last one.
  std::size_t piece(double x) const;

  // Evaluate on an explicit piece; x may sit on either end of it.
  Sample evaluate(double x, std::size_t piece) const;
  Sample evaluate(double x) const { return evaluate(x, piece(x)); }

  std::span<const double> knots() const { return knots_; }
  std::span<const double> values() const { return values_; }
  std::span<const double> slopes() const { return slopes_; }

 private:
  std::vector<double> knots_;
  std::vector<double> values_;
  std::vector<double> slopes_;
};

// Tangents only; exposed for tests and for callers building their own
// Hermite pieces.
std::vector<double> fritsch_carlson_slopes(std::span<const double> knots,
                                           std::span<const double> values);

}  // namespace mrbot
