#pragma once

#include <optional>
#include <string>
#include <utility>

namespace framelab {

// Result of a frame-bound computation.  `method` records how the numbers were
// obtained: "closed_form" (exact formulas), "grid_extrema" (sampled extrema of
// an auxiliary function), or "oracle" (ratios of truncated frame sums over a
// signal battery).
//
// `lower_certified` is false when the computation could not certify a positive
// lower bound (the reported lower is then clamped at 0).  `witnesses`, when
// present, holds the abscissae (or signal indices) achieving the reported
// extrema.  `truncation_defect` is the largest relative contribution of the
// outermost truncation shell observed; `truncation_flagged` marks reports
// where that defect exceeds 1e-4.
struct frame_report {
  double lower = 0.0;
  double upper = 0.0;
  std::string method;
  bool lower_certified = true;
  std::optional<std::pair<double, double>> witnesses;
  double truncation_defect = 0.0;
  bool truncation_flagged = false;
};

}  // namespace framelab
