#pragma once

#include <array>
#include <optional>

#include "alsel/types.hpp"

namespace alsel {

/// Area split of a predicted box B against a ground truth G.
struct BoxDecomposition {
  double inter = 0.0;       ///< |B n G|
  double b_minus_gt = 0.0;  ///< |B - G|, background taken as target
  double gt_minus_b = 0.0;  ///< |G - B|, target taken as background
  double uni = 0.0;         ///< |B u G| = inter + b_minus_gt + gt_minus_b
};

/// d loss / d (x1, y1, x2, y2) of the predicted box.
using BoxGrad = std::array<double, 4>;

struct LossValue {
  double value = 0.0;
  std::optional<BoxGrad> grad;
};

BoxDecomposition decompose(const BBox& b, const BBox& gt);

/// 1 - |B n G| / |B u G|. Throws DegeneratePair when the union is empty.
LossValue iou_loss(const BBox& b, const BBox& gt, bool with_grad = false);

/// T = I / (I + alpha |B - G| + beta |G - B|). Throws DegeneratePair when the
/// denominator is 0 and InvalidArgument on negative or non-finite weights.
double tversky(const BBox& b, const BBox& gt, double alpha, double beta);

/// 1 - T with optional analytic gradient.
///
/// The intersection is piecewise bilinear in the corners. Where it is not
/// differentiable the gradient is the one-sided derivative taken from inside
/// the overlapping configuration:
///  - an edge of B coinciding with the matching edge of G is treated as the
///    binding edge of the intersection (moving it inward shrinks I);
///  - edges that just touch (zero-width overlap) differentiate the
///    unclamped overlap length, as if the boxes overlapped.
/// Disjoint boxes have I = 0 locally, so the gradient is zero.
LossValue tversky_loss(const BBox& b, const BBox& gt, const LossParams& params, bool with_grad = false);

/// Dice = Tversky at alpha = beta = 0.5; Jaccard = alpha = beta = 1.
LossValue dice_loss(const BBox& b, const BBox& gt, bool with_grad = false);
LossValue jaccard_loss(const BBox& b, const BBox& gt, bool with_grad = false);

/// l_tbb + eta * l_cl. The classification term is an opaque scalar.
double combine_total_loss(double l_tbb, double l_cl, double eta);

}  // namespace alsel
