#include "alsel/boxloss.hpp"

#include <algorithm>
#include <cmath>

namespace alsel {

namespace {

/// Overlap along one axis of [b1, b2] against [g1, g2], plus the one-sided
/// derivatives of the overlap length w.r.t. b1 and b2.
struct AxisOverlap {
  double len = 0.0;
  double d_b1 = 0.0;
  double d_b2 = 0.0;
};

AxisOverlap axis_overlap(double b1, double b2, double g1, double g2) {
  const double raw = std::min(b2, g2) - std::max(b1, g1);
  AxisOverlap out;
  out.len = std::max(0.0, raw);
  if (raw >= 0.0) {
    out.d_b1 = b1 >= g1 ? -1.0 : 0.0;
    out.d_b2 = b2 <= g2 ? 1.0 : 0.0;
  }
  return out;
}

void check_weight(double w, const char* name) {
  if (!std::isfinite(w) || w < 0.0) {
    throw Error(ErrorCode::InvalidArgument, std::string(name) + " must be finite and non-negative");
  }
}

/// Loss 1 - I / (I + alpha (A_b - I) + beta (A_g - I)) and its gradient.
LossValue weighted_overlap_loss(const BBox& b, const BBox& gt, double alpha, double beta, bool with_grad) {
  const auto x = axis_overlap(b.x1(), b.x2(), gt.x1(), gt.x2());
  const auto y = axis_overlap(b.y1(), b.y2(), gt.y1(), gt.y2());
  const double inter = x.len * y.len;
  const double b_minus = b.area() - inter;
  const double g_minus = gt.area() - inter;
  const double denom = inter + (alpha * b_minus + beta * g_minus);
  if (!(denom > 0.0)) {
    throw Error(ErrorCode::DegeneratePair, "overlap denominator is zero");
  }
  LossValue out;
  out.value = 1.0 - inter / denom;
  if (!with_grad) return out;

  // dI/d(x1, y1, x2, y2) and dA_b/d(x1, y1, x2, y2).
  const BoxGrad d_inter{x.d_b1 * y.len, y.d_b1 * x.len, x.d_b2 * y.len, y.d_b2 * x.len};
  const BoxGrad d_area{-b.height(), -b.width(), b.height(), b.width()};
  const double c = 1.0 - alpha - beta;

  BoxGrad g{};
  for (std::size_t k = 0; k < 4; ++k) {
    const double d_denom = c * d_inter[k] + alpha * d_area[k];
    g[k] = -(d_inter[k] * denom - inter * d_denom) / (denom * denom);
  }
  out.grad = g;
  return out;
}

}  // namespace

BoxDecomposition decompose(const BBox& b, const BBox& gt) {
  const double w = std::max(0.0, std::min(b.x2(), gt.x2()) - std::max(b.x1(), gt.x1()));
  const double h = std::max(0.0, std::min(b.y2(), gt.y2()) - std::max(b.y1(), gt.y1()));
  BoxDecomposition out;
  out.inter = w * h;
  out.b_minus_gt = b.area() - out.inter;
  out.gt_minus_b = gt.area() - out.inter;
  out.uni = out.inter + out.b_minus_gt + out.gt_minus_b;
  return out;
}

LossValue iou_loss(const BBox& b, const BBox& gt, bool with_grad) {
  const auto parts = decompose(b, gt);
  if (!(parts.uni > 0.0)) {
    throw Error(ErrorCode::DegeneratePair, "both boxes have zero area");
  }
  LossValue out;
  out.value = 1.0 - parts.inter / parts.uni;
  if (with_grad) {
    out.grad = weighted_overlap_loss(b, gt, 1.0, 1.0, true).grad;
  }
  return out;
}

double tversky(const BBox& b, const BBox& gt, double alpha, double beta) {
  check_weight(alpha, "alpha");
  check_weight(beta, "beta");
  const auto parts = decompose(b, gt);
  // Grouping the weighted terms makes swap(b, gt) <-> swap(alpha, beta) exact.
  const double denom = parts.inter + (alpha * parts.b_minus_gt + beta * parts.gt_minus_b);
  if (!(denom > 0.0)) {
    throw Error(ErrorCode::DegeneratePair, "Tversky denominator is zero");
  }
  return parts.inter / denom;
}

LossValue tversky_loss(const BBox& b, const BBox& gt, const LossParams& params, bool with_grad) {
  LossValue out;
  out.value = 1.0 - tversky(b, gt, params.alpha, params.beta);
  if (with_grad) {
    out.grad = weighted_overlap_loss(b, gt, params.alpha, params.beta, true).grad;
  }
  return out;
}

LossValue dice_loss(const BBox& b, const BBox& gt, bool with_grad) {
  return tversky_loss(b, gt, LossParams{0.5, 0.5, 0.0}, with_grad);
}

LossValue jaccard_loss(const BBox& b, const BBox& gt, bool with_grad) {
  return tversky_loss(b, gt, LossParams{1.0, 1.0, 0.0}, with_grad);
}

double combine_total_loss(double l_tbb, double l_cl, double eta) {
  if (!std::isfinite(l_tbb) || !std::isfinite(l_cl) || !std::isfinite(eta) || l_tbb < 0.0 || l_cl < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "loss terms must be finite and non-negative");
  }
  return l_tbb + eta * l_cl;
}

}  // namespace alsel
