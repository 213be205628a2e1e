#ifndef ROADGRAPH_LOSS_HPP
#define ROADGRAPH_LOSS_HPP

#include <algorithm>
#include <cmath>

#include "roadgraph/raster.hpp"

namespace roadgraph {

/// Weighted sum of binary cross entropy and soft Dice:
///   w_bce * BCE + w_dice * (1 - Dice)
/// with BCE = -mean(t*ln p + (1-t)*ln(1-p)) over predictions clamped to
/// [eps, 1-eps], and Dice = (2*sum(p*t) + eps) / (sum p + sum t + eps).
inline double combined_loss(const RasterGrid& pred, const RasterGrid& target,
                            double w_bce = 0.8, double w_dice = 0.2,
                            double eps = 1e-7) {
    require_same_shape(pred, target, "combined_loss");
    const std::size_t n = pred.size();
    if (n == 0) return 0.0;

    // Compensated sums keep the result independent of traversal chunking.
    double bce_sum = 0.0, bce_c = 0.0;
    double inter = 0.0, psum = 0.0, tsum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double p = std::clamp(static_cast<double>(pred.values[i]), eps, 1.0 - eps);
        const double t = target.values[i];
        const double term = -(t * std::log(p) + (1.0 - t) * std::log(1.0 - p));
        const double y = term - bce_c;
        const double s = bce_sum + y;
        bce_c = (s - bce_sum) - y;
        bce_sum = s;
        inter += p * t;
        psum += p;
        tsum += t;
    }
    const double bce = bce_sum / static_cast<double>(n);
    const double dice = (2.0 * inter + eps) / (psum + tsum + eps);
    return w_bce * bce + w_dice * (1.0 - dice);
}

} // namespace roadgraph

#endif
