#include "mvclass/gme.hpp"

#include <algorithm>
#include <cmath>

namespace mvclass {

namespace {

double bilinear(const FramePlane& plane, double x, double y) {
  const double max_x = plane.width() - 1;
  const double max_y = plane.height() - 1;
  x = std::clamp(x, 0.0, max_x);
  y = std::clamp(y, 0.0, max_y);
  const int x0 = static_cast<int>(std::floor(x));
  const int y0 = static_cast<int>(std::floor(y));
  const int x1 = std::min(x0 + 1, plane.width() - 1);
  const int y1 = std::min(y0 + 1, plane.height() - 1);
  const double fx = x - x0;
  const double fy = y - y0;
  const double top = (1.0 - fx) * plane.at(x0, y0) + fx * plane.at(x1, y0);
  const double bottom = (1.0 - fx) * plane.at(x0, y1) + fx * plane.at(x1, y1);
  return (1.0 - fy) * top + fy * bottom;
}

}  // namespace

std::size_t OutlierMask::accepted() const {
  return static_cast<std::size_t>(std::count(rejected.begin(), rejected.end(), false));
}

OutlierMask segment_outliers(const FrameFeatures& features, const MvField& labelled, int th_f) {
  OutlierMask mask;
  mask.rule = features.n_class2 + features.n_class3 < th_f ? OutlierRule::class2_and_3
                                                           : OutlierRule::class2_only;
  mask.rejected.reserve(labelled.mbs.size());
  for (const auto& rec : labelled.mbs) {
    bool reject = rec.mb_class == MbClass::unclassified || rec.mb_class == MbClass::two;
    if (mask.rule == OutlierRule::class2_and_3) reject = reject || rec.mb_class == MbClass::three;
    mask.rejected.push_back(reject);
  }
  return mask;
}

OutlierMask accept_all_classified(const MvField& labelled) {
  OutlierMask mask;
  mask.rejected.reserve(labelled.mbs.size());
  for (const auto& rec : labelled.mbs) {
    mask.rejected.push_back(rec.mb_class == MbClass::unclassified);
  }
  return mask;
}

AffineFit<double> fit_affine_ls(const MvField& field, const OutlierMask& mask) {
  const std::size_t n = mask.accepted();
  Eigen::MatrixX2d src(static_cast<Eigen::Index>(n), 2);
  Eigen::MatrixX2d dst(static_cast<Eigen::Index>(n), 2);
  Eigen::Index row = 0;
  for (std::size_t i = 0; i < field.mbs.size(); ++i) {
    if (i >= mask.rejected.size() || mask.rejected[i]) continue;
    const auto& rec = field.mbs[i];
    const double cx = rec.mb_x * kMbSize + (kMbSize - 1) / 2.0;
    const double cy = rec.mb_y * kMbSize + (kMbSize - 1) / 2.0;
    src.row(row) << cx, cy;
    dst.row(row) << cx + rec.final_mv.x, cy + rec.final_mv.y;
    ++row;
  }
  return fit_affine(src.topRows(row), dst.topRows(row));
}

double compensated_mse(const FramePlane& cur, const FramePlane& ref, const Affine& params,
                       const OutlierMask* mask) {
  double total = 0.0;
  long long count = 0;
  for (int y = 0; y < cur.height(); ++y) {
    for (int x = 0; x < cur.width(); ++x) {
      if (mask != nullptr) {
        const auto mb = static_cast<std::size_t>((y / kMbSize) * cur.mb_cols() + x / kMbSize);
        if (mask->rejected[mb]) continue;
      }
      const Eigen::Vector2d p = apply_gmv(params, double(x), double(y));
      const double diff = cur.at(x, y) - bilinear(ref, p.x(), p.y());
      total += diff * diff;
      ++count;
    }
  }
  return count > 0 ? total / static_cast<double>(count) : 0.0;
}

GmeResult gme_pipeline(const FramePlane& cur, const FramePlane& ref, const MvField& labelled,
                       const FrameFeatures& features, int th_f, GmeMode mode) {
  GmeResult result;
  OutlierMask mask = mode == GmeMode::ls6 ? accept_all_classified(labelled)
                                          : segment_outliers(features, labelled, th_f);
  try {
    result.fit = fit_affine_ls(labelled, mask);
  } catch (const RankDeficient&) {
    if (mode == GmeMode::ls6) throw;
    mask = accept_all_classified(labelled);
    result.fit = fit_affine_ls(labelled, mask);
    result.fell_back = true;
  }
  result.accepted = mask.accepted();
  result.mse = compensated_mse(cur, ref, result.fit.params);
  result.mse_background = compensated_mse(cur, ref, result.fit.params, &mask);
  return result;
}

}  // namespace mvclass
