#pragma once

#include "mvclass/affine.hpp"
#include "mvclass/classifier.hpp"
#include "mvclass/frame.hpp"
#include "mvclass/mv_field.hpp"

#include <optional>
#include <vector>

namespace mvclass {

using Affine = AffineParams<double>;

enum class OutlierRule { class2_only, class2_and_3, none };

struct OutlierMask {
  std::vector<bool> rejected;  // per MB, raster order
  OutlierRule rule = OutlierRule::none;

  std::size_t accepted() const;
};

// Irregular-motion segmentation from MB classes: rejects Class 2 and 3 when
// together they number fewer than th_f, Class 2 alone otherwise. Unclassified
// MBs are always rejected.
OutlierMask segment_outliers(const FrameFeatures& features, const MvField& labelled, int th_f);

// Rejects only unclassified MBs.
OutlierMask accept_all_classified(const MvField& labelled);

// Default irregular-motion threshold: half the MB count.
inline int default_th_f(int n_mb) { return n_mb / 2; }

// One sample per accepted MB: its centre and centre + final MV.
AffineFit<double> fit_affine_ls(const MvField& field, const OutlierMask& mask);

// Mean of (cur(x,y) - ref(x',y'))^2 over in-frame pixels, ref sampled
// bilinearly with edge clamping. With `mask`, only pixels of accepted MBs are
// counted.
double compensated_mse(const FramePlane& cur, const FramePlane& ref, const Affine& params,
                       const OutlierMask* mask = nullptr);

enum class GmeMode { ls6, class_rejected };

struct GmeResult {
  AffineFit<double> fit;
  double mse = 0.0;
  double mse_background = 0.0;
  std::size_t accepted = 0;
  bool fell_back = false;  // class_rejected degenerated to ls6
};

GmeResult gme_pipeline(const FramePlane& cur, const FramePlane& ref, const MvField& labelled,
                       const FrameFeatures& features, int th_f, GmeMode mode);

}  // namespace mvclass
