#pragma once

#include "mvclass/mv_field.hpp"

#include <filesystem>
#include <iosfwd>
#include <vector>

namespace mvclass {

enum class ClassifierVariant { encoder_side, decoded_domain };

struct ClassifierThresholds {
  Sad th1 = 512;  // 2 per pixel over a 16x16 MB
  int th2 = 2;    // L1 distance in integer pixels
  ClassifierVariant variant = ClassifierVariant::encoder_side;

  void validate() const;
};

/// Per-frame class statistics plus the motion-smoothness baselines.
struct FrameFeatures {
  int frame = 0;
  int n_class1 = 0;
  int n_class2 = 0;
  int n_class3 = 0;
  int n_intra = 0;
  int n_ir = 0;
  int n_mb = 0;
  long long smc = 0;
  long long smc_intra = 0;

  friend bool operator==(const FrameFeatures&, const FrameFeatures&) = default;
};

// Label for one MB. `mv_pre_final` is the co-located final MV of the previous
// frame. Intra-refresh MBs must be filtered out by the caller.
MbClass classify_mb(const MbRecord& rec, MotionVector mv_pre_final, const ClassifierThresholds& th);

struct ClassifiedFrame {
  MvField field;
  FrameFeatures features;
};

// Labels every non-intra-refresh MB and tallies the counts. `prev_field` may
// be null, in which case every previous final MV is (0,0). The smc columns
// are left at zero.
ClassifiedFrame classify_frame(const MvField& field, const MvField* prev_field,
                               const ClassifierThresholds& th);

// Recounts an already labelled field.
FrameFeatures tally(const MvField& field);

void export_features(const std::vector<FrameFeatures>& features, const std::filesystem::path& path);
void export_features(const std::vector<FrameFeatures>& features, std::ostream& out);
std::vector<FrameFeatures> read_features_csv(const std::filesystem::path& path);

}  // namespace mvclass
