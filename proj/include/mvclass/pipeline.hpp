#pragma once

#include "mvclass/baselines.hpp"
#include "mvclass/classifier.hpp"
#include "mvclass/detectors.hpp"
#include "mvclass/frame.hpp"
#include "mvclass/gme.hpp"

#include <optional>
#include <vector>

namespace mvclass {

struct AnalysisConfig {
  VideoConfig video;
  ClassifierThresholds thresholds;
  MdConfig md;
  SmcConfig smc;
  std::optional<int> th_f;  // defaults to half the MB count
  bool run_gme = false;
  GmeMode gme_mode = GmeMode::class_rejected;

  void validate() const;
};

struct FrameAnalysis {
  MvField field;  // labelled
  FrameReport report;
  std::optional<GmeResult> gme;
};

/// Frame-at-a-time analysis: ME, classification, baselines, detectors and
/// optionally GME. Frame 0 is the I frame and yields no analysis. Memory is
/// bounded by one reference frame, one field and the MD window.
class Analyzer {
public:
  explicit Analyzer(AnalysisConfig cfg);

  std::optional<FrameAnalysis> push(const FramePlane& frame);

  // Entry point for precomputed MV fields (sidecar input); GME is skipped.
  FrameAnalysis push_field(const MvField& field);

  const AnalysisConfig& config() const { return cfg_; }

private:
  FrameAnalysis analyse(const MvField& raw, const FramePlane* cur);

  AnalysisConfig cfg_;
  DetectorStream detectors_;
  std::optional<FramePlane> ref_;
  std::optional<MvField> prev_field_;
  int next_frame_ = 0;
};

std::vector<FrameAnalysis> analyze_sequence(const std::vector<FramePlane>& frames,
                                            const AnalysisConfig& cfg);

}  // namespace mvclass
