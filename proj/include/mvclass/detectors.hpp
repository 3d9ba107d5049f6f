#pragma once

#include "mvclass/baselines.hpp"
#include "mvclass/classifier.hpp"

#include <boost/rational.hpp>

#include <cstddef>
#include <deque>
#include <span>
#include <vector>

namespace mvclass {

using MbRatio = boost::rational<long long>;

/// Shot-change count thresholds, kept as exact rationals of the number of
/// MBs that take part in classification.
struct ShotThresholds {
  MbRatio t1;
  MbRatio t2;
  MbRatio t3;
  MbRatio t4;
};

ShotThresholds shot_thresholds(int n_mb, int n_ir);

// `prev` is the preceding analysed frame, or null for the first one (the
// class-change term is then zero).
bool detect_shot(const FrameFeatures& cur, const FrameFeatures* prev);

struct MdConfig {
  int k = 4;
  int th1_md = 50;   // Class-1 floor on the current frame
  int th2_md = 100;  // Class-2 floor on every frame of the window

  void validate() const;
};

// `window` ends at the current frame; only its last k+1 entries are used and
// fewer than k+1 entries never fire.
bool detect_md(std::span<const FrameFeatures> window, const MdConfig& cfg);

struct FrameReport {
  FrameFeatures features;
  bool shot = false;
  bool md = false;
  // Every MB was intra-refreshed, so the thresholds collapse to zero.
  bool low_confidence = false;
  BaselineFlags baselines;

  friend bool operator==(const FrameReport&, const FrameReport&) = default;
};

using DetectionReport = std::vector<FrameReport>;

/// Online shot/MD detection. Holds only the last k+1 frames.
class DetectorStream {
public:
  explicit DetectorStream(MdConfig md = {}, SmcConfig smc = {});

  FrameReport push(const FrameFeatures& f);

private:
  MdConfig md_;
  SmcConfig smc_;
  std::deque<FrameFeatures> window_;
};

DetectionReport run_detectors(const std::vector<FrameFeatures>& features, const MdConfig& md_cfg,
                              const SmcConfig& smc_cfg = {});

}  // namespace mvclass
