#include "mvclass/detectors.hpp"

#include "mvclass/error.hpp"

#include <cstdlib>
#include <vector>

namespace mvclass {

ShotThresholds shot_thresholds(int n_mb, int n_ir) {
  const long long active = static_cast<long long>(n_mb) - n_ir;
  const MbRatio t1(active, 40);
  return {t1, MbRatio(active, 30), MbRatio(active, 4), t1};
}

bool detect_shot(const FrameFeatures& cur, const FrameFeatures* prev) {
  const ShotThresholds t = shot_thresholds(cur.n_mb, cur.n_ir);
  const MbRatio class1(cur.n_class1);
  const bool intra_evidence = MbRatio(cur.n_intra - cur.n_ir) >= t.t4;
  if (!intra_evidence) return false;
  if (class1 <= t.t1) return true;

  long long change = 0;
  if (prev != nullptr) {
    change = std::llabs(static_cast<long long>(cur.n_class2) - prev->n_class2) +
             std::llabs(static_cast<long long>(cur.n_class3) - prev->n_class3);
  }
  return class1 <= t.t2 && MbRatio(change) >= t.t3;
}

void MdConfig::validate() const {
  if (k < 0 || th1_md < 0 || th2_md < 0) {
    throw InputError("motion discontinuity parameters must be non-negative");
  }
}

bool detect_md(std::span<const FrameFeatures> window, const MdConfig& cfg) {
  const auto needed = static_cast<std::size_t>(cfg.k) + 1;
  if (window.size() < needed) return false;
  window = window.last(needed);
  if (window.back().n_class1 < cfg.th1_md) return false;
  for (const auto& f : window) {
    if (f.n_class2 < cfg.th2_md) return false;
  }
  return true;
}

DetectorStream::DetectorStream(MdConfig md, SmcConfig smc) : md_(md), smc_(smc) {
  md_.validate();
  smc_.validate();
}

FrameReport DetectorStream::push(const FrameFeatures& f) {
  const FrameFeatures* prev = window_.empty() ? nullptr : &window_.back();
  FrameReport r;
  r.features = f;
  r.shot = detect_shot(f, prev);
  r.low_confidence = f.n_mb > 0 && f.n_ir == f.n_mb;
  r.baselines = baseline_flags(f, smc_);

  window_.push_back(f);
  while (window_.size() > static_cast<std::size_t>(md_.k) + 1) window_.pop_front();
  const std::vector<FrameFeatures> window(window_.begin(), window_.end());
  r.md = detect_md(window, md_);
  return r;
}

DetectionReport run_detectors(const std::vector<FrameFeatures>& features, const MdConfig& md_cfg,
                              const SmcConfig& smc_cfg) {
  DetectorStream stream(md_cfg, smc_cfg);
  DetectionReport report;
  report.reserve(features.size());
  for (const auto& f : features) report.push_back(stream.push(f));
  return report;
}

}  // namespace mvclass
