#include "mvclass/pipeline.hpp"

#include "mvclass/error.hpp"
#include "mvclass/motion.hpp"

namespace mvclass {

void AnalysisConfig::validate() const {
  video.validate();
  thresholds.validate();
  md.validate();
  smc.validate();
  if (th_f && *th_f < 0) throw InputError("Th_F must be non-negative");
}

Analyzer::Analyzer(AnalysisConfig cfg) : cfg_(std::move(cfg)), detectors_(cfg_.md, cfg_.smc) {
  cfg_.validate();
}

std::optional<FrameAnalysis> Analyzer::push(const FramePlane& frame) {
  const int t = next_frame_++;
  if (!ref_) {
    ref_ = frame;
    return std::nullopt;
  }
  const MvField raw =
      estimate_frame(frame, *ref_, prev_field_ ? &*prev_field_ : nullptr, cfg_.video, t);
  FrameAnalysis out = analyse(raw, &frame);
  ref_ = frame;
  return out;
}

FrameAnalysis Analyzer::push_field(const MvField& field) {
  next_frame_ = field.frame + 1;
  return analyse(field, nullptr);
}

FrameAnalysis Analyzer::analyse(const MvField& raw, const FramePlane* cur) {
  const MvField* prev = prev_field_ ? &*prev_field_ : nullptr;
  ClassifiedFrame classified = classify_frame(raw, prev, cfg_.thresholds);

  const MvField zero(raw.frame - 1, raw.width, raw.height, raw.mb_cols, raw.mb_rows);
  const MvField& before = prev != nullptr ? *prev : zero;
  classified.features.smc = smc(raw, before);
  classified.features.smc_intra = smc_intra(raw, before, cfg_.smc);

  FrameAnalysis out;
  out.report = detectors_.push(classified.features);
  if (cfg_.run_gme && cur != nullptr && ref_) {
    const int th_f = cfg_.th_f.value_or(default_th_f(raw.mb_count()));
    out.gme = gme_pipeline(*cur, *ref_, classified.field, classified.features, th_f, cfg_.gme_mode);
  }
  out.field = std::move(classified.field);
  prev_field_ = raw;
  return out;
}

std::vector<FrameAnalysis> analyze_sequence(const std::vector<FramePlane>& frames,
                                            const AnalysisConfig& cfg) {
  Analyzer analyzer(cfg);
  std::vector<FrameAnalysis> out;
  for (const auto& f : frames) {
    if (auto a = analyzer.push(f)) out.push_back(std::move(*a));
  }
  return out;
}

}  // namespace mvclass
