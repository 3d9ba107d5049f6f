#include "mvclass/baselines.hpp"

#include "mvclass/error.hpp"

namespace mvclass {

namespace {

long long squared_change(const MbRecord& cur, const MbRecord& prev) {
  const long long dx = cur.final_mv.x - prev.final_mv.x;
  const long long dy = cur.final_mv.y - prev.final_mv.y;
  return dx * dx + dy * dy;
}

}  // namespace

void SmcConfig::validate() const {
  if (intra_penalty <= 0) {
    throw InputError("intra penalty L must be positive");
  }
}

long long smc(const MvField& field_t, const MvField& field_prev) {
  require_same_grid(field_t, field_prev, "smc");
  long long total = 0;
  for (std::size_t i = 0; i < field_t.mbs.size(); ++i) {
    total += squared_change(field_t.mbs[i], field_prev.mbs[i]);
  }
  return total;
}

long long smc_intra(const MvField& field_t, const MvField& field_prev, const SmcConfig& cfg) {
  require_same_grid(field_t, field_prev, "smc_intra");
  long long total = 0;
  for (std::size_t i = 0; i < field_t.mbs.size(); ++i) {
    const auto& cur = field_t.mbs[i];
    total += cur.intra ? cfg.intra_penalty : squared_change(cur, field_prev.mbs[i]);
  }
  return total;
}

BaselineFlags baseline_flags(const FrameFeatures& f, const SmcConfig& cfg) {
  return {f.n_intra > cfg.intra_threshold, f.smc > cfg.smc_threshold,
          f.smc_intra > cfg.smc_intra_threshold};
}

std::vector<BaselineFlags> baseline_shot_flags(const std::vector<FrameFeatures>& features,
                                               const SmcConfig& cfg) {
  std::vector<BaselineFlags> out;
  out.reserve(features.size());
  for (const auto& f : features) out.push_back(baseline_flags(f, cfg));
  return out;
}

}  // namespace mvclass
