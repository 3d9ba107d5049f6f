#pragma once

#include "mvclass/classifier.hpp"
#include "mvclass/mv_field.hpp"

#include <vector>

namespace mvclass {

// Fixed-threshold baselines. Defaults are the values tuned for JM-encoded
// content; a flag is raised when the feature is strictly larger.
struct SmcConfig {
  long long intra_penalty = 500;  // L
  int intra_threshold = 200;
  long long smc_threshold = 2000;
  long long smc_intra_threshold = 105000;

  void validate() const;
};

// Sum over co-located MBs of the squared final-MV difference.
long long smc(const MvField& field_t, const MvField& field_prev);

// As smc, but every intra MB of field_t contributes the fixed penalty L.
long long smc_intra(const MvField& field_t, const MvField& field_prev, const SmcConfig& cfg);

struct BaselineFlags {
  bool intra = false;
  bool smc = false;
  bool smc_intra = false;

  friend bool operator==(const BaselineFlags&, const BaselineFlags&) = default;
};

BaselineFlags baseline_flags(const FrameFeatures& f, const SmcConfig& cfg);
std::vector<BaselineFlags> baseline_shot_flags(const std::vector<FrameFeatures>& features,
                                               const SmcConfig& cfg);

}  // namespace mvclass
