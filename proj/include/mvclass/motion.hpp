#pragma once

#include "mvclass/frame.hpp"
#include "mvclass/mv_field.hpp"

namespace mvclass {

// Sum of absolute differences between the MB at (mb_x, mb_y) in `cur` and the
// block displaced by `mv` in `ref`. Reference samples outside the padded plane
// are edge-extended, so every displacement is valid.
Sad sad(const FramePlane& cur, const FramePlane& ref, int mb_x, int mb_y, MotionVector mv);

// Component-wise median of the left, top and top-right final MVs. Missing
// neighbours count as (0,0); top-left stands in for a missing top-right.
MotionVector predict_pmv(const MvField& field, int mb_x, int mb_y);

struct SeedCost {
  Sad cost = 0;
  MotionVector seed;
  int evaluations = 0;
};

// Best SAD over the predictor set {pmv, (0,0), mv_pre_final}, duplicates
// collapsed, ties resolved in that order.
SeedCost init_cost(const FramePlane& cur, const FramePlane& ref, int mb_x, int mb_y,
                   MotionVector pmv, MotionVector mv_pre_final);

struct SearchResult {
  MotionVector mv;
  Sad cost = 0;

  friend bool operator==(const SearchResult&, const SearchResult&) = default;
};

// Strict candidate ordering used by every search: lower cost, then smaller L1
// norm, then raster order (y first).
inline bool better_candidate(Sad cost, MotionVector mv, Sad best_cost, MotionVector best) {
  if (cost != best_cost) return cost < best_cost;
  if (mv.l1() != best.l1()) return mv.l1() < best.l1();
  if (mv.y != best.y) return mv.y < best.y;
  return mv.x < best.x;
}

SearchResult full_search(const FramePlane& cur, const FramePlane& ref, int mb_x, int mb_y,
                         int search_range);

SearchResult diamond_search(const FramePlane& cur, const FramePlane& ref, int mb_x, int mb_y,
                            MotionVector seed, int search_range);

// Dispatches on cfg.search. The seed and (0,0) are always part of the
// candidate set.
SearchResult refine_search(const FramePlane& cur, const FramePlane& ref, int mb_x, int mb_y,
                           MotionVector seed, const VideoConfig& cfg);

// DC-prediction SAD of the MB: sum |p - round(mean)| over its 256 samples.
Sad intra_cost(const FramePlane& cur, int mb_x, int mb_y);

// Stand-in for the encoder's inter/intra decision.
bool intra_mode_proxy(const FramePlane& cur, int mb_x, int mb_y, Sad final_cost,
                      bool intra_refresh = false);

/// Raster-order motion estimation of `cur` against `ref`. `prev_field`
/// supplies the co-located previous final MVs and may be null for the first
/// P frame.
MvField estimate_frame(const FramePlane& cur, const FramePlane& ref, const MvField* prev_field,
                       const VideoConfig& cfg, int frame_index);

}  // namespace mvclass
