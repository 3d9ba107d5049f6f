#pragma once

#include <cstdint>
#include <cstdlib>
#include <vector>

namespace mvclass {

// Matching cost in sum-of-absolute-differences units.
using Sad = std::int32_t;

/// Integer-pel displacement. A block at (x, y) in the current frame is matched
/// against the reference block at (x + mv.x, y + mv.y).
struct MotionVector {
  int x = 0;
  int y = 0;

  friend bool operator==(const MotionVector&, const MotionVector&) = default;

  MotionVector operator-(const MotionVector& o) const { return {x - o.x, y - o.y}; }
  int l1() const { return std::abs(x) + std::abs(y); }
};

inline int l1_distance(const MotionVector& a, const MotionVector& b) { return (a - b).l1(); }

enum class MbClass : std::uint8_t { unclassified = 0, one = 1, two = 2, three = 3 };

struct MbRecord {
  int mb_x = 0;
  int mb_y = 0;
  MotionVector pmv;
  Sad init_cost = 0;
  MotionVector final_mv;
  Sad final_cost = 0;
  Sad sum_resid = 0;
  bool intra = false;
  bool intra_refresh = false;
  MbClass mb_class = MbClass::unclassified;

  friend bool operator==(const MbRecord&, const MbRecord&) = default;
};

/// Per-frame grid of MB records in raster order.
struct MvField {
  int frame = 0;
  int width = 0;
  int height = 0;
  int mb_cols = 0;
  int mb_rows = 0;
  std::vector<MbRecord> mbs;

  MvField() = default;
  MvField(int frame_index, int w, int h, int cols, int rows);

  int mb_count() const { return mb_cols * mb_rows; }
  int index(int mb_x, int mb_y) const { return mb_y * mb_cols + mb_x; }

  MbRecord& at(int mb_x, int mb_y) { return mbs[static_cast<std::size_t>(index(mb_x, mb_y))]; }
  const MbRecord& at(int mb_x, int mb_y) const {
    return mbs[static_cast<std::size_t>(index(mb_x, mb_y))];
  }

  bool same_grid(const MvField& o) const { return mb_cols == o.mb_cols && mb_rows == o.mb_rows; }

  friend bool operator==(const MvField&, const MvField&) = default;
};

// Throws GeometryMismatch when the grids differ.
void require_same_grid(const MvField& a, const MvField& b, const char* what);

}  // namespace mvclass
