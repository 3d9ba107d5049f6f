#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>

namespace mvclass {

inline constexpr int kMbSize = 16;

using LumaMatrix = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

enum class SearchMode { full, diamond };

// Per-frame set of MB raster indices that are forced intra.
using IntraRefreshSchedule = std::map<int, std::set<int>>;

struct VideoConfig {
  int width = 352;
  int height = 288;
  double frame_rate = 30.0;
  int search_range = 32;
  SearchMode search = SearchMode::diamond;
  IntraRefreshSchedule intra_refresh;

  static constexpr int mb_size = kMbSize;

  bool is_intra_refresh(int frame, int mb_index) const {
    auto it = intra_refresh.find(frame);
    return it != intra_refresh.end() && it->second.count(mb_index) != 0;
  }

  // Throws InputError when a knob is out of range.
  void validate() const;
};

// Edge-extends `plane` to the next multiple of the MB size in both directions.
// Planes that are already aligned are returned unchanged.
LumaMatrix pad_to_mb(const LumaMatrix& plane);

/// A single luma plane. Samples are stored MB-aligned; the original geometry
/// is kept so that whole-frame statistics only see in-frame pixels.
class FramePlane {
public:
  FramePlane() = default;
  explicit FramePlane(const LumaMatrix& original);
  FramePlane(const LumaMatrix& samples, int width, int height);

  int width() const { return width_; }
  int height() const { return height_; }
  int padded_width() const { return static_cast<int>(samples_.cols()); }
  int padded_height() const { return static_cast<int>(samples_.rows()); }
  int mb_cols() const { return padded_width() / kMbSize; }
  int mb_rows() const { return padded_height() / kMbSize; }
  int mb_count() const { return mb_cols() * mb_rows(); }

  const LumaMatrix& samples() const { return samples_; }

  std::uint8_t at(int x, int y) const { return samples_(y, x); }

  // Sample with coordinates clamped into the padded plane.
  std::uint8_t clamped(int x, int y) const {
    x = std::clamp(x, 0, padded_width() - 1);
    y = std::clamp(y, 0, padded_height() - 1);
    return samples_(y, x);
  }

  auto mb_block(int mb_x, int mb_y) const {
    return samples_.block(mb_y * kMbSize, mb_x * kMbSize, kMbSize, kMbSize);
  }

  bool same_geometry(const FramePlane& other) const {
    return width_ == other.width_ && height_ == other.height_ &&
           samples_.rows() == other.samples_.rows() && samples_.cols() == other.samples_.cols();
  }

  friend bool operator==(const FramePlane& a, const FramePlane& b) {
    return a.same_geometry(b) && a.samples_ == b.samples_;
  }

private:
  int width_ = 0;
  int height_ = 0;
  LumaMatrix samples_;
};

}  // namespace mvclass
