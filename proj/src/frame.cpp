#include "mvclass/frame.hpp"

#include "mvclass/error.hpp"

namespace mvclass {

void VideoConfig::validate() const {
  if (width <= 0 || height <= 0) {
    throw InputError("frame geometry must be positive");
  }
  if (search_range < 1) {
    throw InputError("search range must be at least 1");
  }
  if (!(frame_rate > 0.0)) {
    throw InputError("frame rate must be positive");
  }
}

LumaMatrix pad_to_mb(const LumaMatrix& plane) {
  const Eigen::Index rows = plane.rows();
  const Eigen::Index cols = plane.cols();
  const Eigen::Index padded_rows = (rows + kMbSize - 1) / kMbSize * kMbSize;
  const Eigen::Index padded_cols = (cols + kMbSize - 1) / kMbSize * kMbSize;
  if (padded_rows == rows && padded_cols == cols) {
    return plane;
  }

  LumaMatrix out(padded_rows, padded_cols);
  out.topLeftCorner(rows, cols) = plane;
  for (Eigen::Index c = cols; c < padded_cols; ++c) {
    out.col(c).head(rows) = plane.col(cols - 1);
  }
  for (Eigen::Index r = rows; r < padded_rows; ++r) {
    out.row(r) = out.row(rows - 1);
  }
  return out;
}

FramePlane::FramePlane(const LumaMatrix& original)
  : width_(static_cast<int>(original.cols())),
    height_(static_cast<int>(original.rows())),
    samples_(pad_to_mb(original)) {
  if (width_ <= 0 || height_ <= 0) {
    throw InputError("empty luma plane");
  }
}

FramePlane::FramePlane(const LumaMatrix& samples, int width, int height)
  : width_(width), height_(height) {
  if (width <= 0 || height <= 0 || samples.cols() < width || samples.rows() < height) {
    throw InputError("luma plane smaller than its declared geometry");
  }
  samples_ = pad_to_mb(samples.topLeftCorner(height, width));
}

}  // namespace mvclass
