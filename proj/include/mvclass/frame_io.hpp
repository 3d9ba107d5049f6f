#pragma once

#include "mvclass/detectors.hpp"
#include "mvclass/frame.hpp"
#include "mvclass/mv_field.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <optional>
#include <vector>

namespace mvclass {

inline std::uint64_t yuv420_frame_bytes(int width, int height) {
  return static_cast<std::uint64_t>(width) * static_cast<std::uint64_t>(height) * 3 / 2;
}

/// Streams luma planes out of a raw planar YUV 4:2:0 file. The file size is
/// checked up front so truncation is reported before any frame is consumed.
class YuvReader {
public:
  YuvReader(const std::filesystem::path& path, int width, int height);

  std::size_t frame_count() const { return frames_; }
  std::optional<FramePlane> next();

private:
  std::filesystem::path path_;
  std::ifstream in_;
  int width_;
  int height_;
  std::size_t frames_ = 0;
  std::size_t read_ = 0;
};

std::vector<FramePlane> read_yuv_sequence(const std::filesystem::path& path, const VideoConfig& cfg);

// Writes luma plus mid-grey chroma.
void write_yuv_frame(std::ostream& out, const FramePlane& plane);
void write_yuv_sequence(const std::filesystem::path& path, const std::vector<FramePlane>& frames);

// MV sidecar text format.
void write_mv_sidecar_header(std::ostream& out, int width, int height, int mb_cols, int mb_rows);
void write_mv_sidecar_frame(std::ostream& out, const MvField& field);
void write_mv_sidecar(const std::vector<MvField>& fields, const std::filesystem::path& path);
void write_mv_sidecar(const std::vector<MvField>& fields, std::ostream& out);

std::vector<MvField> read_mv_sidecar(const std::filesystem::path& path);
std::vector<MvField> read_mv_sidecar(std::istream& in, const std::string& name = "<stream>");

// True when the file starts with the sidecar magic.
bool is_mv_sidecar(const std::filesystem::path& path);

// Intra-refresh schedule: one line per frame, `<frame> <mb_index>...`.
// Blank lines and lines starting with '#' are ignored.
IntraRefreshSchedule read_intra_refresh_schedule(const std::filesystem::path& path);

std::string detection_report_json(const DetectionReport& report);
void write_detection_report(const DetectionReport& report, const std::filesystem::path& path);

}  // namespace mvclass
