#include "mvclass/frame_io.hpp"

#include "mvclass/error.hpp"

#include <json.hpp>

#include <charconv>
#include <sstream>
#include <string>
#include <string_view>

namespace mvclass {

namespace {

constexpr std::string_view kSidecarMagic = "mvfield";
constexpr std::string_view kSidecarVersion = "v1";

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

bool parse_int(std::string_view token, int& value) {
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  return ec == std::errc() && ptr == end;
}

bool parse_flag(std::string_view token, bool& value) {
  int v = 0;
  if (!parse_int(token, v) || (v != 0 && v != 1)) return false;
  value = v == 1;
  return true;
}

}  // namespace

YuvReader::YuvReader(const std::filesystem::path& path, int width, int height)
  : path_(path), in_(path, std::ios::binary), width_(width), height_(height) {
  if (width <= 0 || height <= 0 || width % 2 != 0 || height % 2 != 0) {
    throw InputError("YUV 4:2:0 geometry must be positive and even");
  }
  if (!in_) {
    throw InputError("cannot open " + path.string());
  }
  const std::uint64_t size = std::filesystem::file_size(path);
  const std::uint64_t frame_bytes = yuv420_frame_bytes(width, height);
  frames_ = static_cast<std::size_t>(size / frame_bytes);
  if (size % frame_bytes != 0) {
    throw TruncatedInput(path.string(), frames_ * frame_bytes);
  }
  if (frames_ == 0) {
    throw InputError(path.string() + ": no frames");
  }
}

std::optional<FramePlane> YuvReader::next() {
  if (read_ >= frames_) return std::nullopt;
  LumaMatrix luma(height_, width_);
  in_.read(reinterpret_cast<char*>(luma.data()), static_cast<std::streamsize>(luma.size()));
  in_.seekg(static_cast<std::streamoff>(yuv420_frame_bytes(width_, height_) - luma.size()),
            std::ios::cur);
  if (!in_) {
    throw TruncatedInput(path_.string(), read_ * yuv420_frame_bytes(width_, height_));
  }
  ++read_;
  return FramePlane(luma);
}

std::vector<FramePlane> read_yuv_sequence(const std::filesystem::path& path, const VideoConfig& cfg) {
  YuvReader reader(path, cfg.width, cfg.height);
  std::vector<FramePlane> frames;
  frames.reserve(reader.frame_count());
  while (auto f = reader.next()) frames.push_back(std::move(*f));
  return frames;
}

void write_yuv_frame(std::ostream& out, const FramePlane& plane) {
  const LumaMatrix luma = plane.samples().topLeftCorner(plane.height(), plane.width());
  out.write(reinterpret_cast<const char*>(luma.data()), static_cast<std::streamsize>(luma.size()));
  const std::string chroma(static_cast<std::size_t>(luma.size() / 2), static_cast<char>(128));
  out.write(chroma.data(), static_cast<std::streamsize>(chroma.size()));
}

void write_yuv_sequence(const std::filesystem::path& path, const std::vector<FramePlane>& frames) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open " + path.string() + " for writing");
  for (const auto& f : frames) write_yuv_frame(out, f);
  if (!out) throw InputError("failed writing " + path.string());
}

void write_mv_sidecar_header(std::ostream& out, int width, int height, int mb_cols, int mb_rows) {
  out << kSidecarMagic << ' ' << kSidecarVersion << ' ' << width << ' ' << height << ' ' << mb_cols
      << ' ' << mb_rows << '\n';
}

void write_mv_sidecar_frame(std::ostream& out, const MvField& field) {
  out << "frame " << field.frame << '\n';
  for (const auto& r : field.mbs) {
    out << r.mb_x << ' ' << r.mb_y << ' ' << r.final_mv.x << ' ' << r.final_mv.y << ' ' << r.pmv.x
        << ' ' << r.pmv.y << ' ' << r.init_cost << ' ' << r.final_cost << ' ' << r.sum_resid << ' '
        << (r.intra ? 1 : 0) << ' ' << (r.intra_refresh ? 1 : 0) << ' '
        << static_cast<int>(r.mb_class) << '\n';
  }
}

void write_mv_sidecar(const std::vector<MvField>& fields, std::ostream& out) {
  if (fields.empty()) {
    write_mv_sidecar_header(out, 0, 0, 0, 0);
    return;
  }
  const auto& g = fields.front();
  for (const auto& f : fields) {
    if (f.width != g.width || f.height != g.height || !f.same_grid(g)) {
      throw GeometryMismatch("MV fields in one sidecar must share their geometry");
    }
  }
  write_mv_sidecar_header(out, g.width, g.height, g.mb_cols, g.mb_rows);
  for (const auto& f : fields) write_mv_sidecar_frame(out, f);
}

void write_mv_sidecar(const std::vector<MvField>& fields, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot open " + path.string() + " for writing");
  write_mv_sidecar(fields, out);
  if (!out) throw InputError("failed writing " + path.string());
}

std::vector<MvField> read_mv_sidecar(std::istream& in, const std::string& name) {
  std::string line;
  std::size_t line_no = 0;
  int width = 0, height = 0, cols = 0, rows = 0;

  while (std::getline(in, line)) {
    ++line_no;
    const auto tok = split_ws(line);
    if (tok.empty()) continue;
    if (tok.size() != 6 || tok[0] != kSidecarMagic || tok[1] != kSidecarVersion ||
        !parse_int(tok[2], width) || !parse_int(tok[3], height) || !parse_int(tok[4], cols) ||
        !parse_int(tok[5], rows) || width < 0 || height < 0 || cols < 0 || rows < 0) {
      throw ParseError(name, line_no, "expected header 'mvfield v1 <width> <height> <mb_cols> <mb_rows>'");
    }
    break;
  }
  if (line_no == 0) throw ParseError(name, 1, "missing sidecar header");

  std::vector<MvField> fields;
  std::size_t next_mb = 0;
  const auto close_frame = [&](std::size_t at_line) {
    if (!fields.empty() && next_mb != fields.back().mbs.size()) {
      throw ParseError(name, at_line,
                       "frame " + std::to_string(fields.back().frame) + " has " +
                           std::to_string(next_mb) + " MBs, expected " +
                           std::to_string(fields.back().mbs.size()));
    }
  };

  while (std::getline(in, line)) {
    ++line_no;
    const auto tok = split_ws(line);
    if (tok.empty()) continue;

    if (tok[0] == "frame") {
      int t = 0;
      if (tok.size() != 2 || !parse_int(tok[1], t)) {
        throw ParseError(name, line_no, "expected 'frame <t>'");
      }
      close_frame(line_no);
      fields.emplace_back(t, width, height, cols, rows);
      next_mb = 0;
      continue;
    }

    if (fields.empty()) throw ParseError(name, line_no, "MB record before any 'frame' line");
    if (tok.size() != 12) {
      throw ParseError(name, line_no, "expected 12 fields per MB record, got " + std::to_string(tok.size()));
    }
    auto& field = fields.back();
    if (next_mb >= field.mbs.size()) throw ParseError(name, line_no, "too many MB records for frame");

    MbRecord r;
    int cls = 0;
    const bool ok = parse_int(tok[0], r.mb_x) && parse_int(tok[1], r.mb_y) &&
                    parse_int(tok[2], r.final_mv.x) && parse_int(tok[3], r.final_mv.y) &&
                    parse_int(tok[4], r.pmv.x) && parse_int(tok[5], r.pmv.y) &&
                    parse_int(tok[6], r.init_cost) && parse_int(tok[7], r.final_cost) &&
                    parse_int(tok[8], r.sum_resid) && parse_flag(tok[9], r.intra) &&
                    parse_flag(tok[10], r.intra_refresh) && parse_int(tok[11], cls);
    if (!ok) throw ParseError(name, line_no, "non-numeric or out-of-range MB field");
    if (cls < 0 || cls > 3) throw ParseError(name, line_no, "class must be 0..3");
    if (r.init_cost < 0 || r.final_cost < 0 || r.sum_resid < 0) {
      throw ParseError(name, line_no, "costs must be non-negative");
    }
    if (r.intra_refresh && !r.intra) throw ParseError(name, line_no, "intra-refresh MB must be intra");
    const auto& expected = field.mbs[next_mb];
    if (r.mb_x != expected.mb_x || r.mb_y != expected.mb_y) {
      throw ParseError(name, line_no, "MB records must be in raster order");
    }
    r.mb_class = static_cast<MbClass>(cls);
    field.mbs[next_mb++] = r;
  }
  close_frame(line_no);
  return fields;
}

std::vector<MvField> read_mv_sidecar(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  return read_mv_sidecar(in, path.string());
}

bool is_mv_sidecar(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::string word;
  return in && (in >> word) && word == kSidecarMagic;
}

IntraRefreshSchedule read_intra_refresh_schedule(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  IntraRefreshSchedule schedule;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tok = split_ws(line);
    if (tok.empty() || tok[0].front() == '#') continue;
    int frame = 0;
    if (!parse_int(tok[0], frame) || frame < 0) throw ParseError(path.string(), line_no, "bad frame index");
    auto& mbs = schedule[frame];
    for (std::size_t i = 1; i < tok.size(); ++i) {
      int mb = 0;
      if (!parse_int(tok[i], mb) || mb < 0) throw ParseError(path.string(), line_no, "bad MB index");
      mbs.insert(mb);
    }
  }
  return schedule;
}

std::string detection_report_json(const DetectionReport& report) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : report) {
    const auto& f = r.features;
    arr.push_back({{"frame", f.frame},
                   {"n_class1", f.n_class1},
                   {"n_class2", f.n_class2},
                   {"n_class3", f.n_class3},
                   {"n_intra", f.n_intra},
                   {"n_ir", f.n_ir},
                   {"smc", f.smc},
                   {"smc_intra", f.smc_intra},
                   {"shot_flag", r.shot ? 1 : 0},
                   {"md_flag", r.md ? 1 : 0},
                   {"n_mb", f.n_mb},
                   {"low_confidence", r.low_confidence},
                   {"intra_flag", r.baselines.intra ? 1 : 0},
                   {"smc_flag", r.baselines.smc ? 1 : 0},
                   {"smc_intra_flag", r.baselines.smc_intra ? 1 : 0}});
  }
  return arr.dump(2) + "\n";
}

void write_detection_report(const DetectionReport& report, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot open " + path.string() + " for writing");
  out << detection_report_json(report);
  if (!out) throw InputError("failed writing " + path.string());
}

}  // namespace mvclass
