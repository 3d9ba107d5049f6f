#include "mvclass/classifier.hpp"

#include "mvclass/error.hpp"

#include <fstream>
#include <sstream>
#include <string>

namespace mvclass {

namespace {

constexpr const char* kCsvHeader = "t,n_class1,n_class2,n_class3,n_intra,n_ir,n_mb,smc,smc_intra";

}  // namespace

void ClassifierThresholds::validate() const {
  if (th1 < 0 || th2 < 0) {
    throw InputError("classifier thresholds must be non-negative");
  }
}

MbClass classify_mb(const MbRecord& rec, MotionVector mv_pre_final, const ClassifierThresholds& th) {
  const bool irregular = l1_distance(rec.pmv, mv_pre_final) > th.th2;
  if (th.variant == ClassifierVariant::encoder_side) {
    if (rec.init_cost < th.th1) return MbClass::one;
    return irregular ? MbClass::two : MbClass::three;
  }
  if (irregular) return MbClass::two;
  return rec.sum_resid < th.th1 ? MbClass::one : MbClass::three;
}

FrameFeatures tally(const MvField& field) {
  FrameFeatures f;
  f.frame = field.frame;
  f.n_mb = field.mb_count();
  for (const auto& rec : field.mbs) {
    f.n_intra += rec.intra ? 1 : 0;
    f.n_ir += rec.intra_refresh ? 1 : 0;
    switch (rec.mb_class) {
      case MbClass::one: ++f.n_class1; break;
      case MbClass::two: ++f.n_class2; break;
      case MbClass::three: ++f.n_class3; break;
      case MbClass::unclassified: break;
    }
  }
  return f;
}

ClassifiedFrame classify_frame(const MvField& field, const MvField* prev_field,
                               const ClassifierThresholds& th) {
  if (prev_field != nullptr) {
    require_same_grid(field, *prev_field, "classify_frame");
  }
  ClassifiedFrame out{field, {}};
  for (auto& rec : out.field.mbs) {
    if (rec.intra_refresh) {
      rec.mb_class = MbClass::unclassified;
      continue;
    }
    const MotionVector pre =
        prev_field != nullptr ? prev_field->at(rec.mb_x, rec.mb_y).final_mv : MotionVector{};
    rec.mb_class = classify_mb(rec, pre, th);
  }
  out.features = tally(out.field);
  return out;
}

void export_features(const std::vector<FrameFeatures>& features, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const auto& f : features) {
    out << f.frame << ',' << f.n_class1 << ',' << f.n_class2 << ',' << f.n_class3 << ','
        << f.n_intra << ',' << f.n_ir << ',' << f.n_mb << ',' << f.smc << ',' << f.smc_intra
        << '\n';
  }
}

void export_features(const std::vector<FrameFeatures>& features, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw InputError("cannot open " + path.string() + " for writing");
  }
  export_features(features, out);
  if (!out) {
    throw InputError("failed writing " + path.string());
  }
}

std::vector<FrameFeatures> read_features_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw InputError("cannot open " + path.string());
  }
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw ParseError(path.string(), line_no, "expected feature CSV header");
  }

  std::vector<FrameFeatures> out;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row(line);
    FrameFeatures f;
    char c1, c2, c3, c4, c5, c6, c7, c8;
    row >> f.frame >> c1 >> f.n_class1 >> c2 >> f.n_class2 >> c3 >> f.n_class3 >> c4 >>
        f.n_intra >> c5 >> f.n_ir >> c6 >> f.n_mb >> c7 >> f.smc >> c8 >> f.smc_intra;
    for (char c : {c1, c2, c3, c4, c5, c6, c7, c8}) {
      if (c != ',') row.setstate(std::ios::failbit);
    }
    if (!row || !(row >> std::ws).eof()) {
      throw ParseError(path.string(), line_no, "malformed feature row");
    }
    out.push_back(f);
  }
  return out;
}

}  // namespace mvclass
