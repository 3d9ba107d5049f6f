#include "mvclass/cli.hpp"

#include "mvclass/error.hpp"
#include "mvclass/frame_io.hpp"
#include "mvclass/pipeline.hpp"
#include "mvclass/synthetic.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace mvclass::cli {

namespace {

namespace fs = std::filesystem;

struct RunConfig {
  std::string subcommand;
  std::string input;

  AnalysisConfig analysis;
  SearchMode search = SearchMode::diamond;
  ClassifierVariant variant = ClassifierVariant::encoder_side;
  GmeMode gme_mode = GmeMode::class_rejected;
  int th_f = -1;
  std::string intra_refresh_path;

  std::string report_path;
  std::string features_path;
  std::string sidecar_path;
  std::string gme_path;
  std::string out_path;
  std::string truth_path;
  bool background_only = false;
  int verbosity = 0;

  SyntheticSpec gen;
  std::string kind = "static";
  std::vector<int> shift{4, 0};
  std::vector<int> shift_b{0, 0};
  std::vector<double> affine{1, 0, 0, 0, 1, 0};
};

const std::map<std::string, SearchMode> kSearchModes{{"full", SearchMode::full},
                                                     {"diamond", SearchMode::diamond}};
const std::map<std::string, ClassifierVariant> kVariants{
    {"encoder", ClassifierVariant::encoder_side}, {"decoded", ClassifierVariant::decoded_domain}};
const std::map<std::string, GmeMode> kGmeModes{{"ls6", GmeMode::ls6},
                                               {"proposed", GmeMode::class_rejected}};

template <typename Map, typename Value>
std::string key_of(const Map& map, const Value& v) {
  for (const auto& [k, val] : map) {
    if (val == v) return k;
  }
  return {};
}

nlohmann::ordered_json config_json(const RunConfig& rc) {
  const auto& a = rc.analysis;
  nlohmann::ordered_json j;
  j["subcommand"] = rc.subcommand;
  j["input"] = rc.input;
  j["width"] = a.video.width;
  j["height"] = a.video.height;
  j["frame_rate"] = a.video.frame_rate;
  j["search_range"] = a.video.search_range;
  j["me"] = key_of(kSearchModes, a.video.search);
  j["intra_refresh"] = rc.intra_refresh_path;
  j["variant"] = key_of(kVariants, a.thresholds.variant);
  j["th1"] = a.thresholds.th1;
  j["th2"] = a.thresholds.th2;
  j["k"] = a.md.k;
  j["th1_md"] = a.md.th1_md;
  j["th2_md"] = a.md.th2_md;
  j["L"] = a.smc.intra_penalty;
  j["intra_threshold"] = a.smc.intra_threshold;
  j["smc_threshold"] = a.smc.smc_threshold;
  j["smc_intra_threshold"] = a.smc.smc_intra_threshold;
  j["gme_mode"] = key_of(kGmeModes, a.gme_mode);
  j["th_f"] = a.th_f ? nlohmann::ordered_json(*a.th_f) : nlohmann::ordered_json("n_mb/2");
  return j;
}

void add_geometry_options(CLI::App& cmd, RunConfig& rc) {
  cmd.add_option("--width", rc.analysis.video.width, "Luma width in pixels (YUV input)")
      ->capture_default_str();
  cmd.add_option("--height", rc.analysis.video.height, "Luma height in pixels (YUV input)")
      ->capture_default_str();
  cmd.add_option("--fps", rc.analysis.video.frame_rate, "Frame rate")->capture_default_str();
  cmd.add_option("--search-range", rc.analysis.video.search_range,
                 "ME search range in pixels (experimental setting: 32)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd.add_option("--me", rc.search, "ME strategy: full or diamond")
      ->transform(CLI::CheckedTransformer(kSearchModes))
      ->default_str("diamond");
  cmd.add_option("--intra-refresh", rc.intra_refresh_path,
                 "Intra-refresh schedule file: lines of '<frame> <mb_index>...'");
}

void add_classifier_options(CLI::App& cmd, RunConfig& rc) {
  cmd.add_option("--th1", rc.analysis.thresholds.th1,
                 "Class-1 cost threshold in SAD units (artifact default)")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  cmd.add_option("--th2", rc.analysis.thresholds.th2,
                 "PMV vs previous-MV L1 distance threshold in pixels (artifact default)")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  cmd.add_option("--variant", rc.variant,
                 "encoder: init cost rule; decoded: residual rule for decoded streams")
      ->transform(CLI::CheckedTransformer(kVariants))
      ->default_str("encoder");
}

void add_detector_options(CLI::App& cmd, RunConfig& rc) {
  cmd.add_option("--k", rc.analysis.md.k, "MD window extent (published setting: 4)")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  cmd.add_option("--th1-md", rc.analysis.md.th1_md,
                 "MD Class-1 floor in MBs (published setting: 50)")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  cmd.add_option("--th2-md", rc.analysis.md.th2_md,
                 "MD Class-2 floor in MBs (published setting: 100)")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  cmd.add_option("--L", rc.analysis.smc.intra_penalty,
                 "Intra penalty of the SMC-with-intra baseline (published setting: 500)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd.add_option("--intra-threshold", rc.analysis.smc.intra_threshold,
                 "Intra-count baseline threshold (published setting: 200)")
      ->capture_default_str();
  cmd.add_option("--smc-threshold", rc.analysis.smc.smc_threshold,
                 "SMC baseline threshold (published setting: 2000)")
      ->capture_default_str();
  cmd.add_option("--smc-intra-threshold", rc.analysis.smc.smc_intra_threshold,
                 "SMC-with-intra baseline threshold (published setting: 105000)")
      ->capture_default_str();
}

void add_gme_options(CLI::App& cmd, RunConfig& rc) {
  cmd.add_option("--mode", rc.gme_mode, "ls6 (no rejection) or proposed (class-based rejection)")
      ->transform(CLI::CheckedTransformer(kGmeModes))
      ->default_str("proposed");
  cmd.add_option("--th-f", rc.th_f, "Irregular-motion threshold in MBs (artifact default: n_mb/2)")
      ->check(CLI::NonNegativeNumber);
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw InputError("cannot open " + path + " for writing");
  f << text;
  if (!f) throw InputError("failed writing " + path);
}

std::ostream& open_or(const std::string& path, std::unique_ptr<std::ofstream>& holder,
                      std::ostream& fallback) {
  if (path.empty() || path == "-") return fallback;
  holder = std::make_unique<std::ofstream>(path);
  if (!*holder) throw InputError("cannot open " + path + " for writing");
  return *holder;
}

std::string gme_header(bool background_only) {
  return std::string("frame,a,b,c,d,e,f,mse,accepted_mbs,cond") +
         (background_only ? ",mse_background" : "") + "\n";
}

std::string gme_line(int frame, const GmeResult& g, bool background_only) {
  std::ostringstream s;
  s << std::setprecision(10);
  const auto& p = g.fit.params;
  s << frame << ',' << p.a << ',' << p.b << ',' << p.c << ',' << p.d << ',' << p.e << ',' << p.f
    << ',' << g.mse << ',' << g.accepted << ',' << g.fit.condition;
  if (background_only) s << ',' << g.mse_background;
  s << '\n';
  return s.str();
}

struct Outputs {
  bool report = false;
  bool features = false;
  bool sidecar = false;
  bool gme = false;
};

// Runs the streaming pipeline over YUV or sidecar input and writes whichever
// outputs are requested.
int run_pipeline(RunConfig& rc, Outputs want, std::ostream& out, std::ostream& err) {
  const bool sidecar_input = is_mv_sidecar(rc.input);
  if (want.gme && sidecar_input) {
    throw InputError("global motion estimation needs pixel input, not an MV sidecar");
  }
  rc.analysis.run_gme = want.gme;
  Analyzer analyzer(rc.analysis);

  DetectionReport report;
  std::vector<FrameFeatures> features;

  std::unique_ptr<std::ofstream> sidecar_file;
  std::unique_ptr<std::ofstream> gme_file;
  std::ostream* sidecar_out = want.sidecar ? &open_or(rc.sidecar_path, sidecar_file, out) : nullptr;
  std::ostream* gme_out = want.gme ? &open_or(rc.gme_path, gme_file, out) : nullptr;
  if (gme_out != nullptr) *gme_out << gme_header(rc.background_only);
  bool sidecar_header = false;

  const auto consume = [&](FrameAnalysis&& a) {
    if (sidecar_out != nullptr) {
      if (!sidecar_header) {
        write_mv_sidecar_header(*sidecar_out, a.field.width, a.field.height, a.field.mb_cols,
                                a.field.mb_rows);
        sidecar_header = true;
      }
      write_mv_sidecar_frame(*sidecar_out, a.field);
    }
    if (a.gme && gme_out != nullptr) {
      if (a.gme->fell_back) {
        err << "warning: frame " << a.field.frame
            << ": class-based rejection left too few samples, fitted all classified MBs\n";
      }
      *gme_out << gme_line(a.field.frame, *a.gme, rc.background_only);
    }
    if (rc.verbosity > 0) {
      const auto& f = a.report.features;
      err << "frame " << f.frame << ": class1=" << f.n_class1 << " class2=" << f.n_class2
          << " class3=" << f.n_class3 << " intra=" << f.n_intra << " shot=" << a.report.shot
          << " md=" << a.report.md << '\n';
    }
    features.push_back(a.report.features);
    report.push_back(a.report);
  };

  if (sidecar_input) {
    for (const auto& field : read_mv_sidecar(fs::path(rc.input))) consume(analyzer.push_field(field));
  } else {
    YuvReader reader(rc.input, rc.analysis.video.width, rc.analysis.video.height);
    while (auto frame = reader.next()) {
      if (auto a = analyzer.push(*frame)) consume(std::move(*a));
    }
  }
  if (sidecar_out != nullptr && !sidecar_header) write_mv_sidecar_header(*sidecar_out, 0, 0, 0, 0);

  if (want.features) {
    std::ostringstream csv;
    export_features(features, csv);
    write_text(rc.features_path, csv.str(), out);
  }
  if (want.report) {
    write_text(rc.report_path, detection_report_json(report), out);
    if (!rc.report_path.empty() && rc.report_path != "-") {
      write_text(rc.report_path + ".config.json", config_json(rc).dump(2) + "\n", out);
    }
  }
  return kExitOk;
}

int run_classify(const RunConfig& rc, std::ostream& out) {
  const auto fields = read_mv_sidecar(fs::path(rc.input));
  std::vector<MvField> labelled;
  labelled.reserve(fields.size());
  const MvField* prev = nullptr;
  for (const auto& f : fields) {
    labelled.push_back(classify_frame(f, prev, rc.analysis.thresholds).field);
    prev = &f;
  }
  std::ostringstream text;
  write_mv_sidecar(labelled, text);
  write_text(rc.out_path, text.str(), out);
  return kExitOk;
}

int run_gen(RunConfig& rc, std::ostream& out) {
  auto& spec = rc.gen;
  spec.kind = parse_synthetic_kind(rc.kind);
  spec.width = rc.analysis.video.width;
  spec.height = rc.analysis.video.height;
  spec.search_range = rc.analysis.video.search_range;
  spec.shift = {rc.shift.at(0), rc.shift.at(1)};
  spec.shift_b = {rc.shift_b.at(0), rc.shift_b.at(1)};
  spec.affine = {rc.affine.at(0), rc.affine.at(1), rc.affine.at(2),
                 rc.affine.at(3), rc.affine.at(4), rc.affine.at(5)};
  const SyntheticSequence seq = generate(spec);
  write_yuv_sequence(rc.out_path, seq.frames);
  if (!rc.truth_path.empty()) write_text(rc.truth_path, ground_truth_json(seq.truth), out);
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig rc;
  CLI::App app{"Macroblock-class motion analysis: shot change, motion discontinuity and global motion",
               "mvclass"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  const auto input_cmd = [&](const char* name, const char* desc) {
    CLI::App* cmd = app.add_subcommand(name, desc);
    cmd->add_option("input", rc.input, "YUV 4:2:0 file or MV sidecar")->required();
    cmd->add_flag("-v,--verbose", rc.verbosity, "Per-frame progress on stderr");
    add_geometry_options(*cmd, rc);
    add_classifier_options(*cmd, rc);
    add_detector_options(*cmd, rc);
    return cmd;
  };

  CLI::App* analyze = input_cmd("analyze", "Full pipeline with every output");
  analyze->add_option("-o,--report", rc.report_path, "Detection report JSON (default stdout)");
  analyze->add_option("--features", rc.features_path, "Per-frame feature CSV");
  analyze->add_option("--sidecar", rc.sidecar_path, "Labelled MV sidecar");
  analyze->add_option("--gme", rc.gme_path, "Per-frame global motion CSV (YUV input only)");
  analyze->add_flag("--background-only", rc.background_only,
                    "Also report MSE over accepted MBs only");
  add_gme_options(*analyze, rc);

  CLI::App* shots = input_cmd("detect-shots", "Shot change detection report");
  shots->add_option("-o,--report", rc.report_path, "Detection report JSON (default stdout)");

  CLI::App* md = input_cmd("detect-md", "Motion discontinuity detection report");
  md->add_option("-o,--report", rc.report_path, "Detection report JSON (default stdout)");

  CLI::App* features = input_cmd("export-features", "Per-frame feature CSV for external training");
  features->add_option("-o,--out", rc.features_path, "Feature CSV (default stdout)");

  CLI::App* gme = input_cmd("gme", "Per-frame global motion estimation");
  gme->add_option("-o,--out", rc.gme_path, "Output CSV (default stdout)");
  gme->add_flag("--background-only", rc.background_only, "Also report MSE over accepted MBs only");
  add_gme_options(*gme, rc);

  CLI::App* classify = app.add_subcommand("classify", "Label an MV sidecar");
  classify->add_option("input", rc.input, "MV sidecar")->required();
  classify->add_option("-o,--out", rc.out_path, "Labelled sidecar (default stdout)");
  add_classifier_options(*classify, rc);

  CLI::App* gen = app.add_subcommand("gen", "Generate a synthetic sequence with ground truth");
  gen->add_option("--kind", rc.kind,
                  "static, translate, affine, splice_abrupt, splice_gradual, pan_onset or "
                  "foreground_inject")
      ->capture_default_str();
  gen->add_option("--out", rc.out_path, "Output YUV 4:2:0 file")->required();
  gen->add_option("--truth", rc.truth_path, "Ground-truth JSON");
  gen->add_option("--width", rc.analysis.video.width, "Width in pixels")->capture_default_str();
  gen->add_option("--height", rc.analysis.video.height, "Height in pixels")->capture_default_str();
  gen->add_option("--search-range", rc.analysis.video.search_range, "Largest allowed shift")
      ->capture_default_str();
  gen->add_option("--frames", rc.gen.frames, "Frame count")->capture_default_str();
  gen->add_option("--seed", rc.gen.seed, "Texture seed")->capture_default_str();
  gen->add_option("--shift", rc.shift, "Per-frame camera shift 'dx dy'")->expected(2);
  gen->add_option("--shift-b", rc.shift_b, "Per-frame shift of the second shot 'dx dy'")->expected(2);
  gen->add_option("--affine", rc.affine, "Per-frame affine model 'a b c d e f'")->expected(6);
  gen->add_option("--event", rc.gen.event_frame, "Splice / cross-fade start / pan onset frame")
      ->capture_default_str();
  gen->add_option("--span", rc.gen.span, "Cross-fade length in frames")->capture_default_str();
  gen->add_flag("--fade-black", rc.gen.fade_through_black, "Cross-fade through black");
  gen->add_option("--fg-fraction", rc.gen.foreground_fraction, "Foreground MB fraction")
      ->capture_default_str();
  gen->add_option("--fg-motion", rc.gen.foreground_motion, "Foreground jitter range in pixels")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "mvclass: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    rc.subcommand = sub->get_name();
    rc.analysis.video.search = rc.search;
    rc.analysis.thresholds.variant = rc.variant;
    rc.analysis.gme_mode = rc.gme_mode;
    if (rc.th_f >= 0) rc.analysis.th_f = rc.th_f;
    if (!rc.intra_refresh_path.empty()) {
      rc.analysis.video.intra_refresh = read_intra_refresh_schedule(rc.intra_refresh_path);
    }

    if (sub == analyze) {
      return run_pipeline(rc, {true, !rc.features_path.empty(), !rc.sidecar_path.empty(),
                               !rc.gme_path.empty()},
                          out, err);
    }
    if (sub == shots || sub == md) return run_pipeline(rc, {true, false, false, false}, out, err);
    if (sub == features) return run_pipeline(rc, {false, true, false, false}, out, err);
    if (sub == gme) return run_pipeline(rc, {false, false, false, true}, out, err);
    if (sub == classify) return run_classify(rc, out);
    if (sub == gen) return run_gen(rc, out);
  } catch (const RankDeficient& e) {
    err << "mvclass: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "mvclass: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitUsage;
}

}  // namespace mvclass::cli
