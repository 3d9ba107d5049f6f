#include "mvclass/pipeline.hpp"
#include "mvclass/synthetic.hpp"

#include <gtest/gtest.h>

using namespace mvclass;

namespace {

AnalysisConfig config_for(const SyntheticSpec& spec) {
  AnalysisConfig cfg;
  cfg.video.width = spec.width;
  cfg.video.height = spec.height;
  cfg.video.search_range = spec.search_range;
  return cfg;
}

SyntheticSpec qcif(SyntheticKind kind) {
  SyntheticSpec s;
  s.kind = kind;
  s.width = 176;
  s.height = 144;
  s.frames = 12;
  s.search_range = 16;
  return s;
}

}  // namespace

TEST(Analyzer, FirstFrameIsReferenceOnly) {
  const auto spec = qcif(SyntheticKind::still);
  const auto seq = generate(spec);
  Analyzer an(config_for(spec));
  EXPECT_FALSE(an.push(seq.frames[0]).has_value());
  const auto a = an.push(seq.frames[1]);
  ASSERT_TRUE(a.has_value());
  EXPECT_EQ(a->report.features.frame, 1);
  EXPECT_EQ(a->report.features.n_class1, 99);
  EXPECT_EQ(a->report.features.smc, 0);
}

TEST(Analyzer, StillSequenceHasNoFlags) {
  const auto spec = qcif(SyntheticKind::still);
  const auto res = analyze_sequence(generate(spec).frames, config_for(spec));
  ASSERT_EQ(res.size(), 11u);
  for (const auto& a : res) {
    EXPECT_FALSE(a.report.shot);
    EXPECT_FALSE(a.report.md);
    EXPECT_EQ(a.report.baselines, BaselineFlags{});
  }
}

TEST(Analyzer, SpliceFlaggedAtEvent) {
  auto spec = qcif(SyntheticKind::splice_abrupt);
  spec.event_frame = 6;
  spec.shift = {2, 0};
  spec.shift_b = {-1, 1};
  const auto res = analyze_sequence(generate(spec).frames, config_for(spec));
  for (const auto& a : res) EXPECT_EQ(a.report.shot, a.report.features.frame == 6);
}

TEST(Analyzer, PanOnsetIsNeverAShot) {
  auto spec = qcif(SyntheticKind::pan_onset);
  spec.frames = 16;
  spec.event_frame = 5;
  spec.shift = {6, 0};
  const auto res = analyze_sequence(generate(spec).frames, config_for(spec));
  for (const auto& a : res) {
    EXPECT_FALSE(a.report.shot) << a.report.features.frame;
    const auto& f = a.report.features;
    EXPECT_GT(MbRatio(f.n_class1), shot_thresholds(f.n_mb, f.n_ir).t2);
  }
}

TEST(Analyzer, SidecarPathMatchesPixelPath) {
  auto spec = qcif(SyntheticKind::foreground_inject);
  spec.shift = {2, -1};
  const auto seq = generate(spec);
  const auto cfg = config_for(spec);
  const auto pixel = analyze_sequence(seq.frames, cfg);
  Analyzer from_fields(cfg);
  for (const auto& a : pixel) {
    auto raw = a.field;
    for (auto& r : raw.mbs) r.mb_class = MbClass::unclassified;
    const auto b = from_fields.push_field(raw);
    EXPECT_EQ(b.report, a.report);
    EXPECT_EQ(b.field, a.field);
    EXPECT_FALSE(b.gme.has_value());
  }
}

TEST(Analyzer, GmeOptional) {
  auto spec = qcif(SyntheticKind::translate);
  spec.frames = 3;
  spec.shift = {3, 1};
  auto cfg = config_for(spec);
  cfg.run_gme = true;
  cfg.video.search = SearchMode::full;
  const auto res = analyze_sequence(generate(spec).frames, cfg);
  for (const auto& a : res) {
    ASSERT_TRUE(a.gme.has_value());
    EXPECT_NEAR(a.gme->fit.params.c, 3.0, 1e-9);
    EXPECT_NEAR(a.gme->fit.params.f, 1.0, 1e-9);
  }
}

TEST(Analyzer, FullyRefreshedFrameIsLowConfidence) {
  auto spec = qcif(SyntheticKind::still);
  spec.frames = 3;
  auto cfg = config_for(spec);
  for (int i = 0; i < 99; ++i) cfg.video.intra_refresh[2].insert(i);
  const auto res = analyze_sequence(generate(spec).frames, cfg);
  EXPECT_FALSE(res[0].report.low_confidence);
  EXPECT_TRUE(res[1].report.low_confidence);
  EXPECT_EQ(res[1].report.features.n_ir, 99);
}
