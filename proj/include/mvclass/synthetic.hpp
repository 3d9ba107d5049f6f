#pragma once

#include "mvclass/frame.hpp"
#include "mvclass/gme.hpp"
#include "mvclass/mv_field.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mvclass {

enum class SyntheticKind {
  still,
  translate,
  affine,
  splice_abrupt,
  splice_gradual,
  pan_onset,
  foreground_inject,
};

std::string to_string(SyntheticKind kind);
SyntheticKind parse_synthetic_kind(const std::string& name);

/// Ground-truth sequence description. Frames are windows onto an unbounded
/// seeded texture; the camera moves the window, so content entering the frame
/// is genuine texture rather than replicated edges.
struct SyntheticSpec {
  SyntheticKind kind = SyntheticKind::still;
  int width = 352;
  int height = 288;
  int frames = 30;
  std::uint64_t seed = 1;

  // Per-frame camera shift: translate, pan_onset (after onset), first shot of
  // the splices, background of foreground_inject.
  MotionVector shift{4, 0};
  // Per-frame camera shift of the second shot in the splices.
  MotionVector shift_b{0, 0};
  // Per-frame motion model for the affine kind (maps frame t onto frame t-1).
  Affine affine = Affine::identity();

  // Splice frame, first cross-fade frame, or pan onset frame.
  int event_frame = 15;
  int span = 20;
  bool fade_through_black = false;

  double foreground_fraction = 0.25;
  int foreground_motion = 8;

  int search_range = 32;

  // Throws InputError for specs that would make the ground truth invalid.
  void validate() const;
};

struct GroundTruth {
  int frames = 0;
  std::vector<int> shot_frames;
  std::vector<int> md_frames;
  // Motion of frame t relative to frame t-1; empty for frame 0 and cuts.
  std::vector<std::optional<Affine>> affine_per_frame;
  // foreground_inject only: MBs covered by foreground, raster order.
  std::vector<bool> foreground_mbs;
  // splice_gradual only: weight of the second shot per frame.
  std::vector<double> blend_weight;
};

struct SyntheticSequence {
  std::vector<FramePlane> frames;
  GroundTruth truth;
};

SyntheticSequence generate(const SyntheticSpec& spec);

// Smoothed pseudo-random texture value at an integer lattice point.
double texture_at(std::uint64_t seed, long long x, long long y);

std::string ground_truth_json(const GroundTruth& truth);

}  // namespace mvclass
