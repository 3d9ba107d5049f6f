#include "mvclass/synthetic.hpp"

#include "mvclass/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

namespace mvclass {

namespace {

std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double lattice_noise(std::uint64_t seed, long long x, long long y) {
  const std::uint64_t h =
      mix(mix(seed ^ mix(static_cast<std::uint64_t>(x))) ^ static_cast<std::uint64_t>(y));
  return static_cast<double>(h >> 56);
}

// Bilinear sample of the smoothed texture at a real-valued point.
double sample_texture(std::uint64_t seed, double x, double y) {
  const double fx0 = std::floor(x);
  const double fy0 = std::floor(y);
  const auto x0 = static_cast<long long>(fx0);
  const auto y0 = static_cast<long long>(fy0);
  const double fx = x - fx0;
  const double fy = y - fy0;
  if (fx == 0.0 && fy == 0.0) return texture_at(seed, x0, y0);
  const double top = (1 - fx) * texture_at(seed, x0, y0) + fx * texture_at(seed, x0 + 1, y0);
  const double bottom =
      (1 - fx) * texture_at(seed, x0, y0 + 1) + fx * texture_at(seed, x0 + 1, y0 + 1);
  return (1 - fy) * top + fy * bottom;
}

std::uint8_t to_pixel(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
}

Eigen::Matrix3d translation(double dx, double dy) {
  Eigen::Matrix3d m = Eigen::Matrix3d::Identity();
  m(0, 2) = dx;
  m(1, 2) = dy;
  return m;
}

Eigen::Matrix3d shifted(MotionVector per_frame, int steps) {
  return translation(double(per_frame.x) * steps, double(per_frame.y) * steps);
}

Affine translation_params(MotionVector mv) { return {1, 0, double(mv.x), 0, 1, double(mv.y)}; }

// Renders the texture seen through camera transform `cam`
// (frame coordinates -> texture coordinates).
template <typename Shade>
LumaMatrix render(int width, int height, Shade&& shade) {
  LumaMatrix out(height, width);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) out(y, x) = to_pixel(shade(x, y));
  }
  return out;
}

double view(std::uint64_t seed, const Eigen::Matrix3d& cam, int x, int y) {
  const Eigen::Vector3d p = cam * Eigen::Vector3d(x, y, 1.0);
  return sample_texture(seed, p.x(), p.y());
}

std::uint64_t second_seed(std::uint64_t seed) { return mix(seed ^ 0x5eedb00c5eedb00cULL); }

}  // namespace

double texture_at(std::uint64_t seed, long long x, long long y) {
  double sum = 0.0;
  for (long long dy = -1; dy <= 1; ++dy) {
    for (long long dx = -1; dx <= 1; ++dx) sum += lattice_noise(seed, x + dx, y + dy);
  }
  return sum / 9.0;
}

std::string to_string(SyntheticKind kind) {
  switch (kind) {
    case SyntheticKind::still: return "static";
    case SyntheticKind::translate: return "translate";
    case SyntheticKind::affine: return "affine";
    case SyntheticKind::splice_abrupt: return "splice_abrupt";
    case SyntheticKind::splice_gradual: return "splice_gradual";
    case SyntheticKind::pan_onset: return "pan_onset";
    case SyntheticKind::foreground_inject: return "foreground_inject";
  }
  return "static";
}

SyntheticKind parse_synthetic_kind(const std::string& name) {
  for (auto k : {SyntheticKind::still, SyntheticKind::translate, SyntheticKind::affine,
                 SyntheticKind::splice_abrupt, SyntheticKind::splice_gradual,
                 SyntheticKind::pan_onset, SyntheticKind::foreground_inject}) {
    if (to_string(k) == name) return k;
  }
  throw InputError("unknown synthetic kind '" + name + "'");
}

void SyntheticSpec::validate() const {
  if (frames < 2) throw InputError("synthetic sequences need at least 2 frames");
  if (width <= 0 || height <= 0 || width % 2 != 0 || height % 2 != 0) {
    throw InputError("synthetic geometry must be positive and even");
  }
  if (search_range < 1) throw InputError("search range must be at least 1");
  const auto within = [&](MotionVector mv) {
    return std::abs(mv.x) <= search_range && std::abs(mv.y) <= search_range;
  };
  if (!within(shift) || !within(shift_b)) {
    throw InputError("synthetic shift exceeds the search range");
  }
  const bool has_event = kind == SyntheticKind::splice_abrupt ||
                         kind == SyntheticKind::splice_gradual || kind == SyntheticKind::pan_onset;
  if (has_event && (event_frame < 1 || event_frame >= frames)) {
    throw InputError("event frame must lie in [1, frames)");
  }
  if (kind == SyntheticKind::splice_gradual && (span < 1 || event_frame + span > frames)) {
    throw InputError("cross-fade span must be at least 1 and end inside the sequence");
  }
  if (kind == SyntheticKind::affine) {
    if (!affine.is_finite()) throw InputError("affine parameters must be finite");
    const std::array<Eigen::Vector2d, 4> corners{Eigen::Vector2d(0, 0), Eigen::Vector2d(width - 1, 0),
                                                 Eigen::Vector2d(0, height - 1),
                                                 Eigen::Vector2d(width - 1, height - 1)};
    for (const auto& c : corners) {
      const Eigen::Vector2d d = apply_gmv(affine, c.x(), c.y()) - c;
      if (d.cwiseAbs().maxCoeff() > search_range) {
        throw InputError("affine displacement exceeds the search range");
      }
    }
  }
  if (kind == SyntheticKind::foreground_inject) {
    if (foreground_fraction < 0.0 || foreground_fraction > 1.0) {
      throw InputError("foreground fraction must be in [0, 1]");
    }
    if (foreground_motion < 0 || foreground_motion > search_range) {
      throw InputError("foreground motion exceeds the search range");
    }
  }
}

SyntheticSequence generate(const SyntheticSpec& spec) {
  spec.validate();

  SyntheticSequence seq;
  auto& truth = seq.truth;
  truth.frames = spec.frames;
  truth.affine_per_frame.assign(static_cast<std::size_t>(spec.frames), std::nullopt);
  seq.frames.reserve(static_cast<std::size_t>(spec.frames));

  const int w = spec.width;
  const int h = spec.height;
  const std::uint64_t seed_a = spec.seed;
  const std::uint64_t seed_b = second_seed(spec.seed);

  const auto push = [&](const LumaMatrix& luma) { seq.frames.emplace_back(luma); };

  switch (spec.kind) {
    case SyntheticKind::still:
    case SyntheticKind::translate: {
      const MotionVector step = spec.kind == SyntheticKind::still ? MotionVector{} : spec.shift;
      for (int t = 0; t < spec.frames; ++t) {
        const Eigen::Matrix3d cam = shifted(step, t);
        push(render(w, h, [&](int x, int y) { return view(seed_a, cam, x, y); }));
        if (t > 0) truth.affine_per_frame[t] = translation_params(step);
      }
      break;
    }

    case SyntheticKind::affine: {
      Eigen::Matrix3d cam = Eigen::Matrix3d::Identity();
      for (int t = 0; t < spec.frames; ++t) {
        if (t > 0) {
          cam = cam * spec.affine.matrix();
          truth.affine_per_frame[t] = spec.affine;
        }
        push(render(w, h, [&](int x, int y) { return view(seed_a, cam, x, y); }));
      }
      break;
    }

    case SyntheticKind::splice_abrupt: {
      const int s = spec.event_frame;
      for (int t = 0; t < spec.frames; ++t) {
        if (t < s) {
          const Eigen::Matrix3d cam = shifted(spec.shift, t);
          push(render(w, h, [&](int x, int y) { return view(seed_a, cam, x, y); }));
          if (t > 0) truth.affine_per_frame[t] = translation_params(spec.shift);
        } else {
          const Eigen::Matrix3d cam = shifted(spec.shift_b, t - s);
          push(render(w, h, [&](int x, int y) { return view(seed_b, cam, x, y); }));
          if (t > s) truth.affine_per_frame[t] = translation_params(spec.shift_b);
        }
      }
      truth.shot_frames.push_back(s);
      break;
    }

    case SyntheticKind::splice_gradual: {
      const int s = spec.event_frame;
      truth.blend_weight.assign(static_cast<std::size_t>(spec.frames), 0.0);
      for (int t = 0; t < spec.frames; ++t) {
        double wb = 0.0;
        if (t >= s + spec.span) {
          wb = 1.0;
        } else if (t >= s) {
          wb = double(t - s + 1) / double(spec.span + 1);
          truth.shot_frames.push_back(t);
        }
        truth.blend_weight[static_cast<std::size_t>(t)] = wb;

        double gain_a = 1.0 - wb;
        double gain_b = wb;
        if (spec.fade_through_black) {
          gain_a = std::max(0.0, 1.0 - 2.0 * wb);
          gain_b = std::max(0.0, 2.0 * wb - 1.0);
        }
        const Eigen::Matrix3d cam_a = shifted(spec.shift, t);
        const Eigen::Matrix3d cam_b = shifted(spec.shift_b, t);
        push(render(w, h, [&](int x, int y) {
          double v = 0.0;
          if (gain_a > 0.0) v += gain_a * view(seed_a, cam_a, x, y);
          if (gain_b > 0.0) v += gain_b * view(seed_b, cam_b, x, y);
          return v;
        }));
        if (t > 0 && wb == 0.0) truth.affine_per_frame[t] = translation_params(spec.shift);
        if (t > s + spec.span) truth.affine_per_frame[t] = translation_params(spec.shift_b);
      }
      break;
    }

    case SyntheticKind::pan_onset: {
      const int onset = spec.event_frame;
      for (int t = 0; t < spec.frames; ++t) {
        const int steps = std::max(0, t - onset + 1);
        const Eigen::Matrix3d cam = shifted(spec.shift, steps);
        push(render(w, h, [&](int x, int y) { return view(seed_a, cam, x, y); }));
        if (t > 0) {
          truth.affine_per_frame[t] = translation_params(t >= onset ? spec.shift : MotionVector{});
        }
      }
      truth.md_frames.push_back(onset);
      break;
    }

    case SyntheticKind::foreground_inject: {
      const int cols = (w + kMbSize - 1) / kMbSize;
      const int rows = (h + kMbSize - 1) / kMbSize;
      const int n_mb = cols * rows;
      std::mt19937_64 rng(spec.seed);

      std::vector<int> order(static_cast<std::size_t>(n_mb));
      for (int i = 0; i < n_mb; ++i) order[static_cast<std::size_t>(i)] = i;
      std::shuffle(order.begin(), order.end(), rng);
      const auto n_fg = static_cast<std::size_t>(std::lround(spec.foreground_fraction * n_mb));
      truth.foreground_mbs.assign(static_cast<std::size_t>(n_mb), false);
      for (std::size_t i = 0; i < n_fg; ++i) truth.foreground_mbs[static_cast<std::size_t>(order[i])] = true;

      std::uniform_int_distribution<int> jitter(-spec.foreground_motion, spec.foreground_motion);
      for (int t = 0; t < spec.frames; ++t) {
        std::vector<std::pair<int, int>> offset(static_cast<std::size_t>(n_mb));
        for (auto& o : offset) o = {jitter(rng), jitter(rng)};

        const Eigen::Matrix3d cam = shifted(spec.shift, t);
        push(render(w, h, [&](int x, int y) {
          const auto mb = static_cast<std::size_t>((y / kMbSize) * cols + x / kMbSize);
          if (truth.foreground_mbs[mb]) {
            return texture_at(seed_b, x + offset[mb].first, y + offset[mb].second);
          }
          return view(seed_a, cam, x, y);
        }));
        if (t > 0) truth.affine_per_frame[t] = translation_params(spec.shift);
      }
      break;
    }
  }
  return seq;
}

std::string ground_truth_json(const GroundTruth& truth) {
  nlohmann::ordered_json j;
  j["frames"] = truth.frames;
  j["shot_frames"] = truth.shot_frames;
  j["md_frames"] = truth.md_frames;
  auto affine = nlohmann::ordered_json::array();
  for (const auto& a : truth.affine_per_frame) {
    if (a) {
      affine.push_back({a->a, a->b, a->c, a->d, a->e, a->f});
    } else {
      affine.push_back(nullptr);
    }
  }
  j["affine_per_frame"] = affine;
  return j.dump(2) + "\n";
}

}  // namespace mvclass
