#include "mvclass/motion.hpp"

#include "mvclass/error.hpp"

#include <array>
#include <cstdlib>
#include <map>
#include <utility>

namespace mvclass {

namespace {

int median3(int a, int b, int c) {
  if (a > b) std::swap(a, b);
  if (b > c) std::swap(b, c);
  return a > b ? a : b;
}

bool in_window(MotionVector mv, int range) {
  return std::abs(mv.x) <= range && std::abs(mv.y) <= range;
}

MotionVector clamp_to_window(MotionVector mv, int range) {
  return {std::clamp(mv.x, -range, range), std::clamp(mv.y, -range, range)};
}

}  // namespace

Sad sad(const FramePlane& cur, const FramePlane& ref, int mb_x, int mb_y, MotionVector mv) {
  const int x0 = mb_x * kMbSize;
  const int y0 = mb_y * kMbSize;
  const int rx = x0 + mv.x;
  const int ry = y0 + mv.y;

  if (rx >= 0 && ry >= 0 && rx + kMbSize <= ref.padded_width() &&
      ry + kMbSize <= ref.padded_height()) {
    return (cur.samples().block<kMbSize, kMbSize>(y0, x0).cast<Sad>() -
            ref.samples().block<kMbSize, kMbSize>(ry, rx).cast<Sad>())
        .cwiseAbs()
        .sum();
  }

  Sad total = 0;
  for (int j = 0; j < kMbSize; ++j) {
    for (int i = 0; i < kMbSize; ++i) {
      total += std::abs(static_cast<Sad>(cur.at(x0 + i, y0 + j)) -
                        static_cast<Sad>(ref.clamped(rx + i, ry + j)));
    }
  }
  return total;
}

MotionVector predict_pmv(const MvField& field, int mb_x, int mb_y) {
  const auto neighbour = [&](int x, int y) -> std::pair<bool, MotionVector> {
    if (x < 0 || y < 0 || x >= field.mb_cols || y >= field.mb_rows) {
      return {false, {}};
    }
    return {true, field.at(x, y).final_mv};
  };

  const auto [has_left, left] = neighbour(mb_x - 1, mb_y);
  const auto [has_top, top] = neighbour(mb_x, mb_y - 1);
  auto [has_top_right, top_right] = neighbour(mb_x + 1, mb_y - 1);
  if (!has_top_right) {
    top_right = neighbour(mb_x - 1, mb_y - 1).second;
  }
  if (!has_left && !has_top) {
    return {};
  }
  return {median3(left.x, top.x, top_right.x), median3(left.y, top.y, top_right.y)};
}

SeedCost init_cost(const FramePlane& cur, const FramePlane& ref, int mb_x, int mb_y,
                   MotionVector pmv, MotionVector mv_pre_final) {
  const std::array<MotionVector, 3> predictors{pmv, MotionVector{}, mv_pre_final};
  SeedCost best;
  for (std::size_t i = 0; i < predictors.size(); ++i) {
    bool duplicate = false;
    for (std::size_t j = 0; j < i; ++j) {
      duplicate = duplicate || predictors[j] == predictors[i];
    }
    if (duplicate) continue;

    const Sad cost = sad(cur, ref, mb_x, mb_y, predictors[i]);
    if (best.evaluations == 0 || cost < best.cost) {
      best.cost = cost;
      best.seed = predictors[i];
    }
    ++best.evaluations;
  }
  return best;
}

SearchResult full_search(const FramePlane& cur, const FramePlane& ref, int mb_x, int mb_y,
                         int search_range) {
  SearchResult best{{0, 0}, sad(cur, ref, mb_x, mb_y, {0, 0})};
  for (int dy = -search_range; dy <= search_range; ++dy) {
    for (int dx = -search_range; dx <= search_range; ++dx) {
      const MotionVector mv{dx, dy};
      const Sad cost = sad(cur, ref, mb_x, mb_y, mv);
      if (better_candidate(cost, mv, best.cost, best.mv)) {
        best = {mv, cost};
      }
    }
  }
  return best;
}

SearchResult diamond_search(const FramePlane& cur, const FramePlane& ref, int mb_x, int mb_y,
                            MotionVector seed, int search_range) {
  static constexpr std::array<MotionVector, 8> kLarge{
      {{0, -2}, {-1, -1}, {1, -1}, {-2, 0}, {2, 0}, {-1, 1}, {1, 1}, {0, 2}}};
  static constexpr std::array<MotionVector, 4> kSmall{{{0, -1}, {-1, 0}, {1, 0}, {0, 1}}};

  std::map<std::pair<int, int>, Sad> visited;
  const auto cost_at = [&](MotionVector mv) {
    auto [it, fresh] = visited.try_emplace({mv.x, mv.y}, 0);
    if (fresh) it->second = sad(cur, ref, mb_x, mb_y, mv);
    return it->second;
  };

  seed = clamp_to_window(seed, search_range);
  SearchResult best{seed, cost_at(seed)};

  const auto step = [&](auto const& pattern) {
    const MotionVector centre = best.mv;
    for (const auto& d : pattern) {
      const MotionVector mv{centre.x + d.x, centre.y + d.y};
      if (!in_window(mv, search_range)) continue;
      const Sad cost = cost_at(mv);
      if (better_candidate(cost, mv, best.cost, best.mv)) best = {mv, cost};
    }
    return !(best.mv == centre);
  };

  while (step(kLarge)) {
  }
  step(kSmall);
  return best;
}

SearchResult refine_search(const FramePlane& cur, const FramePlane& ref, int mb_x, int mb_y,
                           MotionVector seed, const VideoConfig& cfg) {
  if (cfg.search == SearchMode::full) {
    SearchResult best = full_search(cur, ref, mb_x, mb_y, cfg.search_range);
    const MotionVector s = clamp_to_window(seed, cfg.search_range);
    const Sad seed_cost = sad(cur, ref, mb_x, mb_y, s);
    if (better_candidate(seed_cost, s, best.cost, best.mv)) best = {s, seed_cost};
    return best;
  }
  SearchResult best = diamond_search(cur, ref, mb_x, mb_y, seed, cfg.search_range);
  if (!(best.mv == MotionVector{})) {
    const Sad zero_cost = sad(cur, ref, mb_x, mb_y, {});
    if (better_candidate(zero_cost, {}, best.cost, best.mv)) best = {{}, zero_cost};
  }
  return best;
}

Sad intra_cost(const FramePlane& cur, int mb_x, int mb_y) {
  const auto block = cur.mb_block(mb_x, mb_y).cast<Sad>();
  const Sad sum = block.sum();
  const Sad dc = (sum + kMbSize * kMbSize / 2) / (kMbSize * kMbSize);
  return (block.array() - dc).abs().sum();
}

bool intra_mode_proxy(const FramePlane& cur, int mb_x, int mb_y, Sad final_cost,
                      bool intra_refresh) {
  return intra_refresh || final_cost > intra_cost(cur, mb_x, mb_y);
}

MvField estimate_frame(const FramePlane& cur, const FramePlane& ref, const MvField* prev_field,
                       const VideoConfig& cfg, int frame_index) {
  if (!cur.same_geometry(ref)) {
    throw GeometryMismatch("current and reference planes differ in geometry");
  }
  MvField field(frame_index, cur.width(), cur.height(), cur.mb_cols(), cur.mb_rows());
  if (prev_field != nullptr) {
    require_same_grid(field, *prev_field, "previous MV field");
  }

  for (int mb_y = 0; mb_y < field.mb_rows; ++mb_y) {
    for (int mb_x = 0; mb_x < field.mb_cols; ++mb_x) {
      MbRecord& rec = field.at(mb_x, mb_y);
      const MotionVector pre_final =
          prev_field != nullptr ? prev_field->at(mb_x, mb_y).final_mv : MotionVector{};

      rec.pmv = predict_pmv(field, mb_x, mb_y);
      const SeedCost seed = init_cost(cur, ref, mb_x, mb_y, rec.pmv, pre_final);
      rec.init_cost = seed.cost;

      const SearchResult refined = refine_search(cur, ref, mb_x, mb_y, seed.seed, cfg);
      rec.final_mv = refined.mv;
      rec.final_cost = refined.cost;
      rec.sum_resid = refined.cost;

      rec.intra_refresh = cfg.is_intra_refresh(frame_index, field.index(mb_x, mb_y));
      rec.intra = intra_mode_proxy(cur, mb_x, mb_y, rec.final_cost, rec.intra_refresh);
    }
  }
  return field;
}

}  // namespace mvclass
