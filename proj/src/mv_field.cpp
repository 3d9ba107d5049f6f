#include "mvclass/mv_field.hpp"

#include "mvclass/error.hpp"

#include <string>

namespace mvclass {

MvField::MvField(int frame_index, int w, int h, int cols, int rows)
  : frame(frame_index), width(w), height(h), mb_cols(cols), mb_rows(rows) {
  mbs.resize(static_cast<std::size_t>(cols) * static_cast<std::size_t>(rows));
  for (int y = 0; y < rows; ++y) {
    for (int x = 0; x < cols; ++x) {
      auto& rec = at(x, y);
      rec.mb_x = x;
      rec.mb_y = y;
    }
  }
}

void require_same_grid(const MvField& a, const MvField& b, const char* what) {
  if (!a.same_grid(b)) {
    throw GeometryMismatch(std::string(what) + ": MB grid " + std::to_string(a.mb_cols) + "x" +
                           std::to_string(a.mb_rows) + " does not match " +
                           std::to_string(b.mb_cols) + "x" + std::to_string(b.mb_rows));
  }
}

}  // namespace mvclass
