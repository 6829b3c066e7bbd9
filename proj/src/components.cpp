#include "selfpair/components.hpp"

#include <algorithm>
#include <map>
#include <vector>

namespace selfpair {

InstanceSet connected_components(const SemanticMask& mask) {
  const int w = mask.width();
  const int h = mask.height();
  const auto cells = mask.data();
  std::vector<int> label(cells.size(), 0);
  std::vector<Point> stack;
  InstanceSet out;

  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      const std::size_t idx = static_cast<std::size_t>(r) * w + c;
      if (cells[idx] == 0 || label[idx] != 0) continue;

      const int id = static_cast<int>(out.instances.size()) + 1;
      Instance inst{id, {}};
      label[idx] = id;
      stack.push_back({r, c});
      while (!stack.empty()) {
        const Point p = stack.back();
        stack.pop_back();
        inst.pixels.push_back(p);
        for (int dr = -1; dr <= 1; ++dr) {
          for (int dc = -1; dc <= 1; ++dc) {
            const int nr = p.row + dr;
            const int nc = p.col + dc;
            if (nr < 0 || nr >= h || nc < 0 || nc >= w) continue;
            const std::size_t n = static_cast<std::size_t>(nr) * w + nc;
            if (cells[n] != 0 && label[n] == 0) {
              label[n] = id;
              stack.push_back({nr, nc});
            }
          }
        }
      }
      std::sort(inst.pixels.begin(), inst.pixels.end());
      out.instances.push_back(std::move(inst));
    }
  }
  return out;
}

InstanceSet instances_from_ids(int width, int height, std::span<const std::uint16_t> ids) {
  if (ids.size() != static_cast<std::size_t>(width) * height) {
    throw Error(ErrorCode::InvalidArgument, "id raster length does not match dimensions");
  }
  std::map<int, std::vector<Point>> by_id;
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) {
      const int v = ids[static_cast<std::size_t>(r) * width + c];
      if (v != 0) by_id[v].push_back({r, c});
    }
  }
  InstanceSet out;
  for (auto& [id, pixels] : by_id) out.instances.push_back({id, std::move(pixels)});
  return out;
}

}  // namespace selfpair
