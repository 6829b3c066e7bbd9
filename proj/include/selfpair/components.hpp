#pragma once

#include <cstdint>
#include <span>

#include "selfpair/image.hpp"

namespace selfpair {

/// 8-connected foreground components. Ids start at 1 and follow the raster
/// position of each component's first pixel.
InstanceSet connected_components(const SemanticMask& mask);

/// Instances of an id raster (0 = background); each distinct nonzero value is
/// one instance carrying that value as its id, ordered by id.
InstanceSet instances_from_ids(int width, int height, std::span<const std::uint16_t> ids);

}  // namespace selfpair
