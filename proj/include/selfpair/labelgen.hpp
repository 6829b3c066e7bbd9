#pragma once

// Pseudo change labels built from semantic masks.

#include "selfpair/image.hpp"

namespace selfpair {

/// Per-pixel a XOR b.
SemanticMask xor_change(const SemanticMask& a, const SemanticMask& b);

/// Change left by erasing every object outside `kept`: label XOR (label AND kept).
SemanticMask erase_change(const SemanticMask& label, const SemanticMask& kept);

SemanticMask mask_and(const SemanticMask& a, const SemanticMask& b);
SemanticMask mask_or(const SemanticMask& a, const SemanticMask& b);
SemanticMask mask_not(const SemanticMask& a);

}  // namespace selfpair
