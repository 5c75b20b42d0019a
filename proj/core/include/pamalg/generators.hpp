#pragma once

#include <cstdint>
#include <vector>

#include "pamalg/partial_auto.hpp"

namespace pamalg {

// All qf-types over S (eq excluded) realizable by some one-point extension
// of A. Canonical order: by (gt, lt) under the enumeration of subsets.
std::vector<QfType> one_point_types(const Poset& a, const std::vector<ElementId>& s);

struct SaturateOptions {
  int max_elements = Poset::kMaxElements;
};

// Extends A so that every realizable qf-type over every subset of the
// original carrier of size <= k is realized by some element. Throws SizeCap
// when the carrier cap would be exceeded.
Poset saturate(const Poset& a, int k, const SaturateOptions& options = {});

struct RandomExtensionOptions {
  int max_new_points = -1;  // unlimited when negative
  int max_elements = Poset::kMaxElements;
};

// `steps` random legal moves: add a point with a random realizable type, or
// add an f- or g-pair accepted by extend_by_pair. Moves with no legal option
// are skipped. Seeded and reproducible; the result extends p.
PaPair random_pa_extension(const PaPair& p, int steps, std::uint64_t seed,
                           const RandomExtensionOptions& options = {});

}  // namespace pamalg
