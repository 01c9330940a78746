// Copyright (C) 2026 the afc authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "afc/cover.hpp"
#include "afc/table.hpp"

namespace afc {

/// Widths above this fall back to the greedy cover heuristic unless
/// MinimizeOptions::exact forces otherwise.
inline constexpr int kExactWidthLimit = 12;

/// All prime implicants of the function with the given onset and don't-care
/// set (Quine-McCluskey). Returned sorted in canonical cube order.
std::vector<Cube> prime_implicants(const std::vector<uint32_t>& onset,
                                   const std::vector<uint32_t>& dcset,
                                   int width);

/// Exact minimum cover of `onset` using `primes`. Minimizes, in order:
/// product count, total literal count, lexicographic order of the sorted
/// cube strings. The result is therefore unique and deterministic.
SopCover minimum_cover(const std::vector<Cube>& primes,
                       const std::vector<uint32_t>& onset, int width,
                       int output = 0);

/// Greedy cover: repeatedly takes the prime covering the most uncovered
/// minterms (ties by fewer literals, then canonical order).
SopCover greedy_cover(const std::vector<Cube>& primes,
                      const std::vector<uint32_t>& onset, int width,
                      int output = 0);

/// Adds consensus products until every pair of adjacent onset minterms is
/// jointly covered by some product, so no single-input change can glitch the
/// output. Added cubes are expanded to primes within the onset. Idempotent.
SopCover hazard_free_augment(const SopCover& cover,
                             const std::vector<uint32_t>& onset, int width);

/// True when every Hamming-adjacent onset pair shares a covering cube.
bool is_hazard_free(const SopCover& cover, const std::vector<uint32_t>& onset,
                    int width);

enum class DontCarePolicy { none, out_of_region };

struct MinimizeOptions {
  DontCarePolicy dc_policy = DontCarePolicy::none;
  bool hazard_free = false;
  /// Force exact or greedy covering; by default exact is used up to
  /// kExactWidthLimit inputs.
  std::optional<bool> exact;
};

/// Minimizes every output column of the table against its onset and returns
/// the covers merged into one product plane; identical cubes appearing in
/// several outputs become one shared row.
PlaCover minimize_table(const QuantizedFunctionTable& table,
                        const MinimizeOptions& opts = {});

/// Onset of output bit `bit` over the table's input codes.
std::vector<uint32_t> output_onset(const QuantizedFunctionTable& table,
                                   int bit);

}  // namespace afc
