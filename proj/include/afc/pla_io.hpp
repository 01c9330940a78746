// Copyright (C) 2026 the afc authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "afc/cover.hpp"

namespace afc {

struct PlaParseError : std::runtime_error {
  PlaParseError(int line_, const std::string& what_)
      : std::runtime_error("pla line " + std::to_string(line_) + ": " + what_),
        line(line_) {}
  int line;
};

/// Berkeley PLA text: .i/.o header, one {0,1,-} row per product with its
/// output column, .e trailer. Products are emitted in canonical (sorted)
/// order; input and output columns are MSB first.
std::string emit_pla(const PlaCover& cover);

/// Inverse of emit_pla. Accepts .p and comment lines; duplicate product rows
/// merge their output columns. Row order is preserved, so parse(emit(c)) == c
/// for canonical covers. Throws PlaParseError with a 1-based line number.
PlaCover parse_pla(std::string_view text);

}  // namespace afc
