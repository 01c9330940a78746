// Copyright (C) 2026 the afc authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

namespace afc {

/// Shortest decimal form that round-trips the double exactly.
std::string fmt_double(double v);

/// Fixed-precision decimal form, e.g. fmt_fixed(1.5, 4) == "1.5000".
std::string fmt_fixed(double v, int precision);

}  // namespace afc
