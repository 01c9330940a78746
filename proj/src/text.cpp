// Copyright (C) 2026 the afc authors
// SPDX-License-Identifier: Apache-2.0

#include "afc/text.hpp"

#include <charconv>
#include <cstdio>

namespace afc {

std::string fmt_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

std::string fmt_fixed(double v, int precision) {
  char buf[64];
  int n = std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  return std::string(buf, buf + n);
}

}  // namespace afc
