// Copyright (C) 2026 the afc authors
// SPDX-License-Identifier: Apache-2.0

#include "afc/pla_io.hpp"

#include <algorithm>
#include <map>

namespace afc {

std::string emit_pla(const PlaCover& cover) {
  int n = cover.num_inputs;
  int m = cover.num_outputs;
  std::string s;
  s += ".i " + std::to_string(n) + "\n";
  s += ".o " + std::to_string(m) + "\n";
  s += ".p " + std::to_string(cover.products.size()) + "\n";
  std::vector<std::string> out_cols(cover.products.size(),
                                    std::string(m, '0'));
  for (int j = 0; j < m; ++j)
    for (int p : cover.outputs[j]) out_cols[p][m - 1 - j] = '1';
  for (size_t p = 0; p < cover.products.size(); ++p)
    s += cover.products[p].to_string() + " " + out_cols[p] + "\n";
  s += ".e\n";
  return s;
}

PlaCover parse_pla(std::string_view text) {
  PlaCover cover;
  cover.num_inputs = -1;
  cover.num_outputs = -1;
  long declared_products = -1;
  long raw_rows = 0;
  bool ended = false;
  std::map<Cube, int> seen;  // product -> index, for duplicate row merging

  size_t pos = 0;
  int line_no = 0;
  while (pos < text.size()) {
    size_t eol = text.find('\n', pos);
    size_t end = eol == std::string_view::npos ? text.size() : eol;
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    if (size_t hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) continue;
    line = line.substr(b, line.find_last_not_of(" \t\r") - b + 1);

    if (ended) throw PlaParseError(line_no, "text after .e");

    if (line[0] == '.') {
      size_t sp = line.find_first_of(" \t");
      std::string_view key = line.substr(0, sp);
      auto parse_count = [&]() -> long {
        if (sp == std::string_view::npos)
          throw PlaParseError(line_no, "missing count");
        std::string_view a = line.substr(sp + 1);
        size_t ab = a.find_first_not_of(" \t");
        if (ab == std::string_view::npos)
          throw PlaParseError(line_no, "missing count");
        long v = 0;
        for (size_t i = ab; i < a.size(); ++i) {
          if (a[i] == ' ' || a[i] == '\t') break;
          if (a[i] < '0' || a[i] > '9')
            throw PlaParseError(line_no, "bad count");
          v = v * 10 + (a[i] - '0');
          if (v > 1'000'000) throw PlaParseError(line_no, "count too large");
        }
        return v;
      };
      if (key == ".i") {
        long v = parse_count();
        if (v < 1 || v > 16) throw PlaParseError(line_no, ".i must be 1..16");
        cover.num_inputs = static_cast<int>(v);
      } else if (key == ".o") {
        long v = parse_count();
        if (v < 1 || v > 16) throw PlaParseError(line_no, ".o must be 1..16");
        cover.num_outputs = static_cast<int>(v);
        cover.outputs.assign(cover.num_outputs, {});
      } else if (key == ".p") {
        declared_products = parse_count();
      } else if (key == ".e" || key == ".end") {
        ended = true;
      } else {
        throw PlaParseError(line_no,
                            "unknown directive '" + std::string(key) + "'");
      }
      continue;
    }

    if (cover.num_inputs < 0 || cover.num_outputs < 0)
      throw PlaParseError(line_no, "product row before .i/.o header");
    size_t sp = line.find_first_of(" \t");
    if (sp == std::string_view::npos)
      throw PlaParseError(line_no, "row needs input and output columns");
    std::string_view in_part = line.substr(0, sp);
    std::string_view out_part = line.substr(line.find_first_not_of(" \t", sp));
    if (static_cast<int>(in_part.size()) != cover.num_inputs)
      throw PlaParseError(line_no, "input column width mismatch");
    if (static_cast<int>(out_part.size()) != cover.num_outputs)
      throw PlaParseError(line_no, "output column width mismatch");

    Cube c;
    try {
      c = cube_from_string(in_part);
    } catch (const std::invalid_argument& ex) {
      throw PlaParseError(line_no, ex.what());
    }
    ++raw_rows;
    int idx;
    if (auto it = seen.find(c); it != seen.end()) {
      idx = it->second;
    } else {
      idx = static_cast<int>(cover.products.size());
      cover.products.push_back(c);
      seen.emplace(c, idx);
    }
    for (int j = 0; j < cover.num_outputs; ++j) {
      char ch = out_part[cover.num_outputs - 1 - j];
      if (ch == '1') {
        auto& lst = cover.outputs[j];
        if (std::find(lst.begin(), lst.end(), idx) == lst.end())
          lst.push_back(idx);
      } else if (ch != '0') {
        throw PlaParseError(line_no,
                            "bad output character '" + std::string(1, ch) +
                                "'");
      }
    }
  }

  if (cover.num_inputs < 0 || cover.num_outputs < 0)
    throw PlaParseError(line_no, "missing .i/.o header");
  if (!ended) throw PlaParseError(line_no, "missing .e trailer");
  if (declared_products >= 0 && declared_products != raw_rows)
    throw PlaParseError(line_no,
                        ".p declares " + std::to_string(declared_products) +
                            " products but " + std::to_string(raw_rows) +
                            " rows given");
  for (auto& lst : cover.outputs) std::sort(lst.begin(), lst.end());
  return cover;
}

}  // namespace afc
