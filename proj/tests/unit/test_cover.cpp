// Copyright (C) 2026 the afc authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <vector>

#include "afc/cover.hpp"

using namespace afc;

TEST_SUITE("cover") {

TEST_CASE("cube text form is MSB first") {
  Cube c = cube_from_string("1-0");
  CHECK(c.width == 3);
  CHECK(c.to_string() == "1-0");
  // input 2 bound to 1, input 0 bound to 0
  CHECK(c.mask == 0b101);
  CHECK(c.value == 0b100);
  CHECK(c.literal_count() == 2);
  CHECK(c.num_minterms() == 2);
  CHECK(c.contains_minterm(0b100));
  CHECK(c.contains_minterm(0b110));
  CHECK(!c.contains_minterm(0b101));

  CHECK(minterm_cube(5, 3).to_string() == "101");
  CHECK(cube_from_string("---").num_minterms() == 8);
}

TEST_CASE("cube order matches the text form") {
  // '-' < '0' < '1', compared MSB first
  std::vector<Cube> cubes = {cube_from_string("1-0"), cube_from_string("-11"),
                             cube_from_string("01-"), cube_from_string("0-1"),
                             cube_from_string("100")};
  std::sort(cubes.begin(), cubes.end());
  std::vector<std::string> text;
  for (const Cube& c : cubes) text.push_back(c.to_string());
  CHECK(text == std::vector<std::string>{"-11", "0-1", "01-", "1-0", "100"});
}

TEST_CASE("containment and intersection") {
  Cube big = cube_from_string("1--");
  Cube small = cube_from_string("1-0");
  CHECK(big.contains(small));
  CHECK(!small.contains(big));
  CHECK(big.intersects(small));
  CHECK(!cube_from_string("0--").intersects(small));
  CHECK(cube_from_string("---").contains(big));
}

TEST_CASE("sop evaluation") {
  SopCover f;
  f.width = 3;
  f.cubes = {cube_from_string("11-"), cube_from_string("0-1")};
  CHECK(f.eval(0b110));
  CHECK(f.eval(0b001));
  CHECK(!f.eval(0b100));
  CHECK(f.literal_count() == 4);
}

TEST_CASE("pla cover shares products across outputs") {
  PlaCover p;
  p.num_inputs = 3;
  p.num_outputs = 2;
  p.products = {cube_from_string("11-"), cube_from_string("-01")};
  p.outputs = {{0, 1}, {1}};
  // y0 = p0 | p1, y1 = p1
  CHECK(p.eval(0b110) == 0b01);
  CHECK(p.eval(0b001) == 0b11);
  CHECK(p.eval(0b010) == 0b00);
  CHECK(p.output_cover(1).cubes == std::vector<Cube>{p.products[1]});
}

TEST_CASE("canonicalize merges duplicates and drops dead products") {
  PlaCover p;
  p.num_inputs = 2;
  p.num_outputs = 2;
  p.products = {cube_from_string("1-"), cube_from_string("01"),
                cube_from_string("1-"), cube_from_string("00")};
  p.outputs = {{0, 2}, {1}};  // the duplicate "1-" feeds output 0 twice; "00"
                              // feeds nothing
  p.canonicalize();
  CHECK(p.products ==
        std::vector<Cube>{cube_from_string("01"), cube_from_string("1-")});
  CHECK(p.outputs[0] == std::vector<int>{1});
  CHECK(p.outputs[1] == std::vector<int>{0});
}

}  // TEST_SUITE
