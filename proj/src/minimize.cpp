// Copyright (C) 2026 the afc authors
// SPDX-License-Identifier: Apache-2.0

#include "afc/minimize.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace afc {
namespace {

constexpr long kNodeBudget = 50'000'000;

uint32_t pack(uint16_t mask, uint16_t value) {
  return (static_cast<uint32_t>(mask) << 16) | value;
}

std::vector<char> onset_bitmap(const std::vector<uint32_t>& onset, int width) {
  std::vector<char> bm(1u << width, 0);
  for (uint32_t m : onset) {
    if (m >= bm.size())
      throw std::invalid_argument("minterm " + std::to_string(m) +
                                  " out of range for width " +
                                  std::to_string(width));
    bm[m] = 1;
  }
  return bm;
}

// All minterms of the cube lie inside the bitmap.
bool cube_inside(const Cube& c, const std::vector<char>& bm) {
  uint16_t full = static_cast<uint16_t>((1u << c.width) - 1);
  uint16_t free_bits = full & ~c.mask;
  uint16_t sub = 0;
  while (true) {
    if (!bm[c.value | sub]) return false;
    if (sub == free_bits) return true;
    sub = (sub - free_bits) & free_bits;  // next submask
  }
}

struct CoverKey {
  // (cardinality, literal count, sorted cube list); lower is better.
  int lits = 0;
  std::vector<Cube> cubes;
};

bool better(const CoverKey& a, const CoverKey& b) {
  if (a.cubes.size() != b.cubes.size()) return a.cubes.size() < b.cubes.size();
  if (a.lits != b.lits) return a.lits < b.lits;
  return std::lexicographical_compare(
      a.cubes.begin(), a.cubes.end(), b.cubes.begin(), b.cubes.end(),
      [](const Cube& x, const Cube& y) { return x < y; });
}

struct ExactSearch {
  const std::vector<Cube>& primes;
  std::vector<std::vector<int>> covers_of;     // row -> prime indices
  std::vector<std::vector<uint32_t>> rows_of;  // prime -> row positions
  std::vector<char> row_done;
  long nodes = 0;
  bool found = false;
  CoverKey best;
  std::vector<int> chosen;

  void run(int uncovered) {
    if (++nodes > kNodeBudget)
      throw std::runtime_error("exact cover search exceeded its node budget");
    if (uncovered == 0) {
      CoverKey key;
      key.cubes.reserve(chosen.size());
      for (int p : chosen) key.cubes.push_back(primes[p]);
      std::sort(key.cubes.begin(), key.cubes.end());
      for (const Cube& c : key.cubes) key.lits += c.literal_count();
      if (!found || better(key, best)) {
        best = std::move(key);
        found = true;
      }
      return;
    }
    // Equal cardinality must still be explored: ties resolve on literal
    // count and cube order at the leaves.
    if (found && chosen.size() + 1 > best.cubes.size()) return;

    // Branch on the most constrained uncovered row.
    int row = -1;
    size_t fewest = SIZE_MAX;
    for (size_t r = 0; r < covers_of.size(); ++r) {
      if (row_done[r]) continue;
      if (covers_of[r].size() < fewest) {
        fewest = covers_of[r].size();
        row = static_cast<int>(r);
      }
    }
    for (int p : covers_of[row]) {
      std::vector<uint32_t> newly;
      for (uint32_t r : rows_of[p]) {
        if (!row_done[r]) {
          row_done[r] = 1;
          newly.push_back(r);
        }
      }
      chosen.push_back(p);
      run(uncovered - static_cast<int>(newly.size()));
      chosen.pop_back();
      for (uint32_t r : newly) row_done[r] = 0;
    }
  }
};

}  // namespace

std::vector<Cube> prime_implicants(const std::vector<uint32_t>& onset,
                                   const std::vector<uint32_t>& dcset,
                                   int width) {
  if (width < 1 || width > 16)
    throw std::invalid_argument("width must be 1..16");
  auto on_bm = onset_bitmap(onset, width);
  auto care_bm = on_bm;
  for (uint32_t m : dcset) {
    if (m >= care_bm.size())
      throw std::invalid_argument("minterm out of range");
    if (on_bm[m])
      throw std::invalid_argument("onset and dcset overlap at minterm " +
                                  std::to_string(m));
    care_bm[m] = 1;
  }
  if (onset.empty()) return {};

  uint16_t full = static_cast<uint16_t>((1u << width) - 1);
  size_t care_count = 0;
  for (char b : care_bm) care_count += b;
  if (care_count == care_bm.size()) {
    Cube univ;
    univ.width = static_cast<uint16_t>(width);
    return {univ};
  }

  std::unordered_set<uint32_t> current;
  for (uint32_t m = 0; m < care_bm.size(); ++m)
    if (care_bm[m]) current.insert(pack(full, static_cast<uint16_t>(m)));

  std::vector<Cube> result;
  while (!current.empty()) {
    std::unordered_set<uint32_t> next;
    std::unordered_set<uint32_t> merged;
    // Two cubes merge when they share a mask and differ in one bound bit.
    for (uint32_t key : current) {
      uint16_t mask = static_cast<uint16_t>(key >> 16);
      uint16_t value = static_cast<uint16_t>(key);
      for (uint16_t bits = mask; bits;) {
        uint16_t bit = bits & static_cast<uint16_t>(-bits);
        bits ^= bit;
        uint32_t partner = pack(mask, value ^ bit);
        if (current.count(partner)) {
          merged.insert(key);
          merged.insert(partner);
          next.insert(pack(static_cast<uint16_t>(mask & ~bit),
                           static_cast<uint16_t>(value & ~bit)));
        }
      }
    }
    for (uint32_t key : current) {
      if (merged.count(key)) continue;
      Cube c;
      c.width = static_cast<uint16_t>(width);
      c.mask = static_cast<uint16_t>(key >> 16);
      c.value = static_cast<uint16_t>(key);
      // Primes covering only don't-cares are useless.
      bool touches_onset = false;
      for (uint32_t m : onset)
        if (c.contains_minterm(m)) { touches_onset = true; break; }
      if (touches_onset) result.push_back(c);
    }
    current = std::move(next);
  }
  std::sort(result.begin(), result.end());
  return result;
}

SopCover minimum_cover(const std::vector<Cube>& primes,
                       const std::vector<uint32_t>& onset, int width,
                       int output) {
  SopCover cover;
  cover.width = width;
  cover.output = output;
  if (onset.empty()) return cover;

  std::vector<uint32_t> rows(onset);
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());

  // Row index per minterm, prime/row incidence.
  std::vector<std::vector<int>> covers_of(rows.size());
  std::vector<std::vector<uint32_t>> rows_of(primes.size());
  for (size_t p = 0; p < primes.size(); ++p) {
    for (size_t r = 0; r < rows.size(); ++r) {
      if (primes[p].contains_minterm(rows[r])) {
        covers_of[r].push_back(static_cast<int>(p));
        rows_of[p].push_back(static_cast<uint32_t>(r));
      }
    }
  }
  for (size_t r = 0; r < rows.size(); ++r)
    if (covers_of[r].empty())
      throw std::invalid_argument("minterm " + std::to_string(rows[r]) +
                                  " is covered by no prime");

  std::vector<char> done(rows.size(), 0);
  std::vector<Cube> picked;

  // Essential primes: sole cover of some row. Without column removal no new
  // essentials can appear, so one pass suffices.
  for (size_t r = 0; r < rows.size(); ++r) {
    if (done[r] || covers_of[r].size() != 1) continue;
    int p = covers_of[r].front();
    picked.push_back(primes[p]);
    for (uint32_t rr : rows_of[p]) done[rr] = 1;
  }

  // Row dominance: a row whose cover set includes another row's cover set is
  // implied by it and can be dropped. Column dominance is skipped; it can
  // remove the cover the tie-break would otherwise select.
  std::vector<uint32_t> open;
  for (size_t r = 0; r < rows.size(); ++r)
    if (!done[r]) open.push_back(static_cast<uint32_t>(r));
  std::vector<char> dropped(rows.size(), 0);
  for (uint32_t a : open) {
    if (dropped[a]) continue;
    for (uint32_t b : open) {
      if (a == b || dropped[a] || dropped[b]) continue;
      // drop a if covers_of[b] subset of covers_of[a]
      if (std::includes(covers_of[a].begin(), covers_of[a].end(),
                        covers_of[b].begin(), covers_of[b].end()))
        if (covers_of[a].size() > covers_of[b].size()) dropped[a] = 1;
    }
  }

  std::vector<uint32_t> remaining;
  for (uint32_t r : open)
    if (!dropped[r]) remaining.push_back(rows[r]);

  if (remaining.empty()) {
    std::sort(picked.begin(), picked.end());
    picked.erase(std::unique(picked.begin(), picked.end()), picked.end());
    cover.cubes = std::move(picked);
    return cover;
  }

  // Exact branch and bound over the reduced matrix.
  std::vector<Cube> cand;
  for (size_t p = 0; p < primes.size(); ++p) {
    bool useful = false;
    for (uint32_t rr : rows_of[p])
      if (!done[rr] && !dropped[rr]) { useful = true; break; }
    if (useful) cand.push_back(primes[p]);
  }
  std::sort(cand.begin(), cand.end());

  ExactSearch search{cand, {}, {}, {}, {}, 0, false, {}, {}};
  search.covers_of.resize(remaining.size());
  search.rows_of.resize(cand.size());
  for (size_t p = 0; p < cand.size(); ++p)
    for (size_t r = 0; r < remaining.size(); ++r)
      if (cand[p].contains_minterm(remaining[r])) {
        search.covers_of[r].push_back(static_cast<int>(p));
        search.rows_of[p].push_back(static_cast<uint32_t>(r));
      }
  search.row_done.assign(remaining.size(), 0);
  search.run(static_cast<int>(remaining.size()));

  for (const Cube& c : search.best.cubes) picked.push_back(c);
  std::sort(picked.begin(), picked.end());
  picked.erase(std::unique(picked.begin(), picked.end()), picked.end());
  cover.cubes = std::move(picked);
  return cover;
}

SopCover greedy_cover(const std::vector<Cube>& primes,
                      const std::vector<uint32_t>& onset, int width,
                      int output) {
  SopCover cover;
  cover.width = width;
  cover.output = output;
  if (onset.empty()) return cover;

  std::vector<Cube> sorted(primes);
  std::sort(sorted.begin(), sorted.end());

  std::unordered_set<uint32_t> uncovered(onset.begin(), onset.end());
  while (!uncovered.empty()) {
    int best = -1;
    size_t best_gain = 0;
    for (size_t p = 0; p < sorted.size(); ++p) {
      size_t gain = 0;
      for (uint32_t m : uncovered)
        if (sorted[p].contains_minterm(m)) ++gain;
      if (gain > best_gain ||
          (gain == best_gain && gain > 0 && best >= 0 &&
           sorted[p].literal_count() < sorted[best].literal_count())) {
        best = static_cast<int>(p);
        best_gain = gain;
      }
    }
    if (best < 0)
      throw std::invalid_argument("onset not coverable by the given primes");
    cover.cubes.push_back(sorted[best]);
    for (auto it = uncovered.begin(); it != uncovered.end();)
      it = sorted[best].contains_minterm(*it) ? uncovered.erase(it) : ++it;
  }
  std::sort(cover.cubes.begin(), cover.cubes.end());
  return cover;
}

bool is_hazard_free(const SopCover& cover, const std::vector<uint32_t>& onset,
                    int width) {
  auto bm = onset_bitmap(onset, width);
  for (uint32_t m : onset) {
    for (int i = 0; i < width; ++i) {
      uint32_t adj = m ^ (1u << i);
      if (adj < m || !bm[adj]) continue;
      bool joint = false;
      for (const Cube& c : cover.cubes)
        if (c.contains_minterm(m) && c.contains_minterm(adj)) {
          joint = true;
          break;
        }
      if (!joint) return false;
    }
  }
  return true;
}

SopCover hazard_free_augment(const SopCover& cover,
                             const std::vector<uint32_t>& onset, int width) {
  SopCover out = cover;
  out.width = width;
  auto bm = onset_bitmap(onset, width);
  std::vector<uint32_t> rows(onset);
  std::sort(rows.begin(), rows.end());
  for (uint32_t m : rows) {
    for (int i = 0; i < width; ++i) {
      uint32_t adj = m ^ (1u << i);
      if (adj < m || !bm[adj]) continue;
      bool joint = false;
      for (const Cube& c : out.cubes)
        if (c.contains_minterm(m) && c.contains_minterm(adj)) {
          joint = true;
          break;
        }
      if (joint) continue;
      // Consensus cube of the adjacent pair, expanded to a prime inside the
      // onset by freeing bound inputs low to high.
      Cube c = minterm_cube(m, width);
      c.mask &= static_cast<uint16_t>(~(1u << i));
      c.value &= c.mask;
      for (int b = 0; b < width; ++b) {
        uint16_t bit = static_cast<uint16_t>(1u << b);
        if (!(c.mask & bit)) continue;
        Cube wider = c;
        wider.mask ^= bit;
        wider.value &= wider.mask;
        if (cube_inside(wider, bm)) c = wider;
      }
      out.cubes.push_back(c);
    }
  }
  std::sort(out.cubes.begin(), out.cubes.end());
  out.cubes.erase(std::unique(out.cubes.begin(), out.cubes.end()),
                  out.cubes.end());
  return out;
}

std::vector<uint32_t> output_onset(const QuantizedFunctionTable& table,
                                   int bit) {
  std::vector<uint32_t> onset;
  for (uint32_t c = 0; c < table.entries.size(); ++c)
    if (table.entries[c] & (1u << bit)) onset.push_back(c);
  return onset;
}

PlaCover minimize_table(const QuantizedFunctionTable& table,
                        const MinimizeOptions& opts) {
  int width = static_cast<int>(table.num_inputs());
  int m = static_cast<int>(table.num_outputs());
  bool exact = opts.exact.value_or(width <= kExactWidthLimit);

  std::vector<uint32_t> dcset;
  if (opts.dc_policy == DontCarePolicy::out_of_region) {
    for (uint32_t c = 0; c < table.entries.size(); ++c)
      if (!code_reaches_table(table, c)) dcset.push_back(c);
  }
  std::vector<char> is_dc(table.entries.size(), 0);
  for (uint32_t c : dcset) is_dc[c] = 1;

  PlaCover pla;
  pla.num_inputs = width;
  pla.num_outputs = m;
  pla.outputs.assign(m, {});
  std::vector<SopCover> covers(m);
  for (int j = 0; j < m; ++j) {
    std::vector<uint32_t> onset;
    for (uint32_t c : output_onset(table, j))
      if (!is_dc[c]) onset.push_back(c);
    auto primes = prime_implicants(onset, dcset, width);
    covers[j] = exact ? minimum_cover(primes, onset, width, j)
                      : greedy_cover(primes, onset, width, j);
    if (opts.hazard_free)
      covers[j] = hazard_free_augment(covers[j], onset, width);
  }
  for (int j = 0; j < m; ++j) {
    for (const Cube& c : covers[j].cubes) {
      pla.products.push_back(c);
      pla.outputs[j].push_back(static_cast<int>(pla.products.size()) - 1);
    }
  }
  pla.canonicalize();
  return pla;
}

}  // namespace afc
