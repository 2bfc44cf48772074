// Copyright 2026 The stabcert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Random objects shared by the test binaries.

#ifndef STABCERT_TESTS_SUPPORT_HPP
#define STABCERT_TESTS_SUPPORT_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "stabcert/additive_code.hpp"
#include "stabcert/geometry.hpp"
#include "stabcert/gf2.hpp"
#include "stabcert/nmset.hpp"

namespace stabcert::testing {

using Rng = std::mt19937_64;

inline Word random_nonzero(Rng& rng, int dim) {
  const Word all = (Word{1} << dim) - 1;
  Word v = 0;
  while (v == 0) v = static_cast<Word>(rng()) & all;
  return v;
}

inline PGLine random_line(Rng& rng, int dim) {
  for (;;) {
    const Word a = random_nonzero(rng, dim);
    const Word b = random_nonzero(rng, dim);
    if (a != b) return PGLine(a, b, dim);
  }
}

inline LineSystem random_line_system(Rng& rng, int dim, int n) {
  LineSystem ls{dim, {}};
  for (int i = 0; i < n; ++i) ls.lines.push_back(random_line(rng, dim));
  return ls;
}

inline LinearMap random_invertible(Rng& rng, int dim) {
  for (;;) {
    std::vector<Word> cols(dim);
    for (auto& c : cols) c = random_nonzero(rng, dim);
    LinearMap g(cols, dim);
    if (g.invertible()) return g;
  }
}

/// Lines whose code has `rows` generators, all pairwise symplectic-orthogonal.
/// Built greedily: each new generator is a random vector orthogonal to the
/// previous ones.
inline LineSystem random_self_orthogonal(Rng& rng, int rows, int n) {
  for (;;) {
    std::vector<Word> gens;
    while (static_cast<int>(gens.size()) < rows) {
      GF2Matrix constraints(2 * n);
      for (Word g : gens) {
        const Word swapped = ((g & 0x55555555u) << 1) | ((g >> 1) & 0x55555555u);
        constraints.append_row(GF2Vector(swapped, 2 * n));
      }
      const auto basis = gens.empty() ? std::vector<GF2Vector>{} : kernel(constraints);
      Word v = 0;
      if (gens.empty()) {
        v = static_cast<Word>(rng()) & ((Word{1} << (2 * n)) - 1);
      } else {
        for (const auto& b : basis)
          if (rng() & 1u) v ^= b.bits();
      }
      std::vector<Word> trial = gens;
      trial.push_back(v);
      if (v != 0 && rank(trial) == static_cast<int>(trial.size())) gens.push_back(v);
    }
    GF2Matrix m(2 * n);
    for (Word g : gens) m.append_row(GF2Vector(g, 2 * n));
    try {
      return lines_from_matrix(m);
    } catch (const std::exception&) {
      // a column pair was not a line; draw again
    }
  }
}

/// Lines <e_j, column j of a random graph's adjacency matrix>, retried until
/// the (self-dual) code has strength 3. Then moved so that the first two
/// lines are <e1,e2> and <e3,e4>.
inline LineSystem planted_selfdual_system(Rng& rng) {
  constexpr int n = 8;
  for (;;) {
    std::uint8_t adj[n] = {};
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (rng() & 1u) {
          adj[i] |= std::uint8_t(1u << j);
          adj[j] |= std::uint8_t(1u << i);
        }
    bool isolated = false;
    for (int j = 0; j < n; ++j) isolated = isolated || adj[j] == 0;
    if (isolated) continue;
    LineSystem ls{n, {}};
    for (int j = 0; j < n; ++j) ls.lines.emplace_back(unit(j + 1), Word{adj[j]}, n);
    if (strength(ls) < 3) continue;
    std::vector<Word> frame{ls.lines[0].a(), ls.lines[0].b(), ls.lines[1].a(), ls.lines[1].b()};
    for (int i = 1; i <= n && static_cast<int>(frame.size()) < n; ++i) {
      frame.push_back(unit(i));
      if (rank(frame) < static_cast<int>(frame.size())) frame.pop_back();
    }
    const LinearMap to_frame = LinearMap(frame, n).inverse();
    LineSystem out{n, {}};
    for (const auto& l : ls.lines) out.lines.push_back(to_frame.apply(l));
    return out;
  }
}

}  // namespace stabcert::testing

#endif  // STABCERT_TESTS_SUPPORT_HPP
