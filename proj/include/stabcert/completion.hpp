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

#ifndef STABCERT_COMPLETION_HPP
#define STABCERT_COMPLETION_HPP

#include <cstdint>
#include <vector>

#include "stabcert/additive_code.hpp"
#include "stabcert/geometry.hpp"

namespace stabcert {

/// Completing a partial 13-line system of PG(7,2) to one of strength 3 whose
/// code is self-orthogonal.
///
/// The fixed lines are known. Each open line i is <a[i], base[i] + v_i>
/// where v_i ranges over vectors supported on free[i]. Coordinates 0..3 are
/// assumed to be spanned by two of the fixed lines; the factor space of the
/// remaining coordinates 4..7 is PG(3,2).
struct CompletionProblem {
  std::vector<PGLine> fixed;
  std::vector<Word> a;
  std::vector<Word> base;
  std::vector<Word> free;

  int open_lines() const { return static_cast<int>(a.size()); }
  /// The line system for one assignment of the open vectors.
  LineSystem assemble(const std::vector<Word>& v) const;
};

struct CompletionStats {
  std::uint64_t pi_assignments = 0;   // factor-space assignments tried
  std::uint64_t pi_survivors = 0;     // ... passing the parity test
  std::uint64_t nodes = 0;            // lift search nodes
  std::uint64_t candidates = 0;       // candidate lines tested
  std::vector<std::vector<Word>> solutions;  // open vectors of each completion
};

/// Two phases. First the factor-space bits (coordinates 4..7) of all open
/// vectors, kept when every line of PG(3,2) meets the projected multiset an
/// odd number of times. Then the bits on coordinates 0..3, one line at a
/// time, with incremental strength checks and the remaining symplectic
/// equations kept solvable.
CompletionStats complete_staged(const CompletionProblem& p);

/// Same search without the factor-space phase and with plain rank tests for
/// strength. Slower; used to re-check samples.
CompletionStats complete_direct(const CompletionProblem& p);

/// Strength 3 by computing the rank of every triple, pair and single line.
bool strength3_by_rank(const LineSystem& ls);

}  // namespace stabcert

#endif  // STABCERT_COMPLETION_HPP
