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

// Pieces shared by the stage runners and the certificate checker.

#ifndef STABCERT_PIPELINE_INTERNAL_HPP
#define STABCERT_PIPELINE_INTERNAL_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "stabcert/certificate.hpp"
#include "stabcert/completion.hpp"
#include "stabcert/nmset.hpp"
#include "stabcert/pipeline.hpp"

namespace stabcert::detail {

struct SampleOutcome {
  std::uint64_t count = 0;        // objects passing every condition
  std::uint64_t completions = 0;  // objects before the final parity filter
  std::uint64_t nodes = 0;
};

/// Sets of n lines through the standard prefix whose first non-prefix line
/// is candidate `task`, found with rank computations only.
std::size_t plain_line_tasks(int dim, int n);
SampleOutcome plain_line_subtree(int dim, int n, std::size_t task);

/// size-point completions of `lines` whose smallest point is `first`, found
/// with rank computations only; `count` keeps those passing
/// hyperplane_parity(points, parity_lines).
SampleOutcome plain_point_subtree(const NMSet& lines, int size, Word first, int parity_lines);

/// Stage S and F point systems in a fixed order, and the completion problem
/// of each.
std::vector<std::vector<Word>> stage_S_systems();
CompletionProblem stage_S_problem(const std::vector<Word>& w);
std::vector<std::vector<Word>> stage_F_systems(const NMSet& five);
CompletionProblem stage_F_problem(const NMSet& five, const std::vector<Word>& m);

/// Lifts the seven points of a (6,7)-set of PG(6,2) to lines of PG(7,2)
/// leaving x_8 = 0: <P_j, e_8 + v_j> next to the six fixed lines.
CompletionProblem lift_problem(const NMSet& s);

/// Lines of the W4a and W4b configurations.
NMSet w4a_lines();
NMSet w4b_prefix();  // four hyperoval lines and <e_1+e_3+e_4+e_6, e_7>
/// w4b_prefix plus each extension line not inside x_7 = 0, by key.
std::vector<NMSet> w4b_systems();

/// Indices chosen with probability `rate` from a seeded generator; at least
/// one when rate > 0 and n > 0.
std::vector<std::size_t> choose_sample(std::size_t n, double rate, std::uint64_t seed);

std::string normalized_input(StageId id);

std::string map_to_text(const LinearMap& g);
LinearMap map_from_text(const std::string& text, int dim);

/// Recomputes every property listed in the witness; returns the mismatches.
std::vector<std::string> check_witness(const Witness& w);

}  // namespace stabcert::detail

#endif  // STABCERT_PIPELINE_INTERNAL_HPP
