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

#ifndef STABCERT_QUANTUM_HPP
#define STABCERT_QUANTUM_HPP

#include <array>
#include <span>
#include <stdexcept>
#include <vector>

#include "stabcert/additive_code.hpp"
#include "stabcert/geometry.hpp"

namespace stabcert {

/// Every pair of generators has symplectic product 0.
bool is_self_orthogonal(const AdditiveCode& c);

/// Secundum parity: every secundum meets a number of lines congruent to the
/// number of lines mod 2 (for 13 lines: an odd number). Holds exactly when
/// code_from_lines(ls) is self-orthogonal; this routine uses that form.
bool quantum_condition(const LineSystem& ls);

/// Same predicate by sweeping all secunda of the ambient space. Slow; kept
/// as an independent check of quantum_condition.
bool quantum_condition_geometric(const LineSystem& ls);

class DegenerateProjection : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Line weights on the factor space PG(3,2). w(g) is the number of lines of
/// the system projecting onto g, i.e. two less than the number of lines in
/// the preimage of g when the kernel is spanned by two of them.
class WeightTable {
 public:
  WeightTable() = default;
  explicit WeightTable(const std::array<int, 35>& line_weights) : w_(line_weights) {}

  /// Indexed like tables(4).lines.
  const std::array<int, 35>& line_weights() const { return w_; }
  int weight(const PGLine& g) const;
  void set_weight(const PGLine& g, int w);

  /// Sum over lines through p.
  int point_weight(Word p) const;
  /// Sum over lines inside the plane {x : normal . x = 0}.
  int plane_weight(Word normal) const;
  int total() const;

 private:
  std::array<int, 35> w_{};
};

/// Projects every line through q (image dimension 4). Lines inside the kernel
/// are skipped; a line meeting the kernel in a point throws DegenerateProjection.
WeightTable factor_weights(const LineSystem& ls, const QuotientMap& q);

/// For every line h of PG(3,2) the total weight of lines meeting h (h
/// included) is odd.
bool multiset_parity_condition(const WeightTable& wt);

/// |S cap points| differs from n_lines mod 2 for every hyperplane S.
bool hyperplane_parity(std::span<const PGPoint> points, int n_lines);

/// Rows of the matrix with the points as columns generate an even code.
/// Equivalent to the points summing to zero.
bool even_weight_condition(std::span<const PGPoint> points);

}  // namespace stabcert

#endif  // STABCERT_QUANTUM_HPP
