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

#ifndef STABCERT_ADDITIVE_CODE_HPP
#define STABCERT_ADDITIVE_CODE_HPP

#include <span>
#include <string>
#include <vector>

#include "stabcert/geometry.hpp"
#include "stabcert/gf2.hpp"

namespace stabcert {

/// Ordered lines of PG(ambient_dim-1, 2). Line i is the i-th coordinate
/// pair of the associated generator matrix.
struct LineSystem {
  int ambient_dim = 0;
  std::vector<PGLine> lines;

  int size() const { return static_cast<int>(lines.size()); }
  friend bool operator==(const LineSystem&, const LineSystem&) = default;
};

/// Reads the column pairs of a matrix (rows = ambient coordinates) as lines.
/// Throws DimensionError if some pair does not span a line.
LineSystem lines_from_matrix(const GF2Matrix& m);

/// Additive quaternary code of length n: a binary subspace of F_2^{2n} with
/// coordinate pairs (2i, 2i+1). The binary dimension k2 may be odd.
class AdditiveCode {
 public:
  AdditiveCode() = default;
  /// Keeps `gen` as is when it has full row rank, otherwise row-reduces and
  /// drops zero rows.
  AdditiveCode(GF2Matrix gen, int n);

  static AdditiveCode zero(int n) { return AdditiveCode(GF2Matrix(2 * n), n); }

  const GF2Matrix& generator() const { return gen_; }
  int length() const { return n_; }
  int k2() const { return gen_.nrows(); }
  /// Quaternary dimension k2/2 rendered as "3.5" or "4".
  std::string dimension_string() const;

  /// Every codeword, zero included, in Gray-code order of the generators.
  std::vector<Word> codewords() const;
  bool contains(Word word) const;

 private:
  GF2Matrix gen_;
  int n_ = 0;
};

AdditiveCode code_from_lines(const LineSystem& ls);

/// Number of non-(0,0) coordinate pairs.
int quaternary_weight(const GF2Vector& word, int n);
inline int quaternary_weight_bits(Word w) {
  return popcount((w | (w >> 1)) & 0x55555555u);
}

AdditiveCode symplectic_dual(const AdditiveCode& c);

/// Minimum quaternary weight of a nonzero codeword; throws on the zero code.
int min_quaternary_distance(const AdditiveCode& c);

/// Largest t such that any t lines span a 2t-dimensional space.
int strength(const LineSystem& ls);

/// Nonzero codewords whose support lies inside `support` (0-based pairs).
std::vector<GF2Vector> words_supported_on(const AdditiveCode& c, std::span<const int> support);

bool same_code(const AdditiveCode& x, const AdditiveCode& y);

struct CodeReport {
  int n = 0;
  int k2 = 0;
  int distance = 0;       // 0 when the code is zero
  int dual_distance = 0;  // 0 when the dual is zero
  std::string to_string() const;
};
CodeReport report(const AdditiveCode& c);

}  // namespace stabcert

#endif  // STABCERT_ADDITIVE_CODE_HPP
