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

#ifndef STABCERT_GF2_HPP
#define STABCERT_GF2_HPP

#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace stabcert {

/// Machine word holding a vector over GF(2); bit i is coordinate i (0-based).
using Word = std::uint32_t;

inline constexpr int kMaxDim = 32;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Unit vector e_i with 1-based index, as in e_1..e_8.
constexpr Word unit(int i) { return Word{1} << (i - 1); }

constexpr int popcount(Word w) { return std::popcount(w); }
constexpr bool parity(Word w) { return (std::popcount(w) & 1) != 0; }

/// A vector of length 1..32 over the two-element field.
class GF2Vector {
 public:
  GF2Vector() = default;
  GF2Vector(Word bits, int len);

  static GF2Vector zero(int len) { return GF2Vector(0, len); }
  static GF2Vector unit_vector(int len, int i) { return GF2Vector(unit(i), len); }
  /// Parses "0110", ignoring '|' and blanks.
  static GF2Vector parse(std::string_view text);

  Word bits() const { return bits_; }
  int len() const { return len_; }
  bool bit(int i) const { return (bits_ >> i) & 1u; }
  bool is_zero() const { return bits_ == 0; }
  int weight() const { return popcount(bits_); }

  GF2Vector& operator+=(const GF2Vector& o);
  friend GF2Vector operator+(GF2Vector a, const GF2Vector& b) { return a += b; }
  friend bool operator==(const GF2Vector&, const GF2Vector&) = default;

  std::string to_string() const;

 private:
  Word bits_ = 0;
  int len_ = 0;
};

/// Row-major matrix over GF(2): a list of equal-length rows.
class GF2Matrix {
 public:
  GF2Matrix() = default;
  explicit GF2Matrix(int ncols) : ncols_(ncols) {}
  GF2Matrix(std::vector<GF2Vector> rows, int ncols);

  static GF2Matrix identity(int n);
  static GF2Matrix zeros(int nrows, int ncols);

  int nrows() const { return static_cast<int>(rows_.size()); }
  int ncols() const { return ncols_; }
  const std::vector<GF2Vector>& rows() const { return rows_; }
  const GF2Vector& row(int i) const { return rows_.at(i); }
  bool at(int r, int c) const { return rows_.at(r).bit(c); }

  void append_row(const GF2Vector& v);
  GF2Matrix transposed() const;

  friend bool operator==(const GF2Matrix&, const GF2Matrix&) = default;

 private:
  std::vector<GF2Vector> rows_;
  int ncols_ = 0;
};

int rank(const GF2Matrix& m);
int rank(const std::vector<Word>& vectors);

/// Reduced row-echelon form: leftmost pivot column, topmost remaining row.
/// Zero rows are kept at the bottom so the shape is preserved.
GF2Matrix row_reduce(const GF2Matrix& m);

/// Coefficients c with sum_i c_i * row_i == target, or nullopt.
std::optional<GF2Vector> solve_in_span(const GF2Matrix& m, const GF2Vector& target);

/// Basis of {x : m * x^T = 0}.
std::vector<GF2Vector> kernel(const GF2Matrix& m);

/// Symplectic form with coordinate pairs (0,1), (2,3), ...
bool symplectic_product(const GF2Vector& u, const GF2Vector& v);
bool euclidean_product(const GF2Vector& u, const GF2Vector& v);

/// Word-level symplectic form, no length checks. Pairs are adjacent bits.
inline bool symplectic_bits(Word u, Word v) {
  constexpr Word kEven = 0x55555555u;
  Word swapped = ((v & kEven) << 1) | ((v >> 1) & kEven);
  return parity(u & swapped);
}

// Matrix text format: one row per line of '0'/'1'; '|' and blanks ignored,
// '#' starts a comment, blank lines skipped.
GF2Matrix parse_matrix(std::string_view text);
std::string format_matrix(const GF2Matrix& m, int group = 0);

}  // namespace stabcert

#endif  // STABCERT_GF2_HPP
