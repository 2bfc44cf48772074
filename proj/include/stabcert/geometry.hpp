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

#ifndef STABCERT_GEOMETRY_HPP
#define STABCERT_GEOMETRY_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "stabcert/gf2.hpp"

namespace stabcert {

/// Projective spaces handled here are PG(n,2) with n <= 7, i.e. vector
/// dimension at most 8, so a point always fits in one byte.
inline constexpr int kMaxGeomDim = 8;

void require_geom_dim(int dim, int lo = 1);

/// Set of points of PG(<=7,2), indexed by their vector value (1..255).
class PointMask {
 public:
  constexpr PointMask() = default;

  void set(Word p) { w_[p >> 6] |= std::uint64_t{1} << (p & 63); }
  void reset(Word p) { w_[p >> 6] &= ~(std::uint64_t{1} << (p & 63)); }
  bool test(Word p) const { return (w_[p >> 6] >> (p & 63)) & 1u; }

  bool intersects(const PointMask& o) const {
    return ((w_[0] & o.w_[0]) | (w_[1] & o.w_[1]) | (w_[2] & o.w_[2]) | (w_[3] & o.w_[3])) != 0;
  }
  PointMask& operator|=(const PointMask& o) {
    for (int i = 0; i < 4; ++i) w_[i] |= o.w_[i];
    return *this;
  }
  PointMask& operator&=(const PointMask& o) {
    for (int i = 0; i < 4; ++i) w_[i] &= o.w_[i];
    return *this;
  }
  friend PointMask operator|(PointMask a, const PointMask& b) { return a |= b; }
  friend PointMask operator&(PointMask a, const PointMask& b) { return a &= b; }
  friend bool operator==(const PointMask&, const PointMask&) = default;

  int count() const;
  bool empty() const { return (w_[0] | w_[1] | w_[2] | w_[3]) == 0; }
  std::vector<Word> points() const;

  /// All nonzero vectors in the span of `gens`.
  static PointMask span_of(std::span<const Word> gens);

 private:
  std::array<std::uint64_t, 4> w_{};
};

/// A point of PG(dim-1, 2): a nonzero vector of the dim-dimensional space.
class PGPoint {
 public:
  PGPoint() = default;
  PGPoint(Word vec, int dim);
  static PGPoint parse(std::string_view text);

  Word vec() const { return vec_; }
  int dim() const { return dim_; }
  /// "(0:0:0:0:0:0:1)" with coordinate 1 first.
  std::string to_string() const;

  friend bool operator==(const PGPoint&, const PGPoint&) = default;
  friend auto operator<=>(const PGPoint&, const PGPoint&) = default;

 private:
  Word vec_ = 0;
  int dim_ = 0;
};

/// A line {a, b, a+b}; equality ignores which generators were used.
class PGLine {
 public:
  PGLine() = default;
  PGLine(Word a, Word b, int dim);

  Word a() const { return a_; }
  Word b() const { return b_; }
  int dim() const { return dim_; }
  std::array<Word, 3> points() const;
  bool contains(Word p) const { return p == a_ || p == b_ || p == (a_ ^ b_); }
  PointMask mask() const;
  /// Canonical 16-bit key: the two smallest points, smaller in the high byte.
  std::uint16_t key() const;
  static PGLine from_key(std::uint16_t key, int dim);

  std::string to_string() const;

  friend bool operator==(const PGLine& x, const PGLine& y) { return x.key() == y.key(); }
  friend bool operator<(const PGLine& x, const PGLine& y) { return x.key() < y.key(); }

 private:
  Word a_ = 0;
  Word b_ = 0;
  int dim_ = 0;
};

/// Subspace of the dim-dimensional vector space, stored in reduced echelon
/// form so that equal subspaces compare equal.
class Subspace {
 public:
  Subspace() = default;
  Subspace(std::span<const Word> generators, int ambient_dim);

  /// Hyperplane {x : normal . x = 0}.
  static Subspace hyperplane(Word normal, int ambient_dim);

  int ambient_dim() const { return ambient_dim_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<Word>& basis() const { return basis_; }
  bool contains(Word v) const;
  bool contains(const PGLine& l) const { return contains(l.a()) && contains(l.b()); }
  PointMask mask() const { return PointMask::span_of(basis_); }
  /// Set only for hyperplanes built through hyperplane() or enumerate_hyperplanes().
  std::optional<Word> normal() const { return normal_; }

  GF2Matrix basis_matrix() const;

  friend bool operator==(const Subspace& x, const Subspace& y) {
    return x.ambient_dim_ == y.ambient_dim_ && x.basis_ == y.basis_;
  }

 private:
  std::vector<Word> basis_;
  int ambient_dim_ = 0;
  std::optional<Word> normal_;
};

/// Linear map of the dim-dimensional space given by the images of e_1..e_dim.
class LinearMap {
 public:
  LinearMap() = default;
  LinearMap(std::span<const Word> images, int dim);
  static LinearMap identity(int dim);

  int dim() const { return dim_; }
  Word image(int i) const { return cols_[i]; }
  Word apply(Word v) const {
    Word r = 0;
    for (int i = 0; v != 0; ++i, v >>= 1) {
      if (v & 1u) r ^= cols_[i];
    }
    return r;
  }
  PGLine apply(const PGLine& l) const { return PGLine(apply(l.a()), apply(l.b()), dim_); }
  bool invertible() const;
  LinearMap inverse() const;
  /// (f * g)(v) = f(g(v)).
  friend LinearMap operator*(const LinearMap& f, const LinearMap& g);
  friend bool operator==(const LinearMap& x, const LinearMap& y) {
    return x.dim_ == y.dim_ && x.cols_ == y.cols_;
  }

  /// Matrix whose column i is the image of e_{i+1}.
  GF2Matrix matrix() const;

 private:
  std::array<Word, kMaxGeomDim> cols_{};
  int dim_ = 0;
};

/// |GL(dim, 2)|.
unsigned __int128 gl_order(int dim);

std::vector<PGPoint> enumerate_points(int ambient_dim);
std::vector<PGLine> enumerate_lines(int ambient_dim);
std::vector<Subspace> enumerate_hyperplanes(int ambient_dim);
std::vector<Subspace> enumerate_secunda(int ambient_dim);

using GeomObject = std::variant<PGPoint, PGLine, Subspace>;
Subspace span(std::span<const GeomObject> objects);

/// Factor space V / kernel. Coordinates of the factor space are the
/// non-pivot coordinates of the kernel's echelon basis, in increasing order;
/// for kernel <e_1..e_4> of an 8-space these are e_5..e_8.
class QuotientMap {
 public:
  QuotientMap() = default;
  explicit QuotientMap(Subspace kernel);

  const Subspace& kernel() const { return kernel_; }
  int image_dim() const { return kernel_.ambient_dim() - kernel_.dim(); }
  Word apply(Word v) const;
  /// Factor-space coordinate positions (0-based) in the ambient space.
  const std::vector<int>& complement() const { return complement_; }

 private:
  Subspace kernel_;
  std::vector<int> complement_;
  std::array<Word, 32> pivot_rows_{};
  Word pivot_bits_ = 0;
};

struct Degenerate {};
using Projection = std::variant<PGLine, PGPoint, Degenerate>;
Projection project(const QuotientMap& q, const PGLine& line);

/// No three of the points collinear. Throws on repeated points.
bool is_cap(std::span<const PGPoint> points);
/// All lines through at least two of the points, sorted, without repeats.
std::vector<PGLine> secants(std::span<const PGPoint> points);

/// Read-only per-dimension tables shared by the searches.
struct GeometryTables {
  int dim = 0;
  std::vector<PGLine> lines;
  std::vector<PointMask> line_masks;
  std::vector<int> line_index;  // by PGLine::key(), -1 when absent

  int index_of(const PGLine& l) const { return line_index[l.key()]; }
};
const GeometryTables& tables(int dim);

}  // namespace stabcert

#endif  // STABCERT_GEOMETRY_HPP
