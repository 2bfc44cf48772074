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

#include "stabcert/geometry.hpp"

#include <algorithm>
#include <array>
#include <memory>
#include <mutex>
#include <set>
#include <sstream>

namespace stabcert {

void require_geom_dim(int dim, int lo) {
  if (dim < lo || dim > kMaxGeomDim) {
    throw DimensionError("ambient dimension " + std::to_string(dim) + " outside " +
                         std::to_string(lo) + ".." + std::to_string(kMaxGeomDim));
  }
}

namespace {

Word dim_mask(int dim) { return (Word{1} << dim) - 1; }

// Echelon basis with pivot = lowest set bit, fully reduced, sorted by pivot.
std::vector<Word> echelon(std::span<const Word> gens) {
  std::vector<Word> basis;
  for (Word v : gens) {
    for (Word b : basis) {
      if (v & (b & -b)) v ^= b;
    }
    if (v == 0) continue;
    Word piv = v & -v;
    for (Word& b : basis) {
      if (b & piv) b ^= v;
    }
    basis.push_back(v);
  }
  std::sort(basis.begin(), basis.end(), [](Word x, Word y) { return (x & -x) < (y & -y); });
  return basis;
}

}  // namespace

int PointMask::count() const {
  int c = 0;
  for (auto x : w_) c += std::popcount(x);
  return c;
}

std::vector<Word> PointMask::points() const {
  std::vector<Word> out;
  for (int i = 0; i < 4; ++i) {
    std::uint64_t x = w_[i];
    while (x != 0) {
      out.push_back(static_cast<Word>(i * 64 + std::countr_zero(x)));
      x &= x - 1;
    }
  }
  return out;
}

PointMask PointMask::span_of(std::span<const Word> gens) {
  std::array<Word, 256> elems{};
  std::size_t n = 1;
  elems[0] = 0;
  for (Word g : gens) {
    bool in = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (elems[i] == g) {
        in = true;
        break;
      }
    }
    if (in) continue;
    for (std::size_t i = 0; i < n; ++i) elems[n + i] = elems[i] ^ g;
    n *= 2;
  }
  PointMask m;
  for (std::size_t i = 1; i < n; ++i) m.set(elems[i]);
  return m;
}

PGPoint::PGPoint(Word vec, int dim) : vec_(vec), dim_(dim) {
  require_geom_dim(dim);
  if (vec == 0 || (vec & ~dim_mask(dim)) != 0) throw DimensionError("invalid point vector");
}

PGPoint PGPoint::parse(std::string_view text) {
  Word v = 0;
  int len = 0;
  for (char c : text) {
    if (c == '0' || c == '1') {
      if (len == kMaxGeomDim) throw ParseError("point with more than 8 coordinates", 0);
      if (c == '1') v |= Word{1} << len;
      ++len;
    } else if (c != '(' && c != ')' && c != ':' && c != ' ') {
      throw ParseError(std::string("unexpected character '") + c + "' in point", 0);
    }
  }
  return PGPoint(v, len);
}

std::string PGPoint::to_string() const {
  std::string s = "(";
  for (int i = 0; i < dim_; ++i) {
    if (i > 0) s += ':';
    s += ((vec_ >> i) & 1u) ? '1' : '0';
  }
  return s + ")";
}

PGLine::PGLine(Word a, Word b, int dim) : a_(a), b_(b), dim_(dim) {
  require_geom_dim(dim, 2);
  if (a == 0 || b == 0 || a == b || ((a | b) & ~dim_mask(dim)) != 0) {
    throw DimensionError("line generators must be independent vectors of the ambient space");
  }
}

std::array<Word, 3> PGLine::points() const {
  std::array<Word, 3> p{a_, b_, a_ ^ b_};
  std::sort(p.begin(), p.end());
  return p;
}

PointMask PGLine::mask() const {
  PointMask m;
  m.set(a_);
  m.set(b_);
  m.set(a_ ^ b_);
  return m;
}

std::uint16_t PGLine::key() const {
  auto p = points();
  return static_cast<std::uint16_t>((p[0] << 8) | p[1]);
}

PGLine PGLine::from_key(std::uint16_t key, int dim) { return PGLine(key >> 8, key & 0xff, dim); }

std::string PGLine::to_string() const {
  return "<" + PGPoint(a_, dim_).to_string() + "," + PGPoint(b_, dim_).to_string() + ">";
}

Subspace::Subspace(std::span<const Word> generators, int ambient_dim)
    : ambient_dim_(ambient_dim) {
  require_geom_dim(ambient_dim);
  for (Word g : generators) {
    if ((g & ~dim_mask(ambient_dim)) != 0) throw DimensionError("generator outside ambient space");
  }
  basis_ = echelon(generators);
}

Subspace Subspace::hyperplane(Word normal, int ambient_dim) {
  require_geom_dim(ambient_dim);
  if (normal == 0 || (normal & ~dim_mask(ambient_dim)) != 0) {
    throw DimensionError("invalid hyperplane normal");
  }
  std::vector<Word> gens;
  int piv = std::countr_zero(normal);
  for (int i = 0; i < ambient_dim; ++i) {
    if (i == piv) continue;
    Word e = Word{1} << i;
    gens.push_back(parity(e & normal) ? (e | (Word{1} << piv)) : e);
  }
  Subspace s(gens, ambient_dim);
  s.normal_ = normal;
  return s;
}

bool Subspace::contains(Word v) const {
  if (normal_) return !parity(v & *normal_);
  for (Word b : basis_) {
    if (v & (b & -b)) v ^= b;
  }
  return v == 0;
}

GF2Matrix Subspace::basis_matrix() const {
  GF2Matrix m(ambient_dim_);
  for (Word b : basis_) m.append_row(GF2Vector(b, ambient_dim_));
  return m;
}

LinearMap::LinearMap(std::span<const Word> images, int dim) : dim_(dim) {
  require_geom_dim(dim);
  if (static_cast<int>(images.size()) != dim) throw DimensionError("need one image per basis vector");
  for (int i = 0; i < dim; ++i) {
    if ((images[i] & ~dim_mask(dim)) != 0) throw DimensionError("image outside ambient space");
    cols_[i] = images[i];
  }
}

LinearMap LinearMap::identity(int dim) {
  std::array<Word, kMaxGeomDim> id{};
  for (int i = 0; i < dim; ++i) id[i] = Word{1} << i;
  return LinearMap(std::span<const Word>(id.data(), dim), dim);
}

bool LinearMap::invertible() const {
  return rank(std::vector<Word>(cols_.begin(), cols_.begin() + dim_)) == dim_;
}

LinearMap LinearMap::inverse() const {
  // Table of v -> preimage, built by walking all combinations of the columns.
  const int n = dim_;
  std::array<Word, 256> pre{};
  std::array<bool, 256> seen{};
  seen[0] = true;
  Word img = 0;
  Word src = 0;
  for (Word k = 1; k < (Word{1} << n); ++k) {
    int bit = std::countr_zero(k);
    img ^= cols_[bit];
    src ^= Word{1} << bit;
    if (seen[img]) throw DimensionError("linear map is not invertible");
    seen[img] = true;
    pre[img] = src;
  }
  std::array<Word, kMaxGeomDim> inv{};
  for (int i = 0; i < n; ++i) inv[i] = pre[Word{1} << i];
  return LinearMap(std::span<const Word>(inv.data(), n), n);
}

LinearMap operator*(const LinearMap& f, const LinearMap& g) {
  if (f.dim_ != g.dim_) throw DimensionError("composing maps of different dimension");
  std::array<Word, kMaxGeomDim> c{};
  for (int i = 0; i < f.dim_; ++i) c[i] = f.apply(g.cols_[i]);
  return LinearMap(std::span<const Word>(c.data(), f.dim_), f.dim_);
}

GF2Matrix LinearMap::matrix() const {
  GF2Matrix m(dim_);
  for (int r = 0; r < dim_; ++r) {
    Word row = 0;
    for (int c = 0; c < dim_; ++c) {
      if ((cols_[c] >> r) & 1u) row |= Word{1} << c;
    }
    m.append_row(GF2Vector(row, dim_));
  }
  return m;
}

unsigned __int128 gl_order(int dim) {
  unsigned __int128 order = 1;
  const unsigned __int128 q = static_cast<unsigned __int128>(1) << dim;
  for (int i = 0; i < dim; ++i) order *= q - (static_cast<unsigned __int128>(1) << i);
  return order;
}

std::vector<PGPoint> enumerate_points(int ambient_dim) {
  require_geom_dim(ambient_dim);
  std::vector<PGPoint> pts;
  pts.reserve((1u << ambient_dim) - 1);
  for (Word v = 1; v < (Word{1} << ambient_dim); ++v) pts.emplace_back(v, ambient_dim);
  return pts;
}

std::vector<PGLine> enumerate_lines(int ambient_dim) {
  require_geom_dim(ambient_dim, 2);
  std::vector<PGLine> lines;
  const Word n = Word{1} << ambient_dim;
  for (Word p = 1; p < n; ++p) {
    for (Word q = p + 1; q < n; ++q) {
      if ((p ^ q) > q) lines.emplace_back(p, q, ambient_dim);
    }
  }
  return lines;
}

std::vector<Subspace> enumerate_hyperplanes(int ambient_dim) {
  require_geom_dim(ambient_dim);
  std::vector<Subspace> hs;
  for (Word h = 1; h < (Word{1} << ambient_dim); ++h) hs.push_back(Subspace::hyperplane(h, ambient_dim));
  return hs;
}

std::vector<Subspace> enumerate_secunda(int ambient_dim) {
  require_geom_dim(ambient_dim, 2);
  // Each secundum is the intersection of the three hyperplanes whose normals
  // form a line of the dual space; walking dual lines deduplicates.
  std::vector<Subspace> out;
  for (const PGLine& dual : enumerate_lines(ambient_dim)) {
    std::vector<Word> gens;
    for (Word v = 1; v < (Word{1} << ambient_dim); ++v) {
      if (!parity(v & dual.a()) && !parity(v & dual.b())) gens.push_back(v);
    }
    out.emplace_back(gens, ambient_dim);
  }
  return out;
}

Subspace span(std::span<const GeomObject> objects) {
  int dim = -1;
  std::vector<Word> gens;
  auto check_dim = [&](int d) {
    if (dim >= 0 && d != dim) throw DimensionError("objects from different ambient spaces");
    dim = d;
  };
  for (const auto& o : objects) {
    if (auto p = std::get_if<PGPoint>(&o)) {
      check_dim(p->dim());
      gens.push_back(p->vec());
    } else if (auto l = std::get_if<PGLine>(&o)) {
      check_dim(l->dim());
      gens.push_back(l->a());
      gens.push_back(l->b());
    } else {
      const auto& s = std::get<Subspace>(o);
      check_dim(s.ambient_dim());
      gens.insert(gens.end(), s.basis().begin(), s.basis().end());
    }
  }
  if (dim < 0) throw DimensionError("span of nothing has no ambient space");
  return Subspace(gens, dim);
}

QuotientMap::QuotientMap(Subspace kernel) : kernel_(std::move(kernel)) {
  for (Word b : kernel_.basis()) {
    int piv = std::countr_zero(b);
    pivot_rows_[piv] = b;
    pivot_bits_ |= Word{1} << piv;
  }
  for (int i = 0; i < kernel_.ambient_dim(); ++i) {
    if (!((pivot_bits_ >> i) & 1u)) complement_.push_back(i);
  }
}

Word QuotientMap::apply(Word v) const {
  Word hit = v & pivot_bits_;
  while (hit != 0) {
    int piv = std::countr_zero(hit);
    v ^= pivot_rows_[piv];
    hit = v & pivot_bits_;
  }
  Word out = 0;
  for (std::size_t k = 0; k < complement_.size(); ++k) {
    if ((v >> complement_[k]) & 1u) out |= Word{1} << k;
  }
  return out;
}

Projection project(const QuotientMap& q, const PGLine& line) {
  Word a = q.apply(line.a());
  Word b = q.apply(line.b());
  const int d = q.image_dim();
  if (a != 0 && b != 0 && a != b) return PGLine(a, b, d);
  Word p = a != 0 ? a : b;
  if (p != 0) return PGPoint(p, d);
  return Degenerate{};
}

bool is_cap(std::span<const PGPoint> points) {
  PointMask present;
  for (const auto& p : points) {
    if (present.test(p.vec())) throw std::invalid_argument("repeated point in cap test");
    present.set(p.vec());
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if (present.test(points[i].vec() ^ points[j].vec())) return false;
    }
  }
  return true;
}

std::vector<PGLine> secants(std::span<const PGPoint> points) {
  std::set<std::uint16_t> keys;
  int dim = points.empty() ? 0 : points[0].dim();
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if (points[i].vec() == points[j].vec()) throw std::invalid_argument("repeated point");
      keys.insert(PGLine(points[i].vec(), points[j].vec(), dim).key());
    }
  }
  std::vector<PGLine> out;
  for (auto k : keys) out.push_back(PGLine::from_key(k, dim));
  return out;
}

const GeometryTables& tables(int dim) {
  require_geom_dim(dim, 2);
  static std::array<std::unique_ptr<GeometryTables>, kMaxGeomDim + 1> cache;
  static std::array<std::once_flag, kMaxGeomDim + 1> once;
  std::call_once(once[dim], [dim] {
    auto t = std::make_unique<GeometryTables>();
    t->dim = dim;
    t->lines = enumerate_lines(dim);
    t->line_index.assign(1 << 16, -1);
    for (std::size_t i = 0; i < t->lines.size(); ++i) {
      t->line_masks.push_back(t->lines[i].mask());
      t->line_index[t->lines[i].key()] = static_cast<int>(i);
    }
    cache[dim] = std::move(t);
  });
  return *cache[dim];
}

}  // namespace stabcert
