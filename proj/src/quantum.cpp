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

#include "stabcert/quantum.hpp"

#include <map>
#include <mutex>

namespace stabcert {

bool is_self_orthogonal(const AdditiveCode& c) {
  const auto& rows = c.generator().rows();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      if (symplectic_product(rows[i], rows[j])) return false;
    }
  }
  return true;
}

bool quantum_condition(const LineSystem& ls) {
  if (ls.size() == 0) return true;
  return is_self_orthogonal(code_from_lines(ls));
}

namespace {

const std::vector<PointMask>& secundum_masks(int dim) {
  static std::mutex mu;
  static std::map<int, std::vector<PointMask>> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(dim);
  if (it != cache.end()) return it->second;
  std::vector<PointMask> masks;
  for (const auto& s : enumerate_secunda(dim)) masks.push_back(s.mask());
  return cache.emplace(dim, std::move(masks)).first->second;
}

}  // namespace

bool quantum_condition_geometric(const LineSystem& ls) {
  require_geom_dim(ls.ambient_dim, 2);
  std::vector<PointMask> lm;
  for (const auto& l : ls.lines) lm.push_back(l.mask());
  const int want = ls.size() & 1;
  for (const auto& s : secundum_masks(ls.ambient_dim)) {
    int meets = 0;
    for (const auto& m : lm) meets += s.intersects(m) ? 1 : 0;
    if ((meets & 1) != want) return false;
  }
  return true;
}

int WeightTable::weight(const PGLine& g) const { return w_[tables(4).index_of(g)]; }

void WeightTable::set_weight(const PGLine& g, int w) {
  if (g.dim() != 4) throw DimensionError("weight tables live on PG(3,2)");
  if (w < 0) throw std::invalid_argument("negative line weight");
  w_[tables(4).index_of(g)] = w;
}

int WeightTable::point_weight(Word p) const {
  const auto& t = tables(4);
  int s = 0;
  for (std::size_t i = 0; i < t.lines.size(); ++i) {
    if (t.lines[i].contains(p)) s += w_[i];
  }
  return s;
}

int WeightTable::plane_weight(Word normal) const {
  const auto& t = tables(4);
  int s = 0;
  for (std::size_t i = 0; i < t.lines.size(); ++i) {
    if (!parity(t.lines[i].a() & normal) && !parity(t.lines[i].b() & normal)) s += w_[i];
  }
  return s;
}

int WeightTable::total() const {
  int s = 0;
  for (int w : w_) s += w;
  return s;
}

WeightTable factor_weights(const LineSystem& ls, const QuotientMap& q) {
  if (q.image_dim() != 4) throw DimensionError("factor space must be PG(3,2)");
  if (q.kernel().ambient_dim() != ls.ambient_dim) throw DimensionError("quotient and lines differ in dimension");
  WeightTable wt;
  const auto& t = tables(4);
  std::array<int, 35> w{};
  for (const auto& l : ls.lines) {
    Projection p = project(q, l);
    if (std::holds_alternative<Degenerate>(p)) continue;
    if (std::holds_alternative<PGPoint>(p)) {
      throw DegenerateProjection("line " + l.to_string() + " meets the kernel in a point");
    }
    ++w[t.index_of(std::get<PGLine>(p))];
  }
  return WeightTable(w);
}

bool multiset_parity_condition(const WeightTable& wt) {
  const auto& t = tables(4);
  for (std::size_t h = 0; h < t.lines.size(); ++h) {
    int s = 0;
    for (std::size_t g = 0; g < t.lines.size(); ++g) {
      if (t.line_masks[h].intersects(t.line_masks[g])) s += wt.line_weights()[g];
    }
    if ((s & 1) == 0) return false;
  }
  return true;
}

bool hyperplane_parity(std::span<const PGPoint> points, int n_lines) {
  if (points.empty()) return (n_lines & 1) != 0;
  const int d = points.front().dim();
  for (const auto& p : points) {
    if (p.dim() != d) throw DimensionError("points from different ambient spaces");
  }
  require_geom_dim(d);
  for (Word u = 1; u < (Word{1} << d); ++u) {
    int inside = 0;
    for (const auto& p : points) inside += parity(u & p.vec()) ? 0 : 1;
    if ((inside & 1) == (n_lines & 1)) return false;
  }
  return true;
}

bool even_weight_condition(std::span<const PGPoint> points) {
  Word sum = 0;
  for (const auto& p : points) sum ^= p.vec();
  return sum == 0;
}

}  // namespace stabcert
