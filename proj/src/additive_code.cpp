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

#include "stabcert/additive_code.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace stabcert {

LineSystem lines_from_matrix(const GF2Matrix& m) {
  if (m.ncols() % 2 != 0) throw DimensionError("matrix needs an even number of columns");
  LineSystem ls;
  ls.ambient_dim = m.nrows();
  for (int j = 0; j < m.ncols() / 2; ++j) {
    Word a = 0;
    Word b = 0;
    for (int r = 0; r < m.nrows(); ++r) {
      if (m.at(r, 2 * j)) a |= Word{1} << r;
      if (m.at(r, 2 * j + 1)) b |= Word{1} << r;
    }
    ls.lines.emplace_back(a, b, m.nrows());
  }
  return ls;
}

AdditiveCode::AdditiveCode(GF2Matrix gen, int n) : n_(n) {
  if (gen.ncols() != 2 * n) throw DimensionError("generator needs 2n columns");
  if (rank(gen) == gen.nrows()) {
    gen_ = std::move(gen);
    return;
  }
  GF2Matrix r = row_reduce(gen);
  gen_ = GF2Matrix(2 * n);
  for (const auto& row : r.rows()) {
    if (!row.is_zero()) gen_.append_row(row);
  }
}

std::string AdditiveCode::dimension_string() const {
  std::string s = std::to_string(k2() / 2);
  if (k2() % 2 != 0) s += ".5";
  return s;
}

std::vector<Word> AdditiveCode::codewords() const {
  std::vector<Word> out;
  const int k = k2();
  if (k > 26) throw DimensionError("code too large to enumerate");
  out.reserve(std::size_t{1} << k);
  Word w = 0;
  out.push_back(w);
  for (std::uint64_t i = 1; i < (std::uint64_t{1} << k); ++i) {
    w ^= gen_.row(std::countr_zero(i)).bits();
    out.push_back(w);
  }
  return out;
}

bool AdditiveCode::contains(Word word) const {
  if (k2() == 0) return word == 0;
  return solve_in_span(gen_, GF2Vector(word, 2 * n_)).has_value();
}

AdditiveCode code_from_lines(const LineSystem& ls) {
  const int n = ls.size();
  if (n == 0) return AdditiveCode();
  GF2Matrix g(2 * n);
  for (int r = 0; r < ls.ambient_dim; ++r) {
    Word row = 0;
    for (int i = 0; i < n; ++i) {
      if ((ls.lines[i].a() >> r) & 1u) row |= Word{1} << (2 * i);
      if ((ls.lines[i].b() >> r) & 1u) row |= Word{1} << (2 * i + 1);
    }
    g.append_row(GF2Vector(row, 2 * n));
  }
  return AdditiveCode(std::move(g), n);
}

int quaternary_weight(const GF2Vector& word, int n) {
  if (word.len() != 2 * n) throw DimensionError("word length is not 2n");
  return quaternary_weight_bits(word.bits());
}

AdditiveCode symplectic_dual(const AdditiveCode& c) {
  const int n = c.length();
  // x is symplectically orthogonal to g iff x . swap(g) = 0.
  GF2Matrix swapped(2 * n);
  for (const auto& r : c.generator().rows()) {
    Word v = r.bits();
    Word s = ((v & 0x55555555u) << 1) | ((v >> 1) & 0x55555555u);
    swapped.append_row(GF2Vector(s, 2 * n));
  }
  GF2Matrix dual(2 * n);
  if (c.k2() == 0) {
    dual = GF2Matrix::identity(2 * n);
  } else {
    for (const auto& v : kernel(swapped)) dual.append_row(v);
  }
  return AdditiveCode(std::move(dual), n);
}

int min_quaternary_distance(const AdditiveCode& c) {
  if (c.k2() == 0) throw std::domain_error("zero code has no minimum distance");
  int best = std::numeric_limits<int>::max();
  Word w = 0;
  const int k = c.k2();
  for (std::uint64_t i = 1; i < (std::uint64_t{1} << k); ++i) {
    w ^= c.generator().row(std::countr_zero(i)).bits();
    best = std::min(best, quaternary_weight_bits(w));
  }
  return best;
}

namespace {

bool subsets_in_general_position(const LineSystem& ls, int t) {
  const int n = ls.size();
  std::vector<int> idx(t);
  for (int i = 0; i < t; ++i) idx[i] = i;
  std::vector<Word> gens;
  while (true) {
    gens.clear();
    for (int i : idx) {
      gens.push_back(ls.lines[i].a());
      gens.push_back(ls.lines[i].b());
    }
    if (rank(gens) != 2 * t) return false;
    int k = t - 1;
    while (k >= 0 && idx[k] == n - t + k) --k;
    if (k < 0) return true;
    ++idx[k];
    for (int j = k + 1; j < t; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

int strength(const LineSystem& ls) {
  const int cap = std::min(ls.size(), ls.ambient_dim / 2);
  int t = 1;
  while (t < cap && subsets_in_general_position(ls, t + 1)) ++t;
  return ls.size() == 0 ? 0 : t;
}

std::vector<GF2Vector> words_supported_on(const AdditiveCode& c, std::span<const int> support) {
  const int n = c.length();
  Word inside = 0;
  for (int i : support) {
    if (i < 0 || i >= n) throw DimensionError("support index out of range");
    inside |= Word{3} << (2 * i);
  }
  const int k = c.k2();
  if (k == 0) return {};
  // Coefficient vectors x with x * G vanishing on every outside column.
  GF2Matrix outside(k);
  for (int col = 0; col < 2 * n; ++col) {
    if ((inside >> col) & 1u) continue;
    Word v = 0;
    for (int r = 0; r < k; ++r) {
      if (c.generator().at(r, col)) v |= Word{1} << r;
    }
    outside.append_row(GF2Vector(v, k));
  }
  std::vector<GF2Vector> basis;
  if (outside.nrows() == 0) {
    basis = GF2Matrix::identity(k).rows();
  } else {
    basis = kernel(outside);
  }
  std::vector<Word> words;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << basis.size()); ++mask) {
    Word coeff = 0;
    for (std::size_t b = 0; b < basis.size(); ++b) {
      if ((mask >> b) & 1u) coeff ^= basis[b].bits();
    }
    Word w = 0;
    for (int r = 0; r < k; ++r) {
      if ((coeff >> r) & 1u) w ^= c.generator().row(r).bits();
    }
    words.push_back(w);
  }
  std::sort(words.begin(), words.end());
  std::vector<GF2Vector> out;
  for (Word w : words) out.emplace_back(w, 2 * n);
  return out;
}

bool same_code(const AdditiveCode& x, const AdditiveCode& y) {
  if (x.length() != y.length() || x.k2() != y.k2()) return false;
  for (const auto& r : y.generator().rows()) {
    if (!x.contains(r.bits())) return false;
  }
  return true;
}

CodeReport report(const AdditiveCode& c) {
  CodeReport r;
  r.n = c.length();
  r.k2 = c.k2();
  r.distance = c.k2() == 0 ? 0 : min_quaternary_distance(c);
  AdditiveCode d = symplectic_dual(c);
  r.dual_distance = d.k2() == 0 ? 0 : min_quaternary_distance(d);
  return r;
}

std::string CodeReport::to_string() const {
  std::ostringstream os;
  os << "n " << n << "\nk " << k2 / 2 << (k2 % 2 ? ".5" : "") << "\nk2 " << k2 << "\nd "
     << distance << "\ndual_d " << dual_distance << "\n";
  return os.str();
}

}  // namespace stabcert
