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

#include "stabcert/gf2.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace stabcert {

namespace {

Word low_mask(int len) { return len >= 32 ? ~Word{0} : ((Word{1} << len) - 1); }

void require_len(int len) {
  if (len < 1 || len > kMaxDim) {
    throw DimensionError("vector length " + std::to_string(len) + " outside 1..32");
  }
}

}  // namespace

GF2Vector::GF2Vector(Word bits, int len) : bits_(bits), len_(len) {
  require_len(len);
  if ((bits & ~low_mask(len)) != 0) {
    throw DimensionError("bits set beyond vector length");
  }
}

GF2Vector GF2Vector::parse(std::string_view text) {
  Word bits = 0;
  int len = 0;
  for (char c : text) {
    if (c == '0' || c == '1') {
      if (len == kMaxDim) throw DimensionError("vector longer than 32");
      if (c == '1') bits |= Word{1} << len;
      ++len;
    } else if (c != '|' && c != ' ' && c != '\t') {
      throw ParseError(std::string("unexpected character '") + c + "'", 0);
    }
  }
  return GF2Vector(bits, len);
}

GF2Vector& GF2Vector::operator+=(const GF2Vector& o) {
  if (o.len_ != len_) throw DimensionError("vector length mismatch");
  bits_ ^= o.bits_;
  return *this;
}

std::string GF2Vector::to_string() const {
  std::string s(len_, '0');
  for (int i = 0; i < len_; ++i) {
    if (bit(i)) s[i] = '1';
  }
  return s;
}

GF2Matrix::GF2Matrix(std::vector<GF2Vector> rows, int ncols)
    : rows_(std::move(rows)), ncols_(ncols) {
  for (const auto& r : rows_) {
    if (r.len() != ncols_) throw DimensionError("row length differs from ncols");
  }
}

GF2Matrix GF2Matrix::identity(int n) {
  GF2Matrix m(n);
  for (int i = 1; i <= n; ++i) m.append_row(GF2Vector::unit_vector(n, i));
  return m;
}

GF2Matrix GF2Matrix::zeros(int nrows, int ncols) {
  GF2Matrix m(ncols);
  for (int i = 0; i < nrows; ++i) m.append_row(GF2Vector::zero(ncols));
  return m;
}

void GF2Matrix::append_row(const GF2Vector& v) {
  if (v.len() != ncols_) throw DimensionError("row length differs from ncols");
  rows_.push_back(v);
}

GF2Matrix GF2Matrix::transposed() const {
  if (rows_.empty()) return GF2Matrix(0);
  GF2Matrix t(nrows());
  for (int c = 0; c < ncols_; ++c) {
    Word bits = 0;
    for (int r = 0; r < nrows(); ++r) {
      if (at(r, c)) bits |= Word{1} << r;
    }
    t.append_row(GF2Vector(bits, nrows()));
  }
  return t;
}

int rank(const std::vector<Word>& vectors) {
  // Basis indexed by leading (highest) bit.
  Word basis[kMaxDim] = {};
  int r = 0;
  for (Word v : vectors) {
    while (v != 0) {
      int hb = 31 - std::countl_zero(v);
      if (basis[hb] == 0) {
        basis[hb] = v;
        ++r;
        break;
      }
      v ^= basis[hb];
    }
  }
  return r;
}

int rank(const GF2Matrix& m) {
  std::vector<Word> v;
  v.reserve(m.nrows());
  for (const auto& r : m.rows()) v.push_back(r.bits());
  return rank(v);
}

GF2Matrix row_reduce(const GF2Matrix& m) {
  std::vector<Word> rows;
  for (const auto& r : m.rows()) rows.push_back(r.bits());
  int top = 0;
  for (int col = 0; col < m.ncols() && top < static_cast<int>(rows.size()); ++col) {
    const Word bit = Word{1} << col;
    int pivot = -1;
    for (int r = top; r < static_cast<int>(rows.size()); ++r) {
      if (rows[r] & bit) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(rows[top], rows[pivot]);
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
      if (r != top && (rows[r] & bit)) rows[r] ^= rows[top];
    }
    ++top;
  }
  GF2Matrix out(m.ncols());
  for (Word w : rows) out.append_row(GF2Vector(w, m.ncols()));
  return out;
}

std::optional<GF2Vector> solve_in_span(const GF2Matrix& m, const GF2Vector& target) {
  if (target.len() != m.ncols()) throw DimensionError("target length differs from ncols");
  // Track which original rows make up each reduced row.
  struct Tracked {
    Word value;
    Word combo;
  };
  if (m.nrows() > kMaxDim) throw DimensionError("more than 32 rows");
  std::vector<Tracked> basis;
  for (int i = 0; i < m.nrows(); ++i) {
    Tracked t{m.row(i).bits(), Word{1} << i};
    for (const auto& b : basis) {
      Word lead = Word{1} << (31 - std::countl_zero(b.value));
      if (t.value & lead) {
        t.value ^= b.value;
        t.combo ^= b.combo;
      }
    }
    if (t.value != 0) {
      // Keep basis sorted by decreasing leading bit so a single pass reduces.
      auto pos = std::find_if(basis.begin(), basis.end(),
                              [&](const Tracked& b) { return b.value < t.value; });
      basis.insert(pos, t);
    }
  }
  Word v = target.bits();
  Word combo = 0;
  for (const auto& b : basis) {
    Word lead = Word{1} << (31 - std::countl_zero(b.value));
    if (v & lead) {
      v ^= b.value;
      combo ^= b.combo;
    }
  }
  if (v != 0) return std::nullopt;
  if (m.nrows() == 0) return std::nullopt;
  return GF2Vector(combo, m.nrows());
}

std::vector<GF2Vector> kernel(const GF2Matrix& m) {
  GF2Matrix r = row_reduce(m);
  const int n = m.ncols();
  std::vector<int> pivot_col;
  std::vector<Word> pivot_row;
  for (const auto& row : r.rows()) {
    if (row.is_zero()) continue;
    pivot_col.push_back(std::countr_zero(row.bits()));
    pivot_row.push_back(row.bits());
  }
  std::vector<GF2Vector> out;
  for (int free = 0; free < n; ++free) {
    if (std::find(pivot_col.begin(), pivot_col.end(), free) != pivot_col.end()) continue;
    Word x = Word{1} << free;
    for (std::size_t k = 0; k < pivot_col.size(); ++k) {
      if (pivot_row[k] & (Word{1} << free)) x |= Word{1} << pivot_col[k];
    }
    out.emplace_back(x, n);
  }
  return out;
}

bool symplectic_product(const GF2Vector& u, const GF2Vector& v) {
  if (u.len() != v.len()) throw DimensionError("vector length mismatch");
  if (u.len() % 2 != 0) throw DimensionError("symplectic form needs even length");
  return symplectic_bits(u.bits(), v.bits());
}

bool euclidean_product(const GF2Vector& u, const GF2Vector& v) {
  if (u.len() != v.len()) throw DimensionError("vector length mismatch");
  return parity(u.bits() & v.bits());
}

GF2Matrix parse_matrix(std::string_view text) {
  std::vector<GF2Vector> rows;
  int ncols = -1;
  int lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (line.find_first_not_of(" \t\r|") == std::string_view::npos) {
      if (end == text.size()) break;
      continue;
    }
    Word bits = 0;
    int len = 0;
    for (char c : line) {
      if (c == '0' || c == '1') {
        if (len == kMaxDim) throw ParseError("row longer than 32 columns", lineno);
        if (c == '1') bits |= Word{1} << len;
        ++len;
      } else if (c != '|' && c != ' ' && c != '\t' && c != '\r') {
        throw ParseError(std::string("unexpected character '") + c + "'", lineno);
      }
    }
    if (ncols >= 0 && len != ncols) throw ParseError("ragged row", lineno);
    ncols = len;
    rows.emplace_back(bits, len);
    if (end == text.size()) break;
  }
  if (ncols < 0) return GF2Matrix(0);
  return GF2Matrix(std::move(rows), ncols);
}

std::string format_matrix(const GF2Matrix& m, int group) {
  std::ostringstream os;
  for (const auto& r : m.rows()) {
    for (int c = 0; c < m.ncols(); ++c) {
      if (group > 0 && c > 0 && c % group == 0) os << ' ';
      os << (r.bit(c) ? '1' : '0');
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace stabcert
