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

#include "stabcert/completion.hpp"

#include <array>
#include <bit>
#include <stdexcept>

#include "stabcert/nmset.hpp"
#include "stabcert/quantum.hpp"

namespace stabcert {

namespace {

constexpr int kDim = 8;
constexpr Word kPiCoords = 0xF0;
constexpr Word kLiftCoords = 0x0F;

// Equation index of the coordinate pair {r, s}, r != s.
struct PairIndex {
  std::array<std::array<int, kDim>, kDim> idx{};
  Word pi_equations = 0;
  PairIndex() {
    int e = 0;
    for (int r = 0; r < kDim; ++r) {
      for (int s = r + 1; s < kDim; ++s) {
        idx[r][s] = idx[s][r] = e;
        if (r >= 4) pi_equations |= Word{1} << e;
        ++e;
      }
    }
  }
};
const PairIndex& pairs() {
  static const PairIndex p;
  return p;
}

int bit(Word v, int i) { return static_cast<int>((v >> i) & 1u); }

// Symplectic products of the coordinate-row pairs restricted to one line.
Word line_pairs(Word a, Word b) {
  Word out = 0;
  for (int r = 0; r < kDim; ++r) {
    for (int s = r + 1; s < kDim; ++s) {
      if ((bit(a, r) & bit(b, s)) ^ (bit(b, r) & bit(a, s))) out |= Word{1} << pairs().idx[r][s];
    }
  }
  return out;
}

// Effect on the pair products of flipping coordinate t of b in <a, b>.
Word column(Word a, int t) {
  Word out = 0;
  for (int u = 0; u < kDim; ++u) {
    if (u != t && bit(a, u)) out |= Word{1} << pairs().idx[t][u];
  }
  return out;
}

Word contribution(Word a, Word v) {
  Word out = 0;
  for (Word m = v; m != 0; m &= m - 1) out ^= column(a, std::countr_zero(m));
  return out;
}

// Echelon basis keyed by the leading bit.
struct Basis {
  std::array<Word, 32> by_lead{};
  Word reduce(Word v) const {
    while (v != 0) {
      int hb = 31 - std::countl_zero(v);
      if (by_lead[hb] == 0) return v;
      v ^= by_lead[hb];
    }
    return 0;
  }
  void add(Word v) {
    v = reduce(v);
    if (v != 0) by_lead[31 - std::countl_zero(v)] = v;
  }
};

template <typename Fn>
void for_each_subset(Word mask, Fn&& fn) {
  Word s = 0;
  do {
    fn(s);
    s = (s - mask) & mask;
  } while (s != 0);
}

void validate(const CompletionProblem& p) {
  if (p.base.size() != p.a.size() || p.free.size() != p.a.size()) {
    throw std::invalid_argument("completion problem has ragged inputs");
  }
  for (const auto& l : p.fixed) {
    if (l.dim() != kDim) throw DimensionError("completion works in PG(7,2)");
  }
}

PointMask line_mask(Word a, Word b) {
  PointMask m;
  m.set(a);
  m.set(b);
  m.set(a ^ b);
  return m;
}

// Linear system shared by both routes: constant and per-line columns.
struct System {
  Word constant = 0;
  std::vector<std::array<Word, kDim>> cols;  // [line][coordinate]
};

System build_system(const CompletionProblem& p) {
  System sys;
  for (const auto& l : p.fixed) sys.constant ^= line_pairs(l.a(), l.b());
  for (int i = 0; i < p.open_lines(); ++i) {
    sys.constant ^= line_pairs(p.a[i], p.base[i]);
    std::array<Word, kDim> c{};
    for (int t = 0; t < kDim; ++t) c[t] = column(p.a[i], t);
    sys.cols.push_back(c);
  }
  return sys;
}

Word apply_cols(const std::array<Word, kDim>& cols, Word v) {
  Word out = 0;
  for (Word m = v; m != 0; m &= m - 1) out ^= cols[std::countr_zero(m)];
  return out;
}

// Suffix spans: suffix[k] is spanned by the columns of lines k.. restricted
// to the coordinates in `coords`.
std::vector<Basis> suffix_spans(const CompletionProblem& p, const System& sys, Word coords) {
  const int n = p.open_lines();
  std::vector<Basis> suffix(n + 1);
  for (int k = n - 1; k >= 0; --k) {
    suffix[k] = suffix[k + 1];
    for (Word m = p.free[k] & coords; m != 0; m &= m - 1) suffix[k].add(sys.cols[k][std::countr_zero(m)]);
  }
  return suffix;
}

class StagedSearch {
 public:
  StagedSearch(const CompletionProblem& p, CompletionStats& st)
      : p_(p), st_(st), sys_(build_system(p)), n_(p.open_lines()), t4_(tables(4)) {
    lift_suffix_ = suffix_spans(p, sys_, kLiftCoords);
    for (std::size_t h = 0; h < t4_.lines.size(); ++h) {
      std::uint64_t m = 0;
      for (std::size_t g = 0; g < t4_.lines.size(); ++g) {
        if (t4_.line_masks[h].intersects(t4_.line_masks[g])) m |= std::uint64_t{1} << g;
      }
      meets_[h] = m;
    }
  }

  void run() {
    // Fixed lines: kernel lines drop out, the rest must project to lines.
    int kernel_lines = 0;
    std::uint64_t parity = 0;
    for (const auto& l : p_.fixed) {
      Word pa = l.a() >> 4;
      Word pb = l.b() >> 4;
      if (pa == 0 && pb == 0) {
        ++kernel_lines;
        continue;
      }
      if (pa == 0 || pb == 0 || pa == pb) throw DegenerateProjection("fixed line meets the kernel in a point");
      parity ^= meets_[t4_.index_of(PGLine(pa, pb, 4))];
    }
    const int total = static_cast<int>(p_.fixed.size()) + n_;
    target_ = ((total - kernel_lines) & 1) ? (std::uint64_t{1} << 35) - 1 : 0;

    choices_.resize(n_);
    for (int i = 0; i < n_; ++i) {
      for_each_subset(p_.free[i] & kPiCoords, [&](Word v) {
        Word pa = p_.a[i] >> 4;
        Word pb = (p_.base[i] ^ v) >> 4;
        // Projection must be a line; otherwise this line meets the kernel.
        if (pa == 0 || pb == 0 || pa == pb) return;
        choices_[i].push_back({v, meets_[t4_.index_of(PGLine(pa, pb, 4))], contribution(p_.a[i], v)});
      });
    }

    Strength3Builder root(kDim);
    for (const auto& l : p_.fixed) {
      if (!root.try_add(l)) throw std::invalid_argument("fixed lines do not have strength 3");
    }
    root_ = &root;
    std::vector<Word> pi(n_);
    pi_dfs(0, parity, sys_.constant, pi);
  }

 private:
  struct Choice {
    Word v;
    std::uint64_t meets;
    Word contrib;
  };

  void pi_dfs(int i, std::uint64_t parity, Word residual, std::vector<Word>& pi) {
    if (i == n_) {
      ++st_.pi_assignments;
      const bool geometric = parity == target_;
      const bool algebraic = (residual & pairs().pi_equations) == 0;
      if (geometric != algebraic) throw std::logic_error("factor-space parity disagrees with the symplectic form");
      if (!geometric) return;
      ++st_.pi_survivors;
      std::vector<Word> v = pi;
      lift(0, *root_, residual, v);
      return;
    }
    for (const auto& c : choices_[i]) {
      pi[i] = c.v;
      pi_dfs(i + 1, parity ^ c.meets, residual ^ c.contrib, pi);
    }
  }

  void lift(int i, const Strength3Builder& b, Word residual, std::vector<Word>& v) {
    if (i == n_) {
      if (residual != 0) throw std::logic_error("lift reached a leaf with unsolved equations");
      st_.solutions.push_back(v);
      return;
    }
    const Word pi_part = v[i];
    for_each_subset(p_.free[i] & kLiftCoords, [&](Word u) {
      const Word bb = p_.base[i] ^ pi_part ^ u;
      ++st_.candidates;
      if (bb == 0 || bb == p_.a[i]) return;
      if (!b.can_add_line(line_mask(p_.a[i], bb))) return;
      const Word r = residual ^ apply_cols(sys_.cols[i], u);
      if (lift_suffix_[i + 1].reduce(r) != 0) return;
      ++st_.nodes;
      Strength3Builder nb = b;
      nb.add_line(p_.a[i], bb);
      v[i] = pi_part ^ u;
      lift(i + 1, nb, r, v);
      v[i] = pi_part;
    });
  }

  const CompletionProblem& p_;
  CompletionStats& st_;
  System sys_;
  int n_;
  const GeometryTables& t4_;
  std::vector<Basis> lift_suffix_;
  std::array<std::uint64_t, 35> meets_{};
  std::uint64_t target_ = 0;
  std::vector<std::vector<Choice>> choices_;
  const Strength3Builder* root_ = nullptr;
};

bool compatible_by_rank(const std::vector<std::array<Word, 2>>& lines, Word a, Word b) {
  if (rank(std::vector<Word>{a, b}) != 2) return false;
  for (std::size_t j = 0; j < lines.size(); ++j) {
    if (rank(std::vector<Word>{a, b, lines[j][0], lines[j][1]}) != 4) return false;
    for (std::size_t k = j + 1; k < lines.size(); ++k) {
      std::vector<Word> g{a, b, lines[j][0], lines[j][1], lines[k][0], lines[k][1]};
      if (rank(g) != 6) return false;
    }
  }
  return true;
}

class DirectSearch {
 public:
  DirectSearch(const CompletionProblem& p, CompletionStats& st)
      : p_(p), st_(st), sys_(build_system(p)), n_(p.open_lines()) {
    suffix_ = suffix_spans(p, sys_, 0xFF);
  }

  void run() {
    std::vector<std::array<Word, 2>> lines;
    for (const auto& l : p_.fixed) lines.push_back({l.a(), l.b()});
    if (!strength3_by_rank(LineSystem{kDim, p_.fixed})) {
      throw std::invalid_argument("fixed lines do not have strength 3");
    }
    std::vector<Word> v(n_);
    dfs(0, lines, sys_.constant, v);
  }

 private:
  void dfs(int i, std::vector<std::array<Word, 2>>& lines, Word residual, std::vector<Word>& v) {
    if (i == n_) {
      if (residual != 0) throw std::logic_error("direct search reached a leaf with unsolved equations");
      st_.solutions.push_back(v);
      return;
    }
    for_each_subset(p_.free[i], [&](Word x) {
      const Word bb = p_.base[i] ^ x;
      ++st_.candidates;
      const Word r = residual ^ apply_cols(sys_.cols[i], x);
      if (suffix_[i + 1].reduce(r) != 0) return;
      if (!compatible_by_rank(lines, p_.a[i], bb)) return;
      ++st_.nodes;
      lines.push_back({p_.a[i], bb});
      v[i] = x;
      dfs(i + 1, lines, r, v);
      lines.pop_back();
    });
  }

  const CompletionProblem& p_;
  CompletionStats& st_;
  System sys_;
  int n_;
  std::vector<Basis> suffix_;
};

}  // namespace

LineSystem CompletionProblem::assemble(const std::vector<Word>& v) const {
  if (v.size() != a.size()) throw std::invalid_argument("wrong number of open vectors");
  LineSystem ls{kDim, fixed};
  for (std::size_t i = 0; i < a.size(); ++i) ls.lines.emplace_back(a[i], base[i] ^ v[i], kDim);
  return ls;
}

CompletionStats complete_staged(const CompletionProblem& p) {
  validate(p);
  CompletionStats st;
  StagedSearch s(p, st);
  s.run();
  return st;
}

CompletionStats complete_direct(const CompletionProblem& p) {
  validate(p);
  CompletionStats st;
  DirectSearch s(p, st);
  s.run();
  return st;
}

bool strength3_by_rank(const LineSystem& ls) {
  const auto& L = ls.lines;
  const std::size_t n = L.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (rank(std::vector<Word>{L[i].a(), L[i].b()}) != 2) return false;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rank(std::vector<Word>{L[i].a(), L[i].b(), L[j].a(), L[j].b()}) != 4) return false;
      for (std::size_t k = j + 1; k < n; ++k) {
        std::vector<Word> g{L[i].a(), L[i].b(), L[j].a(), L[j].b(), L[k].a(), L[k].b()};
        if (rank(g) != 6) return false;
      }
    }
  }
  return true;
}

}  // namespace stabcert
