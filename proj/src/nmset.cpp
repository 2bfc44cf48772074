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

#include "stabcert/nmset.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <map>
#include <optional>
#include <stdexcept>
#include <sstream>

#include "stabcert/parallel.hpp"

namespace stabcert {

namespace {

// Sets every nonzero vector of span(gens) in `mask`.
void or_span(PointMask& mask, const Word* gens, int k) {
  Word v = 0;
  for (Word i = 1; i < (Word{1} << k); ++i) {
    v ^= gens[std::countr_zero(i)];
    mask.set(v);
  }
}

std::uint16_t key_of(Word p, Word q) {
  Word r = p ^ q;
  if (p > q) std::swap(p, q);
  if (r < p) return static_cast<std::uint16_t>((r << 8) | p);
  if (r < q) return static_cast<std::uint16_t>((p << 8) | r);
  return static_cast<std::uint16_t>((p << 8) | q);
}

// Echelon basis keyed by highest bit; enough for independence tests.
struct SmallBasis {
  std::array<Word, 32> by_lead{};
  int size = 0;

  Word reduce(Word v) const {
    while (v != 0) {
      int hb = 31 - std::countl_zero(v);
      if (by_lead[hb] == 0) return v;
      v ^= by_lead[hb];
    }
    return 0;
  }
  bool add(Word v) {
    v = reduce(v);
    if (v == 0) return false;
    by_lead[31 - std::countl_zero(v)] = v;
    ++size;
    return true;
  }
};

}  // namespace

NMSet NMSet::sorted() const {
  NMSet s = *this;
  std::vector<PGLine> ls;
  for (const auto& l : s.lines) ls.push_back(PGLine::from_key(l.key(), l.dim()));
  std::sort(ls.begin(), ls.end());
  s.lines = std::move(ls);
  std::sort(s.points.begin(), s.points.end());
  return s;
}

NMSet NMSet::transformed(const LinearMap& g) const {
  if (g.dim() != ambient_dim) throw DimensionError("map and set live in different spaces");
  NMSet out{ambient_dim, {}, {}};
  for (const auto& l : lines) out.lines.push_back(g.apply(l));
  for (const auto& p : points) out.points.emplace_back(g.apply(p.vec()), ambient_dim);
  return out;
}

std::string format_nmset(const NMSet& s) {
  std::ostringstream os;
  for (int r = 0; r < s.ambient_dim; ++r) {
    for (int i = 0; i < s.n(); ++i) {
      if (i > 0) os << ' ';
      os << (((s.lines[i].a() >> r) & 1u) ? '1' : '0') << (((s.lines[i].b() >> r) & 1u) ? '1' : '0');
    }
    os << '\n';
  }
  for (const auto& p : s.points) os << p.to_string() << '\n';
  return os.str();
}

NMSet parse_nmset(std::string_view text) {
  std::string matrix_part;
  std::vector<std::pair<std::string, int>> point_lines;
  std::istringstream is{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t");
    if (first != std::string::npos && line[first] == '(') {
      point_lines.emplace_back(line.substr(first), lineno);
      matrix_part += "\n";
    } else {
      matrix_part += line + "\n";
    }
  }
  GF2Matrix m = parse_matrix(matrix_part);
  NMSet s;
  if (m.nrows() > 0) {
    s = NMSet::from_lines(lines_from_matrix(m));
  }
  for (const auto& [txt, no] : point_lines) {
    std::string body = txt;
    if (auto h = body.find('#'); h != std::string::npos) body = body.substr(0, h);
    while (!body.empty() && (body.back() == ' ' || body.back() == '\r')) body.pop_back();
    PGPoint p;
    try {
      p = PGPoint::parse(body);
    } catch (const std::exception& e) {
      throw ParseError(e.what(), no);
    }
    if (s.ambient_dim == 0) s.ambient_dim = p.dim();
    if (p.dim() != s.ambient_dim) throw ParseError("point dimension differs from matrix", no);
    s.points.push_back(p);
  }
  return s;
}

Strength3Builder::Strength3Builder(int ambient_dim) : dim_(ambient_dim) { require_geom_dim(ambient_dim); }

void Strength3Builder::add_line(Word a, Word b) {
  if (count_ == kMaxObjects) throw std::length_error("too many objects");
  Word tmp[4];
  int off = 0;
  for (int o = 0; o < count_; ++o) {
    int k = sizes_[o];
    tmp[0] = gens_[off];
    if (k == 2) tmp[1] = gens_[off + 1];
    tmp[k] = a;
    tmp[k + 1] = b;
    or_span(forbidden_, tmp, k + 2);
    off += k;
  }
  forbidden_.set(a);
  forbidden_.set(b);
  forbidden_.set(a ^ b);
  gens_[off] = a;
  gens_[off + 1] = b;
  sizes_[count_++] = 2;
}

void Strength3Builder::add_point(Word p) {
  if (count_ == kMaxObjects) throw std::length_error("too many objects");
  Word tmp[3];
  int off = 0;
  for (int o = 0; o < count_; ++o) {
    int k = sizes_[o];
    tmp[0] = gens_[off];
    if (k == 2) tmp[1] = gens_[off + 1];
    tmp[k] = p;
    or_span(forbidden_, tmp, k + 1);
    off += k;
  }
  forbidden_.set(p);
  gens_[off] = p;
  sizes_[count_++] = 1;
}

bool Strength3Builder::try_add(const PGLine& l) {
  if (!can_add_line(l)) return false;
  add_line(l.a(), l.b());
  return true;
}

bool Strength3Builder::try_add(Word p) {
  if (!can_add_point(p)) return false;
  add_point(p);
  return true;
}

bool check_strength3(const NMSet& s) {
  Strength3Builder b(s.ambient_dim);
  for (const auto& l : s.lines) {
    if (!b.try_add(l)) return false;
  }
  for (const auto& p : s.points) {
    if (!b.try_add(p.vec())) return false;
  }
  return true;
}

namespace {

Strength3Builder build_or_throw(const NMSet& s) {
  Strength3Builder b(s.ambient_dim);
  for (const auto& l : s.lines) {
    if (!b.try_add(l)) throw std::invalid_argument("set does not have strength 3");
  }
  for (const auto& p : s.points) {
    if (!b.try_add(p.vec())) throw std::invalid_argument("set does not have strength 3");
  }
  return b;
}

}  // namespace

std::vector<PGPoint> extension_points(const NMSet& s) {
  Strength3Builder b = build_or_throw(s);
  std::vector<PGPoint> out;
  for (Word p = 1; p < (Word{1} << s.ambient_dim); ++p) {
    if (b.can_add_point(p)) out.emplace_back(p, s.ambient_dim);
  }
  return out;
}

std::vector<PGLine> extension_lines(const NMSet& s) {
  Strength3Builder b = build_or_throw(s);
  const auto& t = tables(s.ambient_dim);
  std::vector<PGLine> out;
  for (std::size_t i = 0; i < t.lines.size(); ++i) {
    if (b.can_add_line(t.line_masks[i])) out.push_back(t.lines[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Canonical forms

namespace {

class FrameSearch {
 public:
  explicit FrameSearch(const NMSet& s) : s_(s), d_(s.ambient_dim) {
    std::vector<Word> gens;
    for (const auto& l : s.lines) {
      lines_.push_back({l.a(), l.b()});
      gens.push_back(l.a());
      gens.push_back(l.b());
      for (Word p : l.points()) pool_.push_back(p);
    }
    for (const auto& p : s.points) {
      points_.push_back(p.vec());
      gens.push_back(p.vec());
      pool_.push_back(p.vec());
    }
    std::sort(pool_.begin(), pool_.end());
    pool_.erase(std::unique(pool_.begin(), pool_.end()), pool_.end());
    r_ = rank(gens);
  }

  void run(bool keep_frames) {
    keep_frames_ = keep_frames;
    int lmax = std::min<int>({static_cast<int>(lines_.size()), 3, r_ / 2});
    for (int l = lmax; l >= 0; --l) {
      line_count_ = l;
      std::array<Word, kMaxGeomDim> frame{};
      SmallBasis basis;
      std::uint32_t used = 0;
      choose_lines(0, used, frame, basis);
      if (total_ > 0) return;
    }
  }

  int span_dim() const { return r_; }
  std::uint64_t total() const { return total_; }
  std::uint64_t at_min() const { return at_min_; }
  const std::array<Word, kMaxGeomDim>& best_frame() const { return best_frame_; }
  const std::vector<std::array<Word, kMaxGeomDim>>& min_frames() const { return min_frames_; }

  // Full basis: the frame followed by the unit vectors that complete it.
  LinearMap basis_map(const std::array<Word, kMaxGeomDim>& frame) const {
    SmallBasis b;
    std::array<Word, kMaxGeomDim> cols{};
    int k = 0;
    for (int i = 0; i < r_; ++i) {
      b.add(frame[i]);
      cols[k++] = frame[i];
    }
    for (int i = 0; i < d_ && k < d_; ++i) {
      if (b.add(Word{1} << i)) cols[k++] = Word{1} << i;
    }
    return LinearMap(std::span<const Word>(cols.data(), d_), d_);
  }

  NMSet image(const std::array<Word, kMaxGeomDim>& frame) const {
    LinearMap g = basis_map(frame).inverse();
    return s_.transformed(g).sorted();
  }

 private:
  void choose_lines(int depth, std::uint32_t used, std::array<Word, kMaxGeomDim>& frame,
                    const SmallBasis& basis) {
    if (depth == line_count_) {
      extend_points(2 * depth, frame, basis);
      return;
    }
    for (std::size_t i = 0; i < lines_.size(); ++i) {
      if (used & (1u << i)) continue;
      const Word a = lines_[i][0];
      const Word b = lines_[i][1];
      const Word c = a ^ b;
      SmallBasis nb = basis;
      if (!nb.add(a) || !nb.add(b)) continue;
      const Word orders[6][2] = {{a, b}, {b, a}, {a, c}, {c, a}, {b, c}, {c, b}};
      for (const auto& o : orders) {
        frame[2 * depth] = o[0];
        frame[2 * depth + 1] = o[1];
        choose_lines(depth + 1, used | (1u << i), frame, nb);
      }
    }
  }

  void extend_points(int k, std::array<Word, kMaxGeomDim>& frame, const SmallBasis& basis) {
    if (k == r_) {
      evaluate(frame);
      return;
    }
    for (Word p : pool_) {
      SmallBasis nb = basis;
      if (!nb.add(p)) continue;
      frame[k] = p;
      extend_points(k + 1, frame, nb);
    }
  }

  void evaluate(const std::array<Word, kMaxGeomDim>& frame) {
    ++total_;
    Word v = 0;
    Word c = 0;
    coord_[0] = 0;
    for (Word k = 1; k < (Word{1} << r_); ++k) {
      int bit = std::countr_zero(k);
      v ^= frame[bit];
      c ^= Word{1} << bit;
      coord_[v] = static_cast<std::uint8_t>(c);
    }
    cur_.clear();
    for (const auto& l : lines_) cur_.push_back(key_of(coord_[l[0]], coord_[l[1]]));
    std::sort(cur_.begin(), cur_.end());
    const std::size_t nl = cur_.size();
    for (Word p : points_) cur_.push_back(coord_[p]);
    std::sort(cur_.begin() + nl, cur_.end());
    if (best_.empty() || cur_ < best_) {
      best_ = cur_;
      best_frame_ = frame;
      at_min_ = 1;
      if (keep_frames_) {
        min_frames_.clear();
        min_frames_.push_back(frame);
      }
    } else if (cur_ == best_) {
      ++at_min_;
      if (keep_frames_) min_frames_.push_back(frame);
    }
  }

  const NMSet& s_;
  int d_;
  int r_ = 0;
  int line_count_ = 0;
  bool keep_frames_ = false;
  std::vector<std::array<Word, 2>> lines_;
  std::vector<Word> points_;
  std::vector<Word> pool_;
  std::array<std::uint8_t, 256> coord_{};
  std::vector<std::uint16_t> cur_;
  std::vector<std::uint16_t> best_;
  std::array<Word, kMaxGeomDim> best_frame_{};
  std::vector<std::array<Word, kMaxGeomDim>> min_frames_;
  std::uint64_t total_ = 0;
  std::uint64_t at_min_ = 0;
};

std::uint64_t complement_factor(int r, int d) {
  // Maps fixing a r-dimensional subspace pointwise: 2^{r(d-r)} |GL(d-r,2)|.
  unsigned __int128 f = static_cast<unsigned __int128>(1) << (r * (d - r));
  f *= gl_order(d - r);
  return static_cast<std::uint64_t>(f);
}

}  // namespace

CanonicalForm canonical_form(const NMSet& s) {
  require_geom_dim(s.ambient_dim);
  FrameSearch fs(s);
  fs.run(false);
  CanonicalForm cf;
  cf.to_canonical = fs.basis_map(fs.best_frame()).inverse();
  cf.form = s.transformed(cf.to_canonical).sorted();
  cf.frames_at_minimum = fs.at_min();
  cf.frames_total = fs.total();
  cf.span_dim = fs.span_dim();
  return cf;
}

std::vector<LinearMap> automorphisms(const NMSet& s) {
  FrameSearch fs(s);
  fs.run(true);
  const auto& frames = fs.min_frames();
  LinearMap base_inv = fs.basis_map(frames.front()).inverse();
  std::vector<LinearMap> out;
  out.reserve(frames.size());
  for (const auto& f : frames) out.push_back(fs.basis_map(f) * base_inv);
  return out;
}

std::uint64_t automorphism_order(const NMSet& s) {
  CanonicalForm cf = canonical_form(s);
  return cf.frames_at_minimum * complement_factor(cf.span_dim, s.ambient_dim);
}

std::optional<LinearMap> equivalence(const NMSet& from, const NMSet& to) {
  if (from.ambient_dim != to.ambient_dim || from.n() != to.n() || from.m() != to.m()) return std::nullopt;
  CanonicalForm a = canonical_form(from);
  CanonicalForm b = canonical_form(to);
  if (!(a.form == b.form)) return std::nullopt;
  LinearMap g = b.to_canonical.inverse() * a.to_canonical;
  if (!from.transformed(g).same_objects(to)) throw std::logic_error("equivalence map check failed");
  return g;
}

std::vector<ProjectivityClass> classify(std::span<const NMSet> sets) {
  std::vector<ProjectivityClass> out;
  std::map<std::string, std::size_t> index;
  for (const auto& s : sets) {
    CanonicalForm cf = canonical_form(s);
    std::string key = format_nmset(cf.form);
    auto it = index.find(key);
    if (it == index.end()) {
      ProjectivityClass pc;
      pc.canonical = cf.form;
      pc.aut_order = cf.frames_at_minimum * complement_factor(cf.span_dim, s.ambient_dim);
      pc.members = 1;
      pc.first_member = s;
      index.emplace(std::move(key), out.size());
      out.push_back(std::move(pc));
    } else {
      ++out[it->second].members;
    }
  }
  return out;
}

std::vector<PGLine> standard_lines(int count, int ambient_dim) {
  if (2 * count > ambient_dim) throw DimensionError("not enough room for standard lines");
  std::vector<PGLine> out;
  for (int i = 0; i < count; ++i) out.emplace_back(unit(2 * i + 1), unit(2 * i + 2), ambient_dim);
  return out;
}

std::uint64_t sets_through_prefix(int ambient_dim, int n, int prefix_lines, std::uint64_t aut_order) {
  const int d = ambient_dim;
  const int l = prefix_lines;
  unsigned __int128 stab = 1;
  for (int i = 0; i < l; ++i) stab *= 6 * (i + 1);  // 6^l * l!
  const unsigned __int128 q = static_cast<unsigned __int128>(1) << d;
  for (int i = 2 * l; i < d; ++i) stab *= q - (static_cast<unsigned __int128>(1) << i);
  unsigned __int128 choose = 1;
  for (int i = 0; i < l; ++i) choose = choose * (n - i) / (i + 1);
  unsigned __int128 num = choose * stab;
  if (aut_order == 0 || num % aut_order != 0) {
    throw std::logic_error("class mass is not integral; automorphism order is wrong");
  }
  return static_cast<std::uint64_t>(num / aut_order);
}

// ---------------------------------------------------------------------------
// Exhaustive search

namespace {

struct CompactSet {
  std::vector<std::uint16_t> lines;  // indices into tables(dim).lines, after the prefix
  std::vector<std::uint8_t> points;
  std::uint32_t invariant = 0;
};

class Searcher {
 public:
  Searcher(int dim, int n, int m, const SearchConstraints& c)
      : dim_(dim), n_(n), m_(m), c_(c), t_(tables(dim)), prefix_(std::min(n, 3)) {
    if (2 * prefix_ > dim) throw DimensionError("ambient space too small for the search prefix");
    prefix_lines_ = standard_lines(prefix_, dim);
  }

  struct TaskResult {
    std::vector<CompactSet> sets;
    std::uint64_t nodes = 0;
    std::uint64_t candidates = 0;
  };

  int prefix() const { return prefix_; }
  const std::vector<PGLine>& prefix_lines() const { return prefix_lines_; }

  // Candidate lines compatible with the prefix and the first-level tasks.
  bool prepare(Strength3Builder& root, std::vector<int>& cands) {
    for (const auto& l : prefix_lines_) root.add_line(l.a(), l.b());
    if (c_.line_filter && !c_.line_filter(prefix_lines_)) return false;
    for (std::size_t i = 0; i < t_.lines.size(); ++i) {
      if (root.can_add_line(t_.line_masks[i])) cands.push_back(static_cast<int>(i));
    }
    return true;
  }

  void run_task(const Strength3Builder& root, const std::vector<int>& cands, std::size_t first,
                TaskResult& out) const {
    std::vector<int> chosen;
    std::vector<PGLine> partial = prefix_lines_;
    Strength3Builder b = root;
    const int idx = cands[first];
    ++out.nodes;
    b.add_line(t_.lines[idx].a(), t_.lines[idx].b());
    chosen.push_back(idx);
    partial.push_back(t_.lines[idx]);
    if (c_.line_filter && !c_.line_filter(partial)) return;
    std::vector<int> next;
    for (std::size_t j = first + 1; j < cands.size(); ++j) {
      ++out.candidates;
      if (b.can_add_line(t_.line_masks[cands[j]])) next.push_back(cands[j]);
    }
    lines_dfs(b, next, chosen, partial, out);
  }

  void run_no_lines(const Strength3Builder& root, TaskResult& out) const {
    std::vector<int> chosen;
    std::vector<PGLine> partial = prefix_lines_;
    ++out.nodes;
    points_phase(root, chosen, out);
  }

 private:
  void lines_dfs(const Strength3Builder& b, const std::vector<int>& cands, std::vector<int>& chosen,
                 std::vector<PGLine>& partial, TaskResult& out) const {
    if (prefix_ + static_cast<int>(chosen.size()) == n_) {
      points_phase(b, chosen, out);
      return;
    }
    const int need = n_ - prefix_ - static_cast<int>(chosen.size());
    for (std::size_t i = 0; i + need <= cands.size(); ++i) {
      const int idx = cands[i];
      ++out.nodes;
      Strength3Builder nb = b;
      nb.add_line(t_.lines[idx].a(), t_.lines[idx].b());
      chosen.push_back(idx);
      partial.push_back(t_.lines[idx]);
      if (!c_.line_filter || c_.line_filter(partial)) {
        std::vector<int> next;
        if (need > 1) {
          next.reserve(cands.size() - i);
          for (std::size_t j = i + 1; j < cands.size(); ++j) {
            ++out.candidates;
            if (nb.can_add_line(t_.line_masks[cands[j]])) next.push_back(cands[j]);
          }
        }
        lines_dfs(nb, next, chosen, partial, out);
      }
      chosen.pop_back();
      partial.pop_back();
    }
  }

  void points_phase(const Strength3Builder& b, const std::vector<int>& chosen, TaskResult& out) const {
    std::vector<std::uint8_t> pts;
    std::vector<Word> cands;
    for (Word p = 1; p < (Word{1} << dim_); ++p) {
      if (b.can_add_point(p)) cands.push_back(p);
    }
    points_dfs(b, cands, 0, pts, chosen, out);
  }

  void points_dfs(const Strength3Builder& b, const std::vector<Word>& cands, std::size_t start,
                  std::vector<std::uint8_t>& pts, const std::vector<int>& chosen, TaskResult& out) const {
    if (static_cast<int>(pts.size()) == m_) {
      leaf(b, chosen, pts, out);
      return;
    }
    for (std::size_t i = start; i < cands.size(); ++i) {
      if (!b.can_add_point(cands[i])) continue;
      ++out.nodes;
      Strength3Builder nb = b;
      nb.add_point(cands[i]);
      pts.push_back(static_cast<std::uint8_t>(cands[i]));
      points_dfs(nb, cands, i + 1, pts, chosen, out);
      pts.pop_back();
    }
  }

  void leaf(const Strength3Builder& b, const std::vector<int>& chosen, const std::vector<std::uint8_t>& pts,
            TaskResult& out) const {
    CompactSet cs;
    cs.lines.assign(chosen.begin(), chosen.end());
    cs.points = pts;
    if (c_.accept && !c_.accept(materialize(cs))) return;
    // Number of extension points: a projective invariant available for free.
    cs.invariant = static_cast<std::uint32_t>((1u << dim_) - 1 - b.forbidden().count());
    out.sets.push_back(std::move(cs));
  }

 public:
  NMSet materialize(const CompactSet& cs) const {
    NMSet s{dim_, prefix_lines_, {}};
    for (auto i : cs.lines) s.lines.push_back(t_.lines[i]);
    for (auto p : cs.points) s.points.emplace_back(p, dim_);
    return s;
  }

 private:
  int dim_;
  int n_;
  int m_;
  const SearchConstraints& c_;
  const GeometryTables& t_;
  int prefix_;
  std::vector<PGLine> prefix_lines_;
};

}  // namespace

SearchResult exhaustive_nm_search(int ambient_dim, int n, int m, const SearchConstraints& c) {
  require_geom_dim(ambient_dim, 2);
  if (n < 1) throw std::invalid_argument("search needs at least one line");
  Searcher searcher(ambient_dim, n, m, c);
  SearchResult res;
  res.ambient_dim = ambient_dim;
  res.n = n;
  res.m = m;
  res.prefix_lines = searcher.prefix();

  Strength3Builder root(ambient_dim);
  std::vector<int> cands;
  std::vector<Searcher::TaskResult> parts;
  if (searcher.prepare(root, cands)) {
    if (n == searcher.prefix()) {
      parts.resize(1);
      searcher.run_no_lines(root, parts[0]);
    } else {
      parts.resize(cands.size());
      parallel_for(cands.size(), c.workers, [&](std::size_t i) { searcher.run_task(root, cands, i, parts[i]); });
    }
  }

  std::vector<CompactSet> all;
  for (auto& p : parts) {
    res.nodes += p.nodes;
    res.candidates += p.candidates;
    for (auto& s : p.sets) all.push_back(std::move(s));
  }
  res.count = all.size();

  if (c.keep_sets) {
    for (const auto& cs : all) res.sets.push_back(searcher.materialize(cs));
  }
  if (!c.classify || all.empty()) return res;

  // Bucket by invariant, then canonicalize members of each bucket until the
  // classes found account for every member.
  std::map<std::uint32_t, std::vector<std::size_t>> buckets;
  for (std::size_t i = 0; i < all.size(); ++i) buckets[all[i].invariant].push_back(i);
  for (const auto& [inv, members] : buckets) {
    std::map<std::string, std::size_t> seen;
    std::uint64_t mass = 0;
    for (std::size_t idx : members) {
      if (mass == members.size()) break;
      NMSet s = searcher.materialize(all[idx]);
      CanonicalForm cf = canonical_form(s);
      ++res.canonical_forms_computed;
      std::string key = format_nmset(cf.form);
      if (seen.count(key)) continue;
      ProjectivityClass pc;
      pc.canonical = cf.form;
      pc.aut_order = cf.frames_at_minimum * complement_factor(cf.span_dim, ambient_dim);
      pc.first_member = s;
      pc.members = sets_through_prefix(ambient_dim, n, searcher.prefix(), pc.aut_order);
      mass += pc.members;
      seen.emplace(std::move(key), res.classes.size());
      res.classes.push_back(std::move(pc));
    }
    if (mass != members.size()) res.mass_balanced = false;
  }
  return res;
}

std::vector<std::vector<PGPoint>> compatible_point_sets(const NMSet& s, std::span<const PGPoint> candidates,
                                                        int size) {
  Strength3Builder root = build_or_throw(s);
  std::vector<std::vector<PGPoint>> out;
  std::vector<PGPoint> cur;
  std::function<void(const Strength3Builder&, std::size_t)> rec = [&](const Strength3Builder& b, std::size_t start) {
    if (static_cast<int>(cur.size()) == size) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < candidates.size(); ++i) {
      if (!b.can_add_point(candidates[i].vec())) continue;
      Strength3Builder nb = b;
      nb.add_point(candidates[i].vec());
      cur.push_back(candidates[i]);
      rec(nb, i + 1);
      cur.pop_back();
    }
  };
  rec(root, 0);
  return out;
}

int max_points_given_lines(int ambient_dim, int n) {
  SearchConstraints c;
  c.keep_sets = false;
  SearchResult r = exhaustive_nm_search(ambient_dim, n, 0, c);
  if (r.classes.empty()) {
    throw std::domain_error("no strength-3 system of " + std::to_string(n) + " lines exists");
  }
  int best = 0;
  for (const auto& pc : r.classes) {
    auto ext = extension_points(pc.canonical);
    for (int k = best + 1; k <= static_cast<int>(ext.size()); ++k) {
      if (compatible_point_sets(pc.canonical, ext, k).empty()) break;
      best = k;
    }
  }
  return best;
}

}  // namespace stabcert
