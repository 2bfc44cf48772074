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

#include <algorithm>
#include <functional>
#include <random>
#include <sstream>

#include "pipeline_internal.hpp"
#include "stabcert/quantum.hpp"

namespace stabcert::detail {

namespace {

Word e(int i) { return unit(i); }

// Rank of at most 8 vectors, on the stack.
int small_rank(std::initializer_list<Word> vs) {
  std::array<Word, 8> basis{};
  int r = 0;
  for (Word v : vs) {
    for (int i = 0; i < r; ++i) v = std::min(v, v ^ basis[i]);
    if (v != 0) basis[r++] = v;
  }
  return r;
}

// Objects of a partial set as generator pairs; points have b == 0.
struct Obj {
  Word a;
  Word b;
  int dim() const { return b == 0 ? 1 : 2; }
};

bool compatible_by_rank(const Obj& x, const std::vector<Obj>& chosen) {
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    const Obj& y = chosen[i];
    if (small_rank({x.a, x.b, y.a, y.b}) != x.dim() + y.dim()) return false;
    for (std::size_t j = i + 1; j < chosen.size(); ++j) {
      const Obj& z = chosen[j];
      if (small_rank({x.a, x.b, y.a, y.b, z.a, z.b}) != x.dim() + y.dim() + z.dim()) return false;
    }
  }
  return true;
}

// Incremental test of a candidate against the newest object only.
bool compatible_with_newest(const Obj& x, const std::vector<Obj>& chosen) {
  const Obj& y = chosen.back();
  if (small_rank({x.a, x.b, y.a, y.b}) != x.dim() + y.dim()) return false;
  for (std::size_t j = 0; j + 1 < chosen.size(); ++j) {
    const Obj& z = chosen[j];
    if (small_rank({x.a, x.b, y.a, y.b, z.a, z.b}) != x.dim() + y.dim() + z.dim()) return false;
  }
  return true;
}

// Depth-first completion by objects from `cands` (already compatible with
// `chosen`); `leaf` sees every complete set.
void rank_dfs(std::vector<Obj>& chosen, const std::vector<Obj>& cands, int remaining, SampleOutcome& out,
              const std::function<void(const std::vector<Obj>&)>& leaf) {
  ++out.nodes;
  if (remaining == 0) {
    leaf(chosen);
    return;
  }
  for (std::size_t i = 0; i + static_cast<std::size_t>(remaining) <= cands.size(); ++i) {
    chosen.push_back(cands[i]);
    std::vector<Obj> next;
    for (std::size_t j = i + 1; j < cands.size(); ++j) {
      if (compatible_with_newest(cands[j], chosen)) next.push_back(cands[j]);
    }
    rank_dfs(chosen, next, remaining - 1, out, leaf);
    chosen.pop_back();
  }
}

std::vector<Obj> line_objs(const std::vector<PGLine>& lines) {
  std::vector<Obj> out;
  for (const auto& l : lines) out.push_back({l.a(), l.b()});
  return out;
}

PointMask points_on(const std::vector<PGLine>& lines) {
  PointMask on;
  for (const auto& l : lines)
    for (Word p : l.points()) on.set(p);
  return on;
}

std::vector<PGLine> lift(const NMSet& s, int dim) {
  std::vector<PGLine> out;
  for (const auto& l : s.lines) out.emplace_back(l.a(), l.b(), dim);
  return out;
}

}  // namespace

std::size_t plain_line_tasks(int dim, int /*n*/) { return enumerate_lines(dim).size(); }

SampleOutcome plain_line_subtree(int dim, int n, std::size_t task) {
  SampleOutcome out;
  const auto all = enumerate_lines(dim);
  const auto prefix = standard_lines(std::min(n, 3), dim);
  std::vector<Obj> chosen = line_objs(prefix);
  const PGLine first = all.at(task);
  if (std::find(prefix.begin(), prefix.end(), first) != prefix.end()) return out;
  const Obj f{first.a(), first.b()};
  if (!compatible_by_rank(f, chosen)) return out;
  chosen.push_back(f);
  std::vector<Obj> cands;
  for (std::size_t j = task + 1; j < all.size(); ++j) {
    const Obj x{all[j].a(), all[j].b()};
    if (std::find(prefix.begin(), prefix.end(), all[j]) == prefix.end() && compatible_by_rank(x, chosen)) {
      cands.push_back(x);
    }
  }
  rank_dfs(chosen, cands, n - static_cast<int>(prefix.size()) - 1, out, [&](const std::vector<Obj>&) {
    ++out.count;
    ++out.completions;
  });
  return out;
}

SampleOutcome plain_point_subtree(const NMSet& lines, int size, Word first, int parity_lines) {
  SampleOutcome out;
  const int dim = lines.ambient_dim;
  if (first == 0 || first >= (Word{1} << dim) || size < 1) return out;
  std::vector<Obj> chosen = line_objs(lines.lines);
  const Obj f{first, 0};
  if (!compatible_by_rank(f, chosen)) return out;
  chosen.push_back(f);
  std::vector<Obj> cands;
  for (Word p = first + 1; p < (Word{1} << dim); ++p) {
    const Obj x{p, 0};
    if (compatible_by_rank(x, chosen)) cands.push_back(x);
  }
  const std::size_t nl = lines.lines.size();
  rank_dfs(chosen, cands, size - 1, out, [&](const std::vector<Obj>& objs) {
    std::vector<PGPoint> pts;
    for (std::size_t i = nl; i < objs.size(); ++i) pts.emplace_back(objs[i].a, dim);
    ++out.completions;
    if (hyperplane_parity(pts, parity_lines)) ++out.count;
  });
  return out;
}

std::vector<std::vector<Word>> stage_S_systems() {
  const PointMask on = points_on(fixture("secundum_five").lines);
  std::vector<Word> ws;
  for (Word w = 1; w < 64; ++w) {
    if (!on.test(w)) ws.push_back(w);
  }
  std::vector<std::vector<Word>> systems;
  std::vector<Word> ch;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (ch.size() == 7) {
      Word s = 0;
      for (Word c : ch) s ^= c;
      if (s == 0) systems.push_back(ch);
      return;
    }
    for (std::size_t i = start; i < ws.size(); ++i) {
      bool ok = true;
      for (Word c : ch) ok = ok && !on.test(c ^ ws[i]);
      if (!ok) continue;
      ch.push_back(ws[i]);
      rec(i + 1);
      ch.pop_back();
    }
  };
  rec(0);
  return systems;
}

CompletionProblem stage_S_problem(const std::vector<Word>& w) {
  CompletionProblem p;
  p.fixed = lift(fixture("secundum_five"), 8);
  p.fixed.emplace_back(e(7), e(8), 8);
  for (Word x : w) {
    p.a.push_back(e(7) ^ x);
    p.base.push_back(e(8));
    p.free.push_back(0x3F);
  }
  return p;
}

std::vector<std::vector<Word>> stage_F_systems(const NMSet& five) {
  const PointMask on = points_on(five.lines);
  std::vector<Word> pool;
  for (const auto& p : extension_points(five)) pool.push_back(p.vec());
  std::vector<std::vector<Word>> systems;
  std::vector<Word> ch;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (ch.size() == 8) {
      Word s = 0;
      for (Word c : ch) s ^= c;
      if (s == 0) systems.push_back(ch);
      return;
    }
    for (std::size_t i = start; i < pool.size(); ++i) {
      bool ok = true;
      for (Word c : ch) {
        const Word third = c ^ pool[i];
        // secants stay off the lines and no three points are collinear
        ok = ok && !on.test(third) && std::find(ch.begin(), ch.end(), third) == ch.end();
      }
      if (!ok) continue;
      ch.push_back(pool[i]);
      rec(i + 1);
      ch.pop_back();
    }
  };
  rec(0);
  return systems;
}

CompletionProblem stage_F_problem(const NMSet& five, const std::vector<Word>& m) {
  CompletionProblem p;
  p.fixed = lift(five, 8);
  p.fixed.emplace_back(m.at(0), e(8), 8);
  for (std::size_t i = 1; i < m.size(); ++i) {
    const Word hi = m[i] & 0x70;
    p.a.push_back(m[i]);
    p.base.push_back(e(8));
    p.free.push_back(0x7F & ~(hi & (~hi + 1)));
  }
  return p;
}

CompletionProblem lift_problem(const NMSet& s) {
  CompletionProblem p;
  p.fixed = lift(s, 8);
  for (const auto& q : s.points) {
    const Word hi = q.vec() & 0x70;
    p.a.push_back(q.vec());
    p.base.push_back(e(8));
    p.free.push_back(0x7F & ~(hi & (~hi + 1)));
  }
  return p;
}

NMSet w4a_lines() {
  NMSet s{7, lift(fixture("secundum_five"), 7), {}};
  s.lines.emplace_back(e(1) ^ e(4) ^ e(5) ^ e(6), e(7), 7);
  return s;
}

NMSet w4b_prefix() {
  NMSet five = fixture("secundum_five");
  NMSet s{7, {}, {}};
  for (int i = 0; i < 4; ++i) s.lines.emplace_back(five.lines[i].a(), five.lines[i].b(), 7);
  s.lines.emplace_back(e(1) ^ e(3) ^ e(4) ^ e(6), e(7), 7);
  return s;
}

std::vector<NMSet> w4b_systems() {
  const NMSet five = w4b_prefix();
  std::vector<NMSet> systems;
  for (const auto& l : extension_lines(five)) {
    if (((l.a() | l.b()) >> 6) == 0) continue;  // inside x7 = 0
    NMSet s = five;
    s.lines.push_back(l);
    systems.push_back(s);
  }
  return systems;
}

std::vector<std::size_t> choose_sample(std::size_t n, double rate, std::uint64_t seed) {
  std::vector<std::size_t> out;
  if (n == 0 || rate <= 0) return out;
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    if (u < rate) out.push_back(i);
  }
  if (out.empty()) out.push_back(static_cast<std::size_t>(rng() % n));
  return out;
}

std::string normalized_input(StageId id) {
  std::ostringstream s;
  s << "stage " << to_string(id) << "\n";
  auto fx = [&](const char* name) { s << name << "\n" << format_nmset(fixture(name).sorted()); };
  switch (id) {
    case StageId::P:
      s << "search 6 7 0\nsearch 7 8 0\nsearch 6 6 0\nsearch 7 7 0\nsearch 5 2 0..6\nprefix 3\n"
           "triples 8 <e1,e2> <e3,e4>\n";
      fx("hyperoval");
      break;
    case StageId::W5:
      s << "search 7 7 0\nsearch 7 7 7\nsearch 7 7 6\npoints 6 parity 7\n";
      fx("sevenzero_selfdual");
      fx("sevenseven");
      break;
    case StageId::W4a:
      s << "points 7 parity 6\n" << format_nmset(w4a_lines().sorted());
      break;
    case StageId::W4b:
      s << "lines off x7=0, points 7 parity 6\n" << format_nmset(w4b_prefix().sorted());
      break;
    case StageId::W4c:
      s << "search 7 6 0 any-four-span\npoints 7 parity 6\n";
      for (int k = 1; k <= 4; ++k) fx(("sixline_family" + std::to_string(k)).c_str());
      break;
    case StageId::S:
      s << "ambient 8\nopen <e7+w,e8+v> v in 0x3f\nquantum 13\n";
      fx("secundum_five");
      break;
    case StageId::F:
      s << "ambient 8\nopen <M,e8+v> v in 0x7f\nquantum 13\n";
      fx("fiveline_hyperplane");
      break;
  }
  return s.str();
}

std::string map_to_text(const LinearMap& g) {
  std::string out;
  for (int i = 0; i < g.dim(); ++i) {
    if (i) out += ',';
    for (int j = 0; j < g.dim(); ++j) out += ((g.image(i) >> j) & 1u) ? '1' : '0';
  }
  return out;
}

LinearMap map_from_text(const std::string& text, int dim) {
  std::vector<Word> cols;
  std::istringstream in(text);
  std::string col;
  while (std::getline(in, col, ',')) {
    if (static_cast<int>(col.size()) != dim) throw ParseError("map column of wrong length: " + col, 0);
    Word w = 0;
    for (int j = 0; j < dim; ++j) {
      if (col[j] == '1') w |= unit(j + 1);
      else if (col[j] != '0') throw ParseError("bad map entry: " + col, 0);
    }
    cols.push_back(w);
  }
  if (static_cast<int>(cols.size()) != dim) throw ParseError("map needs " + std::to_string(dim) + " columns", 0);
  return LinearMap(cols, dim);
}

std::vector<std::string> check_witness(const Witness& w) {
  std::vector<std::string> problems;
  auto fail = [&](const std::string& what) { problems.push_back(w.label + ": " + what); };
  NMSet s;
  try {
    s = parse_nmset(w.text);
  } catch (const std::exception& ex) {
    fail(std::string("unreadable text: ") + ex.what());
    return problems;
  }
  const Json& p = w.properties;
  try {
    if (p.contains("ambient_dim") && p["ambient_dim"].get<int>() != s.ambient_dim) fail("ambient_dim");
    if (p.contains("n") && p["n"].get<int>() != s.n()) fail("n");
    if (p.contains("m") && p["m"].get<int>() != s.m()) fail("m");
    if (p.contains("strength3")) {
      bool ok = check_strength3(s);
      if (s.points.empty() && ok != strength3_by_rank(s.line_system())) fail("strength3 routes disagree");
      if (ok != p["strength3"].get<bool>()) fail("strength3");
    }
    const bool s3 = check_strength3(s);
    if (p.contains("extension_points") && (!s3 || extension_points(s).size() != p["extension_points"].get<std::size_t>())) {
      fail("extension_points");
    }
    if (p.contains("aut_order") && (!s3 || automorphism_order(s) != p["aut_order"].get<std::uint64_t>())) fail("aut_order");
    if (p.contains("hyperplane_parity")) {
      const Json& h = p["hyperplane_parity"];
      if (hyperplane_parity(s.points, h.at("n_lines").get<int>()) != h.at("value").get<bool>()) fail("hyperplane_parity");
    }
    if (p.contains("euclidean_self_dual")) {
      const AdditiveCode c = code_from_lines(s.line_system());
      bool sd = c.k2() == c.length();
      for (const auto& x : c.generator().rows())
        for (const auto& y : c.generator().rows()) sd = sd && !euclidean_product(x, y);
      if (sd != p["euclidean_self_dual"].get<bool>()) fail("euclidean_self_dual");
    }
    if (p.contains("any_four_span")) {
      bool all = true;
      const auto& L = s.lines;
      for (std::size_t i = 0; i < L.size(); ++i)
        for (std::size_t j = i + 1; j < L.size(); ++j)
          for (std::size_t k = j + 1; k < L.size(); ++k)
            for (std::size_t l = k + 1; l < L.size(); ++l) {
              all = all && rank(std::vector<Word>{L[i].a(), L[i].b(), L[j].a(), L[j].b(), L[k].a(), L[k].b(),
                                                  L[l].a(), L[l].b()}) == s.ambient_dim;
            }
      if (all != p["any_four_span"].get<bool>()) fail("any_four_span");
    }
    if (p.contains("quantum_condition") && quantum_condition(s.line_system()) != p["quantum_condition"].get<bool>()) {
      fail("quantum_condition");
    }
    if (p.contains("equivalent_to") && !p["equivalent_to"].is_null()) {
      const Json& eq = p["equivalent_to"];
      const NMSet target = parse_nmset(eq.at("text").get<std::string>());
      const LinearMap g = map_from_text(eq.at("map").get<std::string>(), s.ambient_dim);
      if (!g.invertible() || !s.transformed(g).same_objects(target)) fail("equivalent_to: map does not carry the set");
      const std::string label = eq.at("label").get<std::string>();
      const auto names = fixture_names();
      if (std::find(names.begin(), names.end(), label) != names.end() && !fixture(label).same_objects(target)) {
        fail("equivalent_to: text differs from the reference " + label);
      }
    }
  } catch (const std::exception& ex) {
    fail(std::string("bad property: ") + ex.what());
  }
  return problems;
}

}  // namespace stabcert::detail
