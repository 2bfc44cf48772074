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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "stabcert/completion.hpp"
#include "stabcert/nmset.hpp"
#include "stabcert/pipeline.hpp"
#include "support.hpp"

using namespace stabcert;
using stabcert::testing::Rng;

namespace {

std::string read_data(const std::string& name) {
  std::ifstream in(std::string(STABCERT_DATA_DIR) + "/fixtures/" + name + ".txt");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Strength 3 by brute force over triples, pairs and singles of objects.
bool strength3_brute(const NMSet& s) {
  std::vector<std::vector<Word>> objs;
  for (const auto& l : s.lines) objs.push_back({l.a(), l.b()});
  for (const auto& p : s.points) objs.push_back({p.vec()});
  const std::size_t k = objs.size();
  auto ok = [&](std::initializer_list<std::size_t> idx) {
    std::vector<Word> g;
    for (std::size_t i : idx) g.insert(g.end(), objs[i].begin(), objs[i].end());
    return rank(g) == static_cast<int>(g.size());
  };
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      if (!ok({i, j})) return false;
      for (std::size_t l = j + 1; l < k; ++l)
        if (!ok({i, j, l})) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("fixture files equal the built-in fixtures") {
  for (const auto& name : fixture_names()) {
    CAPTURE(name);
    const NMSet from_file = parse_nmset(read_data(name));
    CHECK(from_file == fixture(name));
    CHECK(parse_nmset(format_nmset(from_file)) == from_file);
  }
}

TEST_CASE("every fixture has strength 3") {
  for (const auto& name : fixture_names()) {
    CAPTURE(name);
    CHECK(check_strength3(fixture(name)));
    CHECK(strength3_brute(fixture(name)));
  }
}

TEST_CASE("incremental strength test agrees with brute force") {
  Rng rng(51);
  int accepted = 0;
  for (int t = 0; t < 300; ++t) {
    const int dim = 5 + static_cast<int>(rng() % 3);
    NMSet s{dim, {}, {}};
    const int n = 2 + static_cast<int>(rng() % 4);
    for (int i = 0; i < n; ++i) s.lines.push_back(stabcert::testing::random_line(rng, dim));
    const int m = static_cast<int>(rng() % 3);
    for (int i = 0; i < m; ++i) s.points.emplace_back(stabcert::testing::random_nonzero(rng, dim), dim);
    const bool want = strength3_brute(s);
    CHECK(check_strength3(s) == want);
    if (m == 0) CHECK(strength3_by_rank(s.line_system()) == want);
    accepted += want ? 1 : 0;
  }
  CHECK(accepted > 0);
}

TEST_CASE("extension points keep strength 3, the others break it") {
  for (const char* name : {"hyperoval", "sevenzero_selfdual", "fiveline_hyperplane", "secundum_five"}) {
    CAPTURE(name);
    const NMSet s = fixture(name);
    const auto ext = extension_points(s);
    std::size_t seen = 0;
    for (Word p = 1; p < (Word{1} << s.ambient_dim); ++p) {
      NMSet t = s;
      t.points.emplace_back(p, s.ambient_dim);
      const bool good = strength3_brute(t);
      const bool listed = seen < ext.size() && ext[seen].vec() == p;
      CHECK(good == listed);
      seen += listed ? 1 : 0;
    }
    CHECK(seen == ext.size());
  }
  CHECK(extension_points(fixture("sevenzero_selfdual")).size() == 8);
  CHECK(extension_points(fixture("fiveline_hyperplane")).size() == 37);
}

TEST_CASE("canonical form is invariant under random projectivities") {
  Rng rng(52);
  for (const auto& name : fixture_names()) {
    CAPTURE(name);
    const NMSet s = fixture(name);
    const CanonicalForm f = canonical_form(s);
    CHECK(s.transformed(f.to_canonical).same_objects(f.form));
    int violations = 0;
    for (int t = 0; t < 100; ++t) {
      const NMSet moved = s.transformed(stabcert::testing::random_invertible(rng, s.ambient_dim));
      violations += canonical_form(moved).form == f.form ? 0 : 1;
    }
    CHECK(violations == 0);
  }
}

TEST_CASE("equivalence returns a map carrying one set onto the other") {
  Rng rng(53);
  for (const auto& name : fixture_names()) {
    CAPTURE(name);
    const NMSet s = fixture(name);
    const NMSet moved = s.transformed(stabcert::testing::random_invertible(rng, s.ambient_dim));
    const auto g = equivalence(s, moved);
    REQUIRE(g.has_value());
    CHECK(s.transformed(*g).same_objects(moved));
  }
  CHECK_FALSE(equivalence(fixture("sixline_family1"), fixture("sixline_family3")).has_value());
  CHECK(equivalence(fixture("sixline_family1"), fixture("sixline_family2")).has_value());
}

TEST_CASE("automorphism groups") {
  const NMSet h = fixture("hyperoval");
  CHECK(automorphism_order(h) == 2160);
  const auto auts = automorphisms(h);
  CHECK(auts.size() == 2160);
  for (std::size_t i = 0; i < auts.size(); i += 97) CHECK(h.transformed(auts[i]).same_objects(h));
  CHECK(automorphism_order(fixture("sevenzero_selfdual")) == 42);
  // A set spanning a hyperplane also has the maps moving the complement.
  const NMSet sec = fixture("secundum_five");
  CHECK(automorphism_order(sec) % automorphisms(sec).size() == 0);
}

TEST_CASE("orbit-stabilizer: class masses add up to the search count") {
  SearchConstraints c;
  const SearchResult r = exhaustive_nm_search(6, 5, 0, c);
  REQUIRE(r.classes.size() == 1);
  CHECK(r.mass_balanced);
  CHECK(sets_through_prefix(6, 5, 3, r.classes[0].aut_order) == r.count);
}

TEST_CASE("small classifications") {
  const SearchResult v = exhaustive_nm_search(5, 2, 4);
  CHECK(v.classes.size() == 1);
  CHECK(exhaustive_nm_search(5, 2, 5).count == 0);
  CHECK(max_points_given_lines(5, 2) == 4);
  for (int n = 4; n <= 6; ++n) CHECK(exhaustive_nm_search(6, n, 0).classes.size() == 1);
  CHECK(exhaustive_nm_search(6, 7, 0).count == 0);
  const SearchResult h = exhaustive_nm_search(6, 6, 0);
  REQUIRE(h.classes.size() == 1);
  CHECK(h.classes[0].aut_order == 2160);
  CHECK(equivalence(h.classes[0].canonical, fixture("hyperoval")).has_value());
}

TEST_CASE("matrix text errors are reported") {
  CHECK_THROWS(parse_nmset("10 0\n01 1\n"));
  CHECK_THROWS(parse_nmset("10\n10\n"));
  CHECK_THROWS(parse_nmset("(1:0:2)\n"));
}
