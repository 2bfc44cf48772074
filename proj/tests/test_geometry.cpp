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

#include <set>

#include "stabcert/geometry.hpp"
#include "support.hpp"

using namespace stabcert;
using stabcert::testing::Rng;

namespace {

// Gaussian binomial [n k]_2, the number of k-subspaces of an n-space.
std::uint64_t gaussian(int n, int k) {
  std::uint64_t num = 1;
  std::uint64_t den = 1;
  for (int i = 0; i < k; ++i) {
    num *= (std::uint64_t{1} << (n - i)) - 1;
    den *= (std::uint64_t{1} << (i + 1)) - 1;
  }
  return num / den;
}

}  // namespace

TEST_CASE("object counts match the Gaussian binomials") {
  for (int d = 2; d <= 8; ++d) {
    CHECK(enumerate_points(d).size() == gaussian(d, 1));
    CHECK(enumerate_hyperplanes(d).size() == gaussian(d, d - 1));
  }
  for (int d = 2; d <= 8; ++d) CHECK(enumerate_lines(d).size() == gaussian(d, 2));
  for (int d = 3; d <= 8; ++d) CHECK(enumerate_secunda(d).size() == gaussian(d, d - 2));
  CHECK(enumerate_points(4).size() == 15);
  CHECK(enumerate_points(7).size() == 127);
  CHECK(enumerate_points(8).size() == 255);
  CHECK(enumerate_lines(4).size() == 35);
  CHECK(enumerate_lines(6).size() == 651);
  CHECK(enumerate_secunda(8).size() == 10795);
  CHECK(gl_order(4) == 20160);
}

TEST_CASE("enumerated lines and secunda are distinct") {
  const auto lines = enumerate_lines(6);
  std::set<std::uint16_t> keys;
  for (const auto& l : lines) keys.insert(l.key());
  CHECK(keys.size() == lines.size());
  const auto sec = enumerate_secunda(6);
  for (std::size_t i = 1; i < sec.size(); ++i) CHECK_FALSE(sec[i] == sec[0]);
  for (const auto& s : sec) CHECK(s.dim() == 4);
}

TEST_CASE("lines: generators do not matter, key is the two smallest points") {
  const PGLine l(3, 5, 4);
  CHECK(l == PGLine(6, 3, 4));
  CHECK(l.key() == ((3u << 8) | 5u));
  CHECK(PGLine::from_key(l.key(), 4) == l);
  CHECK(l.contains(6));
  CHECK(l.mask().count() == 3);
  CHECK_THROWS(PGLine(3, 3, 4));
  CHECK_THROWS(PGLine(0, 3, 4));
  CHECK_THROWS(PGLine(1, 16, 4));
}

TEST_CASE("points print with coordinate 1 first") {
  CHECK(PGPoint(unit(7), 7).to_string() == "(0:0:0:0:0:0:1)");
  CHECK(PGPoint::parse("(1:0:1)").vec() == 5);
  CHECK(PGPoint::parse(PGPoint(77, 7).to_string()) == PGPoint(77, 7));
}

TEST_CASE("spans and subspace membership") {
  Rng rng(21);
  for (int t = 0; t < 200; ++t) {
    std::vector<Word> gens;
    for (int i = 0; i < 3; ++i) gens.push_back(stabcert::testing::random_nonzero(rng, 7));
    const Subspace s(gens, 7);
    CHECK(s.dim() == rank(gens));
    CHECK(s.mask().count() == (1 << s.dim()) - 1);
    for (Word p : s.mask().points()) CHECK(s.contains(p));
    CHECK(PointMask::span_of(gens) == s.mask());
  }
  const Subspace h = Subspace::hyperplane(1, 4);
  CHECK(h.dim() == 3);
  CHECK(h.contains(2));
  CHECK_FALSE(h.contains(1));
}

TEST_CASE("linear maps compose and invert") {
  Rng rng(22);
  for (int t = 0; t < 100; ++t) {
    const LinearMap f = stabcert::testing::random_invertible(rng, 8);
    const LinearMap g = stabcert::testing::random_invertible(rng, 8);
    CHECK(f * f.inverse() == LinearMap::identity(8));
    const Word v = stabcert::testing::random_nonzero(rng, 8);
    CHECK((f * g).apply(v) == f.apply(g.apply(v)));
  }
}

TEST_CASE("quotient by two skew lines lands in PG(3,2)") {
  const Word k[] = {unit(1), unit(2), unit(3), unit(4)};
  const QuotientMap q{Subspace(k, 8)};
  CHECK(q.image_dim() == 4);
  CHECK(q.complement() == std::vector<int>{4, 5, 6, 7});
  CHECK(q.apply(unit(5) | unit(1)) == 1);
  CHECK(std::holds_alternative<Degenerate>(project(q, PGLine(unit(1), unit(2), 8))));
  CHECK(std::holds_alternative<PGPoint>(project(q, PGLine(unit(1), unit(5), 8))));
  CHECK(std::holds_alternative<PGLine>(project(q, PGLine(unit(5), unit(6), 8))));
}

TEST_CASE("caps and secants") {
  const std::vector<PGPoint> frame{PGPoint(1, 3), PGPoint(2, 3), PGPoint(4, 3), PGPoint(7, 3)};
  CHECK(is_cap(frame));
  CHECK(secants(frame).size() == 6);
  const std::vector<PGPoint> line{PGPoint(1, 3), PGPoint(2, 3), PGPoint(3, 3)};
  CHECK_FALSE(is_cap(line));
  CHECK(secants(line).size() == 1);
}

TEST_CASE("tables index every line") {
  const auto& t = tables(4);
  CHECK(t.lines.size() == 35);
  for (std::size_t i = 0; i < t.lines.size(); ++i) CHECK(t.index_of(t.lines[i]) == static_cast<int>(i));
}
