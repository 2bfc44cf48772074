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

#include "stabcert/additive_code.hpp"
#include "stabcert/pipeline.hpp"
#include "stabcert/quantum.hpp"
#include "support.hpp"

using namespace stabcert;
using stabcert::testing::Rng;

namespace {

// Minimum weight by listing every codeword, independent of the library's
// distance routine.
int brute_distance(const AdditiveCode& c) {
  int best = 0;
  for (Word w : c.codewords()) {
    if (w == 0) continue;
    const int wt = quaternary_weight(GF2Vector(w, 2 * c.length()), c.length());
    if (best == 0 || wt < best) best = wt;
  }
  return best;
}

}  // namespace

TEST_CASE("quaternary weight counts nonzero coordinate pairs") {
  CHECK(quaternary_weight(GF2Vector::parse("10 01 11 00"), 4) == 3);
  CHECK(quaternary_weight_bits(0b11000110u) == 3);
  CHECK(quaternary_weight(GF2Vector::zero(6), 3) == 0);
}

TEST_CASE("hexacode from the hyperoval") {
  const NMSet h = fixture("hyperoval");
  const AdditiveCode c = code_from_lines(h.line_system());
  CHECK(c.length() == 6);
  CHECK(c.k2() == 6);
  CHECK(is_self_orthogonal(c));
  CHECK(min_quaternary_distance(c) == 4);
  CHECK(same_code(symplectic_dual(c), c));
  CHECK(strength(h.line_system()) == 3);
  CHECK(report(c).to_string().find("6") != std::string::npos);
}

TEST_CASE("matrix and lines round-trip up to the code") {
  Rng rng(31);
  for (int t = 0; t < 50; ++t) {
    const LineSystem ls = stabcert::testing::random_line_system(rng, 7, 5);
    const AdditiveCode c = code_from_lines(ls);
    // The generator is kept in reduced form, so only the code survives.
    CHECK(same_code(code_from_lines(lines_from_matrix(c.generator())), c));
    CHECK(c.k2() == rank(c.generator()));
  }
}

TEST_CASE("symplectic dual: dimensions add up and duality is an involution") {
  Rng rng(32);
  for (int t = 0; t < 100; ++t) {
    const int n = 3 + static_cast<int>(rng() % 6);
    const LineSystem ls = stabcert::testing::random_line_system(rng, 6, n);
    const AdditiveCode c = code_from_lines(ls);
    const AdditiveCode d = symplectic_dual(c);
    CHECK(rank(c.generator()) + d.k2() == 2 * n);
    for (const auto& x : c.generator().rows())
      for (const auto& y : d.generator().rows()) CHECK_FALSE(symplectic_product(x, y));
    CHECK(same_code(symplectic_dual(d), c));
  }
}

TEST_CASE("minimum distance agrees with a codeword listing") {
  Rng rng(33);
  for (int t = 0; t < 100; ++t) {
    const LineSystem ls = stabcert::testing::random_line_system(rng, 5 + static_cast<int>(rng() % 3), 6);
    const AdditiveCode d = symplectic_dual(code_from_lines(ls));
    if (d.k2() == 0) continue;
    CHECK(min_quaternary_distance(d) == brute_distance(d));
  }
}

TEST_CASE("strength equals dual distance minus one") {
  Rng rng(34);
  int tested = 0;
  for (int t = 0; t < 400 && tested < 150; ++t) {
    const int dim = 6 + static_cast<int>(rng() % 3);
    const int n = 4 + static_cast<int>(rng() % 6);
    const LineSystem ls = t % 4 == 0 ? stabcert::testing::planted_selfdual_system(rng)
                                     : stabcert::testing::random_line_system(rng, dim, n);
    const AdditiveCode d = symplectic_dual(code_from_lines(ls));
    if (d.k2() == 0) continue;
    const int s = strength(ls);
    // Strength is capped by half the dimension; below the cap it is exact.
    if (s < ls.ambient_dim / 2 && s < ls.size()) CHECK(s == min_quaternary_distance(d) - 1);
    else CHECK(s <= min_quaternary_distance(d) - 1);
    ++tested;
  }
  CHECK(tested >= 100);
}

TEST_CASE("words supported on a coordinate set") {
  const NMSet h = fixture("hyperoval");
  const AdditiveCode c = code_from_lines(h.line_system());
  const int four[] = {0, 1, 2, 3};
  for (const auto& w : words_supported_on(c, four)) CHECK((w.bits() >> 8) == 0);
  CHECK_FALSE(words_supported_on(c, four).empty());
  const int three[] = {0, 1, 2};
  CHECK(words_supported_on(c, three).empty());
  const int bad[] = {7};
  CHECK_THROWS_AS(words_supported_on(c, bad), DimensionError);
}
