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

#include "stabcert/gf2.hpp"
#include "support.hpp"

using namespace stabcert;
using stabcert::testing::Rng;

namespace {

GF2Matrix random_matrix(Rng& rng, int rows, int cols) {
  GF2Matrix m(cols);
  for (int r = 0; r < rows; ++r) m.append_row(GF2Vector(static_cast<Word>(rng()) & ((Word{1} << cols) - 1), cols));
  return m;
}

}  // namespace

TEST_CASE("vectors parse, print and add") {
  const GF2Vector v = GF2Vector::parse("10|01 1");
  CHECK(v.len() == 5);
  CHECK(v.to_string().find('1') == 0);
  CHECK(v.weight() == 3);
  CHECK((v + v).is_zero());
  CHECK(GF2Vector::unit_vector(4, 2).bit(1));
  CHECK_THROWS_AS(GF2Vector(0, 33), DimensionError);
  CHECK_THROWS(GF2Vector::parse("10x1"));
  CHECK_THROWS_AS(GF2Vector(1, 3) + GF2Vector(1, 4), DimensionError);
}

TEST_CASE("symplectic form is bilinear and alternating") {
  Rng rng(11);
  for (int t = 0; t < 500; ++t) {
    const int len = 2 * (1 + static_cast<int>(rng() % 13));
    const Word mask = (len == 32) ? ~Word{0} : (Word{1} << len) - 1;
    const GF2Vector u(static_cast<Word>(rng()) & mask, len);
    const GF2Vector v(static_cast<Word>(rng()) & mask, len);
    const GF2Vector w(static_cast<Word>(rng()) & mask, len);
    CHECK_FALSE(symplectic_product(u, u));
    CHECK(symplectic_product(u, v) == symplectic_product(v, u));
    CHECK(symplectic_product(u + v, w) == (symplectic_product(u, w) != symplectic_product(v, w)));
    CHECK(symplectic_bits(u.bits(), v.bits()) == symplectic_product(u, v));
    CHECK(euclidean_product(u + v, w) == (euclidean_product(u, w) != euclidean_product(v, w)));
  }
}

TEST_CASE("symplectic form pairs adjacent coordinates") {
  CHECK(symplectic_product(GF2Vector::parse("1000"), GF2Vector::parse("0100")));
  CHECK_FALSE(symplectic_product(GF2Vector::parse("1000"), GF2Vector::parse("0010")));
  CHECK_FALSE(symplectic_product(GF2Vector::parse("1100"), GF2Vector::parse("1100")));
}

TEST_CASE("rank plus nullity equals the column count") {
  Rng rng(12);
  for (int t = 0; t < 300; ++t) {
    const int rows = 1 + static_cast<int>(rng() % 10);
    const int cols = 1 + static_cast<int>(rng() % 16);
    const GF2Matrix m = random_matrix(rng, rows, cols);
    const auto ker = kernel(m);
    CHECK(rank(m) + static_cast<int>(ker.size()) == cols);
    for (const auto& x : ker) {
      for (const auto& r : m.rows()) CHECK_FALSE(euclidean_product(r, x));
    }
    CHECK(rank(m) == rank(m.transposed()));
  }
}

TEST_CASE("row reduction is idempotent and keeps the row space") {
  Rng rng(13);
  for (int t = 0; t < 300; ++t) {
    const GF2Matrix m = random_matrix(rng, 1 + static_cast<int>(rng() % 9), 1 + static_cast<int>(rng() % 12));
    const GF2Matrix r = row_reduce(m);
    CHECK(row_reduce(r) == r);
    CHECK(r.nrows() == m.nrows());
    CHECK(rank(r) == rank(m));
    GF2Matrix both = m;
    for (const auto& row : r.rows()) both.append_row(row);
    CHECK(rank(both) == rank(m));
  }
}

TEST_CASE("solve_in_span finds coefficients exactly for vectors in the row space") {
  Rng rng(14);
  for (int t = 0; t < 300; ++t) {
    const int cols = 1 + static_cast<int>(rng() % 12);
    const GF2Matrix m = random_matrix(rng, 1 + static_cast<int>(rng() % 6), cols);
    const GF2Vector target(static_cast<Word>(rng()) & ((Word{1} << cols) - 1), cols);
    const auto c = solve_in_span(m, target);
    GF2Matrix with = m;
    with.append_row(target);
    CHECK(c.has_value() == (rank(with) == rank(m)));
    if (c) {
      GF2Vector sum = GF2Vector::zero(cols);
      for (int i = 0; i < m.nrows(); ++i)
        if (c->bit(i)) sum += m.row(i);
      CHECK(sum == target);
    }
  }
}

TEST_CASE("matrix text round-trips") {
  const GF2Matrix m = parse_matrix("10 01\n01 11\n");
  CHECK(m.nrows() == 2);
  CHECK(m.ncols() == 4);
  CHECK(parse_matrix(format_matrix(m, 2)) == m);
  CHECK_THROWS(parse_matrix("10\n101\n"));
  CHECK(GF2Matrix::identity(5).transposed() == GF2Matrix::identity(5));
}
