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

#include <algorithm>

#include "stabcert/completion.hpp"
#include "stabcert/quantum.hpp"
#include "support.hpp"

using namespace stabcert;
using stabcert::testing::Rng;

namespace {

struct Planted {
  CompletionProblem problem;
  std::vector<Word> answer;
};

// Keeps the first `fixed` lines and reopens the rest as <a, v> with v free
// outside the lowest bit of a.
Planted reopen(const LineSystem& ls, int fixed) {
  Planted p;
  for (int i = 0; i < ls.size(); ++i) {
    const PGLine& l = ls.lines[i];
    if (i < fixed) {
      p.problem.fixed.push_back(l);
      continue;
    }
    const Word low = l.a() & (~l.a() + 1);
    const Word b = (l.b() & low) ? l.b() ^ l.a() : l.b();
    p.problem.a.push_back(l.a());
    p.problem.base.push_back(0);
    p.problem.free.push_back(0xFFu & ~low);
    p.answer.push_back(b);
  }
  return p;
}

std::vector<std::vector<Word>> sorted(std::vector<std::vector<Word>> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("planted self-dual systems are recovered by both routes") {
  Rng rng(61);
  for (int t = 0; t < 6; ++t) {
    const LineSystem ls = stabcert::testing::planted_selfdual_system(rng);
    REQUIRE(quantum_condition(ls));
    REQUIRE(strength3_by_rank(ls));
    const Planted p = reopen(ls, 5);
    const CompletionStats staged = complete_staged(p.problem);
    const CompletionStats direct = complete_direct(p.problem);
    CHECK(std::find(staged.solutions.begin(), staged.solutions.end(), p.answer) != staged.solutions.end());
    CHECK(sorted(staged.solutions) == sorted(direct.solutions));
    CHECK(staged.pi_survivors <= staged.pi_assignments);
    for (const auto& v : staged.solutions) {
      const LineSystem done = p.problem.assemble(v);
      CHECK(quantum_condition(done));
      CHECK(strength3_by_rank(done));
    }
  }
}

TEST_CASE("solutions match a plain enumeration of the open lines") {
  Rng rng(62);
  const LineSystem ls = stabcert::testing::planted_selfdual_system(rng);
  const Planted p = reopen(ls, 6);
  std::vector<std::vector<Word>> brute;
  const Word f0 = p.problem.free[0];
  const Word f1 = p.problem.free[1];
  for (Word v0 = f0;; v0 = (v0 - 1) & f0) {
    for (Word v1 = f1;; v1 = (v1 - 1) & f1) {
      try {
        const LineSystem done = p.problem.assemble({v0, v1});
        if (strength3_by_rank(done) && quantum_condition(done)) brute.push_back({v0, v1});
      } catch (const std::exception&) {
        // v equal to zero or to a: not a line
      }
      if (v1 == 0) break;
    }
    if (v0 == 0) break;
  }
  CHECK(sorted(complete_staged(p.problem).solutions) == sorted(brute));
  CHECK(sorted(complete_direct(p.problem).solutions) == sorted(brute));
  CHECK_FALSE(brute.empty());
}

TEST_CASE("a single candidate is accepted exactly when it completes") {
  Rng rng(63);
  const LineSystem ls = stabcert::testing::planted_selfdual_system(rng);
  Planted p = reopen(ls, 7);
  int accepted = 0;
  for (Word b = 1; b < 256; ++b) {
    if (b == p.problem.a[0]) continue;
    p.problem.free[0] = 0;
    p.problem.base[0] = b;
    const LineSystem done = p.problem.assemble({0});
    const std::size_t want = strength3_by_rank(done) && quantum_condition(done) ? 1 : 0;
    CHECK(complete_staged(p.problem).solutions.size() == want);
    CHECK(complete_direct(p.problem).solutions.size() == want);
    accepted += static_cast<int>(want);
  }
  CHECK(accepted >= 1);
}

TEST_CASE("malformed problems are rejected") {
  CompletionProblem p;
  p.fixed = {PGLine(unit(1), unit(2), 8), PGLine(unit(3), unit(4), 8)};
  p.a = {unit(5)};
  p.base = {};
  p.free = {0};
  CHECK_THROWS(complete_staged(p));
  p.fixed.push_back(PGLine(unit(1), unit(2), 7));
  p.base = {unit(6)};
  CHECK_THROWS(complete_direct(p));
  CompletionProblem q;
  q.fixed = {PGLine(unit(1), unit(2), 8), PGLine(unit(1), unit(3), 8)};
  CHECK_THROWS(complete_direct(q));
}
