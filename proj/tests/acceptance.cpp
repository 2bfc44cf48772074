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

// Acceptance run: every stage twice, the certificate checker, and the
// property suites. Prints one PASS/FAIL line per criterion and exits
// nonzero when any of them fails.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "stabcert/additive_code.hpp"
#include "stabcert/pipeline.hpp"
#include "stabcert/quantum.hpp"
#include "support.hpp"

using namespace stabcert;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void need(bool ok, const std::string& what) {
    pass = pass && ok;
    if (!detail.empty()) detail += "; ";
    detail += what + (ok ? "" : " [no]");
  }
};

const Check* find_check(const Certificate& c, const std::string& id) {
  for (const auto& ch : c.checks)
    if (ch.id == id) return &ch;
  return nullptr;
}

// "id=observed" plus whether the check matched its expectation.
void need_check(Outcome& o, const Certificate& c, const std::string& id) {
  const Check* ch = find_check(c, id);
  if (!ch) {
    o.need(false, id + " missing");
    return;
  }
  o.need(ch->match, id + "=" + ch->observed.dump());
}

void need_empty(Outcome& o, const Certificate& c) {
  o.need(c.count == 0, c.stage_id + " count=" + std::to_string(c.count));
}

std::string seconds(Clock::time_point t0) {
  std::ostringstream s;
  s.precision(1);
  s << std::fixed << std::chrono::duration<double>(Clock::now() - t0).count() << " s";
  return s.str();
}

Outcome property_suites(const VerifyResult& first, const VerifyResult& second) {
  Outcome o;
  testing::Rng rng(20261016);

  // (a) algebraic and geometric quantum condition.
  int disagreements = 0;
  int holds = 0;
  for (int t = 0; t < 240; ++t) {
    const LineSystem ls = t % 2 == 0 ? testing::random_self_orthogonal(rng, 8, 13)
                                     : testing::random_line_system(rng, 8, 9 + static_cast<int>(rng() % 5));
    const bool alg = quantum_condition(ls);
    disagreements += alg == is_self_orthogonal(code_from_lines(ls)) && alg == quantum_condition_geometric(ls) ? 0 : 1;
    holds += alg ? 1 : 0;
  }
  o.need(disagreements == 0, "(a) 240 systems, " + std::to_string(holds) + " self-orthogonal, disagreements " + std::to_string(disagreements));

  // (b) canonical forms under random projectivities.
  int violations = 0;
  for (const auto& name : fixture_names()) {
    const NMSet s = fixture(name);
    const NMSet form = canonical_form(s).form;
    for (int t = 0; t < 100; ++t) {
      violations += canonical_form(s.transformed(testing::random_invertible(rng, s.ambient_dim))).form == form ? 0 : 1;
    }
  }
  o.need(violations == 0, "(b) " + std::to_string(fixture_names().size()) + " fixtures x 100 maps, violations " + std::to_string(violations));

  // (c) factor weights of generated systems: random ones with two kernel
  // lines, and planted self-dual ones.
  const Word k[] = {unit(1), unit(2), unit(3), unit(4)};
  const QuotientMap q{Subspace(k, 8)};
  int bad_sum = 0;
  int systems = 0;
  for (int t = 0; t < 300; ++t) {
    LineSystem ls;
    if (t % 3 == 0) {
      ls = testing::planted_selfdual_system(rng);
    } else {
      ls = LineSystem{8, {PGLine(unit(1), unit(2), 8), PGLine(unit(3), unit(4), 8)}};
      const int n = 3 + static_cast<int>(rng() % 11);
      while (ls.size() < n) {
        const PGLine l = testing::random_line(rng, 8);
        const Word pa = l.a() >> 4;
        const Word pb = l.b() >> 4;
        if (pa != 0 && pb != 0 && pa != pb) ls.lines.push_back(l);
      }
    }
    bad_sum += factor_weights(ls, q).total() == ls.size() - 2 ? 0 : 1;
    ++systems;
  }
  o.need(bad_sum == 0, "(c) " + std::to_string(systems) + " systems, weight-sum violations " + std::to_string(bad_sum));

  // (d) strength against dual distance.
  int strength_bad = 0;
  int tested = 0;
  while (tested < 120) {
    const LineSystem ls = tested % 4 == 0 ? testing::planted_selfdual_system(rng)
                                          : testing::random_line_system(rng, 6 + static_cast<int>(rng() % 3), 4 + static_cast<int>(rng() % 6));
    const AdditiveCode d = symplectic_dual(code_from_lines(ls));
    if (d.k2() == 0) continue;
    const int s = strength(ls);
    const int dd = min_quaternary_distance(d);
    const bool capped = s >= ls.ambient_dim / 2 || s >= ls.size();
    strength_bad += (capped ? s <= dd - 1 : s == dd - 1) ? 0 : 1;
    ++tested;
  }
  o.need(strength_bad == 0, "(d) " + std::to_string(tested) + " systems, mismatches " + std::to_string(strength_bad));

  // (e) two full runs, byte-identical once wall time is zeroed.
  auto zeroed = [](Certificate c) {
    c.wall_time_ms = 0;
    return c.dump();
  };
  bool same = first.stages.size() == second.stages.size() && zeroed(first.master) == zeroed(second.master);
  for (std::size_t i = 0; same && i < first.stages.size(); ++i) same = zeroed(first.stages[i]) == zeroed(second.stages[i]);
  o.need(same, "(e) two verify-all runs (1 and 2 workers) identical modulo wall time");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path out = argc > 1 ? fs::path(argv[1]) : fs::path("acceptance_certificates");
  fs::create_directories(out);
  RunOptions opt;
  opt.log = [](const std::string& m) { std::cerr << "[acceptance] " << m << "\n"; };
  opt.verbosity = 1;

  std::map<std::string, std::string> times;
  auto t0 = Clock::now();
  const VerifyResult run1 = verify_all(opt);
  times["run1"] = seconds(t0);
  for (const auto& c : run1.stages) std::ofstream(out / certificate_file_name(c.stage_id)) << c.dump();
  std::ofstream(out / certificate_file_name("all")) << run1.master.dump();

  t0 = Clock::now();
  const CheckReport checked = check_certificate(run1.master, out);
  times["check"] = seconds(t0);

  RunOptions opt2 = opt;
  opt2.workers = 2;
  t0 = Clock::now();
  const VerifyResult run2 = verify_all(opt2);
  times["run2"] = seconds(t0);

  std::map<std::string, const Certificate*> st;
  for (const auto& c : run1.stages) st[c.stage_id] = &c;
  const Certificate& P = *st.at("P");
  const Certificate& W5 = *st.at("W5");
  const Certificate& W4a = *st.at("W4a");
  const Certificate& W4b = *st.at("W4b");
  const Certificate& W4c = *st.at("W4c");
  const Certificate& S = *st.at("S");
  const Certificate& F = *st.at("F");

  std::vector<Outcome> crit(11);
  t0 = Clock::now();
  crit[1].need(enumerate_lines(4).size() == 35, "lines of PG(3,2)=" + std::to_string(enumerate_lines(4).size()));
  crit[1].need(enumerate_points(7).size() == 127, "points of PG(6,2)=" + std::to_string(enumerate_points(7).size()));
  crit[1].need(enumerate_secunda(8).size() == 10795, "secunda of PG(7,2)=" + std::to_string(enumerate_secunda(8).size()));
  crit[1].detail += " (" + seconds(t0) + ")";

  need_check(crit[2], P, "P.c.max");
  need_check(crit[2], P, "P.c.unique");

  need_check(crit[3], P, "P.ho.classes");
  need_check(crit[3], P, "P.ho.transversal");
  need_check(crit[3], P, "P.ho.aut");
  need_check(crit[3], P, "P.a");

  for (const char* id : {"W5.classes", "W5.ext", "W5.selfdual", "W5.aut", "W5.77", "W5.76"}) need_check(crit[4], W5, id);
  need_check(crit[4], P, "P.b");

  need_check(crit[5], W5, "W5.76.parity");
  need_empty(crit[5], W5);

  need_empty(crit[6], W4a);
  need_empty(crit[6], W4b);
  need_check(crit[6], W4a, "W4a.lift");
  need_check(crit[6], W4b, "W4b.lift");

  need_check(crit[7], W4c, "W4c.classes");
  need_check(crit[7], W4c, "W4c.fixtures");
  need_empty(crit[7], W4c);

  need_empty(crit[8], S);
  if (const Check* ch = find_check(S, "S.classes")) {
    crit[8].detail += "; S.classes=" + ch->observed.dump() + (ch->match ? "" : " (warning)");
  }
  crit[8].need(S.match, "S match");

  need_check(crit[9], F, "F.pool");
  need_empty(crit[9], F);
  crit[9].need(run1.master.match, "master match");
  crit[9].need(checked.valid, "certificates re-checked");

  crit[10] = property_suites(run1, run2);

  std::cout << "timings: run1 " << times["run1"] << ", check " << times["check"] << ", run2 " << times["run2"] << "\n";
  for (const auto& p : checked.problems) std::cout << "checker: " << p << "\n";
  int failed = 0;
  for (int i = 1; i <= 10; ++i) {
    std::cout << "criterion " << i << ": " << (crit[i].pass ? "PASS" : "FAIL") << ": " << crit[i].detail << "\n";
    failed += crit[i].pass ? 0 : 1;
  }
  std::cout << failed << " of 10 criteria failed\n";
  return failed == 0 ? 0 : 1;
}
