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

#ifndef STABCERT_PIPELINE_HPP
#define STABCERT_PIPELINE_HPP

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stabcert/certificate.hpp"
#include "stabcert/nmset.hpp"

namespace stabcert {

enum class StageId { P, W5, W4a, W4b, W4c, S, F };

std::string to_string(StageId id);
std::optional<StageId> parse_stage(std::string_view name);

struct StagePlanEntry {
  StageId id;
  std::vector<StageId> depends_on;
};
/// Stages in run order; every dependency precedes its dependents.
const std::vector<StagePlanEntry>& stage_plan();

struct RunOptions {
  int workers = 1;
  /// Fraction of subtrees re-run through the reduction-free route.
  double sample_rate = 0.01;
  int verbosity = 0;
  std::function<void(const std::string&)> log;
};

/// Built-in copies of the reference configurations shipped in data/fixtures.
/// Names: hyperoval, secundum_five, fiveline_hyperplane, sevenzero_selfdual,
/// sevenseven, sixline_family1..4.
std::string_view fixture_text(std::string_view name);
NMSet fixture(std::string_view name);
std::vector<std::string> fixture_names();

/// Structural facts behind purity: no (7,0)-set in PG(5,2), no (8,0)-set in
/// PG(6,2), (2,m)-sets of PG(4,2), and triples out of general position
/// detected as low-weight dual words.
Certificate stage_P_purity_ingredients(const RunOptions& opt = {});
/// (7,0)-sets of PG(6,2) and their extensions; no (7,6)-set passes the
/// hyperplane parity test.
Certificate stage_W5_rule_out_wE5(const RunOptions& opt = {});
/// Hyperoval lines plus a sixth line through e_7: no parity-correct (6,7)-set.
Certificate stage_W4a_wg3_case(const RunOptions& opt = {});
/// Four hyperoval lines, the line <e_1+e_3+e_4+e_6, e_7> and one more line.
Certificate stage_W4b_wg2_case(const RunOptions& opt = {});
/// Six-line systems of PG(6,2) with any four spanning: four classes, none
/// completable by seven points.
Certificate stage_W4c_six_line_families(const RunOptions& opt = {});
/// Five lines spanning a secundum: point systems and their completions.
Certificate stage_S_secundum_exclusion(const RunOptions& opt = {});
/// Five lines spanning a hyperplane: the final completion search.
Certificate stage_F_final_search(const RunOptions& opt = {});

Certificate run_stage(StageId id, const RunOptions& opt = {});

struct VerifyResult {
  Certificate master;
  std::vector<Certificate> stages;
};
VerifyResult verify_all(const RunOptions& opt = {});
/// Master record referencing each stage certificate by digest.
Certificate master_certificate(const std::vector<Certificate>& stages);

/// File name used for a stage certificate ("all" for the master).
std::string certificate_file_name(std::string_view stage_id);

struct CheckReport {
  bool valid = true;
  std::vector<std::string> problems;
};

/// Re-validates a certificate without repeating its search: consistency of
/// `match`, input fingerprint, every witness property, and the recorded
/// reduction-free samples (re-run here). A master certificate also needs the
/// stage certificates, read from `dir`.
CheckReport check_certificate(const Certificate& cert, const std::filesystem::path& dir = {});

}  // namespace stabcert

#endif  // STABCERT_PIPELINE_HPP
