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

#include <fstream>
#include <map>
#include <sstream>

#include "pipeline_internal.hpp"

namespace stabcert {

namespace {

using detail::SampleOutcome;

// Re-runs one sampled subtree of a stage through the reduction-free route.
class SampleRunner {
 public:
  explicit SampleRunner(const Certificate& c) : c_(c) {}

  SampleOutcome run(const std::string& part, std::size_t idx, const Json& part_json) {
    const auto id = parse_stage(c_.stage_id);
    if (part == "lift") {
      const auto offset = part_json.at("witness_offset").get<std::size_t>();
      const CompletionStats st = complete_direct(detail::lift_problem(parse_nmset(c_.witnesses.at(offset + idx).text)));
      return {st.solutions.size(), st.solutions.size(), st.nodes};
    }
    switch (*id) {
      case StageId::P:
        if (part == "a") return detail::plain_line_subtree(6, 7, idx);
        if (part == "b") return detail::plain_line_subtree(7, 8, idx);
        break;
      case StageId::W5:
        return detail::plain_point_subtree(fixture("sevenzero_selfdual"), 6, static_cast<Word>(idx), 7);
      case StageId::W4a:
        return detail::plain_point_subtree(detail::w4a_lines(), 7, static_cast<Word>(idx), 6);
      case StageId::W4b: {
        if (w4b_.empty()) w4b_ = detail::w4b_systems();
        return detail::plain_point_subtree(w4b_.at(idx / 128), 7, static_cast<Word>(idx % 128), 6);
      }
      case StageId::W4c: {
        const auto k = part_json.at("witness").get<std::size_t>();
        return detail::plain_point_subtree(parse_nmset(c_.witnesses.at(k).text), 7, static_cast<Word>(idx), 6);
      }
      case StageId::S: {
        const CompletionStats st = complete_direct(detail::stage_S_problem(systems(part, part_json).at(idx)));
        return {st.solutions.size(), st.solutions.size(), st.nodes};
      }
      case StageId::F: {
        const NMSet five = parse_nmset(c_.witnesses.at(part_json.at("witness").get<std::size_t>()).text);
        const CompletionStats st = complete_direct(detail::stage_F_problem(five, systems(part, part_json).at(idx)));
        return {st.solutions.size(), st.solutions.size(), st.nodes};
      }
    }
    throw CertificateError("unknown sample part " + part);
  }

  const std::vector<std::vector<Word>>& systems(const std::string& part, const Json& part_json) {
    auto it = systems_.find(part);
    if (it == systems_.end()) {
      std::vector<std::vector<Word>> sys;
      if (c_.stage_id == "S") {
        sys = detail::stage_S_systems();
      } else {
        sys = detail::stage_F_systems(parse_nmset(c_.witnesses.at(part_json.at("witness").get<std::size_t>()).text));
      }
      it = systems_.emplace(part, std::move(sys)).first;
    }
    return it->second;
  }

  std::size_t tasks(const std::string& part, const Json& part_json) {
    const auto id = parse_stage(c_.stage_id);
    if (part == "lift") {
      std::size_t n = 0;
      for (const auto& w : c_.witnesses) n += w.label == "parity-passing (6,7)-set" ? 1 : 0;
      return n;
    }
    switch (*id) {
      case StageId::P: return detail::plain_line_tasks(part == "a" ? 6 : 7, part == "a" ? 7 : 8);
      case StageId::W5:
      case StageId::W4a:
      case StageId::W4c: return 128;
      case StageId::W4b:
        if (w4b_.empty()) w4b_ = detail::w4b_systems();
        return w4b_.size() * 128;
      case StageId::S:
      case StageId::F: return systems(part, part_json).size();
    }
    return 0;
  }

 private:
  const Certificate& c_;
  std::vector<NMSet> w4b_;
  std::map<std::string, std::vector<std::vector<Word>>> systems_;
};

void check_samples(const Certificate& c, CheckReport& r) {
  auto fail = [&](const std::string& what) {
    r.valid = false;
    r.problems.push_back(c.stage_id + ": " + what);
  };
  if (!c.double_check.contains("parts")) {
    fail("no reduction-free sample recorded");
    return;
  }
  SampleRunner runner(c);
  for (const auto& part : c.double_check.at("parts")) {
    const std::string name = part.at("name").get<std::string>();
    const std::size_t tasks = part.at("tasks").get<std::size_t>();
    if (runner.tasks(name, part) != tasks) fail("sample part " + name + ": task count differs");
    const double rate = part.at("sample_rate").get<double>();
    const std::uint64_t seed = fnv1a64(c.stage_id + "/" + name);
    if (part.at("seed").get<std::string>() != hex64(seed)) fail("sample part " + name + ": seed");
    std::vector<std::size_t> recorded;
    for (const auto& s : part.at("sampled")) recorded.push_back(s.at("index").get<std::size_t>());
    if (recorded != detail::choose_sample(tasks, rate, seed)) fail("sample part " + name + ": sampled indices");
    bool agree = true;
    for (const auto& s : part.at("sampled")) {
      const std::size_t idx = s.at("index").get<std::size_t>();
      const SampleOutcome o = runner.run(name, idx, part);
      if (o.count != s.at("count").get<std::uint64_t>() || o.completions != s.at("completions").get<std::uint64_t>() ||
          o.nodes != s.at("nodes").get<std::uint64_t>()) {
        fail("sample part " + name + ": subtree " + std::to_string(idx) + " re-run differs");
      }
      if (s.contains("primary_count")) {
        agree = agree && s["primary_count"] == s["count"] && s["primary_completions"] == s["completions"];
      } else {
        agree = agree && o.count == 0;
      }
    }
    if (part.at("agree").get<bool>() != agree) fail("sample part " + name + ": agreement flag");
  }
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw CertificateError("cannot read " + p.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

CheckReport check_certificate(const Certificate& c, const std::filesystem::path& dir) {
  CheckReport r;
  auto fail = [&](const std::string& what) {
    r.valid = false;
    r.problems.push_back(c.stage_id + ": " + what);
  };
  if (!c.consistent()) fail("match flag disagrees with the outcome and checks");

  if (c.stage_id == "all") {
    std::string inputs;
    std::uint64_t failing = 0;
    const Json& stages = c.search_space.contains("stages") ? c.search_space["stages"] : Json::array();
    if (stages.size() != stage_plan().size()) fail("master lists " + std::to_string(stages.size()) + " stages");
    for (const auto& ref : stages) {
      const std::string sid = ref.at("stage_id").get<std::string>();
      inputs += sid + ":" + ref.at("input_fingerprint").get<std::string>() + ";";
      failing += ref.at("match").get<bool>() ? 0 : 1;
      Certificate sc;
      try {
        sc = parse_certificate(read_file(dir / ref.at("file").get<std::string>()));
      } catch (const std::exception& ex) {
        fail(ex.what());
        continue;
      }
      if (sc.stage_id != sid) fail(sid + ": file holds stage " + sc.stage_id);
      if (hex64(sc.digest()) != ref.at("digest").get<std::string>()) fail(sid + ": digest differs");
      if (sc.match != ref.at("match").get<bool>()) fail(sid + ": match flag differs");
      CheckReport sub = check_certificate(sc, dir);
      if (!sub.valid) {
        r.valid = false;
        r.problems.insert(r.problems.end(), sub.problems.begin(), sub.problems.end());
      }
    }
    if (fnv1a64(inputs) != c.input_fingerprint) fail("input fingerprint");
    if (failing != c.count) fail("count of failing stages");
    for (const auto& w : c.witnesses) {
      for (auto& p : detail::check_witness(w)) fail(p);
    }
    return r;
  }

  const auto id = parse_stage(c.stage_id);
  if (!id) {
    fail("unknown stage id");
    return r;
  }
  if (fnv1a64(detail::normalized_input(*id)) != c.input_fingerprint) fail("input fingerprint");
  // Every counted object is listed as a witness.
  if (*id != StageId::P) {
    const bool completions = *id == StageId::S || *id == StageId::F;
    std::uint64_t listed = 0;
    for (const auto& w : c.witnesses) {
      listed += completions ? (w.label == "completed 13-line system") : (w.label.rfind("parity-passing", 0) == 0);
    }
    if (listed != c.count) fail("count differs from the listed witnesses");
  }
  for (const auto& w : c.witnesses) {
    for (auto& p : detail::check_witness(w)) fail(p);
  }
  try {
    check_samples(c, r);
  } catch (const std::exception& ex) {
    fail(std::string("malformed sample record: ") + ex.what());
  }
  return r;
}

}  // namespace stabcert
