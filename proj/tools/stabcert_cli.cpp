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

// stabcert: run the certified searches, check certificates, inspect matrices.
//
// Exit codes: 0 success / all match / valid, 1 mismatch or invalid
// certificate, 2 I/O failure, 3 unparsable input.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "stabcert/additive_code.hpp"
#include "stabcert/nmset.hpp"
#include "stabcert/pipeline.hpp"
#include "stabcert/quantum.hpp"

namespace fs = std::filesystem;
using namespace stabcert;

namespace {

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kIo = 2;
constexpr int kParse = 3;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw IoError("cannot read " + p.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out || !(out << text) || !out.flush()) throw IoError("cannot write " + p.string());
}

struct VerifyArgs {
  std::string stage;
  bool all = false;
  int workers = 1;
  std::string out = "certificates";
  double sample_rate = 0.01;
};

int cmd_verify(const VerifyArgs& a, int verbosity) {
  std::optional<StageId> id;
  if (!a.all && a.stage != "all") {
    id = parse_stage(a.stage);
    if (!id) {
      std::cerr << "unknown stage " << a.stage << "\n";
      return kParse;
    }
  }
  const fs::path dir(a.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    std::cerr << "cannot create output directory " << dir << "\n";
    return kIo;
  }

  RunOptions opt;
  opt.workers = a.workers;
  opt.sample_rate = a.sample_rate;
  opt.verbosity = verbosity;
  opt.log = [](const std::string& msg) { std::cerr << "[stabcert] " << msg << "\n"; };

  try {
    // Probe before spending minutes on a search.
    write_file(dir / ".write_test", "");
    fs::remove(dir / ".write_test", ec);
    bool ok = true;
    if (id) {
      Certificate c = run_stage(*id, opt);
      write_file(dir / certificate_file_name(c.stage_id), c.dump());
      std::cout << c.stage_id << ": count " << c.count << ", " << (c.match ? "match" : "MISMATCH") << "\n";
      ok = c.match;
    } else {
      VerifyResult r = verify_all(opt);
      for (const auto& c : r.stages) {
        write_file(dir / certificate_file_name(c.stage_id), c.dump());
        std::cout << c.stage_id << ": count " << c.count << ", " << (c.match ? "match" : "MISMATCH") << "\n";
      }
      write_file(dir / certificate_file_name("all"), r.master.dump());
      std::cout << "all: " << (r.master.match ? "no [[13,5,4]] quantum stabilizer code" : "MISMATCH") << "\n";
      ok = r.master.match;
    }
    return ok ? kOk : kMismatch;
  } catch (const IoError& ex) {
    std::cerr << ex.what() << "\n";
    return kIo;
  }
}

int cmd_check(const std::string& path, const std::string& dir_arg) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const IoError& ex) {
    std::cerr << ex.what() << "\n";
    return kIo;
  }
  Certificate c;
  try {
    c = parse_certificate(text);
  } catch (const std::exception& ex) {
    std::cerr << "unparsable certificate: " << ex.what() << "\n";
    return kParse;
  }
  const fs::path dir = dir_arg.empty() ? fs::path(path).parent_path() : fs::path(dir_arg);
  CheckReport r = check_certificate(c, dir);
  for (const auto& p : r.problems) std::cout << "problem: " << p << "\n";
  std::cout << c.stage_id << ": " << (r.valid ? "valid" : "INVALID") << "\n";
  return r.valid ? kOk : kMismatch;
}

int cmd_inspect(const std::string& what, const std::string& path) {
  NMSet s;
  try {
    s = parse_nmset(read_file(path));
  } catch (const IoError& ex) {
    std::cerr << ex.what() << "\n";
    return kIo;
  } catch (const std::exception& ex) {
    std::cerr << path << ": " << ex.what() << "\n";
    return kParse;
  }
  const LineSystem ls = s.line_system();
  std::cout << "(" << s.n() << "," << s.m() << ") in PG(" << s.ambient_dim - 1 << ",2)\n";
  try {
    if (what == "strength") {
      std::cout << "strength " << strength(ls) << "\n";
      if (s.m() > 0) std::cout << "strength 3 with points " << (check_strength3(s) ? "yes" : "no") << "\n";
    } else if (what == "aut") {
      std::cout << "automorphism order " << automorphism_order(s) << "\n";
    } else if (what == "extensions") {
      const auto pts = extension_points(s);
      std::cout << pts.size() << " extension points\n";
      for (const auto& p : pts) std::cout << p.to_string() << "\n";
      const auto lines = extension_lines(s);
      std::cout << lines.size() << " extension lines\n";
    } else if (what == "dual") {
      const AdditiveCode c = code_from_lines(ls);
      std::cout << "code " << report(c).to_string() << "\n";
      std::cout << "symplectic dual " << report(symplectic_dual(c)).to_string() << "\n";
      std::cout << "self-orthogonal " << (is_self_orthogonal(c) ? "yes" : "no") << "\n";
    } else if (what == "parity") {
      std::cout << "quantum condition " << (quantum_condition(ls) ? "holds" : "fails") << "\n";
      if (s.m() > 0) {
        std::cout << "hyperplane parity of the points " << (hyperplane_parity(s.points, s.n()) ? "holds" : "fails") << "\n";
        std::cout << "points sum to zero " << (even_weight_condition(s.points) ? "yes" : "no") << "\n";
      }
    } else if (what == "classify") {
      const CanonicalForm f = canonical_form(s);
      std::cout << "automorphism order " << automorphism_order(s) << "\n";
      std::cout << "canonical form\n" << format_nmset(f.form);
    } else if (what == "distance") {
      const AdditiveCode c = code_from_lines(ls);
      std::cout << "minimum distance " << min_quaternary_distance(c) << "\n";
      const AdditiveCode d = symplectic_dual(c);
      if (d.k2() > 0) std::cout << "dual distance " << min_quaternary_distance(d) << "\n";
    } else {
      std::cerr << "unknown inspect command " << what << "\n";
      return kParse;
    }
  } catch (const std::exception& ex) {
    std::cerr << ex.what() << "\n";
    return kMismatch;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified searches for the nonexistence of a [[13,5,4]] quantum stabilizer code"};
  app.require_subcommand(1);
  int verbosity = 0;
  app.add_flag("-v,--verbose", verbosity, "More output (-vv streams node counters)");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Run one stage or all of them and write certificates");
  verify->add_option("--stage", va.stage, "P, W5, W4a, W4b, W4c, S, F or all")
      ->check(CLI::IsMember({"P", "W5", "W4a", "W4b", "W4c", "S", "F", "all"}));
  verify->add_flag("--all", va.all, "Run every stage and write the master certificate");
  verify->add_option("--workers", va.workers, "Worker threads")->envname("STABCERT_WORKERS")->check(CLI::PositiveNumber);
  verify->add_option("--out", va.out, "Output directory")->capture_default_str();
  verify->add_option("--sample-rate", va.sample_rate, "Fraction of subtrees re-run without reductions")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  verify->add_flag("-v,--verbose", verbosity, "More output");

  std::string check_path;
  std::string check_dir;
  auto* check = app.add_subcommand("check", "Validate a certificate file");
  check->add_option("path", check_path, "Certificate JSON")->required();
  check->add_option("--dir", check_dir, "Directory of stage certificates (default: next to path)");

  std::string inspect_what;
  std::string inspect_path;
  auto* inspect = app.add_subcommand("inspect", "Report on a matrix file");
  inspect->add_option("what", inspect_what, "strength, aut, extensions, dual, parity, classify or distance")
      ->required()
      ->check(CLI::IsMember({"strength", "aut", "extensions", "dual", "parity", "classify", "distance"}));
  inspect->add_option("file", inspect_path, "Matrix text")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kParse;
  }
  if (verify->parsed()) {
    if (va.stage.empty() && !va.all) {
      std::cerr << "verify needs --stage or --all\n";
      return kParse;
    }
    return cmd_verify(va, verbosity);
  }
  if (check->parsed()) return cmd_check(check_path, check_dir);
  return cmd_inspect(inspect_what, inspect_path);
}
