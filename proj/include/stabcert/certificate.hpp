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

#ifndef STABCERT_CERTIFICATE_HPP
#define STABCERT_CERTIFICATE_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace stabcert {

using Json = nlohmann::json;

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view data);
std::string hex64(std::uint64_t v);

/// One sub-claim of a stage. Warnings are recorded but do not decide `match`.
struct Check {
  std::string id;
  std::string claim;
  Json expected;
  Json observed;
  bool match = false;
  bool warning_only = false;
};

/// A concrete object backing a claim, in matrix text, with the properties a
/// checker can recompute from the text alone.
struct Witness {
  std::string label;
  std::string text;
  Json properties = Json::object();
};

class CertificateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Certificate {
  std::string stage_id;
  std::string description;
  std::uint64_t input_fingerprint = 0;
  std::uint64_t nodes = 0;
  std::uint64_t candidates = 0;
  std::uint64_t count = 0;  // outcome count; 0 means EMPTY
  std::vector<Witness> witnesses;
  std::uint64_t expected_count = 0;
  std::string expected_claim;
  std::vector<Check> checks;
  Json search_space = Json::object();  // description beyond the counters
  Json double_check = Json::object();  // reduction-free re-run of a sample
  bool match = false;
  double wall_time_ms = 0;

  /// True when `match` agrees with the outcome, the expectation and the
  /// non-warning checks.
  bool consistent() const;
  bool computed_match() const;

  Json to_json() const;
  static Certificate from_json(const Json& j);
  /// Pretty JSON with sorted keys; byte-stable for equal content.
  std::string dump() const;
  /// Fingerprint of the dump with wall_time_ms zeroed.
  std::uint64_t digest() const;
};

Certificate parse_certificate(std::string_view text);

}  // namespace stabcert

#endif  // STABCERT_CERTIFICATE_HPP
