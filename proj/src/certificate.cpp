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

#include "stabcert/certificate.hpp"

#include <cstdio>

namespace stabcert {

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

namespace {

std::uint64_t parse_hex64(const Json& j, const char* field) {
  if (!j.is_string()) throw CertificateError(std::string(field) + " must be a hex string");
  const std::string s = j.get<std::string>();
  if (s.size() != 16 || s.find_first_not_of("0123456789abcdef") != std::string::npos) {
    throw CertificateError(std::string(field) + " is not a 64-bit hex value");
  }
  return std::stoull(s, nullptr, 16);
}

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw CertificateError(std::string("missing field ") + name);
  return j.at(name);
}

template <typename T>
T get(const Json& j, const char* name) {
  try {
    return field(j, name).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw CertificateError(std::string("bad field ") + name + ": " + e.what());
  }
}

}  // namespace

bool Certificate::computed_match() const {
  if (count != expected_count) return false;
  for (const auto& c : checks) {
    if (!c.warning_only && !c.match) return false;
  }
  return true;
}

bool Certificate::consistent() const {
  for (const auto& c : checks) {
    if (!c.expected.is_null() && c.match != (c.expected == c.observed)) return false;
  }
  return match == computed_match();
}

Json Certificate::to_json() const {
  Json j;
  j["stage_id"] = stage_id;
  j["description"] = description;
  j["input_fingerprint"] = hex64(input_fingerprint);
  j["search_space"] = search_space;
  j["search_space"]["nodes"] = nodes;
  j["search_space"]["candidates"] = candidates;
  Json w = Json::array();
  for (const auto& x : witnesses) w.push_back({{"label", x.label}, {"text", x.text}, {"properties", x.properties}});
  j["outcome"] = {{"count", count}, {"witnesses", w}, {"empty", count == 0}};
  j["expected"] = {{"value", expected_count}, {"citation", expected_claim}};
  Json cs = Json::array();
  for (const auto& c : checks) {
    cs.push_back({{"id", c.id},
                  {"claim", c.claim},
                  {"expected", c.expected},
                  {"observed", c.observed},
                  {"match", c.match},
                  {"warning_only", c.warning_only}});
  }
  j["checks"] = cs;
  j["double_check"] = double_check;
  j["match"] = match;
  j["wall_time_ms"] = wall_time_ms;
  return j;
}

Certificate Certificate::from_json(const Json& j) {
  Certificate c;
  c.stage_id = get<std::string>(j, "stage_id");
  c.description = get<std::string>(j, "description");
  c.input_fingerprint = parse_hex64(field(j, "input_fingerprint"), "input_fingerprint");
  c.search_space = field(j, "search_space");
  c.nodes = get<std::uint64_t>(c.search_space, "nodes");
  c.candidates = get<std::uint64_t>(c.search_space, "candidates");
  c.search_space.erase("nodes");
  c.search_space.erase("candidates");
  const Json& out = field(j, "outcome");
  c.count = get<std::uint64_t>(out, "count");
  for (const auto& w : field(out, "witnesses")) {
    Witness x;
    x.label = get<std::string>(w, "label");
    x.text = get<std::string>(w, "text");
    x.properties = field(w, "properties");
    c.witnesses.push_back(std::move(x));
  }
  const Json& exp = field(j, "expected");
  c.expected_count = get<std::uint64_t>(exp, "value");
  c.expected_claim = get<std::string>(exp, "citation");
  for (const auto& x : field(j, "checks")) {
    Check k;
    k.id = get<std::string>(x, "id");
    k.claim = get<std::string>(x, "claim");
    k.expected = field(x, "expected");
    k.observed = field(x, "observed");
    k.match = get<bool>(x, "match");
    k.warning_only = get<bool>(x, "warning_only");
    c.checks.push_back(std::move(k));
  }
  c.double_check = field(j, "double_check");
  c.match = get<bool>(j, "match");
  c.wall_time_ms = get<double>(j, "wall_time_ms");
  return c;
}

std::string Certificate::dump() const { return to_json().dump(2) + "\n"; }

std::uint64_t Certificate::digest() const {
  Json j = to_json();
  j["wall_time_ms"] = 0;
  return fnv1a64(j.dump());
}

Certificate parse_certificate(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw CertificateError(std::string("malformed JSON: ") + e.what());
  }
  return Certificate::from_json(j);
}

}  // namespace stabcert
