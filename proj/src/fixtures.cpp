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

#include <stdexcept>
#include <string>

#include "stabcert/pipeline.hpp"

namespace stabcert {

namespace {

struct Entry {
  const char* name;
  const char* text;
};

// Same content as data/fixtures/<name>.txt.
constexpr Entry kFixtures[] = {
    {"hyperoval",
     R"(# Six lines of PG(5,2) with any three in general position (binary hyperoval).
10 00 00 10 10 10
01 00 00 01 01 01
00 10 00 10 11 01
00 01 00 01 10 11
00 00 10 10 01 11
00 00 01 01 11 10
)"},
    {"secundum_five",
     R"(# Five of the hyperoval lines; they span PG(5,2).
10 00 00 10 10
01 00 00 01 01
00 10 00 10 11
00 01 00 01 10
00 00 10 10 01
00 00 01 01 11
)"},
    {"fiveline_hyperplane",
     R"(# Five lines spanning PG(6,2), any three in general position.
10 00 00 10 10
01 00 00 00 01
00 10 00 10 01
00 01 00 00 10
00 00 10 10 00
00 00 01 00 10
00 00 00 01 01
)"},
    {"sevenzero_selfdual",
     R"(# (7,0)-set of PG(6,2) with eight extension points; its code is self-dual.
00 00 01 00 01 01 01
01 00 00 01 00 01 01
01 01 00 00 01 00 01
00 00 10 10 10 00 10
10 00 00 10 10 10 00
00 10 00 00 10 10 10
11 11 11 11 11 11 11
)"},
    {"sevenseven",
     R"(# (7,7)-set: the self-dual (7,0)-set with its extension points other than (0:0:0:0:0:0:1).
00 00 01 00 01 01 01
01 00 00 01 00 01 01
01 01 00 00 01 00 01
00 00 10 10 10 00 10
10 00 00 10 10 10 00
00 10 00 00 10 10 10
11 11 11 11 11 11 11
(0:1:1:0:1:0:1)
(0:0:1:0:0:1:1)
(1:0:0:1:0:0:1)
(0:1:0:1:1:0:1)
(1:0:1:1:1:1:1)
(1:1:0:0:1:1:1)
(1:1:1:1:0:1:1)
)"},
    {"sixline_family1",
     R"(# Six-line family 1 of PG(6,2): any three in general position, any four span everything.
10 | 00 | 00 | 10 | 00 | 01
01 | 00 | 00 | 00 | 10 | 10
00 | 10 | 00 | 10 | 10 | 10
00 | 01 | 00 | 00 | 01 | 10
# ----
00 | 00 | 10 | 10 | 01 | 11
00 | 00 | 01 | 00 | 10 | 01
00 | 00 | 00 | 01 | 01 | 01
)"},
    {"sixline_family2",
     R"(# Six-line family 2 of PG(6,2): any three in general position, any four span everything.
10 | 00 | 00 | 10 | 00 | 11
01 | 00 | 00 | 00 | 10 | 10
00 | 10 | 00 | 10 | 10 | 10
00 | 01 | 00 | 00 | 01 | 11
# ----
00 | 00 | 10 | 10 | 01 | 11
00 | 00 | 01 | 00 | 10 | 11
00 | 00 | 00 | 01 | 01 | 01
)"},
    {"sixline_family3",
     R"(# Six-line family 3 of PG(6,2): any three in general position, any four span everything.
10 | 00 | 00 | 10 | 00 | 11
01 | 00 | 00 | 00 | 10 | 10
00 | 10 | 00 | 10 | 01 | 10
00 | 01 | 00 | 00 | 10 | 11
# ----
00 | 00 | 10 | 10 | 10 | 11
00 | 00 | 01 | 00 | 01 | 11
00 | 00 | 00 | 01 | 01 | 01
)"},
    {"sixline_family4",
     R"(# Six-line family 4 of PG(6,2): any three in general position, any four span everything.
10 | 00 | 00 | 10 | 10 | 01
01 | 00 | 00 | 00 | 11 | 10
00 | 10 | 00 | 10 | 11 | 10
00 | 01 | 00 | 00 | 01 | 10
# ----
00 | 00 | 10 | 10 | 11 | 11
00 | 00 | 01 | 00 | 11 | 01
00 | 00 | 00 | 01 | 01 | 01
)"},
};

}  // namespace

std::string_view fixture_text(std::string_view name) {
  for (const auto& f : kFixtures) {
    if (name == f.name) return f.text;
  }
  throw std::out_of_range("unknown fixture " + std::string(name));
}

NMSet fixture(std::string_view name) { return parse_nmset(fixture_text(name)); }

std::vector<std::string> fixture_names() {
  std::vector<std::string> out;
  for (const auto& f : kFixtures) out.emplace_back(f.name);
  return out;
}

}  // namespace stabcert
