// Copyright 2026 The bregmat Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BREGMAT_REPORT_HPP
#define BREGMAT_REPORT_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace bregmat {

inline constexpr const char* kArtifactName = "bregmat";
inline constexpr const char* kArtifactVersion = "1.0.0";

using OrderedJson = nlohmann::ordered_json;

/// Finite doubles as numbers, non-finite ones as "inf", "-inf" or "nan".
OrderedJson json_number(double v);

/// One check of a suite.
struct Record {
  std::string name;
  std::string anchor;  // the mathematical statement being checked
  OrderedJson values = OrderedJson::object();
  std::optional<double> slack;
  std::optional<double> tolerance;
  bool pass = true;
};

struct Report {
  std::string subcommand;
  OrderedJson config = OrderedJson::object();  // effective settings, seed included
  std::vector<Record> records;
  OrderedJson details = OrderedJson::object();  // witnesses and other extras
  double wall_seconds = 0.0;  // kept out of the body

  bool all_pass() const;
};

/// Everything except timing; identical configs give identical bodies.
OrderedJson report_body(const Report& r);

/// {"body": ..., "timing": {"wall_seconds": ...}}, pretty-printed.
std::string render_json(const Report& r);

/// Long format, one row per scalar value:
/// record,anchor,key,value,slack,tolerance,pass. No timing.
std::string render_csv(const Report& r);

}  // namespace bregmat

#endif  // BREGMAT_REPORT_HPP
