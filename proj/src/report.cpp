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

#include "bregmat/report.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace bregmat {

namespace {

std::string shortest(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string scalar_text(const OrderedJson& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return shortest(v.get<double>());
  return v.dump();
}

}  // namespace

OrderedJson json_number(double v) {
  if (std::isfinite(v)) return v;
  return shortest(v);
}

bool Report::all_pass() const {
  for (const Record& r : records)
    if (!r.pass) return false;
  return true;
}

OrderedJson report_body(const Report& r) {
  OrderedJson body;
  body["artifact"] = kArtifactName;
  body["version"] = kArtifactVersion;
  body["subcommand"] = r.subcommand;
  body["config"] = r.config;
  OrderedJson records = OrderedJson::array();
  for (const Record& rec : r.records) {
    OrderedJson j;
    j["name"] = rec.name;
    j["anchor"] = rec.anchor;
    j["values"] = rec.values;
    j["slack"] = rec.slack ? json_number(*rec.slack) : OrderedJson();
    j["tolerance"] = rec.tolerance ? json_number(*rec.tolerance) : OrderedJson();
    j["pass"] = rec.pass;
    records.push_back(std::move(j));
  }
  body["records"] = std::move(records);
  if (!r.details.empty()) body["details"] = r.details;
  body["all_pass"] = r.all_pass();
  return body;
}

std::string render_json(const Report& r) {
  OrderedJson doc;
  doc["body"] = report_body(r);
  doc["timing"] = {{"wall_seconds", r.wall_seconds}};
  return doc.dump(2) + "\n";
}

std::string render_csv(const Report& r) {
  std::ostringstream os;
  os << "record,anchor,key,value,slack,tolerance,pass\n";
  for (const Record& rec : r.records) {
    const std::string tail =
        "," + (rec.slack ? shortest(*rec.slack) : std::string()) + "," +
        (rec.tolerance ? shortest(*rec.tolerance) : std::string()) + "," +
        (rec.pass ? "true" : "false") + "\n";
    const std::string head = csv_field(rec.name) + "," + csv_field(rec.anchor) + ",";
    bool any = false;
    for (const auto& item : rec.values.items()) {
      if (item.value().is_structured()) continue;
      os << head << csv_field(item.key()) << "," << csv_field(scalar_text(item.value()))
         << tail;
      any = true;
    }
    if (!any) os << head << "," << tail;
  }
  return os.str();
}

}  // namespace bregmat
