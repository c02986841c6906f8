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

#include "bregmat/matrix_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace bregmat {

namespace {

using nlohmann::json;

[[noreturn]] void schema(const std::string& msg) {
  throw SchemaError("matrix file: " + msg);
}

int read_positive_int(const json& j, const char* key) {
  if (!j.contains(key)) schema(std::string("missing \"") + key + "\"");
  const json& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 1)
    schema(std::string("\"") + key + "\" must be a positive integer");
  return static_cast<int>(v.get<long long>());
}

Eigen::MatrixXd read_block(const json& j, const char* key, int n) {
  const json& rows = j.at(key);
  if (!rows.is_array() || static_cast<int>(rows.size()) != n)
    schema(std::string("\"") + key + "\" must be an array of " + std::to_string(n) +
           " rows");
  Eigen::MatrixXd out(n, n);
  for (int r = 0; r < n; ++r) {
    const json& row = rows[static_cast<size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      schema(std::string("\"") + key + "\" row " + std::to_string(r) + " must have " +
             std::to_string(n) + " entries");
    for (int c = 0; c < n; ++c) {
      const json& v = row[static_cast<size_t>(c)];
      if (!v.is_number())
        schema(std::string("\"") + key + "\"[" + std::to_string(r) + "][" +
               std::to_string(c) + "] is not a number");
      out(r, c) = v.get<double>();
      if (!std::isfinite(out(r, c)))
        schema(std::string("\"") + key + "\" has a non-finite entry");
    }
  }
  return out;
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open matrix file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError("matrix file '" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace

json matrix_to_json(const HermitianMatrix& m, const Dims& dims) {
  const int n = m.dim();
  json re = json::array(), im = json::array();
  for (int r = 0; r < n; ++r) {
    json rr = json::array(), ri = json::array();
    for (int c = 0; c < n; ++c) {
      rr.push_back(m(r, c).real());
      ri.push_back(m(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ri));
  }
  json j;
  j["dim"] = n;
  j["dims"] = dims.factors();
  j["re"] = std::move(re);
  j["im"] = std::move(im);
  return j;
}

json matrix_to_json(const HermitianMatrix& m) { return matrix_to_json(m, Dims{m.dim()}); }

LoadedMatrix matrix_from_json(const json& j) {
  if (!j.is_object()) schema("top level must be an object");
  for (const auto& item : j.items())
    if (item.key() != "dim" && item.key() != "dims" && item.key() != "re" &&
        item.key() != "im")
      schema("unknown key \"" + item.key() + "\"");
  const int n = read_positive_int(j, "dim");
  if (!j.contains("re")) schema("missing \"re\"");

  std::vector<int> factors{n};
  if (j.contains("dims")) {
    const json& d = j.at("dims");
    if (!d.is_array() || d.empty()) schema("\"dims\" must be a nonempty array");
    factors.clear();
    long long total = 1;
    for (const json& v : d) {
      if (!v.is_number_integer() || v.get<long long>() < 1)
        schema("\"dims\" entries must be positive integers");
      factors.push_back(static_cast<int>(v.get<long long>()));
      total *= factors.back();
    }
    if (total != n)
      schema("product of \"dims\" is " + std::to_string(total) + ", expected " +
             std::to_string(n));
  }

  const Eigen::MatrixXd re = read_block(j, "re", n);
  const Eigen::MatrixXd im = j.contains("im") ? read_block(j, "im", n)
                                              : Eigen::MatrixXd::Zero(n, n);
  ComplexMatrix m(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m(r, c) = cplx(re(r, c), im(r, c));

  const Asymmetry asym = max_asymmetry(m);
  if (asym.value > kHermitianTolerance) {
    std::ostringstream os;
    os << "matrix file: not Hermitian, worst entry (" << asym.row << ", " << asym.col
       << ") deviates from the conjugate transpose by " << asym.value;
    throw HermiticityError(os.str(), asym);
  }
  return LoadedMatrix{HermitianMatrix(m), Dims(std::move(factors))};
}

DensityMatrix density_from_json(const json& j) {
  LoadedMatrix lm = matrix_from_json(j);
  try {
    return DensityMatrix(std::move(lm.matrix), std::move(lm.dims));
  } catch (const DomainError& e) {
    throw DensityError(std::string("matrix file: not a density matrix: ") + e.what());
  }
}

LoadedMatrix load_matrix(const std::string& path) { return matrix_from_json(read_file(path)); }

DensityMatrix load_density(const std::string& path) {
  return density_from_json(read_file(path));
}

void save_matrix(const std::string& path, const HermitianMatrix& m, const Dims& dims) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write matrix file '" + path + "'");
  out << matrix_to_json(m, dims).dump(2) << '\n';
}

}  // namespace bregmat
