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

#ifndef BREGMAT_MATRIX_IO_HPP
#define BREGMAT_MATRIX_IO_HPP

#include <string>

#include <json.hpp>

#include "bregmat/errors.hpp"
#include "bregmat/linalg.hpp"
#include "bregmat/quantum_states.hpp"

namespace bregmat {

/// The file does not follow {"dim": n, "dims": [...], "re": [[...]], "im": [[...]]}.
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// The matrix in the file is not Hermitian; carries the worst entry.
class HermiticityError : public DomainError {
 public:
  HermiticityError(const std::string& what, Asymmetry worst)
      : DomainError(what), worst_(worst) {}
  const Asymmetry& worst() const noexcept { return worst_; }

 private:
  Asymmetry worst_;
};

/// The matrix is Hermitian but not a density matrix (trace or positivity).
class DensityError : public DomainError {
 public:
  using DomainError::DomainError;
};

struct LoadedMatrix {
  HermitianMatrix matrix;
  Dims dims;
};

nlohmann::json matrix_to_json(const HermitianMatrix& m, const Dims& dims);
nlohmann::json matrix_to_json(const HermitianMatrix& m);

/// "dims" defaults to [dim] and "im" to zeros when absent.
LoadedMatrix matrix_from_json(const nlohmann::json& j);
DensityMatrix density_from_json(const nlohmann::json& j);

/// Read errors surface as SchemaError (file unreadable or not JSON).
LoadedMatrix load_matrix(const std::string& path);
DensityMatrix load_density(const std::string& path);
void save_matrix(const std::string& path, const HermitianMatrix& m, const Dims& dims);

}  // namespace bregmat

#endif  // BREGMAT_MATRIX_IO_HPP
