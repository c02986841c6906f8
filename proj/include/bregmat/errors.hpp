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

#ifndef BREGMAT_ERRORS_HPP
#define BREGMAT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bregmat {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of the operation
/// (non-positive scalar, non-positive-definite matrix, q out of range...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The requested evaluation is not available for this function family.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// Caller broke a structural precondition: mismatched dimensions,
/// non-unitary mixture member, non-contraction, etc.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// An iterative routine did not converge.
class NumericalFailure : public Error {
 public:
  NumericalFailure(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// A superoperator is too close to singular to invert.
class ConditioningError : public Error {
 public:
  ConditioningError(const std::string& what, double eigenvalue_ratio)
      : Error(what), ratio_(eigenvalue_ratio) {}
  double eigenvalue_ratio() const noexcept { return ratio_; }

 private:
  double ratio_;
};

}  // namespace bregmat

#endif  // BREGMAT_ERRORS_HPP
