// Copyright 2026 The loccdetect developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace locc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define LOCC_DEFINE_ERROR(NAME)          \
  class NAME final : public Error {      \
   public:                               \
    using Error::Error;                  \
  }

LOCC_DEFINE_ERROR(DuplicateFactor);
LOCC_DEFINE_ERROR(UnknownFactor);
LOCC_DEFINE_ERROR(FactorMismatch);
LOCC_DEFINE_ERROR(ImaginaryResidue);
LOCC_DEFINE_ERROR(DimensionCap);
LOCC_DEFINE_ERROR(InvalidState);
LOCC_DEFINE_ERROR(UnknownLabel);
LOCC_DEFINE_ERROR(FormulaMismatch);
LOCC_DEFINE_ERROR(SymbolicMismatch);
LOCC_DEFINE_ERROR(LpMismatch);
LOCC_DEFINE_ERROR(EquivalenceMismatch);
LOCC_DEFINE_ERROR(PremiseViolated);
LOCC_DEFINE_ERROR(ClosureOverflow);
LOCC_DEFINE_ERROR(ReconstructionMismatch);
LOCC_DEFINE_ERROR(NoFormula);

#undef LOCC_DEFINE_ERROR

}  // namespace locc
