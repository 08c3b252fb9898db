// Copyright 2026 The UniEdit Authors.
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

#ifndef UNIEDIT_COMMON_ERROR_H_
#define UNIEDIT_COMMON_ERROR_H_

#include <stdexcept>
#include <string>

namespace uniedit {

// Root of every error thrown by the library. Subclasses name the failure
// category so callers (and the CLI) can map them to diagnostics.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define UNIEDIT_DEFINE_ERROR(Name)    \
  class Name : public Error {         \
   public:                            \
    using Error::Error;               \
  }

UNIEDIT_DEFINE_ERROR(IoError);
UNIEDIT_DEFINE_ERROR(FormatError);
UNIEDIT_DEFINE_ERROR(UnsupportedFormatError);
UNIEDIT_DEFINE_ERROR(ValidationError);
UNIEDIT_DEFINE_ERROR(ConfigError);
UNIEDIT_DEFINE_ERROR(PreconditionError);
UNIEDIT_DEFINE_ERROR(ShapeError);
UNIEDIT_DEFINE_ERROR(IndexError);
UNIEDIT_DEFINE_ERROR(NumericError);
UNIEDIT_DEFINE_ERROR(ParseError);
UNIEDIT_DEFINE_ERROR(ResolutionError);
UNIEDIT_DEFINE_ERROR(AmbiguityError);
UNIEDIT_DEFINE_ERROR(BoundsError);
UNIEDIT_DEFINE_ERROR(UndefinedMetricError);

#undef UNIEDIT_DEFINE_ERROR

}  // namespace uniedit

#endif  // UNIEDIT_COMMON_ERROR_H_
