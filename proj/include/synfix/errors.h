// Copyright 2026 The SynFix Authors
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

#ifndef SYNFIX_ERRORS_H_
#define SYNFIX_ERRORS_H_

#include <stdexcept>
#include <string>

namespace synfix {

// Base class for every error raised by the library. Each subclass names one
// failure mode so callers (notably the CLI) can map them to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedCharacter : public Error {
 public:
  UnsupportedCharacter(int line, int col)
      : Error("unsupported character at line " + std::to_string(line) +
              ", col " + std::to_string(col)),
        line_(line),
        col_(col) {}
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_;
  int col_;
};

#define SYNFIX_DEFINE_ERROR(Name)   \
  class Name : public Error {       \
   public:                          \
    using Error::Error;             \
  }

SYNFIX_DEFINE_ERROR(DimensionMismatch);
SYNFIX_DEFINE_ERROR(EmptyCorpus);
SYNFIX_DEFINE_ERROR(IdOutOfRange);
SYNFIX_DEFINE_ERROR(IndexOutOfRange);
SYNFIX_DEFINE_ERROR(LineOutOfRange);
SYNFIX_DEFINE_ERROR(CorpusTooSmall);
SYNFIX_DEFINE_ERROR(EmptyPrefix);
SYNFIX_DEFINE_ERROR(CalledOnValidProgram);
SYNFIX_DEFINE_ERROR(UnknownFamily);
SYNFIX_DEFINE_ERROR(Unmutatable);
SYNFIX_DEFINE_ERROR(IoFailure);
SYNFIX_DEFINE_ERROR(EmptyInput);
SYNFIX_DEFINE_ERROR(VersionMismatch);
SYNFIX_DEFINE_ERROR(ShapeMismatch);
SYNFIX_DEFINE_ERROR(InvalidArgument);

#undef SYNFIX_DEFINE_ERROR

}  // namespace synfix

#endif  // SYNFIX_ERRORS_H_
