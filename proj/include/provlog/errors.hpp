// Copyright 2026-present the provlog project
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

namespace provlog {

// Error kinds double as process exit codes: usage=1, input=2, internal=3.
enum class ErrorKind { Usage = 1, Input = 2, Internal = 3 };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string message)
            : std::runtime_error(std::move(message)), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Caller misused an interface (mixed-semiring operands, bad strategy pairing, ...).
class UsageError : public Error {
public:
    explicit UsageError(std::string m) : Error(ErrorKind::Usage, std::move(m)) {}
};

/// Malformed external input (program text, fact files, hypergraph files, ...).
class InputError : public Error {
public:
    explicit InputError(std::string m) : Error(ErrorKind::Input, std::move(m)) {}
};

/// An internal invariant of the evaluator was violated; always a bug.
class InternalError : public Error {
public:
    explicit InternalError(std::string m) : Error(ErrorKind::Internal, std::move(m)) {}
};

/// Input error with a source position attached.
class ParseError : public InputError {
public:
    ParseError(std::string m, int line, int col)
            : InputError(std::move(m)), line_(line), col_(col) {}

    int line() const noexcept { return line_; }
    int col() const noexcept { return col_; }

private:
    int line_;
    int col_;
};

}  // namespace provlog
