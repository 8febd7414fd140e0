// Copyright 2026 The jetlie Authors
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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace jetlie {

enum class Errc {
  DivisionByZero,
  NotDivisible,
  DenominatorVanishes,
  OrderOverflow,
  DependentGenerators,
  UnknownAlgebraId,
  UnsupportedDimension,
  NotSquare,
  NotPolynomial,
  WrongArity,
  NotNormalForm,
  OrderMismatch,
  ZeroBase,
  NotASymmetry,
  DegenerateDenominator,
  SyntaxError,
  UnknownVariable,
  InvalidArgument,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Byte range into the original parser input, with 1-based line/column of `start`.
struct SourceSpan {
  std::size_t start = 0;
  std::size_t end = 0;
  int line = 1;
  int column = 1;
};

class ParseError : public Error {
 public:
  ParseError(Errc code, const std::string& what, SourceSpan span)
      : Error(code, what + " at " + std::to_string(span.line) + ":" +
                        std::to_string(span.column)),
        span_(span) {}

  const SourceSpan& span() const noexcept { return span_; }

 private:
  SourceSpan span_;
};

}  // namespace jetlie
