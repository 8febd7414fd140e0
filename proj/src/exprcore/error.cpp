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

#include "jetlie/error.hpp"

namespace jetlie {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::NotDivisible: return "NotDivisible";
    case Errc::DenominatorVanishes: return "DenominatorVanishes";
    case Errc::OrderOverflow: return "OrderOverflow";
    case Errc::DependentGenerators: return "DependentGenerators";
    case Errc::UnknownAlgebraId: return "UnknownAlgebraId";
    case Errc::UnsupportedDimension: return "UnsupportedDimension";
    case Errc::NotSquare: return "NotSquare";
    case Errc::NotPolynomial: return "NotPolynomial";
    case Errc::WrongArity: return "WrongArity";
    case Errc::NotNormalForm: return "NotNormalForm";
    case Errc::OrderMismatch: return "OrderMismatch";
    case Errc::ZeroBase: return "ZeroBase";
    case Errc::NotASymmetry: return "NotASymmetry";
    case Errc::DegenerateDenominator: return "DegenerateDenominator";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::UnknownVariable: return "UnknownVariable";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace jetlie
