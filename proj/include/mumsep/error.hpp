// Copyright 2026 The mumsep Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mumsep {

enum class ErrorKind {
    InvalidArgument,
    DimensionMismatch,
    NotSquare,
    NotHermitian,
    TraceNotOne,
    NotPSD,
    KappaInfeasible,
    AlphaInfeasible,
    ImaginaryResidue,
    RadicandNegative,
    UnequalDimensions,
    InvalidSelection,
    ParseError,
};

inline std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::NotSquare: return "NotSquare";
        case ErrorKind::NotHermitian: return "NotHermitian";
        case ErrorKind::TraceNotOne: return "TraceNotOne";
        case ErrorKind::NotPSD: return "NotPSD";
        case ErrorKind::KappaInfeasible: return "KappaInfeasible";
        case ErrorKind::AlphaInfeasible: return "AlphaInfeasible";
        case ErrorKind::ImaginaryResidue: return "ImaginaryResidue";
        case ErrorKind::RadicandNegative: return "RadicandNegative";
        case ErrorKind::UnequalDimensions: return "UnequalDimensions";
        case ErrorKind::InvalidSelection: return "InvalidSelection";
        case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

/// Every failure raised by the library carries a machine-checkable kind.
/// what() is a single line of the form "<Kind>: <detail>".
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& detail)
        : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace mumsep
