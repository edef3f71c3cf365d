/*
 * Copyright 2026 The Roadsense Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "core/errors.hpp"

namespace roadsense {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::ZeroDenominator: return "ZeroDenominator";
        case ErrorCode::ZeroNumerator: return "ZeroNumerator";
        case ErrorCode::PoleAtOrigin: return "PoleAtOrigin";
        case ErrorCode::PoleOnAxis: return "PoleOnAxis";
        case ErrorCode::ImproperTransferFunction: return "ImproperTransferFunction";
        case ErrorCode::ImproperComposition: return "ImproperComposition";
        case ErrorCode::DegreeCapExceeded: return "DegreeCapExceeded";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::InvalidParams: return "InvalidParams";
        case ErrorCode::UnstableLoop: return "UnstableLoop";
        case ErrorCode::UnstableInverse: return "UnstableInverse";
        case ErrorCode::MalformedFile: return "MalformedFile";
        case ErrorCode::NonuniformSampling: return "NonuniformSampling";
        case ErrorCode::MissingRecord: return "MissingRecord";
        case ErrorCode::CorruptRecord: return "CorruptRecord";
        case ErrorCode::DegenerateFit: return "DegenerateFit";
        case ErrorCode::ConfigError: return "ConfigError";
        case ErrorCode::IoError: return "IoError";
    }
    return "UnknownError";
}

}  // namespace roadsense
