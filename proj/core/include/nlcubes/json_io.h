// Copyright 2026 The nlcubes Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Canonical JSON for every artifact.
//
// Output has sorted keys, two-space indentation and a trailing newline, so
// equal values always produce equal bytes. Parties are 1-based on the wire.
// Integers beyond +-(2^53 - 1) are written as decimal strings; readers accept
// both forms.

#ifndef NLCUBES_JSON_IO_H
#define NLCUBES_JSON_IO_H

#include <stdexcept>
#include <string>
#include <string_view>

#include "nlcubes/hypercube.h"
#include "nlcubes/nonlocality.h"
#include "nlcubes/states.h"
#include "nlcubes/upb.h"
#include "nlcubes/verify.h"

namespace nlcubes {

inline constexpr int kJsonVersion = 1;

/// Malformed or schema-violating input.
class ParseError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

std::string decomposition_to_json(const Decomposition &dec);
Decomposition decomposition_from_json(std::string_view text);

std::string state_set_to_json(const StateSet &set);
StateSet state_set_from_json(std::string_view text);

std::string partition_report_to_json(const PartitionReport &report);
std::string corner_census_to_json(const Decomposition &dec, const CornerCensus &census);
std::string ortho_report_to_json(const OrthoReport &report);
std::string float_ortho_report_to_json(const FloatOrthoReport &report);

/// Block names and witness state labels are resolved against `set`.
std::string certificate_to_json(const StateSet &set, const Certificate &cert, bool include_trace = true);

std::string upb_verdict_to_json(const StateSet &set, const UpbVerdict &verdict);

}  // namespace nlcubes

#endif
