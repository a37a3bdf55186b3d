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

#ifndef NLCUBES_VERIFY_H
#define NLCUBES_VERIFY_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nlcubes/cyclotomic.h"
#include "nlcubes/states.h"

namespace nlcubes {

struct OrthoReport {
    struct Violation {
        size_t first = 0;
        size_t second = 0;
        std::string first_label;
        std::string second_label;
        CycNum overlap;
    };

    int64_t total_pairs = 0;
    std::vector<Violation> violations;  // sorted by (first, second)

    bool ok() const { return violations.empty(); }
};

/// Exhaustive pairwise sweep with exact inner products. For each pair the
/// parties are visited in ascending order of support overlap so an exact
/// zero is usually found on the first party. `threads` <= 1 runs inline;
/// the result does not depend on the thread count.
OrthoReport check_pairwise_orthogonal(const StateSet &set, int threads = 1);

/// Floating-point cross-check: |<a|b>| <= tolerance counts as zero.
struct FloatOrthoReport {
    int64_t total_pairs = 0;
    std::vector<std::pair<size_t, size_t>> nonzero_pairs;
    double tolerance = 1e-9;

    bool ok() const { return nonzero_pairs.empty(); }
};

FloatOrthoReport check_pairwise_orthogonal_float(const StateSet &set, double tolerance = 1e-9,
                                                 int threads = 1);

/// Zero/nonzero decisions of both backends agree on every pair.
bool backends_agree(const StateSet &set, double tolerance = 1e-9, int threads = 1);

/// An orthogonal set is a basis iff it has prod d_i members. Throws
/// std::invalid_argument if `set` is not pairwise orthogonal.
bool check_completeness(const StateSet &set);

/// Rank over Q(w) of row vectors with cyclotomic entries. Division-free
/// elimination; rows are kept primitive by removing integer content.
int exact_rank(const std::vector<std::vector<CycNum>> &rows);

/// Rank of local vectors (all on one party). Throws std::invalid_argument on
/// mixed parties or dimensions.
int exact_rank(const std::vector<LocalVector> &vectors);

/// Determinant of a square matrix, exact. Uses the subset expansion, so it
/// is meant for small sizes only.
CycNum exact_determinant(const std::vector<std::vector<CycNum>> &matrix);

/// A nonzero vector x on `party` with <v|x> = 0 for every v, or nullopt when
/// the vectors span the whole space. Built as a generalized cross product of
/// a completed basis of rows, so it has cyclotomic-integer entries.
std::optional<LocalVector> orthogonal_complement_vector(const std::vector<LocalVector> &vectors,
                                                        int party, int dim, int order);

}  // namespace nlcubes

#endif
