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

// Unextendibility of orthogonal product sets.
//
// A product state x_1 (x) ... (x) x_N is orthogonal to a member s iff
// <s_p|x_p> = 0 on some party p. So the set is extendible iff every party p
// admits a hyperplane H_p (the orthogonal complement of x_p) such that each
// member has at least one factor inside its party's hyperplane. The search
// runs over such hyperplanes, one party at a time.

#ifndef NLCUBES_UPB_H
#define NLCUBES_UPB_H

#include <cstdint>
#include <optional>
#include <vector>

#include "nlcubes/states.h"

namespace nlcubes {

/// Distinct local factors of one party, up to nonzero scaling.
struct LocalFactorIndex {
    int party = 0;
    int dim = 0;
    std::vector<LocalVector> factors;
    std::vector<std::vector<size_t>> carriers;  // per factor: states carrying it
    std::vector<int> factor_of_state;           // per state: factor id
};

LocalFactorIndex index_local_factors(const StateSet &set, int party);

/// A maximal set of factors lying in one hyperplane of the party's space.
struct KillOption {
    int party = 0;
    std::vector<int> factor_ids;  // sorted
    int rank = 0;                 // exact_rank of the factors, <= dim - 1
    std::vector<size_t> killed;   // states whose factor is in factor_ids
    bool maximal = true;
    /// Nonzero vector orthogonal to every factor in the option.
    LocalVector normal;
};

/// All maximal hyperplane factor sets of `party`, ordered by factor ids.
/// When the factors span less than the full space there is exactly one
/// option holding all of them.
std::vector<KillOption> enumerate_kill_options(const StateSet &set, int party);

enum class UpbStatus { kUPB, kExtendible, kInconclusiveBudget };

const char *upb_status_name(UpbStatus status);

struct SearchStats {
    int64_t nodes = 0;
    int64_t leaf_checks = 0;
    int64_t dominated_skipped = 0;
    std::vector<int> party_order;
};

struct UpbVerdict {
    UpbStatus status = UpbStatus::kInconclusiveBudget;
    int64_t node_budget = 0;

    /// Extendible only: an exactly verified orthogonal product state, and per
    /// party the factor ids its local vector is orthogonal to together with
    /// the members it accounts for.
    std::optional<ProductState> witness;
    struct PartyChoice {
        int party = 0;
        std::vector<int> factor_ids;
        std::vector<size_t> killed;
    };
    std::vector<PartyChoice> choices;

    SearchStats stats;
    std::vector<LocalFactorIndex> factor_index;
    std::vector<std::vector<KillOption>> options;  // per party
};

inline constexpr int64_t kDefaultNodeBudget = 100'000'000;

/// Throws std::invalid_argument if the set is not pairwise orthogonal or is
/// empty.
UpbVerdict certify_unextendible(const StateSet &set, int64_t node_budget = kDefaultNodeBudget);

}  // namespace nlcubes

#endif
