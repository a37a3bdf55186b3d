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

// Certifier for strong nonlocality of a labeled orthogonal product set.
//
// For each party i the remaining N-1 parties are grouped into one joint
// party. A set is strongly nonlocal if, for every i, any
// orthogonality-preserving measurement E on the joint party must be
// proportional to the identity. The engine never builds E. It tracks which
// off-diagonal entries of E are forced to zero and which diagonal entries are
// forced equal, using two inference rules:
//
//   block zeros    Blocks P, P' with disjoint joint supports S, T, each with a
//                  complete product-Fourier fiber, whose excluded-party factors
//                  overlap nonzero, force E[S, T] = 0.
//   block trivial  A block with a complete fiber whose joint support S has a
//                  coordinate u with E[u, S - u] = 0 and nonzero amplitude in
//                  every fiber vector forces E[S] to be a multiple of I[S].
//
// A cut is Certified when every off-diagonal entry is zero and all diagonal
// entries are tied to one constant. Anything short of that is Undecided,
// which is never a claim that the set is not strongly nonlocal.

#ifndef NLCUBES_NONLOCALITY_H
#define NLCUBES_NONLOCALITY_H

#include <cstdint>
#include <string>
#include <vector>

#include "nlcubes/states.h"

namespace nlcubes {

/// The bipartition {A_i} | rest. Joint coordinates are mixed-radix over the
/// remaining parties in increasing order, the lowest-numbered party slowest.
struct Cut {
    int excluded_party = 0;
    std::vector<int> local_dims;  // all N parties

    std::vector<int> joint_parties() const;
    int64_t grid_size() const;
    int64_t encode(const std::vector<int> &joint_coords) const;
    std::vector<int> decode(int64_t coordinate) const;
};

struct ProjectedBlock {
    std::string name;
    StateLabel key;  // label with the Fourier index cleared
    std::vector<Interval> joint_support;  // one interval per joint party
    Interval excluded_support;
    std::vector<size_t> members;  // state indices

    /// States of this block sharing one excluded-party factor (up to scale).
    struct Fiber {
        LocalVector excluded_factor;
        std::vector<size_t> members;
        /// |members| == |joint support| and every joint factor is supported
        /// inside the joint support: the joint parts form a full orthogonal
        /// family spanning the coordinate subspace.
        bool complete = false;
    };
    std::vector<Fiber> fibers;

    int64_t joint_size() const;
    std::vector<int64_t> joint_coordinates(const Cut &cut) const;
};

/// Groups labeled states into blocks and projects them onto the cut.
/// Throws std::invalid_argument on custom (unlabeled) states.
std::vector<ProjectedBlock> project_blocks(const StateSet &set, const Cut &cut);

struct RuleApplication {
    enum class Rule { kBlockZeros, kBlockTrivial };
    Rule rule = Rule::kBlockZeros;
    size_t block_a = 0;
    size_t block_b = 0;  // block zeros only
    /// Block zeros: two states, one per block, with nonzero excluded-party
    /// overlap. Block trivial: one state of the complete fiber used.
    size_t witness_a = 0;
    size_t witness_b = 0;
    int64_t anchor = -1;  // block trivial only: the coordinate u

    bool operator==(const RuleApplication &) const = default;
};

const char *rule_name(RuleApplication::Rule rule);

/// Per-cut workspace.
class DeductionState {
   public:
    explicit DeductionState(int64_t grid_size);

    int64_t grid_size() const { return n_; }
    bool is_zero(int64_t u, int64_t v) const;
    /// Marks E[u, v] = E[v, u] = 0; returns true if new.
    bool mark_zero(int64_t u, int64_t v);
    bool row_is_zero(int64_t u) const { return zero_count_[static_cast<size_t>(u)] == n_ - 1; }
    int64_t zero_pairs() const { return zero_pairs_; }

    void tie_diagonal(int64_t u, int64_t v);
    bool diagonal_tied(int64_t u, int64_t v);

    /// Coordinates with a zero off-diagonal row whose diagonal is tied to the
    /// anchor (the first zero-row coordinate).
    std::vector<bool> resolved();

    std::vector<RuleApplication> trace;

   private:
    int64_t find(int64_t u);

    int64_t n_;
    std::vector<uint64_t> bits_;
    std::vector<int64_t> zero_count_;
    int64_t zero_pairs_ = 0;
    std::vector<int64_t> parent_;
};

/// Applies the block zeros rule to every qualifying pair of blocks.
void seed_zero_blocks(const StateSet &set, const Cut &cut, const std::vector<ProjectedBlock> &blocks,
                      DeductionState &ds);

/// Applies the block trivial rule until nothing changes.
void propagate(const StateSet &set, const Cut &cut, const std::vector<ProjectedBlock> &blocks,
               DeductionState &ds);

/// Re-applies a trace from scratch, re-checking every hypothesis (including
/// the witness overlaps with cyc_inner). Throws std::runtime_error on the
/// first step that does not hold.
DeductionState replay(const StateSet &set, const Cut &cut, const std::vector<ProjectedBlock> &blocks,
                      const std::vector<RuleApplication> &trace);

enum class CutStatus { kCertified, kUndecided };

const char *cut_status_name(CutStatus status);

struct CutResult {
    int excluded_party = 0;
    CutStatus status = CutStatus::kUndecided;
    int64_t grid_size = 0;
    int64_t resolved_count = 0;
    std::vector<std::string> block_names;
    std::vector<RuleApplication> trace;
    /// Undecided only: unresolved joint coordinates and blocks of joint size
    /// >= 2 never used by the block trivial rule.
    std::vector<int64_t> unresolved;
    std::vector<std::string> unused_blocks;
};

struct Certificate {
    std::vector<CutResult> cuts;
    CutStatus overall = CutStatus::kUndecided;
};

/// Runs every cut. Throws std::invalid_argument if the set is not pairwise
/// orthogonal or contains unlabeled states. Cuts run concurrently when
/// threads > 1; the certificate is identical either way.
Certificate certify_strong_nonlocality(const StateSet &set, int threads = 1);

/// Runs a single cut.
CutResult certify_cut(const StateSet &set, int excluded_party);

}  // namespace nlcubes

#endif
