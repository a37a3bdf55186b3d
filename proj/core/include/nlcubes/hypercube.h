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

// Subcube decompositions of the grid Z_{d_1} x ... x Z_{d_N} for odd N.
//
// The grid is peeled into concentric layers k = 1 .. floor((d_1 - 1) / 2).
// Each layer is split into 2^N subcubes C_{k,K}, D_{k,K}, one pair per
// even-size party subset K, and whatever remains in the middle is the
// central block. Every subcube factor is an index interval on one party.
//
// Parties are 0-based everywhere in the C++ API. Text and JSON output use
// 1-based party names (A_1 .. A_N).

#ifndef NLCUBES_HYPERCUBE_H
#define NLCUBES_HYPERCUBE_H

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nlcubes {

/// Thrown for party-dimension vectors outside the supported family.
class DimsError : public std::invalid_argument {
   public:
    enum class Kind { kEvenPartyCount, kTooFewParties, kDimTooSmall, kNotNondecreasing };
    DimsError(Kind kind, const std::string &what) : std::invalid_argument(what), kind_(kind) {
    }
    Kind kind() const { return kind_; }

   private:
    Kind kind_;
};

/// Local dimensions d_1 <= ... <= d_N with N odd, N >= 3, d_i >= 3.
class PartyDims {
   public:
    /// Validates; throws DimsError.
    explicit PartyDims(std::vector<int> dims);

    int parties() const { return static_cast<int>(dims_.size()); }
    int operator[](int party) const { return dims_[static_cast<size_t>(party)]; }
    const std::vector<int> &values() const { return dims_; }

    /// Number of layers, floor((d_1 - 1) / 2).
    int layer_count() const { return (dims_.front() - 1) / 2; }

    /// Total number of grid points, prod d_i.
    int64_t volume() const;

    bool all_equal() const;
    bool all_three() const;

    bool operator==(const PartyDims &) const = default;

   private:
    std::vector<int> dims_;
};

enum class FactorTag { kLoPoint, kHiPoint, kEtaRange, kXiRange, kCenterRange };

const char *factor_tag_name(FactorTag tag);
std::optional<FactorTag> parse_factor_tag(std::string_view name);

/// Closed integer interval [lo, hi].
struct Interval {
    int lo = 0;
    int hi = 0;

    int size() const { return hi - lo + 1; }
    bool contains(int x) const { return lo <= x && x <= hi; }
    bool intersects(const Interval &o) const { return lo <= o.hi && o.lo <= hi; }
    bool operator==(const Interval &) const = default;
    auto operator<=>(const Interval &) const = default;
};

struct Factor {
    FactorTag tag = FactorTag::kLoPoint;
    Interval range;

    bool operator==(const Factor &) const = default;
};

/// The resolved index interval for `tag` on a party of dimension `dim` at
/// layer `layer`. CenterRange uses `layer` as the number of peeled layers.
Interval factor_interval(FactorTag tag, int dim, int layer);

enum class Family { kC, kD };

/// Sorted 0-based party indices.
using PartySubset = std::vector<int>;

struct Subcube {
    int layer = 0;                 // 0 for the central block
    std::optional<Family> family;  // empty for the central block
    PartySubset kset;
    std::vector<Factor> factors;   // one per party

    bool is_central() const { return !family.has_value(); }
    int64_t size() const;
    bool contains(std::span<const int> point) const;
    /// Short id such as "C1{1,2}", "D2{}" or "B0" (1-based parties).
    std::string name() const;

    bool operator==(const Subcube &) const = default;
};

struct Decomposition {
    PartyDims dims;
    std::vector<Subcube> blocks;  // central block first, then canonical order
};

/// All even-size subsets of {0..N-1}, ordered by size then lexicographically.
/// Throws std::invalid_argument unless N is odd and >= 3.
std::vector<PartySubset> index_family(int parties);

/// The C or D subcube of layer `layer` for party subset `kset`.
/// Throws std::invalid_argument on a bad layer or an odd-size / out-of-range
/// kset.
Subcube build_subcube(const PartyDims &dims, int layer, const PartySubset &kset, Family family);

/// The central block: interval [h, d_i - h - 1] on each party with
/// h = layer_count().
Subcube build_central_block(const PartyDims &dims);

Decomposition build_decomposition(const PartyDims &dims);

/// Party i's factor follows from party i-1's factor and whether i is in K.
/// Used for the forward construction and the cyclic wrap-around check.
FactorTag next_factor_tag(FactorTag previous, bool next_in_kset);

struct PartitionReport {
    bool disjoint = false;
    bool covering = false;
    bool count_ok = false;
    bool pairwise_party_disjoint = false;
    /// Closed-form cardinality identities (per layer; plus the corner-count
    /// identity when every d_i is 3).
    bool counting_identity = true;
    int64_t grid_points = 0;
    int64_t covered_points = 0;

    bool ok() const {
        return disjoint && covering && count_ok && pairwise_party_disjoint && counting_identity;
    }
};

/// Exhaustive check over every grid point.
PartitionReport verify_partition(const Decomposition &dec);

/// 1 + sum_{i=0}^{(N-1)/2} 2 * binom(N, 2i) * 4^i == 3^N, evaluated exactly.
bool corner_counting_identity(int parties);

/// sum over even K of 2 * prod_{j in K} (d_j - 2k + 1)
///   == prod_j (d_j - 2k + 2) - prod_j (d_j - 2k).
bool layer_counting_identity(const PartyDims &dims, int layer);

/// True iff the block set is unchanged (as vertex sets) when every block's
/// factors are rotated by one party. Requires all dims equal, else throws
/// std::invalid_argument.
bool verify_cyclic_invariance(const Decomposition &dec);

/// True iff the last-to-first party transition of `block` obeys the same
/// recurrence as the forward transitions.
bool has_cyclic_closure(const Subcube &block);

/// The unique block containing `point`. For all-three dims this walks the
/// factor recurrence party by party; otherwise it scans. Throws
/// std::invalid_argument if the point is out of range.
const Subcube &locate(const Decomposition &dec, std::span<const int> point);

/// Linear-scan variant of locate.
const Subcube &locate_by_scan(const Decomposition &dec, std::span<const int> point);

struct CornerCensus {
    struct Entry {
        size_t block_index = 0;
        int corners = 0;  // points of prod {k-1, d_i-k} inside the block
    };
    std::vector<Entry> entries;  // non-central blocks only
    bool every_block_one_corner = false;
    bool corners_exhausted = false;  // each layer's 2^N corners all hit
    /// True unless every d_i is 3. For other dims the one-corner-per-block
    /// property is an observed pattern, not a proven fact.
    bool conjectural = true;

    bool ok() const { return every_block_one_corner && corners_exhausted; }
};

CornerCensus corner_census(const Decomposition &dec);

}  // namespace nlcubes

#endif
