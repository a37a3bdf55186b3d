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

#include "nlcubes/hypercube.h"

#include <algorithm>
#include <bit>
#include <set>
#include <sstream>

namespace nlcubes {

namespace {

bool is_low(FactorTag tag) {
    return tag == FactorTag::kLoPoint || tag == FactorTag::kEtaRange;
}

bool in_subset(const PartySubset &kset, int party) {
    return std::binary_search(kset.begin(), kset.end(), party);
}

// Advances a mixed-radix counter; false once it wraps to all zeros.
bool next_point(std::vector<int> &point, const std::vector<int> &dims) {
    for (size_t i = point.size(); i-- > 0;) {
        if (++point[i] < dims[i]) {
            return true;
        }
        point[i] = 0;
    }
    return false;
}

int64_t binomial(int n, int k) {
    int64_t r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return r;
}

void check_point(const PartyDims &dims, std::span<const int> point) {
    if (static_cast<int>(point.size()) != dims.parties()) {
        throw std::invalid_argument("grid point has the wrong number of coordinates");
    }
    for (int i = 0; i < dims.parties(); ++i) {
        if (point[static_cast<size_t>(i)] < 0 || point[static_cast<size_t>(i)] >= dims[i]) {
            throw std::invalid_argument("grid point coordinate out of range");
        }
    }
}

}  // namespace

PartyDims::PartyDims(std::vector<int> dims) : dims_(std::move(dims)) {
    if (dims_.size() < 3) {
        throw DimsError(DimsError::Kind::kTooFewParties,
                        "need at least 3 parties, got " + std::to_string(dims_.size()));
    }
    if (dims_.size() % 2 == 0) {
        throw DimsError(DimsError::Kind::kEvenPartyCount,
                        "number of parties must be odd, got " + std::to_string(dims_.size()));
    }
    for (size_t i = 0; i < dims_.size(); ++i) {
        if (dims_[i] < 3) {
            throw DimsError(DimsError::Kind::kDimTooSmall,
                            "every local dimension must be >= 3, party " + std::to_string(i + 1) +
                                " has " + std::to_string(dims_[i]));
        }
        if (i > 0 && dims_[i] < dims_[i - 1]) {
            throw DimsError(DimsError::Kind::kNotNondecreasing,
                            "local dimensions must be nondecreasing");
        }
    }
}

int64_t PartyDims::volume() const {
    int64_t v = 1;
    for (int d : dims_) {
        v *= d;
    }
    return v;
}

bool PartyDims::all_equal() const {
    return std::all_of(dims_.begin(), dims_.end(), [&](int d) { return d == dims_.front(); });
}

bool PartyDims::all_three() const {
    return std::all_of(dims_.begin(), dims_.end(), [](int d) { return d == 3; });
}

const char *factor_tag_name(FactorTag tag) {
    switch (tag) {
        case FactorTag::kLoPoint:
            return "lo";
        case FactorTag::kHiPoint:
            return "hi";
        case FactorTag::kEtaRange:
            return "eta";
        case FactorTag::kXiRange:
            return "xi";
        case FactorTag::kCenterRange:
            return "center";
    }
    return "?";
}

std::optional<FactorTag> parse_factor_tag(std::string_view name) {
    for (FactorTag t : {FactorTag::kLoPoint, FactorTag::kHiPoint, FactorTag::kEtaRange,
                        FactorTag::kXiRange, FactorTag::kCenterRange}) {
        if (name == factor_tag_name(t)) {
            return t;
        }
    }
    return std::nullopt;
}

Interval factor_interval(FactorTag tag, int dim, int layer) {
    switch (tag) {
        case FactorTag::kLoPoint:
            return {layer - 1, layer - 1};
        case FactorTag::kHiPoint:
            return {dim - layer, dim - layer};
        case FactorTag::kEtaRange:
            return {layer - 1, dim - layer - 1};
        case FactorTag::kXiRange:
            return {layer, dim - layer};
        case FactorTag::kCenterRange:
            return {layer, dim - layer - 1};
    }
    throw std::logic_error("unknown FactorTag");
}

int64_t Subcube::size() const {
    int64_t s = 1;
    for (const Factor &f : factors) {
        s *= f.range.size();
    }
    return s;
}

bool Subcube::contains(std::span<const int> point) const {
    if (point.size() != factors.size()) {
        return false;
    }
    for (size_t i = 0; i < factors.size(); ++i) {
        if (!factors[i].range.contains(point[i])) {
            return false;
        }
    }
    return true;
}

std::string Subcube::name() const {
    if (is_central()) {
        return "B0";
    }
    std::ostringstream out;
    out << (*family == Family::kC ? "C" : "D") << layer << "{";
    for (size_t i = 0; i < kset.size(); ++i) {
        out << (i ? "," : "") << kset[i] + 1;
    }
    out << "}";
    return out.str();
}

std::vector<PartySubset> index_family(int parties) {
    if (parties < 3 || parties % 2 == 0) {
        throw std::invalid_argument("index_family: party count must be odd and >= 3, got " +
                                    std::to_string(parties));
    }
    if (parties > 30) {
        throw std::invalid_argument("index_family: too many parties");
    }
    std::vector<PartySubset> out;
    for (uint32_t mask = 0; mask < (1u << parties); ++mask) {
        if (std::popcount(mask) % 2 != 0) {
            continue;
        }
        PartySubset s;
        for (int i = 0; i < parties; ++i) {
            if (mask & (1u << i)) {
                s.push_back(i);
            }
        }
        out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end(), [](const PartySubset &a, const PartySubset &b) {
        if (a.size() != b.size()) {
            return a.size() < b.size();
        }
        return a < b;
    });
    return out;
}

FactorTag next_factor_tag(FactorTag previous, bool next_in_kset) {
    if (is_low(previous)) {
        return next_in_kset ? FactorTag::kXiRange : FactorTag::kLoPoint;
    }
    return next_in_kset ? FactorTag::kEtaRange : FactorTag::kHiPoint;
}

Subcube build_subcube(const PartyDims &dims, int layer, const PartySubset &kset, Family family) {
    int n = dims.parties();
    if (layer < 1 || layer > dims.layer_count()) {
        throw std::invalid_argument("build_subcube: layer " + std::to_string(layer) +
                                    " outside [1, " + std::to_string(dims.layer_count()) + "]");
    }
    if (kset.size() % 2 != 0) {
        throw std::invalid_argument("build_subcube: party subset must have even size");
    }
    for (size_t i = 0; i < kset.size(); ++i) {
        if (kset[i] < 0 || kset[i] >= n || (i > 0 && kset[i] <= kset[i - 1])) {
            throw std::invalid_argument("build_subcube: party subset must be sorted, unique, in range");
        }
    }

    Subcube sc;
    sc.layer = layer;
    sc.family = family;
    sc.kset = kset;
    sc.factors.resize(static_cast<size_t>(n));

    FactorTag tag;
    if (family == Family::kC) {
        tag = in_subset(kset, 0) ? FactorTag::kEtaRange : FactorTag::kLoPoint;
    } else {
        tag = in_subset(kset, 0) ? FactorTag::kXiRange : FactorTag::kHiPoint;
    }
    for (int i = 0; i < n; ++i) {
        if (i > 0) {
            tag = next_factor_tag(tag, in_subset(kset, i));
        }
        sc.factors[static_cast<size_t>(i)] = {tag, factor_interval(tag, dims[i], layer)};
    }
    return sc;
}

Subcube build_central_block(const PartyDims &dims) {
    Subcube sc;
    sc.layer = 0;
    int h = dims.layer_count();
    for (int i = 0; i < dims.parties(); ++i) {
        sc.factors.push_back({FactorTag::kCenterRange, factor_interval(FactorTag::kCenterRange, dims[i], h)});
    }
    return sc;
}

Decomposition build_decomposition(const PartyDims &dims) {
    Decomposition dec{dims, {}};
    dec.blocks.push_back(build_central_block(dims));
    std::vector<PartySubset> family = index_family(dims.parties());
    for (int k = 1; k <= dims.layer_count(); ++k) {
        for (const PartySubset &kset : family) {
            dec.blocks.push_back(build_subcube(dims, k, kset, Family::kC));
            dec.blocks.push_back(build_subcube(dims, k, kset, Family::kD));
        }
    }
    return dec;
}

bool has_cyclic_closure(const Subcube &block) {
    if (block.is_central() || block.factors.empty()) {
        return true;
    }
    FactorTag wrapped = next_factor_tag(block.factors.back().tag, in_subset(block.kset, 0));
    return wrapped == block.factors.front().tag;
}

__extension__ using Wide = __int128;

bool corner_counting_identity(int parties) {
    if (parties < 1 || parties % 2 == 0 || parties > 39) {
        throw std::invalid_argument("corner_counting_identity: odd party count in [1, 39] required");
    }
    Wide lhs = 1;
    Wide pow4 = 1;
    for (int i = 0; 2 * i <= parties - 1; ++i) {
        lhs += 2 * static_cast<Wide>(binomial(parties, 2 * i)) * pow4;
        pow4 *= 4;
    }
    Wide rhs = 1;
    for (int i = 0; i < parties; ++i) {
        rhs *= 3;
    }
    return lhs == rhs;
}

bool layer_counting_identity(const PartyDims &dims, int layer) {
    int n = dims.parties();
    Wide lhs = 0;
    for (uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (std::popcount(mask) % 2 != 0) {
            continue;
        }
        Wide term = 2;
        for (int j = 0; j < n; ++j) {
            if (mask & (1u << j)) {
                term *= dims[j] - 2 * layer + 1;
            }
        }
        lhs += term;
    }
    Wide outer = 1;
    Wide inner = 1;
    for (int j = 0; j < n; ++j) {
        outer *= dims[j] - 2 * layer + 2;
        inner *= dims[j] - 2 * layer;
    }
    return lhs == outer - inner;
}

PartitionReport verify_partition(const Decomposition &dec) {
    PartitionReport rep;
    const std::vector<int> &dims = dec.dims.values();
    int n = dec.dims.parties();
    rep.grid_points = dec.dims.volume();

    bool disjoint = true;
    int64_t covered = 0;
    std::vector<int> point(static_cast<size_t>(n), 0);
    do {
        int hits = 0;
        for (const Subcube &b : dec.blocks) {
            if (b.contains(point)) {
                ++hits;
            }
        }
        if (hits > 1) {
            disjoint = false;
        }
        if (hits >= 1) {
            ++covered;
        }
    } while (next_point(point, dims));
    rep.disjoint = disjoint;
    rep.covered_points = covered;
    rep.covering = covered == rep.grid_points;

    int64_t expected_blocks = static_cast<int64_t>(dec.dims.layer_count()) * (int64_t{1} << n) + 1;
    rep.count_ok = static_cast<int64_t>(dec.blocks.size()) == expected_blocks;

    rep.pairwise_party_disjoint = true;
    for (size_t a = 0; a < dec.blocks.size() && rep.pairwise_party_disjoint; ++a) {
        for (size_t b = a + 1; b < dec.blocks.size(); ++b) {
            bool separated = false;
            for (int i = 0; i < n; ++i) {
                if (!dec.blocks[a].factors[static_cast<size_t>(i)].range.intersects(
                        dec.blocks[b].factors[static_cast<size_t>(i)].range)) {
                    separated = true;
                    break;
                }
            }
            if (!separated) {
                rep.pairwise_party_disjoint = false;
                break;
            }
        }
    }

    rep.counting_identity = true;
    for (int k = 1; k <= dec.dims.layer_count(); ++k) {
        rep.counting_identity = rep.counting_identity && layer_counting_identity(dec.dims, k);
    }
    if (dec.dims.all_three()) {
        rep.counting_identity = rep.counting_identity && corner_counting_identity(n);
        int64_t total = 0;
        for (const Subcube &b : dec.blocks) {
            total += b.size();
        }
        rep.counting_identity = rep.counting_identity && total == rep.grid_points;
    }
    return rep;
}

bool verify_cyclic_invariance(const Decomposition &dec) {
    if (!dec.dims.all_equal()) {
        throw std::invalid_argument("verify_cyclic_invariance: all local dimensions must be equal");
    }
    using Key = std::vector<Interval>;
    std::set<Key> original;
    std::set<Key> rotated;
    for (const Subcube &b : dec.blocks) {
        Key key;
        for (const Factor &f : b.factors) {
            key.push_back(f.range);
        }
        Key rot(key.size());
        for (size_t i = 0; i < key.size(); ++i) {
            rot[i] = key[(i + 1) % key.size()];
        }
        original.insert(std::move(key));
        rotated.insert(std::move(rot));
    }
    return original.size() == dec.blocks.size() && original == rotated;
}

const Subcube &locate_by_scan(const Decomposition &dec, std::span<const int> point) {
    check_point(dec.dims, point);
    for (const Subcube &b : dec.blocks) {
        if (b.contains(point)) {
            return b;
        }
    }
    throw std::runtime_error("locate: point not covered by any block");
}

const Subcube &locate(const Decomposition &dec, std::span<const int> point) {
    check_point(dec.dims, point);
    if (!dec.dims.all_three()) {
        return locate_by_scan(dec, point);
    }
    int n = dec.dims.parties();
    auto at = [&](int i) { return point[static_cast<size_t>(((i % n) + n) % n)]; };

    int start = -1;
    for (int i = 0; i < n; ++i) {
        if (at(i) != 1) {
            start = i;
            break;
        }
    }
    Subcube target;
    if (start < 0) {
        target = build_central_block(dec.dims);
    } else {
        // Only the low/high type of the start factor is known up front; its
        // exact tag is settled when the walk wraps around.
        std::vector<FactorTag> tags(static_cast<size_t>(n));
        bool low = at(start) == 0;
        FactorTag prev = low ? FactorTag::kLoPoint : FactorTag::kHiPoint;
        PartySubset kset;
        for (int step = 1; step <= n; ++step) {
            int i = (start + step) % n;
            int x = at(i);
            bool in_k = is_low(prev) ? x != 0 : x != 2;
            FactorTag tag = next_factor_tag(prev, in_k);
            tags[static_cast<size_t>(i)] = tag;
            if (in_k) {
                kset.push_back(i);
            }
            prev = tag;
        }
        std::sort(kset.begin(), kset.end());
        Family family = is_low(tags[0]) ? Family::kC : Family::kD;
        target = build_subcube(dec.dims, 1, kset, family);
    }
    for (const Subcube &b : dec.blocks) {
        if (b.factors == target.factors) {
            if (!b.contains(point)) {
                throw std::logic_error("locate: walk produced a block not containing the point");
            }
            return b;
        }
    }
    throw std::runtime_error("locate: block " + target.name() + " missing from decomposition");
}

CornerCensus corner_census(const Decomposition &dec) {
    CornerCensus census;
    census.conjectural = !dec.dims.all_three();
    int n = dec.dims.parties();
    census.every_block_one_corner = true;
    // per layer: which corners (as bitmask of "hi" choices) were hit
    std::vector<std::set<uint64_t>> hit(static_cast<size_t>(dec.dims.layer_count()) + 1);
    for (size_t bi = 0; bi < dec.blocks.size(); ++bi) {
        const Subcube &b = dec.blocks[bi];
        if (b.is_central()) {
            continue;
        }
        int k = b.layer;
        int64_t count = 1;
        uint64_t mask = 0;
        for (int i = 0; i < n; ++i) {
            const Interval &r = b.factors[static_cast<size_t>(i)].range;
            bool lo = r.contains(k - 1);
            bool hi = r.contains(dec.dims[i] - k);
            count *= static_cast<int>(lo) + static_cast<int>(hi);
            if (hi && !lo) {
                mask |= uint64_t{1} << i;
            }
        }
        census.entries.push_back({bi, static_cast<int>(count)});
        if (count != 1) {
            census.every_block_one_corner = false;
        } else {
            hit[static_cast<size_t>(k)].insert(mask);
        }
    }
    census.corners_exhausted = true;
    for (int k = 1; k <= dec.dims.layer_count(); ++k) {
        if (hit[static_cast<size_t>(k)].size() != (size_t{1} << n)) {
            census.corners_exhausted = false;
        }
    }
    return census;
}

}  // namespace nlcubes
