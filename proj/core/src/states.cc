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

#include "nlcubes/states.h"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace nlcubes {

namespace {

int resolve_order(const PartyDims &dims, const BuildOptions &opts) {
    int base = construction_order(dims);
    if (opts.order == 0) {
        return base;
    }
    if (opts.order < 0 || opts.order % base != 0) {
        throw std::invalid_argument("BuildOptions.order must be a positive multiple of " +
                                    std::to_string(base));
    }
    return opts.order;
}

LocalVector point_vector(int party, int dim, int index, int order) {
    LocalVector v{party, std::vector<CycNum>(static_cast<size_t>(dim), CycNum(order))};
    v.amps[static_cast<size_t>(index)] = CycNum(order, 1);
    return v;
}

LocalVector ones_vector(int party, int dim, Interval range, int order) {
    LocalVector v{party, std::vector<CycNum>(static_cast<size_t>(dim), CycNum(order))};
    for (int i = range.lo; i <= range.hi; ++i) {
        v.amps[static_cast<size_t>(i)] = CycNum(order, 1);
    }
    return v;
}

Origin origin_of(const Subcube &sc) {
    if (sc.is_central()) {
        return Origin::kCenter;
    }
    return *sc.family == Family::kC ? Origin::kC : Origin::kD;
}

// Point factors are tagged LoPoint/HiPoint; ranges of length one (possible
// for the central block) still use the Fourier path with m = 1.
bool is_point_tag(FactorTag tag) {
    return tag == FactorTag::kLoPoint || tag == FactorTag::kHiPoint;
}

void append_block_states(const Subcube &sc, const PartyDims &dims, int order,
                         std::vector<ProductState> &out, bool skip_plus) {
    int n = dims.parties();
    std::vector<std::vector<LocalVector>> local(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
        const Factor &f = sc.factors[static_cast<size_t>(j)];
        if (is_point_tag(f.tag)) {
            local[static_cast<size_t>(j)].push_back(point_vector(j, dims[j], f.range.lo, order));
        } else {
            local[static_cast<size_t>(j)] = fourier_basis(j, dims[j], f.range.lo, f.range.hi, order);
        }
    }
    std::vector<int> idx(static_cast<size_t>(n), 0);
    while (true) {
        bool is_plus = true;
        for (int v : idx) {
            is_plus = is_plus && v == 0;
        }
        if (!(skip_plus && is_plus)) {
            ProductState s;
            s.label = {origin_of(sc), sc.layer, sc.kset, idx};
            for (int j = 0; j < n; ++j) {
                s.factors.push_back(local[static_cast<size_t>(j)][static_cast<size_t>(idx[static_cast<size_t>(j)])]);
            }
            out.push_back(std::move(s));
        }
        int j = n - 1;
        for (; j >= 0; --j) {
            if (++idx[static_cast<size_t>(j)] < static_cast<int>(local[static_cast<size_t>(j)].size())) {
                break;
            }
            idx[static_cast<size_t>(j)] = 0;
        }
        if (j < 0) {
            break;
        }
    }
}

}  // namespace

bool LocalVector::is_zero() const {
    for (const CycNum &a : amps) {
        if (!a.is_zero()) {
            return false;
        }
    }
    return true;
}

std::optional<Interval> LocalVector::support() const {
    int lo = -1;
    int hi = -1;
    for (int i = 0; i < dim(); ++i) {
        if (!amps[static_cast<size_t>(i)].is_zero()) {
            if (lo < 0) {
                lo = i;
            }
            hi = i;
        }
    }
    if (lo < 0) {
        return std::nullopt;
    }
    return Interval{lo, hi};
}

bool LocalVector::support_is_contiguous() const {
    auto s = support();
    if (!s) {
        return false;
    }
    for (int i = s->lo; i <= s->hi; ++i) {
        if (amps[static_cast<size_t>(i)].is_zero()) {
            return false;
        }
    }
    return true;
}

const char *origin_name(Origin origin) {
    switch (origin) {
        case Origin::kC:
            return "C";
        case Origin::kD:
            return "D";
        case Origin::kCenter:
            return "center";
        case Origin::kStopper:
            return "stopper";
        case Origin::kCustom:
            return "custom";
    }
    return "?";
}

std::optional<Origin> parse_origin(std::string_view name) {
    for (Origin o : {Origin::kC, Origin::kD, Origin::kCenter, Origin::kStopper, Origin::kCustom}) {
        if (name == origin_name(o)) {
            return o;
        }
    }
    return std::nullopt;
}

bool StateLabel::same_block(const StateLabel &other) const {
    return origin == other.origin && layer == other.layer && kset == other.kset;
}

std::string StateLabel::block_name() const {
    std::ostringstream out;
    switch (origin) {
        case Origin::kC:
        case Origin::kD:
            out << origin_name(origin) << layer << "{";
            for (size_t i = 0; i < kset.size(); ++i) {
                out << (i ? "," : "") << kset[i] + 1;
            }
            out << "}";
            break;
        case Origin::kCenter:
            out << "B0";
            break;
        case Origin::kStopper:
            out << "S";
            break;
        case Origin::kCustom:
            out << "custom";
            break;
    }
    return out.str();
}

std::string StateLabel::str() const {
    std::ostringstream out;
    out << block_name() << "[";
    for (size_t i = 0; i < fourier.size(); ++i) {
        out << (i ? "," : "") << fourier[i];
    }
    out << "]";
    return out.str();
}

const char *role_name(Role role) {
    switch (role) {
        case Role::kOPB:
            return "OPB";
        case Role::kOPS:
            return "OPS";
        case Role::kUPB:
            return "UPB";
        case Role::kCustom:
            return "custom";
    }
    return "?";
}

std::optional<Role> parse_role(std::string_view name) {
    for (Role r : {Role::kOPB, Role::kOPS, Role::kUPB, Role::kCustom}) {
        if (name == role_name(r)) {
            return r;
        }
    }
    return std::nullopt;
}

CycNum cyc_inner(const LocalVector &u, const LocalVector &v) {
    if (u.party != v.party || u.dim() != v.dim()) {
        throw std::invalid_argument("cyc_inner: vectors live on different parties or dimensions");
    }
    int order = u.amps.empty() ? 1 : u.amps.front().order();
    CycNum sum(order);
    for (size_t i = 0; i < u.amps.size(); ++i) {
        if (u.amps[i].is_zero() || v.amps[i].is_zero()) {
            continue;
        }
        sum += u.amps[i].conj() * v.amps[i];
    }
    return sum;
}

bool proportional(const LocalVector &a, const LocalVector &b) {
    if (a.party != b.party || a.dim() != b.dim()) {
        return false;
    }
    int pivot = -1;
    for (int i = 0; i < a.dim(); ++i) {
        bool za = a.amps[static_cast<size_t>(i)].is_zero();
        bool zb = b.amps[static_cast<size_t>(i)].is_zero();
        if (za != zb) {
            return false;
        }
        if (!za && pivot < 0) {
            pivot = i;
        }
    }
    if (pivot < 0) {
        return false;
    }
    const CycNum &ap = a.amps[static_cast<size_t>(pivot)];
    const CycNum &bp = b.amps[static_cast<size_t>(pivot)];
    for (int i = pivot + 1; i < a.dim(); ++i) {
        if (!(ap * b.amps[static_cast<size_t>(i)] == bp * a.amps[static_cast<size_t>(i)])) {
            return false;
        }
    }
    return true;
}

CycNum product_inner(const ProductState &a, const ProductState &b) {
    if (a.factors.size() != b.factors.size()) {
        throw std::invalid_argument("product_inner: party count mismatch");
    }
    CycNum acc(1, 1);
    for (size_t j = 0; j < a.factors.size(); ++j) {
        CycNum f = cyc_inner(a.factors[j], b.factors[j]);
        if (f.is_zero()) {
            return CycNum(f.order());
        }
        acc *= f;
    }
    return acc;
}

std::vector<LocalVector> fourier_basis(int party, int dim, int lo, int hi, int order) {
    if (lo < 0 || hi < lo || hi >= dim) {
        throw std::invalid_argument("fourier_basis: need 0 <= lo <= hi < dim");
    }
    int m = hi - lo + 1;
    if (order == 0) {
        order = m;
    }
    if (order % m != 0) {
        throw std::invalid_argument("fourier_basis: order must be a multiple of the range length");
    }
    int step = order / m;
    std::vector<LocalVector> out;
    for (int n = 0; n < m; ++n) {
        LocalVector v{party, std::vector<CycNum>(static_cast<size_t>(dim), CycNum(order))};
        for (int i = lo; i <= hi; ++i) {
            int64_t e = static_cast<int64_t>((i - lo) * n % m) * step;
            v.amps[static_cast<size_t>(i)] = CycNum::root_power(order, e);
        }
        out.push_back(std::move(v));
    }
    return out;
}

int construction_order(const PartyDims &dims) {
    int order = 1;
    int h = dims.layer_count();
    for (int j = 0; j < dims.parties(); ++j) {
        for (int k = 1; k <= h; ++k) {
            order = std::lcm(order, dims[j] - 2 * k + 1);
        }
        order = std::lcm(order, dims[j] - 2 * h);
    }
    return order;
}

std::vector<ProductState> states_from_subcube(const Subcube &sc, const PartyDims &dims,
                                              const BuildOptions &opts) {
    std::vector<ProductState> out;
    append_block_states(sc, dims, resolve_order(dims, opts), out, false);
    return out;
}

std::vector<ProductState> central_block_states(const PartyDims &dims, const BuildOptions &opts) {
    return states_from_subcube(build_central_block(dims), dims, opts);
}

StateSet build_opb(const PartyDims &dims, const BuildOptions &opts) {
    int order = resolve_order(dims, opts);
    StateSet set{dims.values(), Role::kOPB, {}};
    for (const Subcube &b : build_decomposition(dims).blocks) {
        append_block_states(b, dims, order, set.states, false);
    }
    return set;
}

StateSet build_ops(const PartyDims &dims, const BuildOptions &opts) {
    int order = resolve_order(dims, opts);
    StateSet set{dims.values(), Role::kOPS, {}};
    for (const Subcube &b : build_decomposition(dims).blocks) {
        if (b.layer == 1) {
            append_block_states(b, dims, order, set.states, false);
        }
    }
    return set;
}

ProductState plus_state(const Subcube &sc, const PartyDims &dims, const BuildOptions &opts) {
    int order = resolve_order(dims, opts);
    ProductState s;
    s.label = {origin_of(sc), sc.layer, sc.kset, std::vector<int>(static_cast<size_t>(dims.parties()), 0)};
    for (int j = 0; j < dims.parties(); ++j) {
        s.factors.push_back(ones_vector(j, dims[j], sc.factors[static_cast<size_t>(j)].range, order));
    }
    return s;
}

ProductState stopper(const PartyDims &dims, const BuildOptions &opts) {
    int order = resolve_order(dims, opts);
    ProductState s;
    s.label = {Origin::kStopper, 0, {}, std::vector<int>(static_cast<size_t>(dims.parties()), 0)};
    for (int j = 0; j < dims.parties(); ++j) {
        s.factors.push_back(ones_vector(j, dims[j], {0, dims[j] - 1}, order));
    }
    return s;
}

StateSet build_upb(const PartyDims &dims, const BuildOptions &opts) {
    int order = resolve_order(dims, opts);
    StateSet set{dims.values(), Role::kUPB, {}};
    set.states.push_back(stopper(dims, opts));
    for (const Subcube &b : build_decomposition(dims).blocks) {
        append_block_states(b, dims, order, set.states, true);
    }
    return set;
}

int64_t expected_opb_size(const PartyDims &dims) {
    return dims.volume();
}

int64_t expected_ops_size(const PartyDims &dims) {
    int64_t inner = 1;
    for (int d : dims.values()) {
        inner *= d - 2;
    }
    return dims.volume() - inner;
}

int64_t expected_upb_size(const PartyDims &dims) {
    return dims.volume() - (int64_t{1} << dims.parties()) * dims.layer_count();
}

}  // namespace nlcubes
