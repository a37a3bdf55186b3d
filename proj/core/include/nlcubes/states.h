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

// Product states attached to a decomposition.
//
// Every state is unnormalized with amplitudes in Z[w_L] for one global order
// L per construction. A range factor [lo, hi] of length m carries the m-point
// Fourier basis: vector n has amplitude w_m^{(i - lo) n} at index i. Point
// factors carry the single basis vector.

#ifndef NLCUBES_STATES_H
#define NLCUBES_STATES_H

#include <optional>
#include <string>
#include <vector>

#include "nlcubes/cyclotomic.h"
#include "nlcubes/hypercube.h"

namespace nlcubes {

struct LocalVector {
    int party = 0;
    std::vector<CycNum> amps;

    int dim() const { return static_cast<int>(amps.size()); }
    bool is_zero() const;
    /// Smallest interval containing every nonzero amplitude; nullopt if zero.
    std::optional<Interval> support() const;
    /// True iff the nonzero amplitudes occupy exactly one interval.
    bool support_is_contiguous() const;
    bool operator==(const LocalVector &) const = default;
};

/// Where a state came from. kCustom marks states read from outside with no
/// block structure.
enum class Origin { kC, kD, kCenter, kStopper, kCustom };

const char *origin_name(Origin origin);
std::optional<Origin> parse_origin(std::string_view name);

struct StateLabel {
    Origin origin = Origin::kCustom;
    int layer = 0;
    PartySubset kset;
    /// Fourier index per party (0 on point factors).
    std::vector<int> fourier;

    /// Same originating block (ignores the Fourier index).
    bool same_block(const StateLabel &other) const;
    std::string block_name() const;
    /// e.g. "C1{1,2}[0,1,0]".
    std::string str() const;
    bool operator==(const StateLabel &) const = default;
};

struct ProductState {
    std::vector<LocalVector> factors;  // party 0 .. N-1 in order
    StateLabel label;

    bool operator==(const ProductState &) const = default;
};

enum class Role { kOPB, kOPS, kUPB, kCustom };

const char *role_name(Role role);
std::optional<Role> parse_role(std::string_view name);

/// A list of product states over local dimensions `local_dims`.
/// `local_dims` is deliberately not a PartyDims: externally supplied sets
/// (e.g. qubit examples) need not satisfy the construction's constraints.
struct StateSet {
    std::vector<int> local_dims;
    Role role = Role::kCustom;
    std::vector<ProductState> states;

    size_t size() const { return states.size(); }
    int parties() const { return static_cast<int>(local_dims.size()); }
    bool operator==(const StateSet &) const = default;
};

/// <u|v>, conjugate-linear in u. Throws std::invalid_argument when the
/// parties or dimensions differ.
CycNum cyc_inner(const LocalVector &u, const LocalVector &v);

/// a = c * b for some nonzero scalar c (both nonzero, same party and dim).
bool proportional(const LocalVector &a, const LocalVector &b);

/// prod over parties of <a_i|b_i>, stopping at the first exact zero.
CycNum product_inner(const ProductState &a, const ProductState &b);

/// The m = hi - lo + 1 Fourier vectors on [lo, hi] of a party with dimension
/// `dim`, with amplitudes written over order `order` (0 means m). Throws
/// std::invalid_argument on a bad interval or an order not divisible by m.
std::vector<LocalVector> fourier_basis(int party, int dim, int lo, int hi, int order = 0);

/// The unique order L used for every amplitude in constructions over `dims`:
/// lcm of all range lengths of every block factor.
int construction_order(const PartyDims &dims);

struct BuildOptions {
    /// Override of the amplitude order; must be a multiple of
    /// construction_order(dims). 0 selects construction_order(dims).
    int order = 0;
};

/// Cartesian product of per-party local families: the point vector on point
/// factors, the full Fourier basis on range factors. Ordered
/// lexicographically in the Fourier multi-index (party 1 slowest).
std::vector<ProductState> states_from_subcube(const Subcube &sc, const PartyDims &dims,
                                              const BuildOptions &opts = {});

std::vector<ProductState> central_block_states(const PartyDims &dims, const BuildOptions &opts = {});

/// Central states plus every layer's block states: prod d_i states.
StateSet build_opb(const PartyDims &dims, const BuildOptions &opts = {});

/// Layer-1 block states only: prod d_i - prod (d_i - 2) states.
StateSet build_ops(const PartyDims &dims, const BuildOptions &opts = {});

/// The all-zero Fourier index member of states_from_subcube(sc).
ProductState plus_state(const Subcube &sc, const PartyDims &dims, const BuildOptions &opts = {});

/// All-ones amplitudes on every party.
ProductState stopper(const PartyDims &dims, const BuildOptions &opts = {});

/// Stopper, then central states minus the central plus state, then each
/// layer block's states minus its plus state.
/// Size prod d_i - 2^N floor((d_1 - 1) / 2).
StateSet build_upb(const PartyDims &dims, const BuildOptions &opts = {});

/// Expected sizes from the closed-form counts.
int64_t expected_opb_size(const PartyDims &dims);
int64_t expected_ops_size(const PartyDims &dims);
int64_t expected_upb_size(const PartyDims &dims);

}  // namespace nlcubes

#endif
