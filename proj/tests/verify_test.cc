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

#include "nlcubes/verify.h"

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "nlcubes/upb.h"
#include "oracles.h"

namespace nlcubes {
namespace {

std::vector<CycNum> ints(int order, std::initializer_list<int64_t> v) {
    std::vector<CycNum> out;
    for (int64_t x : v) {
        out.emplace_back(order, x);
    }
    return out;
}

TEST(Orthogonality, ConstructionsAreClean) {
    for (const auto &d : std::vector<std::vector<int>>{{3, 3, 3}, {3, 4, 5}, {4, 4, 4}, {5, 5, 5}}) {
        PartyDims pd(d);
        for (const StateSet &set : {build_opb(pd), build_ops(pd), build_upb(pd)}) {
            OrthoReport r = check_pairwise_orthogonal(set);
            EXPECT_TRUE(r.ok());
            EXPECT_EQ(r.total_pairs, static_cast<int64_t>(set.size() * (set.size() - 1) / 2));
        }
    }
    EXPECT_EQ(check_pairwise_orthogonal(build_upb(PartyDims({3, 3, 3}))).total_pairs, 171);
}

TEST(Orthogonality, DuplicateIsReported) {
    StateSet set = build_opb(PartyDims({3, 3, 3}));
    set.states.push_back(set.states[5]);
    OrthoReport r = check_pairwise_orthogonal(set);
    ASSERT_EQ(r.violations.size(), 1u);
    EXPECT_EQ(r.violations[0].first, 5u);
    EXPECT_EQ(r.violations[0].second, set.size() - 1);
    EXPECT_EQ(r.violations[0].first_label, set.states[5].label.str());
    EXPECT_FALSE(r.violations[0].overlap.is_zero());
}

TEST(Orthogonality, ThreadCountDoesNotChangeResult) {
    StateSet set = build_opb(PartyDims({3, 4, 5}));
    set.states.push_back(set.states[3]);
    set.states.push_back(set.states[40]);
    OrthoReport one = check_pairwise_orthogonal(set, 1);
    OrthoReport four = check_pairwise_orthogonal(set, 4);
    ASSERT_EQ(one.violations.size(), four.violations.size());
    for (size_t i = 0; i < one.violations.size(); ++i) {
        EXPECT_EQ(one.violations[i].first, four.violations[i].first);
        EXPECT_EQ(one.violations[i].second, four.violations[i].second);
    }
}

TEST(Orthogonality, FloatBackendAgreesWithExact) {
    for (const auto &d : std::vector<std::vector<int>>{{3, 3, 3}, {3, 4, 5}, {5, 5, 5}}) {
        StateSet set = build_opb(PartyDims(d));
        set.states.push_back(set.states[1]);
        EXPECT_TRUE(backends_agree(set));
        EXPECT_EQ(check_pairwise_orthogonal_float(set).nonzero_pairs.size(), 1u);
    }
}

TEST(Completeness, BasisOnlyWhenFull) {
    EXPECT_TRUE(check_completeness(build_opb(PartyDims({3, 4, 5}))));
    EXPECT_FALSE(check_completeness(build_ops(PartyDims({3, 4, 5}))));
    StateSet bad = build_opb(PartyDims({3, 3, 3}));
    bad.states.push_back(bad.states[0]);
    EXPECT_THROW(check_completeness(bad), std::invalid_argument);
}

TEST(Rank, UpbLocalFactors) {
    // Distinct first-party factors of the 3x3x3 UPB span the whole space.
    StateSet upb = build_upb(PartyDims({3, 3, 3}));
    LocalFactorIndex idx = index_local_factors(upb, 0);
    std::vector<std::vector<oracle::cplx>> rows;
    for (const auto &f : idx.factors) {
        rows.push_back(oracle::to_complex(f));
    }
    EXPECT_EQ(exact_rank(idx.factors), 3);
    EXPECT_EQ(oracle::float_rank(rows), 3);
}

TEST(Rank, SmallExamples) {
    EXPECT_EQ(exact_rank(std::vector<std::vector<CycNum>>{}), 0);
    EXPECT_EQ(exact_rank({ints(1, {1, 2, 3}), ints(1, {2, 4, 6})}), 1);
    EXPECT_EQ(exact_rank({ints(1, {1, 2, 3}), ints(1, {0, 1, 1}), ints(1, {1, 3, 4})}), 2);
    EXPECT_EQ(exact_rank({ints(1, {0, 0}), ints(1, {0, 0})}), 0);
    // (1, w) and (w^2, 1) are dependent over Q(w), w a cube root of unity.
    std::vector<CycNum> a = {CycNum(3, 1), CycNum::root_power(3, 1)};
    std::vector<CycNum> b = {CycNum::root_power(3, 2), CycNum(3, 1)};
    EXPECT_EQ(exact_rank({a, b}), 1);
    std::vector<CycNum> c = {CycNum(3, 1), CycNum::root_power(3, 2)};
    EXPECT_EQ(exact_rank({a, c}), 2);
}

TEST(Rank, AgreesWithFloatOracleOnRandomMatrices) {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> pick(-2, 2);
    for (int order : {1, 3, 4, 5}) {
        for (int trial = 0; trial < 60; ++trial) {
            int r = 1 + trial % 5;
            int c = 1 + (trial / 5) % 5;
            std::vector<std::vector<CycNum>> m;
            std::vector<std::vector<oracle::cplx>> f;
            for (int i = 0; i < r; ++i) {
                std::vector<CycNum> row;
                std::vector<oracle::cplx> frow;
                for (int j = 0; j < c; ++j) {
                    // Sparse entries so that rank deficiency is common.
                    CycNum x = pick(rng) > 0 ? CycNum::root_power(order, pick(rng) + 2, pick(rng)) : CycNum(order);
                    frow.push_back(x.to_complex());
                    row.push_back(x);
                }
                m.push_back(row);
                f.push_back(frow);
            }
            if (trial % 3 == 0 && r > 1) {
                // Force a dependent row.
                for (int j = 0; j < c; ++j) {
                    m[1][static_cast<size_t>(j)] = m[0][static_cast<size_t>(j)] * CycNum::root_power(order, 1, 2);
                    f[1][static_cast<size_t>(j)] = m[1][static_cast<size_t>(j)].to_complex();
                }
            }
            EXPECT_EQ(exact_rank(m), oracle::float_rank(f));
        }
    }
}

TEST(Rank, PermutationAndScalingInvariant) {
    auto basis = fourier_basis(0, 5, 0, 3, 12);
    basis.push_back(basis[1]);
    int r = exact_rank(basis);
    std::reverse(basis.begin(), basis.end());
    EXPECT_EQ(exact_rank(basis), r);
    for (auto &a : basis[0].amps) {
        a *= CycNum::root_power(12, 5, 3);
    }
    EXPECT_EQ(exact_rank(basis), r);
    EXPECT_EQ(r, 4);
}

TEST(Determinant, KnownValues) {
    EXPECT_EQ(exact_determinant({ints(1, {2, 1}), ints(1, {7, 4})}), CycNum(1, 1));
    EXPECT_EQ(exact_determinant({ints(1, {1, 2, 3}), ints(1, {4, 5, 6}), ints(1, {7, 8, 10})}), CycNum(1, -3));
    // Vandermonde in the cube roots of unity: (w - 1)(w^2 - 1)(w^2 - w).
    std::vector<std::vector<CycNum>> v;
    for (int i = 0; i < 3; ++i) {
        std::vector<CycNum> row;
        for (int j = 0; j < 3; ++j) {
            row.push_back(CycNum::root_power(3, i * j));
        }
        v.push_back(row);
    }
    CycNum w = CycNum::root_power(3, 1);
    CycNum w2 = CycNum::root_power(3, 2);
    CycNum one(3, 1);
    EXPECT_EQ(exact_determinant(v), (w - one) * (w2 - one) * (w2 - w));
}

TEST(Complement, OrthogonalAndExactForHyperplanes) {
    auto basis = fourier_basis(0, 4, 0, 3, 4);
    std::vector<LocalVector> three(basis.begin(), basis.begin() + 3);
    auto x = orthogonal_complement_vector(three, 0, 4, 4);
    ASSERT_TRUE(x.has_value());
    EXPECT_FALSE(x->is_zero());
    for (const auto &v : three) {
        EXPECT_TRUE(cyc_inner(v, *x).is_zero());
    }
    EXPECT_TRUE(proportional(*x, basis[3]));
    EXPECT_FALSE(orthogonal_complement_vector(basis, 0, 4, 4).has_value());
}

TEST(Complement, EmptyAndDeficientInputs) {
    auto x = orthogonal_complement_vector({}, 1, 3, 1);
    ASSERT_TRUE(x.has_value());
    EXPECT_FALSE(x->is_zero());
    LocalVector e0{1, ints(1, {1, 0, 0})};
    auto y = orthogonal_complement_vector({e0, e0}, 1, 3, 1);
    ASSERT_TRUE(y.has_value());
    EXPECT_TRUE(cyc_inner(e0, *y).is_zero());
}

}  // namespace
}  // namespace nlcubes
