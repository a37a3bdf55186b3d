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

#include "nlcubes/upb.h"

#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "nlcubes/json_io.h"
#include "nlcubes/verify.h"
#include "oracles.h"

namespace nlcubes {
namespace {

StateSet shifts() { return state_set_from_json(oracle::read_text(oracle::data_path("shifts.json"))); }

void expect_valid_witness(const StateSet &set, const UpbVerdict &v) {
    ASSERT_EQ(v.status, UpbStatus::kExtendible);
    ASSERT_TRUE(v.witness.has_value());
    for (const auto &s : set.states) {
        EXPECT_TRUE(product_inner(s, *v.witness).is_zero());
        EXPECT_LT(std::abs(oracle::inner(oracle::expand(s), oracle::expand(*v.witness))), 1e-9);
    }
}

TEST(FactorIndex, DeduplicatesUpToScale) {
    StateSet set = shifts();
    LocalFactorIndex idx = index_local_factors(set, 0);
    EXPECT_EQ(idx.factors.size(), 4u);
    EXPECT_EQ(idx.factor_of_state, (std::vector<int>{0, 1, 2, 3}));

    set.states.push_back(set.states[0]);
    for (auto &a : set.states.back().factors[0].amps) {
        a *= -3;
    }
    idx = index_local_factors(set, 0);
    EXPECT_EQ(idx.factors.size(), 4u);
    EXPECT_EQ(idx.factor_of_state.back(), 0);
    EXPECT_EQ(idx.carriers[0], (std::vector<size_t>{0, 4}));
}

TEST(KillOptions, ShiftsGivesFourSingletons) {
    auto opts = enumerate_kill_options(shifts(), 0);
    ASSERT_EQ(opts.size(), 4u);
    for (const auto &o : opts) {
        EXPECT_EQ(o.factor_ids.size(), 1u);
        EXPECT_EQ(o.rank, 1);
        EXPECT_TRUE(o.maximal);
    }
}

TEST(KillOptions, DeficientPartyHasOneOption) {
    StateSet set = shifts();
    for (auto &s : set.states) {
        s.factors[0].amps = {CycNum(1, 1), CycNum(1)};
    }
    auto opts = enumerate_kill_options(set, 0);
    ASSERT_EQ(opts.size(), 1u);
    EXPECT_EQ(opts[0].killed.size(), 4u);
}

TEST(KillOptions, UpbOptionsAreHyperplanes) {
    StateSet upb = build_upb(PartyDims({3, 3, 3}));
    for (int p = 0; p < 3; ++p) {
        LocalFactorIndex idx = index_local_factors(upb, p);
        auto opts = enumerate_kill_options(upb, p);
        ASSERT_FALSE(opts.empty());
        for (const auto &o : opts) {
            std::vector<std::vector<oracle::cplx>> rows;
            for (int id : o.factor_ids) {
                rows.push_back(oracle::to_complex(idx.factors[static_cast<size_t>(id)]));
            }
            EXPECT_LE(o.rank, 2);
            EXPECT_EQ(oracle::float_rank(rows), o.rank);
            // Maximal: any other factor raises the rank to 3.
            for (int f = 0; f < static_cast<int>(idx.factors.size()); ++f) {
                if (std::find(o.factor_ids.begin(), o.factor_ids.end(), f) == o.factor_ids.end()) {
                    auto more = rows;
                    more.push_back(oracle::to_complex(idx.factors[static_cast<size_t>(f)]));
                    EXPECT_EQ(oracle::float_rank(more), 3);
                }
            }
            // killed is exactly the preimage.
            std::vector<size_t> want;
            for (size_t s = 0; s < upb.size(); ++s) {
                if (std::find(o.factor_ids.begin(), o.factor_ids.end(), idx.factor_of_state[s]) != o.factor_ids.end()) {
                    want.push_back(s);
                }
            }
            EXPECT_EQ(o.killed, want);
        }
    }
}

TEST(Certify, ShiftsIsUnextendible) {
    UpbVerdict v = certify_unextendible(shifts());
    EXPECT_EQ(v.status, UpbStatus::kUPB);
    EXPECT_FALSE(oracle::brute_force_extendible(shifts()));
}

TEST(Certify, ShiftsMinusOneStateIsExtendible) {
    StateSet set = shifts();
    set.states.pop_back();
    UpbVerdict v = certify_unextendible(set);
    expect_valid_witness(set, v);
}

TEST(Certify, ThreePartyUpb) {
    UpbVerdict v = certify_unextendible(build_upb(PartyDims({3, 3, 3})));
    EXPECT_EQ(v.status, UpbStatus::kUPB);
    EXPECT_GT(v.stats.nodes, 0);
    EXPECT_EQ(v.options.size(), 3u);
}

TEST(Certify, GeneralDimsUpbs) {
    for (const auto &d : std::vector<std::vector<int>>{{3, 4, 5}, {4, 4, 4}}) {
        EXPECT_EQ(certify_unextendible(build_upb(PartyDims(d))).status, UpbStatus::kUPB);
    }
}

TEST(Certify, OpsIsCompletedByTheCenter) {
    StateSet ops = build_ops(PartyDims({3, 3, 3}));
    UpbVerdict v = certify_unextendible(ops);
    expect_valid_witness(ops, v);
    ProductState center = central_block_states(PartyDims({3, 3, 3})).front();
    for (int p = 0; p < 3; ++p) {
        EXPECT_TRUE(proportional(v.witness->factors[static_cast<size_t>(p)], center.factors[static_cast<size_t>(p)]));
    }
}

TEST(Certify, UpbWithoutStopperIsExtendible) {
    PartyDims pd({3, 3, 3});
    StateSet set = build_upb(pd);
    set.states.erase(set.states.begin());
    UpbVerdict v = certify_unextendible(set);
    expect_valid_witness(set, v);
    // The stopper is one valid witness; the search may return another.
    ProductState s = stopper(pd);
    for (const auto &psi : set.states) {
        EXPECT_TRUE(product_inner(s, psi).is_zero());
    }
}

TEST(Certify, RestoringPlusStatesStaysExtendible) {
    PartyDims pd({3, 3, 3});
    StateSet set = build_upb(pd);
    set.states.erase(set.states.begin());
    for (const Subcube &sc : build_decomposition(pd).blocks) {
        if (!sc.is_central()) {
            set.states.push_back(plus_state(sc, pd));
        }
    }
    UpbVerdict v = certify_unextendible(set);
    expect_valid_witness(set, v);
}

TEST(Certify, BudgetIsReportedSeparately) {
    UpbVerdict v = certify_unextendible(build_upb(PartyDims({3, 3, 3})), 3);
    EXPECT_EQ(v.status, UpbStatus::kInconclusiveBudget);
    EXPECT_FALSE(v.witness.has_value());
}

TEST(Certify, RejectsNonOrthogonalInput) {
    StateSet set = build_upb(PartyDims({3, 3, 3}));
    set.states.push_back(set.states[3]);
    EXPECT_THROW(certify_unextendible(set), std::invalid_argument);
    EXPECT_THROW(certify_unextendible(StateSet{{3, 3, 3}, Role::kCustom, {}}), std::invalid_argument);
}

TEST(Certify, AgreesWithBruteForceOnRandomSubsets) {
    StateSet upb = build_upb(PartyDims({3, 3, 3}));
    std::mt19937 rng(5);
    int extendible = 0;
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<size_t> idx(upb.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::shuffle(idx.begin(), idx.end(), rng);
        size_t k = 1 + rng() % 10;
        StateSet sub{upb.local_dims, Role::kCustom, {}};
        for (size_t i = 0; i < k; ++i) {
            sub.states.push_back(upb.states[idx[i]]);
        }
        UpbVerdict v = certify_unextendible(sub);
        bool brute = oracle::brute_force_extendible(sub);
        EXPECT_EQ(v.status == UpbStatus::kExtendible, brute);
        extendible += brute;
        if (v.status == UpbStatus::kExtendible) {
            expect_valid_witness(sub, v);
        }
    }
    EXPECT_GT(extendible, 0);
}

}  // namespace
}  // namespace nlcubes
