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

#include <gtest/gtest.h>

#include "nlcubes/verify.h"
#include "oracles.h"

namespace nlcubes {
namespace {

const std::vector<std::vector<int>> kSuiteDims = {{3, 3, 3}, {3, 3, 3, 3, 3}, {3, 4, 5},
                                                  {4, 4, 4}, {5, 5, 5},       {3, 3, 3, 3, 3, 3, 3}};

TEST(Fourier, BasisIsOrthogonalAndComplete) {
    for (int m = 1; m <= 7; ++m) {
        auto basis = fourier_basis(0, 9, 1, m, 0);
        ASSERT_EQ(static_cast<int>(basis.size()), m);
        for (int a = 0; a < m; ++a) {
            for (int b = 0; b < m; ++b) {
                CycNum ip = cyc_inner(basis[static_cast<size_t>(a)], basis[static_cast<size_t>(b)]);
                if (a == b) {
                    EXPECT_EQ(ip, CycNum(m, m));
                } else {
                    EXPECT_TRUE(ip.is_zero());
                }
            }
        }
        EXPECT_EQ(exact_rank(basis), m);
        auto sup = basis[0].support();
        ASSERT_TRUE(sup.has_value());
        EXPECT_EQ(*sup, (Interval{1, m}));
    }
}

TEST(Fourier, AmplitudesMatchComplexRoots) {
    auto basis = fourier_basis(1, 6, 2, 5, 0);
    for (int n = 0; n < 4; ++n) {
        auto v = oracle::to_complex(basis[static_cast<size_t>(n)]);
        for (int i = 0; i < 6; ++i) {
            std::complex<double> want = (i < 2) ? 0.0 : std::polar(1.0, 2 * M_PI * (i - 2) * n / 4.0);
            EXPECT_LT(std::abs(v[static_cast<size_t>(i)] - want), 1e-12);
        }
    }
}

TEST(Fourier, RejectsBadInput) {
    EXPECT_THROW(fourier_basis(0, 3, 2, 1, 0), std::invalid_argument);
    EXPECT_THROW(fourier_basis(0, 3, 0, 3, 0), std::invalid_argument);
    EXPECT_THROW(fourier_basis(0, 5, 0, 2, 4), std::invalid_argument);
}

TEST(ConstructionOrder, LcmOfRangeLengths) {
    EXPECT_EQ(construction_order(PartyDims({3, 3, 3})), 2);
    EXPECT_EQ(construction_order(PartyDims({3, 4, 5})), 12);  // lengths 2,3,4 and central 1,2,3
    EXPECT_EQ(construction_order(PartyDims({4, 4, 4})), 6);
    EXPECT_EQ(construction_order(PartyDims({5, 5, 5})), 4);  // lengths 4, 2 and central 1
}

TEST(Sizes, MatchClosedForms) {
    for (const auto &d : kSuiteDims) {
        PartyDims pd(d);
        int h = pd.layer_count();
        int64_t vol = oracle::product(d, 0);
        EXPECT_EQ(static_cast<int64_t>(build_opb(pd).size()), vol);
        EXPECT_EQ(static_cast<int64_t>(build_ops(pd).size()), vol - oracle::product(d, -2));
        EXPECT_EQ(static_cast<int64_t>(build_upb(pd).size()), vol - oracle::ipow(2, pd.parties()) * h);
        EXPECT_EQ(expected_opb_size(pd), vol);
        EXPECT_EQ(expected_ops_size(pd), vol - oracle::product(d, -2));
        EXPECT_EQ(expected_upb_size(pd), vol - oracle::ipow(2, pd.parties()) * h);
    }
    EXPECT_EQ(build_upb(PartyDims({3, 3, 3})).size(), 19u);
    EXPECT_EQ(build_upb(PartyDims({3, 3, 3, 3, 3})).size(), 211u);
    EXPECT_EQ(build_upb(PartyDims({3, 4, 5})).size(), 52u);
    EXPECT_EQ(build_upb(PartyDims({5, 5, 5})).size(), 109u);
    EXPECT_EQ(build_ops(PartyDims({4, 4, 4})).size(), 56u);
}

TEST(Blocks, StatesSpanTheirSubcube) {
    for (const auto &d : std::vector<std::vector<int>>{{3, 3, 3}, {3, 4, 5}, {5, 5, 5}}) {
        PartyDims pd(d);
        Decomposition dec = build_decomposition(pd);
        for (const Subcube &sc : dec.blocks) {
            auto states = states_from_subcube(sc, pd);
            ASSERT_EQ(static_cast<int64_t>(states.size()), sc.size());
            std::vector<std::vector<oracle::cplx>> rows;
            for (const auto &s : states) {
                auto v = oracle::expand(s);
                // Supported inside the subcube.
                auto pts = oracle::grid_points(d);
                for (size_t k = 0; k < pts.size(); ++k) {
                    if (!oracle::box_contains(sc, pts[k])) {
                        ASSERT_LT(std::abs(v[k]), 1e-12);
                    }
                }
                rows.push_back(std::move(v));
            }
            EXPECT_EQ(oracle::float_rank(rows), sc.size()) << sc.name();
        }
    }
}

TEST(Blocks, LabelsAndEnumerationOrder) {
    PartyDims pd({3, 3, 3});
    Decomposition dec = build_decomposition(pd);
    auto states = states_from_subcube(dec.blocks[3], pd);  // C1{1,2}
    ASSERT_EQ(states.size(), 4u);
    EXPECT_EQ(states[0].label.str(), "C1{1,2}[0,0,0]");
    EXPECT_EQ(states[1].label.str(), "C1{1,2}[0,1,0]");
    EXPECT_EQ(states[2].label.str(), "C1{1,2}[1,0,0]");
    EXPECT_EQ(states[3].label.str(), "C1{1,2}[1,1,0]");
    EXPECT_EQ(states[0], plus_state(dec.blocks[3], pd));
}

TEST(Amplitudes, AllThreeDimsAreSigns) {
    for (const auto &d : std::vector<std::vector<int>>{{3, 3, 3}, {3, 3, 3, 3, 3}}) {
        for (const auto &s : build_opb(PartyDims(d)).states) {
            for (const auto &f : s.factors) {
                for (const auto &a : f.amps) {
                    int64_t v = 0;
                    ASSERT_TRUE(a.is_integer(&v));
                    ASSERT_TRUE(v >= -1 && v <= 1);
                }
            }
        }
    }
}

TEST(Amplitudes, OrderOverrideAgreesWithDefault) {
    for (const auto &d : std::vector<std::vector<int>>{{3, 3, 3}, {3, 4, 5}}) {
        PartyDims pd(d);
        int base = construction_order(pd);
        StateSet a = build_opb(pd);
        StateSet b = build_opb(pd, BuildOptions{base * 5});
        ASSERT_EQ(a.size(), b.size());
        for (size_t s = 0; s < a.size(); ++s) {
            EXPECT_EQ(a.states[s].label, b.states[s].label);
            for (size_t p = 0; p < a.states[s].factors.size(); ++p) {
                const auto &fa = a.states[s].factors[p].amps;
                const auto &fb = b.states[s].factors[p].amps;
                for (size_t i = 0; i < fa.size(); ++i) {
                    EXPECT_EQ(fb[i].order(), base * 5);
                    EXPECT_EQ(fa[i], fb[i]);
                }
            }
        }
        EXPECT_TRUE(check_pairwise_orthogonal(b).ok());
        EXPECT_THROW(build_opb(pd, BuildOptions{base + 1}), std::invalid_argument);
    }
}

TEST(Stopper, SelectsExactlyThePlusStates) {
    for (const auto &d : kSuiteDims) {
        PartyDims pd(d);
        StateSet upb = build_upb(pd);
        ProductState s = stopper(pd);
        EXPECT_EQ(upb.states.front(), s);
        EXPECT_EQ(upb.states.front().label.origin, Origin::kStopper);
        for (size_t i = 1; i < upb.size(); ++i) {
            ASSERT_TRUE(product_inner(s, upb.states[i]).is_zero()) << upb.states[i].label.str();
        }
        for (const Subcube &sc : build_decomposition(pd).blocks) {
            EXPECT_FALSE(product_inner(s, plus_state(sc, pd)).is_zero()) << sc.name();
        }
    }
}

TEST(Upb, IsOpbMinusPlusStatesPlusStopper) {
    PartyDims pd({3, 4, 5});
    StateSet opb = build_opb(pd);
    StateSet upb = build_upb(pd);
    size_t plus = 0;
    for (const auto &s : opb.states) {
        bool all_zero = std::all_of(s.label.fourier.begin(), s.label.fourier.end(), [](int v) { return v == 0; });
        plus += all_zero;
        bool present = std::find(upb.states.begin(), upb.states.end(), s) != upb.states.end();
        EXPECT_EQ(present, !all_zero) << s.label.str();
    }
    EXPECT_EQ(upb.size(), opb.size() - plus + 1);
}

TEST(Inner, ProductInnerMatchesTensorExpansion) {
    StateSet opb = build_opb(PartyDims({3, 4, 5}));
    for (size_t a = 0; a < opb.size(); a += 7) {
        for (size_t b = 0; b < opb.size(); b += 5) {
            auto ea = oracle::expand(opb.states[a]);
            auto eb = oracle::expand(opb.states[b]);
            auto exact = product_inner(opb.states[a], opb.states[b]).to_complex();
            EXPECT_LT(std::abs(exact - oracle::inner(ea, eb)), 1e-9);
        }
    }
}

TEST(Inner, MismatchedPartiesThrow) {
    LocalVector a{0, {CycNum(1, 1), CycNum(1)}};
    LocalVector b{1, {CycNum(1, 1), CycNum(1)}};
    EXPECT_THROW(cyc_inner(a, b), std::invalid_argument);
}

TEST(Proportional, DetectsScalarMultiples) {
    LocalVector a{0, {CycNum(4, 1), CycNum::root_power(4, 1), CycNum(4)}};
    LocalVector b{0, {CycNum::root_power(4, 1) * 3, CycNum(4, -3), CycNum(4)}};
    LocalVector c{0, {CycNum(4, 1), CycNum(4, 1), CycNum(4)}};
    EXPECT_TRUE(proportional(a, b));
    EXPECT_FALSE(proportional(a, c));
    EXPECT_FALSE(proportional(a, LocalVector{0, {CycNum(4), CycNum(4), CycNum(4)}}));
}

}  // namespace
}  // namespace nlcubes
