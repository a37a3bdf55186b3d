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

#include "nlcubes/nonlocality.h"

#include <algorithm>
#include <stdexcept>
#include <thread>

#include "nlcubes/verify.h"

namespace nlcubes {

namespace {

bool supports_disjoint(const ProjectedBlock &a, const ProjectedBlock &b) {
    for (size_t p = 0; p < a.joint_support.size(); ++p) {
        if (!a.joint_support[p].intersects(b.joint_support[p])) {
            return true;
        }
    }
    return false;
}

const ProjectedBlock::Fiber *fiber_of(const ProjectedBlock &block, size_t state) {
    for (const auto &f : block.fibers) {
        if (std::find(f.members.begin(), f.members.end(), state) != f.members.end()) {
            return &f;
        }
    }
    return nullptr;
}

// Amplitude of the joint part of `state` at joint coordinate `coords` is
// nonzero.
bool joint_amplitude_nonzero(const ProductState &state, const Cut &cut, const std::vector<int> &coords) {
    std::vector<int> parties = cut.joint_parties();
    for (size_t p = 0; p < parties.size(); ++p) {
        const LocalVector &f = state.factors[static_cast<size_t>(parties[p])];
        if (f.amps[static_cast<size_t>(coords[p])].is_zero()) {
            return false;
        }
    }
    return true;
}

bool zeros_hypothesis(const StateSet &set, const std::vector<ProjectedBlock> &blocks,
                      const RuleApplication &step) {
    if (step.block_a == step.block_b || step.block_a >= blocks.size() || step.block_b >= blocks.size()) {
        return false;
    }
    const ProjectedBlock &a = blocks[step.block_a];
    const ProjectedBlock &b = blocks[step.block_b];
    if (!supports_disjoint(a, b)) {
        return false;
    }
    const auto *fa = fiber_of(a, step.witness_a);
    const auto *fb = fiber_of(b, step.witness_b);
    if (fa == nullptr || fb == nullptr || !fa->complete || !fb->complete) {
        return false;
    }
    const ProductState &sa = set.states[step.witness_a];
    const ProductState &sb = set.states[step.witness_b];
    size_t excluded = static_cast<size_t>(fa->excluded_factor.party);
    return !cyc_inner(sa.factors[excluded], sb.factors[excluded]).is_zero();
}

void apply_zeros(const Cut &cut, const std::vector<ProjectedBlock> &blocks, const RuleApplication &step,
                 DeductionState &ds) {
    auto sa = blocks[step.block_a].joint_coordinates(cut);
    auto sb = blocks[step.block_b].joint_coordinates(cut);
    for (int64_t u : sa) {
        for (int64_t v : sb) {
            ds.mark_zero(u, v);
        }
    }
    ds.trace.push_back(step);
}

bool trivial_hypothesis(const StateSet &set, const Cut &cut, const std::vector<ProjectedBlock> &blocks,
                        const RuleApplication &step, DeductionState &ds) {
    if (step.block_a >= blocks.size()) {
        return false;
    }
    const ProjectedBlock &b = blocks[step.block_a];
    const auto *fiber = fiber_of(b, step.witness_a);
    if (fiber == nullptr || !fiber->complete) {
        return false;
    }
    auto coords = b.joint_coordinates(cut);
    if (std::find(coords.begin(), coords.end(), step.anchor) == coords.end()) {
        return false;
    }
    for (int64_t v : coords) {
        if (v != step.anchor && !ds.is_zero(step.anchor, v)) {
            return false;
        }
    }
    std::vector<int> anchor_coords = cut.decode(step.anchor);
    for (size_t m : fiber->members) {
        if (!joint_amplitude_nonzero(set.states[m], cut, anchor_coords)) {
            return false;
        }
    }
    return true;
}

void apply_trivial(const Cut &cut, const std::vector<ProjectedBlock> &blocks, const RuleApplication &step,
                   DeductionState &ds) {
    auto coords = blocks[step.block_a].joint_coordinates(cut);
    for (size_t x = 0; x < coords.size(); ++x) {
        for (size_t y = x + 1; y < coords.size(); ++y) {
            ds.mark_zero(coords[x], coords[y]);
        }
        ds.tie_diagonal(coords.front(), coords[x]);
    }
    ds.trace.push_back(step);
}

CutResult summarize(const Cut &cut, const std::vector<ProjectedBlock> &blocks, DeductionState &ds) {
    CutResult out;
    out.excluded_party = cut.excluded_party;
    out.grid_size = ds.grid_size();
    for (const auto &b : blocks) {
        out.block_names.push_back(b.name);
    }
    std::vector<bool> resolved = ds.resolved();
    out.resolved_count = std::count(resolved.begin(), resolved.end(), true);
    out.status = out.resolved_count == out.grid_size ? CutStatus::kCertified : CutStatus::kUndecided;
    out.trace = ds.trace;
    if (out.status == CutStatus::kUndecided) {
        for (int64_t u = 0; u < ds.grid_size(); ++u) {
            if (!resolved[static_cast<size_t>(u)]) {
                out.unresolved.push_back(u);
            }
        }
        std::vector<bool> used(blocks.size(), false);
        for (const auto &step : ds.trace) {
            if (step.rule == RuleApplication::Rule::kBlockTrivial) {
                used[step.block_a] = true;
            }
        }
        for (size_t b = 0; b < blocks.size(); ++b) {
            if (!used[b] && blocks[b].joint_size() >= 2) {
                out.unused_blocks.push_back(blocks[b].name);
            }
        }
    }
    return out;
}

}  // namespace

std::vector<int> Cut::joint_parties() const {
    std::vector<int> out;
    for (int p = 0; p < static_cast<int>(local_dims.size()); ++p) {
        if (p != excluded_party) {
            out.push_back(p);
        }
    }
    return out;
}

int64_t Cut::grid_size() const {
    int64_t n = 1;
    for (int p : joint_parties()) {
        n *= local_dims[static_cast<size_t>(p)];
    }
    return n;
}

int64_t Cut::encode(const std::vector<int> &joint_coords) const {
    std::vector<int> parties = joint_parties();
    int64_t code = 0;
    for (size_t p = 0; p < parties.size(); ++p) {
        code = code * local_dims[static_cast<size_t>(parties[p])] + joint_coords[p];
    }
    return code;
}

std::vector<int> Cut::decode(int64_t coordinate) const {
    std::vector<int> parties = joint_parties();
    std::vector<int> out(parties.size());
    for (size_t p = parties.size(); p-- > 0;) {
        int d = local_dims[static_cast<size_t>(parties[p])];
        out[p] = static_cast<int>(coordinate % d);
        coordinate /= d;
    }
    return out;
}

int64_t ProjectedBlock::joint_size() const {
    int64_t n = 1;
    for (const Interval &r : joint_support) {
        n *= r.size();
    }
    return n;
}

std::vector<int64_t> ProjectedBlock::joint_coordinates(const Cut &cut) const {
    std::vector<int64_t> out;
    std::vector<int> c(joint_support.size());
    for (size_t p = 0; p < c.size(); ++p) {
        c[p] = joint_support[p].lo;
    }
    while (true) {
        out.push_back(cut.encode(c));
        size_t p = c.size();
        while (p-- > 0) {
            if (++c[p] <= joint_support[p].hi) {
                break;
            }
            c[p] = joint_support[p].lo;
        }
        if (p == static_cast<size_t>(-1)) {
            break;
        }
    }
    return out;
}

std::vector<ProjectedBlock> project_blocks(const StateSet &set, const Cut &cut) {
    std::vector<ProjectedBlock> blocks;
    std::vector<int> parties = cut.joint_parties();
    size_t excluded = static_cast<size_t>(cut.excluded_party);
    for (size_t s = 0; s < set.size(); ++s) {
        const ProductState &st = set.states[s];
        if (st.label.origin == Origin::kCustom) {
            throw std::invalid_argument("project_blocks: state " + std::to_string(s) + " carries no block label");
        }
        if (st.factors.size() != set.local_dims.size()) {
            throw std::invalid_argument("project_blocks: party count mismatch");
        }
        StateLabel key = st.label;
        key.fourier.clear();
        auto it = std::find_if(blocks.begin(), blocks.end(), [&](const ProjectedBlock &b) { return b.key == key; });
        if (it == blocks.end()) {
            ProjectedBlock b;
            b.name = key.block_name();
            b.key = key;
            b.joint_support.assign(parties.size(), Interval{1, 0});
            b.excluded_support = Interval{1, 0};
            blocks.push_back(std::move(b));
            it = blocks.end() - 1;
        }
        auto widen = [](Interval &acc, const Interval &x) {
            if (acc.lo > acc.hi) {
                acc = x;
            } else {
                acc.lo = std::min(acc.lo, x.lo);
                acc.hi = std::max(acc.hi, x.hi);
            }
        };
        for (size_t p = 0; p < parties.size(); ++p) {
            auto sup = st.factors[static_cast<size_t>(parties[p])].support();
            if (!sup) {
                throw std::invalid_argument("project_blocks: zero local factor");
            }
            widen(it->joint_support[p], *sup);
        }
        auto ex = st.factors[excluded].support();
        if (!ex) {
            throw std::invalid_argument("project_blocks: zero local factor");
        }
        widen(it->excluded_support, *ex);
        it->members.push_back(s);

        auto fiber = std::find_if(it->fibers.begin(), it->fibers.end(), [&](const ProjectedBlock::Fiber &f) {
            return proportional(f.excluded_factor, st.factors[excluded]);
        });
        if (fiber == it->fibers.end()) {
            it->fibers.push_back({st.factors[excluded], {s}, false});
        } else {
            fiber->members.push_back(s);
        }
    }
    for (auto &b : blocks) {
        for (auto &f : b.fibers) {
            f.complete = static_cast<int64_t>(f.members.size()) == b.joint_size();
        }
    }
    return blocks;
}

const char *rule_name(RuleApplication::Rule rule) {
    return rule == RuleApplication::Rule::kBlockZeros ? "block_zeros" : "block_trivial";
}

const char *cut_status_name(CutStatus status) {
    return status == CutStatus::kCertified ? "Certified" : "Undecided";
}

DeductionState::DeductionState(int64_t grid_size)
    : n_(grid_size),
      bits_(static_cast<size_t>((grid_size * grid_size + 63) / 64), 0),
      zero_count_(static_cast<size_t>(grid_size), 0),
      parent_(static_cast<size_t>(grid_size)) {
    for (int64_t u = 0; u < n_; ++u) {
        parent_[static_cast<size_t>(u)] = u;
    }
}

bool DeductionState::is_zero(int64_t u, int64_t v) const {
    int64_t k = u * n_ + v;
    return (bits_[static_cast<size_t>(k / 64)] >> (k % 64)) & 1;
}

bool DeductionState::mark_zero(int64_t u, int64_t v) {
    if (u == v || is_zero(u, v)) {
        return false;
    }
    for (auto [x, y] : {std::pair{u, v}, std::pair{v, u}}) {
        int64_t k = x * n_ + y;
        bits_[static_cast<size_t>(k / 64)] |= uint64_t{1} << (k % 64);
        ++zero_count_[static_cast<size_t>(x)];
    }
    ++zero_pairs_;
    return true;
}

int64_t DeductionState::find(int64_t u) {
    while (parent_[static_cast<size_t>(u)] != u) {
        parent_[static_cast<size_t>(u)] = parent_[static_cast<size_t>(parent_[static_cast<size_t>(u)])];
        u = parent_[static_cast<size_t>(u)];
    }
    return u;
}

void DeductionState::tie_diagonal(int64_t u, int64_t v) {
    int64_t a = find(u);
    int64_t b = find(v);
    if (a != b) {
        parent_[static_cast<size_t>(std::max(a, b))] = std::min(a, b);
    }
}

bool DeductionState::diagonal_tied(int64_t u, int64_t v) {
    return find(u) == find(v);
}

std::vector<bool> DeductionState::resolved() {
    std::vector<bool> out(static_cast<size_t>(n_), false);
    int64_t anchor = -1;
    for (int64_t u = 0; u < n_; ++u) {
        if (row_is_zero(u)) {
            anchor = u;
            break;
        }
    }
    if (anchor < 0) {
        return out;
    }
    for (int64_t u = 0; u < n_; ++u) {
        out[static_cast<size_t>(u)] = row_is_zero(u) && diagonal_tied(anchor, u);
    }
    return out;
}

void seed_zero_blocks(const StateSet &set, const Cut &cut, const std::vector<ProjectedBlock> &blocks,
                      DeductionState &ds) {
    size_t excluded = static_cast<size_t>(cut.excluded_party);
    for (size_t a = 0; a < blocks.size(); ++a) {
        for (size_t b = a + 1; b < blocks.size(); ++b) {
            if (!supports_disjoint(blocks[a], blocks[b])) {
                continue;
            }
            bool done = false;
            for (const auto &fa : blocks[a].fibers) {
                if (!fa.complete) {
                    continue;
                }
                for (const auto &fb : blocks[b].fibers) {
                    if (!fb.complete) {
                        continue;
                    }
                    if (!cyc_inner(fa.excluded_factor, fb.excluded_factor).is_zero()) {
                        RuleApplication step{RuleApplication::Rule::kBlockZeros, a, b, fa.members.front(),
                                             fb.members.front(), -1};
                        if (cyc_inner(set.states[step.witness_a].factors[excluded],
                                      set.states[step.witness_b].factors[excluded])
                                .is_zero()) {
                            throw std::logic_error("seed_zero_blocks: witness overlap vanished");
                        }
                        apply_zeros(cut, blocks, step, ds);
                        done = true;
                        break;
                    }
                }
                if (done) {
                    break;
                }
            }
        }
    }
}

void propagate(const StateSet &set, const Cut &cut, const std::vector<ProjectedBlock> &blocks,
               DeductionState &ds) {
    std::vector<bool> applied(blocks.size(), false);
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t b = 0; b < blocks.size(); ++b) {
            if (applied[b] || blocks[b].joint_size() < 2) {
                continue;
            }
            const ProjectedBlock::Fiber *fiber = nullptr;
            for (const auto &f : blocks[b].fibers) {
                if (f.complete) {
                    fiber = &f;
                    break;
                }
            }
            if (fiber == nullptr) {
                continue;
            }
            for (int64_t u : blocks[b].joint_coordinates(cut)) {
                RuleApplication step{RuleApplication::Rule::kBlockTrivial, b, b, fiber->members.front(), 0, u};
                if (trivial_hypothesis(set, cut, blocks, step, ds)) {
                    apply_trivial(cut, blocks, step, ds);
                    applied[b] = true;
                    changed = true;
                    break;
                }
            }
        }
    }
}

DeductionState replay(const StateSet &set, const Cut &cut, const std::vector<ProjectedBlock> &blocks,
                      const std::vector<RuleApplication> &trace) {
    DeductionState ds(cut.grid_size());
    for (size_t k = 0; k < trace.size(); ++k) {
        const RuleApplication &step = trace[k];
        if (step.rule == RuleApplication::Rule::kBlockZeros) {
            if (!zeros_hypothesis(set, blocks, step)) {
                throw std::runtime_error("replay: block_zeros hypothesis fails at step " + std::to_string(k));
            }
            apply_zeros(cut, blocks, step, ds);
        } else {
            if (!trivial_hypothesis(set, cut, blocks, step, ds)) {
                throw std::runtime_error("replay: block_trivial hypothesis fails at step " + std::to_string(k));
            }
            apply_trivial(cut, blocks, step, ds);
        }
    }
    return ds;
}

CutResult certify_cut(const StateSet &set, int excluded_party) {
    if (excluded_party < 0 || excluded_party >= set.parties()) {
        throw std::invalid_argument("certify_cut: excluded party out of range");
    }
    Cut cut{excluded_party, set.local_dims};
    std::vector<ProjectedBlock> blocks = project_blocks(set, cut);
    DeductionState ds(cut.grid_size());
    seed_zero_blocks(set, cut, blocks, ds);
    propagate(set, cut, blocks, ds);
    return summarize(cut, blocks, ds);
}

Certificate certify_strong_nonlocality(const StateSet &set, int threads) {
    if (!check_pairwise_orthogonal(set, threads).ok()) {
        throw std::invalid_argument("certify_strong_nonlocality: set is not pairwise orthogonal");
    }
    for (const ProductState &s : set.states) {
        if (s.label.origin == Origin::kCustom) {
            throw std::invalid_argument("certify_strong_nonlocality: unlabeled state");
        }
    }
    Certificate cert;
    cert.cuts.resize(static_cast<size_t>(set.parties()));
    if (threads > 1) {
        std::vector<std::jthread> pool;
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back([&, t] {
                for (int i = t; i < set.parties(); i += threads) {
                    cert.cuts[static_cast<size_t>(i)] = certify_cut(set, i);
                }
            });
        }
    } else {
        for (int i = 0; i < set.parties(); ++i) {
            cert.cuts[static_cast<size_t>(i)] = certify_cut(set, i);
        }
    }
    cert.overall = std::all_of(cert.cuts.begin(), cert.cuts.end(),
                               [](const CutResult &c) { return c.status == CutStatus::kCertified; })
                       ? CutStatus::kCertified
                       : CutStatus::kUndecided;
    return cert;
}

}  // namespace nlcubes
