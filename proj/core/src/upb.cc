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

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "nlcubes/verify.h"

namespace nlcubes {

namespace {

// Fixed-width bitset over states.
class Bits {
   public:
    Bits() = default;
    explicit Bits(size_t n) : words_((n + 63) / 64, 0) {}

    void set(size_t i) { words_[i / 64] |= uint64_t{1} << (i % 64); }
    bool test(size_t i) const { return (words_[i / 64] >> (i % 64)) & 1; }
    bool none() const {
        return std::all_of(words_.begin(), words_.end(), [](uint64_t w) { return w == 0; });
    }
    size_t count() const {
        size_t c = 0;
        for (uint64_t w : words_) {
            c += static_cast<size_t>(__builtin_popcountll(w));
        }
        return c;
    }
    Bits and_(const Bits &o) const {
        Bits r = *this;
        for (size_t k = 0; k < words_.size(); ++k) {
            r.words_[k] &= o.words_[k];
        }
        return r;
    }
    Bits minus(const Bits &o) const {
        Bits r = *this;
        for (size_t k = 0; k < words_.size(); ++k) {
            r.words_[k] &= ~o.words_[k];
        }
        return r;
    }
    bool subset_of(const Bits &o) const {
        for (size_t k = 0; k < words_.size(); ++k) {
            if (words_[k] & ~o.words_[k]) {
                return false;
            }
        }
        return true;
    }
    bool operator==(const Bits &) const = default;
    auto operator<=>(const Bits &) const = default;

   private:
    std::vector<uint64_t> words_;
};

int amplitude_order(const StateSet &set) {
    int order = 1;
    for (const auto &s : set.states) {
        for (const auto &f : s.factors) {
            for (const auto &a : f.amps) {
                order = std::lcm(order, a.order());
            }
        }
    }
    return order;
}

std::vector<LocalVector> pick(const LocalFactorIndex &idx, const std::vector<int> &ids) {
    std::vector<LocalVector> out;
    for (int id : ids) {
        out.push_back(idx.factors[static_cast<size_t>(id)]);
    }
    return out;
}

KillOption make_option(const LocalFactorIndex &idx, std::vector<int> ids, LocalVector normal) {
    KillOption opt;
    opt.party = idx.party;
    opt.factor_ids = std::move(ids);
    opt.rank = opt.factor_ids.empty() ? 0 : exact_rank(pick(idx, opt.factor_ids));
    for (int id : opt.factor_ids) {
        const auto &c = idx.carriers[static_cast<size_t>(id)];
        opt.killed.insert(opt.killed.end(), c.begin(), c.end());
    }
    std::sort(opt.killed.begin(), opt.killed.end());
    opt.normal = std::move(normal);
    return opt;
}

std::vector<KillOption> kill_options(const LocalFactorIndex &idx, int order) {
    std::vector<KillOption> out;
    int d = idx.dim;
    int total = idx.factors.empty() ? 0 : exact_rank(idx.factors);
    if (total < d) {
        std::vector<int> all(idx.factors.size());
        std::iota(all.begin(), all.end(), 0);
        auto normal = orthogonal_complement_vector(idx.factors, idx.party, d, order);
        out.push_back(make_option(idx, std::move(all), *normal));
        return out;
    }
    // Each hyperplane spanned by factors is the closure of d - 1 independent
    // ones. Enumerate independent (d-1)-subsets and deduplicate closures.
    std::set<std::vector<int>> seen;
    std::vector<int> chosen;
    std::vector<LocalVector> chosen_vecs;
    auto visit = [&](auto &&self, int start) -> void {
        if (static_cast<int>(chosen.size()) == d - 1) {
            auto normal = orthogonal_complement_vector(chosen_vecs, idx.party, d, order);
            std::vector<int> flat;
            for (int f = 0; f < static_cast<int>(idx.factors.size()); ++f) {
                if (cyc_inner(idx.factors[static_cast<size_t>(f)], *normal).is_zero()) {
                    flat.push_back(f);
                }
            }
            if (seen.insert(flat).second) {
                out.push_back(make_option(idx, std::move(flat), *normal));
            }
            return;
        }
        for (int f = start; f < static_cast<int>(idx.factors.size()); ++f) {
            chosen_vecs.push_back(idx.factors[static_cast<size_t>(f)]);
            if (exact_rank(chosen_vecs) == static_cast<int>(chosen_vecs.size())) {
                chosen.push_back(f);
                self(self, f + 1);
                chosen.pop_back();
            }
            chosen_vecs.pop_back();
        }
    };
    visit(visit, 0);
    std::sort(out.begin(), out.end(),
              [](const KillOption &a, const KillOption &b) { return a.factor_ids < b.factor_ids; });
    return out;
}

struct Search {
    const StateSet &set;
    const std::vector<LocalFactorIndex> &index;
    const std::vector<std::vector<KillOption>> &options;
    std::vector<std::vector<Bits>> option_bits;  // per party, per option
    std::vector<int> order;                      // party visiting order
    int64_t budget;
    SearchStats stats;
    bool exhausted_budget = false;
    std::vector<int> picked;  // option index per position in `order`
    std::vector<int> leaf_factor_ids;
    std::map<std::vector<int>, bool> leaf_memo;

    bool leaf_ok(int party, const Bits &uncovered) {
        const LocalFactorIndex &idx = index[static_cast<size_t>(party)];
        std::vector<int> ids;
        for (size_t s = 0; s < set.size(); ++s) {
            if (uncovered.test(s)) {
                ids.push_back(idx.factor_of_state[s]);
            }
        }
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        auto it = leaf_memo.find(ids);
        bool ok;
        if (it != leaf_memo.end()) {
            ok = it->second;
        } else {
            ++stats.leaf_checks;
            ok = ids.empty() || exact_rank(pick(idx, ids)) <= idx.dim - 1;
            leaf_memo.emplace(ids, ok);
        }
        if (ok) {
            leaf_factor_ids = ids;
        }
        return ok;
    }

    bool dfs(size_t depth, const Bits &uncovered) {
        if (++stats.nodes > budget) {
            exhausted_budget = true;
            return false;
        }
        int party = order[depth];
        if (depth + 1 == order.size()) {
            return leaf_ok(party, uncovered);
        }
        const auto &bits = option_bits[static_cast<size_t>(party)];
        std::vector<std::pair<Bits, int>> hits;
        for (size_t o = 0; o < bits.size(); ++o) {
            hits.emplace_back(bits[o].and_(uncovered), static_cast<int>(o));
        }
        // Larger kills first; drop options whose kill is contained in a kept one.
        std::stable_sort(hits.begin(), hits.end(),
                         [](const auto &a, const auto &b) { return a.first.count() > b.first.count(); });
        std::vector<size_t> kept;
        for (size_t h = 0; h < hits.size(); ++h) {
            bool dominated = false;
            for (size_t k : kept) {
                if (hits[h].first.subset_of(hits[k].first)) {
                    dominated = true;
                    break;
                }
            }
            if (dominated) {
                ++stats.dominated_skipped;
                continue;
            }
            kept.push_back(h);
        }
        for (size_t k : kept) {
            picked[depth] = hits[k].second;
            if (dfs(depth + 1, uncovered.minus(hits[k].first))) {
                return true;
            }
            if (exhausted_budget) {
                return false;
            }
        }
        return false;
    }
};

}  // namespace

LocalFactorIndex index_local_factors(const StateSet &set, int party) {
    if (party < 0 || party >= set.parties()) {
        throw std::invalid_argument("index_local_factors: party out of range");
    }
    LocalFactorIndex idx;
    idx.party = party;
    idx.dim = set.local_dims[static_cast<size_t>(party)];
    for (size_t s = 0; s < set.size(); ++s) {
        const LocalVector &f = set.states[s].factors.at(static_cast<size_t>(party));
        if (f.dim() != idx.dim || f.party != party) {
            throw std::invalid_argument("index_local_factors: factor on wrong party or dimension");
        }
        int id = -1;
        for (size_t k = 0; k < idx.factors.size(); ++k) {
            if (proportional(idx.factors[k], f)) {
                id = static_cast<int>(k);
                break;
            }
        }
        if (id < 0) {
            id = static_cast<int>(idx.factors.size());
            idx.factors.push_back(f);
            idx.carriers.emplace_back();
        }
        idx.carriers[static_cast<size_t>(id)].push_back(s);
        idx.factor_of_state.push_back(id);
    }
    return idx;
}

std::vector<KillOption> enumerate_kill_options(const StateSet &set, int party) {
    return kill_options(index_local_factors(set, party), amplitude_order(set));
}

const char *upb_status_name(UpbStatus status) {
    switch (status) {
        case UpbStatus::kUPB:
            return "UPB";
        case UpbStatus::kExtendible:
            return "Extendible";
        case UpbStatus::kInconclusiveBudget:
            return "InconclusiveBudget";
    }
    return "?";
}

UpbVerdict certify_unextendible(const StateSet &set, int64_t node_budget) {
    if (set.states.empty()) {
        throw std::invalid_argument("certify_unextendible: empty set");
    }
    if (!check_pairwise_orthogonal(set).ok()) {
        throw std::invalid_argument("certify_unextendible: set is not pairwise orthogonal");
    }
    int n = set.parties();
    int order = amplitude_order(set);

    UpbVerdict verdict;
    verdict.node_budget = node_budget;
    for (int p = 0; p < n; ++p) {
        verdict.factor_index.push_back(index_local_factors(set, p));
        verdict.options.push_back(kill_options(verdict.factor_index.back(), order));
    }

    Search search{set, verdict.factor_index, verdict.options, {}, {}, node_budget, {}, false, {}, {}, {}};
    for (int p = 0; p < n; ++p) {
        std::vector<Bits> bits;
        for (const KillOption &o : verdict.options[static_cast<size_t>(p)]) {
            Bits b(set.size());
            for (size_t s : o.killed) {
                b.set(s);
            }
            bits.push_back(std::move(b));
        }
        search.option_bits.push_back(std::move(bits));
    }
    // Fewest options first; the party with the most options is decided at the
    // leaf by a single rank test.
    search.order.resize(static_cast<size_t>(n));
    std::iota(search.order.begin(), search.order.end(), 0);
    std::stable_sort(search.order.begin(), search.order.end(), [&](int a, int b) {
        return verdict.options[static_cast<size_t>(a)].size() < verdict.options[static_cast<size_t>(b)].size();
    });
    search.picked.assign(static_cast<size_t>(n), -1);

    Bits all(set.size());
    for (size_t s = 0; s < set.size(); ++s) {
        all.set(s);
    }
    bool found = search.dfs(0, all);
    search.stats.party_order = search.order;
    verdict.stats = search.stats;

    if (!found) {
        verdict.status = search.exhausted_budget ? UpbStatus::kInconclusiveBudget : UpbStatus::kUPB;
        return verdict;
    }

    ProductState witness;
    witness.factors.resize(static_cast<size_t>(n));
    witness.label.origin = Origin::kCustom;
    Bits uncovered = all;
    for (size_t depth = 0; depth < search.order.size(); ++depth) {
        int p = search.order[depth];
        const LocalFactorIndex &idx = verdict.factor_index[static_cast<size_t>(p)];
        UpbVerdict::PartyChoice choice;
        choice.party = p;
        if (depth + 1 < search.order.size()) {
            const KillOption &opt = verdict.options[static_cast<size_t>(p)][static_cast<size_t>(search.picked[depth])];
            witness.factors[static_cast<size_t>(p)] = opt.normal;
            choice.factor_ids = opt.factor_ids;
        } else {
            auto normal = orthogonal_complement_vector(pick(idx, search.leaf_factor_ids), p, idx.dim, order);
            if (!normal) {
                throw std::logic_error("certify_unextendible: leaf factors span the party");
            }
            witness.factors[static_cast<size_t>(p)] = *normal;
            choice.factor_ids = search.leaf_factor_ids;
        }
        for (size_t s = 0; s < set.size(); ++s) {
            int id = idx.factor_of_state[s];
            if (uncovered.test(s) &&
                std::binary_search(choice.factor_ids.begin(), choice.factor_ids.end(), id)) {
                choice.killed.push_back(s);
            }
        }
        Bits k(set.size());
        for (size_t s : choice.killed) {
            k.set(s);
        }
        uncovered = uncovered.minus(k);
        verdict.choices.push_back(std::move(choice));
    }
    std::sort(verdict.choices.begin(), verdict.choices.end(),
              [](const auto &a, const auto &b) { return a.party < b.party; });
    for (size_t s = 0; s < set.size(); ++s) {
        if (!product_inner(set.states[s], witness).is_zero()) {
            throw std::logic_error("certify_unextendible: witness not orthogonal to state " + std::to_string(s));
        }
    }
    verdict.witness = std::move(witness);
    verdict.status = UpbStatus::kExtendible;
    return verdict;
}

}  // namespace nlcubes
