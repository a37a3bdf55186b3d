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

#include <algorithm>
#include <bit>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace nlcubes {

namespace {

// Per state, per party support interval (lo > hi for zero factors).
std::vector<std::vector<Interval>> support_table(const StateSet &set) {
    std::vector<std::vector<Interval>> table;
    table.reserve(set.size());
    for (const ProductState &s : set.states) {
        std::vector<Interval> row;
        for (const LocalVector &f : s.factors) {
            row.push_back(f.support().value_or(Interval{1, 0}));
        }
        table.push_back(std::move(row));
    }
    return table;
}

int overlap(const Interval &a, const Interval &b) {
    return std::max(0, std::min(a.hi, b.hi) - std::max(a.lo, b.lo) + 1);
}

// Runs fn(i) for i in [0, n) on up to `threads` workers, strided so the
// long early rows of a triangular sweep are spread out.
template <typename Fn>
void parallel_rows(size_t n, int threads, Fn &&fn) {
    if (threads <= 1 || n < 64) {
        for (size_t i = 0; i < n; ++i) {
            fn(i, 0);
        }
        return;
    }
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            for (size_t i = static_cast<size_t>(t); i < n; i += static_cast<size_t>(threads)) {
                fn(i, t);
            }
        });
    }
}

int common_order(const std::vector<std::vector<CycNum>> &rows) {
    int order = 1;
    for (const auto &r : rows) {
        for (const CycNum &x : r) {
            order = std::lcm(order, x.order());
        }
    }
    return order;
}

void make_primitive(std::vector<CycNum> &row) {
    int64_t g = 0;
    for (const CycNum &x : row) {
        g = std::gcd(g, x.content());
    }
    if (g > 1) {
        for (CycNum &x : row) {
            x.divide_exact(g);
        }
    }
}

std::vector<std::vector<CycNum>> lifted_rows(const std::vector<std::vector<CycNum>> &rows) {
    int order = common_order(rows);
    std::vector<std::vector<CycNum>> out = rows;
    for (auto &r : out) {
        for (CycNum &x : r) {
            x = x.lifted(order);
        }
    }
    return out;
}

}  // namespace

OrthoReport check_pairwise_orthogonal(const StateSet &set, int threads) {
    OrthoReport rep;
    size_t n = set.size();
    rep.total_pairs = static_cast<int64_t>(n) * static_cast<int64_t>(n > 0 ? n - 1 : 0) / 2;
    auto supports = support_table(set);
    threads = std::max(1, threads);
    std::vector<std::vector<OrthoReport::Violation>> found(static_cast<size_t>(threads));

    parallel_rows(n, threads, [&](size_t i, int t) {
        const ProductState &a = set.states[i];
        size_t parties = a.factors.size();
        std::vector<std::pair<int, size_t>> order(parties);
        for (size_t j = i + 1; j < n; ++j) {
            const ProductState &b = set.states[j];
            if (b.factors.size() != parties) {
                throw std::invalid_argument("check_pairwise_orthogonal: party count mismatch");
            }
            bool zero = false;
            for (size_t p = 0; p < parties; ++p) {
                int ov = overlap(supports[i][p], supports[j][p]);
                if (ov == 0) {
                    zero = true;
                    break;
                }
                order[p] = {ov, p};
            }
            if (zero) {
                continue;
            }
            std::sort(order.begin(), order.end());
            CycNum acc(1, 1);
            for (const auto &[ov, p] : order) {
                CycNum f = cyc_inner(a.factors[p], b.factors[p]);
                if (f.is_zero()) {
                    zero = true;
                    break;
                }
                acc *= f;
            }
            if (!zero) {
                found[static_cast<size_t>(t)].push_back({i, j, a.label.str(), b.label.str(), acc});
            }
        }
    });

    for (auto &v : found) {
        for (auto &x : v) {
            rep.violations.push_back(std::move(x));
        }
    }
    std::sort(rep.violations.begin(), rep.violations.end(),
              [](const auto &x, const auto &y) { return std::pair(x.first, x.second) < std::pair(y.first, y.second); });
    return rep;
}

FloatOrthoReport check_pairwise_orthogonal_float(const StateSet &set, double tolerance, int threads) {
    FloatOrthoReport rep;
    rep.tolerance = tolerance;
    size_t n = set.size();
    rep.total_pairs = static_cast<int64_t>(n) * static_cast<int64_t>(n > 0 ? n - 1 : 0) / 2;

    using Local = std::vector<std::complex<double>>;
    std::vector<std::vector<Local>> numeric(n);
    for (size_t i = 0; i < n; ++i) {
        for (const LocalVector &f : set.states[i].factors) {
            Local v;
            for (const CycNum &x : f.amps) {
                v.push_back(x.to_complex());
            }
            numeric[i].push_back(std::move(v));
        }
    }
    threads = std::max(1, threads);
    std::vector<std::vector<std::pair<size_t, size_t>>> found(static_cast<size_t>(threads));
    parallel_rows(n, threads, [&](size_t i, int t) {
        for (size_t j = i + 1; j < n; ++j) {
            std::complex<double> acc = 1.0;
            for (size_t p = 0; p < numeric[i].size(); ++p) {
                std::complex<double> s = 0.0;
                for (size_t k = 0; k < numeric[i][p].size(); ++k) {
                    s += std::conj(numeric[i][p][k]) * numeric[j][p][k];
                }
                acc *= s;
            }
            if (std::abs(acc) > tolerance) {
                found[static_cast<size_t>(t)].push_back({i, j});
            }
        }
    });
    for (auto &v : found) {
        rep.nonzero_pairs.insert(rep.nonzero_pairs.end(), v.begin(), v.end());
    }
    std::sort(rep.nonzero_pairs.begin(), rep.nonzero_pairs.end());
    return rep;
}

bool backends_agree(const StateSet &set, double tolerance, int threads) {
    OrthoReport exact = check_pairwise_orthogonal(set, threads);
    FloatOrthoReport approx = check_pairwise_orthogonal_float(set, tolerance, threads);
    if (exact.violations.size() != approx.nonzero_pairs.size()) {
        return false;
    }
    for (size_t k = 0; k < exact.violations.size(); ++k) {
        if (exact.violations[k].first != approx.nonzero_pairs[k].first ||
            exact.violations[k].second != approx.nonzero_pairs[k].second) {
            return false;
        }
    }
    return true;
}

bool check_completeness(const StateSet &set) {
    if (!check_pairwise_orthogonal(set).ok()) {
        throw std::invalid_argument("check_completeness: set is not pairwise orthogonal");
    }
    int64_t volume = 1;
    for (int d : set.local_dims) {
        volume *= d;
    }
    return !set.states.empty() && static_cast<int64_t>(set.size()) == volume;
}

int exact_rank(const std::vector<std::vector<CycNum>> &input) {
    if (input.empty()) {
        return 0;
    }
    std::vector<std::vector<CycNum>> rows = lifted_rows(input);
    size_t cols = rows.front().size();
    for (const auto &r : rows) {
        if (r.size() != cols) {
            throw std::invalid_argument("exact_rank: ragged rows");
        }
    }
    size_t rank = 0;
    for (size_t c = 0; c < cols && rank < rows.size(); ++c) {
        size_t pivot = rank;
        while (pivot < rows.size() && rows[pivot][c].is_zero()) {
            ++pivot;
        }
        if (pivot == rows.size()) {
            continue;
        }
        std::swap(rows[rank], rows[pivot]);
        make_primitive(rows[rank]);
        const CycNum p = rows[rank][c];
        for (size_t r = rank + 1; r < rows.size(); ++r) {
            if (rows[r][c].is_zero()) {
                continue;
            }
            const CycNum a = rows[r][c];
            for (size_t k = c; k < cols; ++k) {
                rows[r][k] = p * rows[r][k] - a * rows[rank][k];
            }
            make_primitive(rows[r]);
        }
        ++rank;
    }
    return static_cast<int>(rank);
}

int exact_rank(const std::vector<LocalVector> &vectors) {
    std::vector<std::vector<CycNum>> rows;
    for (const LocalVector &v : vectors) {
        if (v.party != vectors.front().party || v.dim() != vectors.front().dim()) {
            throw std::invalid_argument("exact_rank: vectors must share party and dimension");
        }
        rows.push_back(v.amps);
    }
    return exact_rank(rows);
}

CycNum exact_determinant(const std::vector<std::vector<CycNum>> &input) {
    size_t k = input.size();
    if (k == 0) {
        return CycNum(1, 1);
    }
    if (k > 20) {
        throw std::invalid_argument("exact_determinant: matrix too large for subset expansion");
    }
    std::vector<std::vector<CycNum>> m = lifted_rows(input);
    int order = m.front().front().order();
    // dp[S]: signed sum over injective maps of the first |S| rows onto S.
    std::vector<CycNum> dp(size_t{1} << k, CycNum(order));
    std::vector<bool> reached(size_t{1} << k, false);
    dp[0] = CycNum(order, 1);
    reached[0] = true;
    for (uint32_t mask = 0; mask < (1u << k); ++mask) {
        if (!reached[mask] || dp[mask].is_zero()) {
            continue;
        }
        size_t row = static_cast<size_t>(std::popcount(mask));
        if (row == k) {
            continue;
        }
        for (size_t c = 0; c < k; ++c) {
            if (mask & (1u << c) || m[row][c].is_zero()) {
                continue;
            }
            int above = std::popcount(mask >> (c + 1));
            CycNum term = dp[mask] * m[row][c];
            uint32_t next = mask | (1u << c);
            if (above % 2) {
                dp[next] -= term;
            } else {
                dp[next] += term;
            }
            reached[next] = true;
        }
    }
    return dp[(size_t{1} << k) - 1];
}

std::optional<LocalVector> orthogonal_complement_vector(const std::vector<LocalVector> &vectors,
                                                        int party, int dim, int order) {
    std::vector<std::vector<CycNum>> basis;
    auto try_add = [&](std::vector<CycNum> row) {
        basis.push_back(std::move(row));
        if (exact_rank(basis) < static_cast<int>(basis.size())) {
            basis.pop_back();
        }
    };
    for (const LocalVector &v : vectors) {
        if (v.party != party || v.dim() != dim) {
            throw std::invalid_argument("orthogonal_complement_vector: vector on wrong party or dimension");
        }
        if (static_cast<int>(basis.size()) == dim) {
            break;
        }
        std::vector<CycNum> row;
        for (const CycNum &a : v.amps) {
            row.push_back(a.conj().lifted(std::lcm(order, a.order())));
        }
        try_add(std::move(row));
    }
    if (static_cast<int>(basis.size()) >= dim) {
        return std::nullopt;
    }
    for (int e = 0; e < dim && static_cast<int>(basis.size()) < dim - 1; ++e) {
        std::vector<CycNum> row(static_cast<size_t>(dim), CycNum(order));
        row[static_cast<size_t>(e)] = CycNum(order, 1);
        try_add(std::move(row));
    }
    LocalVector x{party, {}};
    for (int i = 0; i < dim; ++i) {
        std::vector<std::vector<CycNum>> minor;
        for (const auto &r : basis) {
            std::vector<CycNum> mr;
            for (int c = 0; c < dim; ++c) {
                if (c != i) {
                    mr.push_back(r[static_cast<size_t>(c)]);
                }
            }
            minor.push_back(std::move(mr));
        }
        CycNum d = dim == 1 ? CycNum(order, 1) : exact_determinant(minor);
        if (i % 2) {
            d = -d;
        }
        x.amps.push_back(d.lifted(std::lcm(order, d.order())));
    }
    // Bring every amplitude to one order and strip common integer content.
    int common = 1;
    for (const CycNum &a : x.amps) {
        common = std::lcm(common, a.order());
    }
    int64_t g = 0;
    for (CycNum &a : x.amps) {
        a = a.lifted(common);
        g = std::gcd(g, a.content());
    }
    if (g > 1) {
        for (CycNum &a : x.amps) {
            a.divide_exact(g);
        }
    }
    for (const LocalVector &v : vectors) {
        if (!cyc_inner(v, x).is_zero()) {
            throw std::logic_error("orthogonal_complement_vector: result not orthogonal");
        }
    }
    return x;
}

}  // namespace nlcubes
