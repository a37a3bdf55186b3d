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

#include "nlcubes/json_io.h"

#include <charconv>

#include "json.hpp"

namespace nlcubes {

namespace {

using json = nlohmann::json;

constexpr int64_t kMaxSafeInteger = (int64_t{1} << 53) - 1;

std::string dump(const json &j) { return j.dump(2) + "\n"; }

json encode_int(int64_t v) {
    if (v > kMaxSafeInteger || v < -kMaxSafeInteger) {
        return std::to_string(v);
    }
    return v;
}

[[noreturn]] void fail(const std::string &what) { throw ParseError(what); }

int64_t decode_int(const json &j, const char *what) {
    if (j.is_number_integer()) {
        return j.get<int64_t>();
    }
    if (j.is_string()) {
        const std::string &s = j.get_ref<const std::string &>();
        int64_t v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec == std::errc() && ptr == s.data() + s.size()) {
            return v;
        }
    }
    fail(std::string("expected an integer for ") + what);
}

int decode_small(const json &j, const char *what) {
    int64_t v = decode_int(j, what);
    if (v < INT32_MIN || v > INT32_MAX) {
        fail(std::string("integer out of range for ") + what);
    }
    return static_cast<int>(v);
}

const json &field(const json &obj, const char *key) {
    if (!obj.is_object()) {
        fail(std::string("expected an object holding '") + key + "'");
    }
    auto it = obj.find(key);
    if (it == obj.end()) {
        fail(std::string("missing field '") + key + "'");
    }
    return *it;
}

const json &array_field(const json &obj, const char *key) {
    const json &a = field(obj, key);
    if (!a.is_array()) {
        fail(std::string("field '") + key + "' must be an array");
    }
    return a;
}

std::vector<int> int_list(const json &arr, const char *what) {
    if (!arr.is_array()) {
        fail(std::string(what) + " must be an array");
    }
    std::vector<int> out;
    for (const json &v : arr) {
        out.push_back(decode_small(v, what));
    }
    return out;
}

json parse_text(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error &e) {
        fail(std::string("invalid JSON: ") + e.what());
    }
}

void check_version(const json &root) {
    int v = decode_small(field(root, "version"), "version");
    if (v != kJsonVersion) {
        fail("unsupported version " + std::to_string(v));
    }
}

json kset_json(const PartySubset &k) {
    json out = json::array();
    for (int p : k) {
        out.push_back(p + 1);
    }
    return out;
}

PartySubset kset_from(const json &arr, int parties) {
    PartySubset k;
    for (int p : int_list(arr, "kset")) {
        if (p < 1 || p > parties) {
            fail("kset party out of range");
        }
        k.push_back(p - 1);
    }
    for (size_t i = 1; i < k.size(); ++i) {
        if (k[i - 1] >= k[i]) {
            fail("kset must be strictly increasing");
        }
    }
    return k;
}

json cyc_json(const CycNum &c) {
    json coeffs = json::array();
    for (int64_t v : c.coefficients()) {
        coeffs.push_back(encode_int(v));
    }
    return {{"order", c.order()}, {"coeffs", coeffs}};
}

CycNum cyc_from(const json &j) {
    int order = decode_small(field(j, "order"), "order");
    if (order < 1 || order > 1'000'000) {
        fail("order out of range");
    }
    const json &arr = array_field(j, "coeffs");
    std::vector<int64_t> coeffs;
    for (const json &v : arr) {
        coeffs.push_back(decode_int(v, "coeffs"));
    }
    CycNum c = CycNum::from_coefficients(order, coeffs);
    if (static_cast<int>(coeffs.size()) > euler_phi(order)) {
        fail("coefficient vector longer than the reduced degree");
    }
    return c;
}

json label_json(const StateLabel &l) {
    return {{"family", origin_name(l.origin)},
            {"layer", l.layer},
            {"kset", kset_json(l.kset)},
            {"fourier", l.fourier}};
}

json state_json(const ProductState &s) {
    json factors = json::array();
    for (const LocalVector &f : s.factors) {
        json amps = json::array();
        for (const CycNum &a : f.amps) {
            amps.push_back(cyc_json(a));
        }
        factors.push_back({{"party", f.party + 1}, {"amps", amps}});
    }
    return {{"label", label_json(s.label)}, {"factors", factors}};
}

ProductState state_from(const json &j, const std::vector<int> &dims) {
    ProductState s;
    int n = static_cast<int>(dims.size());
    const json &label = field(j, "label");
    auto origin = parse_origin(field(label, "family").is_string() ? field(label, "family").get<std::string>() : "");
    if (!origin) {
        fail("unknown label family");
    }
    s.label.origin = *origin;
    s.label.layer = decode_small(field(label, "layer"), "layer");
    s.label.kset = kset_from(field(label, "kset"), n);
    s.label.fourier = int_list(field(label, "fourier"), "fourier");
    const json &factors = array_field(j, "factors");
    if (static_cast<int>(factors.size()) != n) {
        fail("state has " + std::to_string(factors.size()) + " factors, expected " + std::to_string(n));
    }
    for (int p = 0; p < n; ++p) {
        const json &f = factors[static_cast<size_t>(p)];
        if (decode_small(field(f, "party"), "party") != p + 1) {
            fail("factors must be listed in party order");
        }
        LocalVector v{p, {}};
        for (const json &a : array_field(f, "amps")) {
            v.amps.push_back(cyc_from(a));
        }
        if (v.dim() != dims[static_cast<size_t>(p)]) {
            fail("factor dimension does not match dims");
        }
        if (v.is_zero()) {
            fail("zero local factor");
        }
        s.factors.push_back(std::move(v));
    }
    return s;
}

json subcube_json(const Subcube &sc) {
    json factors = json::array();
    for (size_t p = 0; p < sc.factors.size(); ++p) {
        const Factor &f = sc.factors[p];
        factors.push_back({{"party", static_cast<int>(p) + 1},
                           {"tag", factor_tag_name(f.tag)},
                           {"lo", f.range.lo},
                           {"hi", f.range.hi}});
    }
    json family = sc.is_central() ? json("center") : json(*sc.family == Family::kC ? "C" : "D");
    return {{"name", sc.name()},
            {"layer", sc.layer},
            {"family", family},
            {"kset", kset_json(sc.kset)},
            {"factors", factors}};
}

}  // namespace

std::string decomposition_to_json(const Decomposition &dec) {
    json blocks = json::array();
    for (const Subcube &sc : dec.blocks) {
        blocks.push_back(subcube_json(sc));
    }
    json root = {{"version", kJsonVersion},
                 {"kind", "decomposition"},
                 {"dims", dec.dims.values()},
                 {"blocks", blocks}};
    return dump(root);
}

Decomposition decomposition_from_json(std::string_view text) {
    json root = parse_text(text);
    check_version(root);
    if (field(root, "kind") != "decomposition") {
        fail("not a decomposition document");
    }
    std::vector<int> dims = int_list(field(root, "dims"), "dims");
    Decomposition dec{[&] {
                          try {
                              return PartyDims(dims);
                          } catch (const DimsError &e) {
                              fail(std::string("invalid dims: ") + e.what());
                          }
                      }(),
                      {}};
    int n = dec.dims.parties();
    for (const json &b : array_field(root, "blocks")) {
        Subcube sc;
        sc.layer = decode_small(field(b, "layer"), "layer");
        const json &fam = field(b, "family");
        if (fam == "C") {
            sc.family = Family::kC;
        } else if (fam == "D") {
            sc.family = Family::kD;
        } else if (fam != "center") {
            fail("unknown block family");
        }
        sc.kset = kset_from(field(b, "kset"), n);
        const json &factors = array_field(b, "factors");
        if (static_cast<int>(factors.size()) != n) {
            fail("block factor count does not match dims");
        }
        for (int p = 0; p < n; ++p) {
            const json &f = factors[static_cast<size_t>(p)];
            if (decode_small(field(f, "party"), "party") != p + 1) {
                fail("block factors must be listed in party order");
            }
            const json &tag_j = field(f, "tag");
            auto tag = parse_factor_tag(tag_j.is_string() ? tag_j.get<std::string>() : "");
            if (!tag) {
                fail("unknown factor tag");
            }
            Interval r{decode_small(field(f, "lo"), "lo"), decode_small(field(f, "hi"), "hi")};
            if (r.lo < 0 || r.hi < r.lo || r.hi >= dec.dims[p]) {
                fail("factor interval out of range");
            }
            sc.factors.push_back({*tag, r});
        }
        dec.blocks.push_back(std::move(sc));
    }
    return dec;
}

std::string state_set_to_json(const StateSet &set) {
    json states = json::array();
    for (const ProductState &s : set.states) {
        states.push_back(state_json(s));
    }
    json root = {{"version", kJsonVersion},
                 {"dims", set.local_dims},
                 {"role", role_name(set.role)},
                 {"states", states}};
    return dump(root);
}

StateSet state_set_from_json(std::string_view text) {
    json root = parse_text(text);
    check_version(root);
    StateSet set;
    set.local_dims = int_list(field(root, "dims"), "dims");
    if (set.local_dims.empty()) {
        fail("dims must be nonempty");
    }
    for (int d : set.local_dims) {
        if (d < 1) {
            fail("dims must be positive");
        }
    }
    const json &role_j = field(root, "role");
    auto role = parse_role(role_j.is_string() ? role_j.get<std::string>() : "");
    if (!role) {
        fail("unknown role");
    }
    set.role = *role;
    for (const json &s : array_field(root, "states")) {
        set.states.push_back(state_from(s, set.local_dims));
    }
    return set;
}

std::string partition_report_to_json(const PartitionReport &r) {
    json root = {{"ok", r.ok()},
                 {"disjoint", r.disjoint},
                 {"covering", r.covering},
                 {"count_ok", r.count_ok},
                 {"pairwise_party_disjoint", r.pairwise_party_disjoint},
                 {"counting_identity", r.counting_identity},
                 {"grid_points", encode_int(r.grid_points)},
                 {"covered_points", encode_int(r.covered_points)}};
    return dump(root);
}

std::string corner_census_to_json(const Decomposition &dec, const CornerCensus &c) {
    json entries = json::array();
    for (const auto &e : c.entries) {
        entries.push_back({{"block", dec.blocks[e.block_index].name()}, {"corners", e.corners}});
    }
    json root = {{"ok", c.ok()},
                 {"every_block_one_corner", c.every_block_one_corner},
                 {"corners_exhausted", c.corners_exhausted},
                 {"conjectural", c.conjectural},
                 {"entries", entries}};
    return dump(root);
}

std::string ortho_report_to_json(const OrthoReport &r) {
    json violations = json::array();
    for (const auto &v : r.violations) {
        violations.push_back({{"first", v.first},
                              {"second", v.second},
                              {"first_label", v.first_label},
                              {"second_label", v.second_label},
                              {"overlap", cyc_json(v.overlap)},
                              {"overlap_text", v.overlap.str()}});
    }
    json root = {{"ok", r.ok()}, {"total_pairs", encode_int(r.total_pairs)}, {"violations", violations}};
    return dump(root);
}

std::string float_ortho_report_to_json(const FloatOrthoReport &r) {
    json pairs = json::array();
    for (const auto &[a, b] : r.nonzero_pairs) {
        pairs.push_back({a, b});
    }
    json root = {{"ok", r.ok()},
                 {"total_pairs", encode_int(r.total_pairs)},
                 {"tolerance", r.tolerance},
                 {"nonzero_pairs", pairs}};
    return dump(root);
}

std::string certificate_to_json(const StateSet &set, const Certificate &cert, bool include_trace) {
    json cuts = json::array();
    for (const CutResult &c : cert.cuts) {
        json cut = {{"excluded_party", c.excluded_party + 1},
                    {"status", cut_status_name(c.status)},
                    {"grid_size", encode_int(c.grid_size)},
                    {"resolved", encode_int(c.resolved_count)},
                    {"blocks", c.block_names.size()},
                    {"steps", c.trace.size()}};
        if (include_trace) {
            json trace = json::array();
            for (const RuleApplication &step : c.trace) {
                json j = {{"rule", rule_name(step.rule)}};
                if (step.rule == RuleApplication::Rule::kBlockZeros) {
                    j["blocks"] = {c.block_names[step.block_a], c.block_names[step.block_b]};
                    j["witnesses"] = {set.states[step.witness_a].label.str(),
                                      set.states[step.witness_b].label.str()};
                } else {
                    j["blocks"] = {c.block_names[step.block_a]};
                    j["witnesses"] = {set.states[step.witness_a].label.str()};
                    j["anchor"] = encode_int(step.anchor);
                }
                trace.push_back(std::move(j));
            }
            cut["trace"] = std::move(trace);
        }
        if (c.status == CutStatus::kUndecided) {
            json unresolved = json::array();
            for (int64_t u : c.unresolved) {
                unresolved.push_back(encode_int(u));
            }
            cut["unresolved"] = std::move(unresolved);
            cut["unused_blocks"] = c.unused_blocks;
        }
        cuts.push_back(std::move(cut));
    }
    json root = {{"version", kJsonVersion},
                 {"kind", "nonlocality"},
                 {"overall", cut_status_name(cert.overall)},
                 {"cuts", cuts}};
    return dump(root);
}

std::string upb_verdict_to_json(const StateSet &set, const UpbVerdict &v) {
    json parties = json::array();
    for (size_t p = 0; p < v.options.size(); ++p) {
        json options = json::array();
        for (const KillOption &o : v.options[p]) {
            options.push_back({{"factor_ids", o.factor_ids}, {"rank", o.rank}, {"killed", o.killed.size()}});
        }
        parties.push_back({{"party", static_cast<int>(p) + 1},
                           {"distinct_factors", v.factor_index[p].factors.size()},
                           {"options", options}});
    }
    json order = json::array();
    for (int p : v.stats.party_order) {
        order.push_back(p + 1);
    }
    json root = {{"version", kJsonVersion},
                 {"kind", "unextendibility"},
                 {"status", upb_status_name(v.status)},
                 {"node_budget", encode_int(v.node_budget)},
                 {"states", set.size()},
                 {"stats",
                  {{"nodes", encode_int(v.stats.nodes)},
                   {"leaf_checks", encode_int(v.stats.leaf_checks)},
                   {"dominated_skipped", encode_int(v.stats.dominated_skipped)},
                   {"party_order", order}}},
                 {"inventory", parties}};
    if (v.witness) {
        json w = state_json(*v.witness);
        w.erase("label");
        root["witness"] = std::move(w);
        json choices = json::array();
        for (const auto &c : v.choices) {
            json killed = json::array();
            for (size_t s : c.killed) {
                killed.push_back(set.states[s].label.str());
            }
            choices.push_back({{"party", c.party + 1}, {"factor_ids", c.factor_ids}, {"killed", killed}});
        }
        root["choices"] = std::move(choices);
    }
    return dump(root);
}

}  // namespace nlcubes
