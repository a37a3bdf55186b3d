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

#include "cli.h"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "nlcubes/hypercube.h"
#include "nlcubes/json_io.h"
#include "nlcubes/nonlocality.h"
#include "nlcubes/states.h"
#include "nlcubes/upb.h"
#include "nlcubes/verify.h"

namespace nlcubes::cli {

namespace {

using json = nlohmann::json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

const std::vector<std::string> kKinds = {"decomposition", "opb", "ops", "upb"};
const std::vector<std::string> kChecks = {"partition",    "cyclic",       "corners",        "orthogonality",
                                          "completeness", "nonlocality",  "unextendibility"};
const std::vector<std::string> kDecompositionChecks = {"partition", "cyclic", "corners"};

PartyDims make_dims(const std::vector<int> &dims) {
    try {
        return PartyDims(dims);
    } catch (const DimsError &e) {
        throw UsageError(std::string("invalid --dims: ") + e.what());
    }
}

void write_output(const std::string &path, const std::string &text, std::ostream &out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw UsageError("cannot open output file " + path);
    }
    f << text;
}

std::string read_file(const std::string &path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw UsageError("cannot read input file " + path);
    }
    std::ostringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

std::string interval_text(const Interval &r) {
    if (r.size() == 1) {
        return "{" + std::to_string(r.lo) + "}";
    }
    if (r.size() == 2) {
        return "{" + std::to_string(r.lo) + "," + std::to_string(r.hi) + "}";
    }
    return "{" + std::to_string(r.lo) + ".." + std::to_string(r.hi) + "}";
}

std::string box_text(const Subcube &sc) {
    std::string s;
    for (size_t p = 0; p < sc.factors.size(); ++p) {
        s += (p ? "x" : "") + interval_text(sc.factors[p].range);
    }
    return s;
}

std::string kset_text(const PartySubset &k) {
    std::string s = "{";
    for (size_t i = 0; i < k.size(); ++i) {
        s += (i ? "," : "") + std::to_string(k[i] + 1);
    }
    return s + "}";
}

std::string render_table(const Decomposition &dec) {
    std::ostringstream out;
    const auto &d = dec.dims.values();
    out << "Z_" << d[0];
    for (size_t i = 1; i < d.size(); ++i) {
        out << " x Z_" << d[i];
    }
    out << ": " << dec.blocks.size() << " blocks\n";
    size_t kw = 2;
    size_t cw = 4;
    for (const Subcube &sc : dec.blocks) {
        kw = std::max(kw, kset_text(sc.kset).size());
        cw = std::max(cw, box_text(sc).size());
    }
    for (int layer = 1; layer <= dec.dims.layer_count(); ++layer) {
        out << "layer " << layer << "\n";
        out << "  " << std::left << std::setw(static_cast<int>(kw)) << "K"
            << " | " << std::setw(static_cast<int>(cw)) << "C_K"
            << " | D_K\n";
        for (const PartySubset &k : index_family(dec.dims.parties())) {
            std::string c;
            std::string dd;
            for (const Subcube &sc : dec.blocks) {
                if (sc.layer == layer && sc.kset == k) {
                    (*sc.family == Family::kC ? c : dd) = box_text(sc);
                }
            }
            out << "  " << std::setw(static_cast<int>(kw)) << kset_text(k) << " | "
                << std::setw(static_cast<int>(cw)) << c << " | " << dd << "\n";
        }
    }
    out << "central B0: " << box_text(dec.blocks.front()) << "\n";
    return out.str();
}

std::string render_slices(const Decomposition &dec) {
    if (dec.dims.parties() != 3) {
        throw UsageError("--style slices needs exactly 3 parties");
    }
    std::ostringstream out;
    size_t w = 2;
    for (const Subcube &sc : dec.blocks) {
        w = std::max(w, sc.name().size());
    }
    for (int z = 0; z < dec.dims[2]; ++z) {
        out << "A3 = " << z << "\n";
        out << std::string(6, ' ');
        for (int y = 0; y < dec.dims[1]; ++y) {
            out << " " << std::left << std::setw(static_cast<int>(w)) << ("A2=" + std::to_string(y)).substr(0, w);
        }
        out << "\n";
        for (int x = 0; x < dec.dims[0]; ++x) {
            out << std::left << std::setw(6) << ("A1=" + std::to_string(x));
            for (int y = 0; y < dec.dims[1]; ++y) {
                int pt[3] = {x, y, z};
                out << " " << std::setw(static_cast<int>(w)) << locate(dec, pt).name();
            }
            out << "\n";
        }
        out << "\n";
    }
    return out.str();
}

int threads_from_env(int hw) {
    const char *env = std::getenv("NONLOCAL_CUBES_THREADS");
    if (env == nullptr) {
        return hw;
    }
    char *end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) {
        return hw;
    }
    return static_cast<int>(std::min<long>(v, hw));
}

struct VerifyConfig {
    std::string input;
    std::vector<std::string> checks;
    std::string backend = "exact";
    double tolerance = 1e-9;
    int64_t node_budget = kDefaultNodeBudget;
    std::string trace = "full";
    std::string report;
};

// Outcome precedence: a refutation outranks an undecided result.
struct Outcome {
    int code = kPass;
    void refute() { code = kRefuted; }
    void undecided() {
        if (code == kPass) {
            code = kUndecided;
        }
    }
};

int cmd_verify(const VerifyConfig &cfg, std::ostream &out, std::ostream &err) {
    std::string text = read_file(cfg.input);
    json probe;
    try {
        probe = json::parse(text);
    } catch (const json::parse_error &e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    bool is_decomposition = probe.is_object() && probe.value("kind", "") == "decomposition";

    std::vector<std::string> checks = cfg.checks;
    if (checks.empty()) {
        checks = {is_decomposition ? "partition" : "orthogonality"};
    }
    if (cfg.backend == "float") {
        for (const auto &c : checks) {
            if (c != "orthogonality") {
                throw UsageError("--backend float is only available for the orthogonality cross-check");
            }
        }
    }

    std::optional<Decomposition> dec;
    std::optional<StateSet> set;
    if (is_decomposition) {
        dec = decomposition_from_json(text);
        for (const auto &c : checks) {
            if (std::find(kDecompositionChecks.begin(), kDecompositionChecks.end(), c) == kDecompositionChecks.end()) {
                throw UsageError("check '" + c + "' needs a state set, not a decomposition");
            }
        }
    } else {
        set = state_set_from_json(text);
    }
    auto decomposition = [&]() -> const Decomposition & {
        if (!dec) {
            dec = build_decomposition(make_dims(set->local_dims));
        }
        return *dec;
    };

    int threads = thread_budget();
    Outcome outcome;
    json report = {{"version", kJsonVersion}, {"input", cfg.input}, {"checks", json::object()}};
    for (const std::string &check : checks) {
        json r;
        if (check == "partition") {
            PartitionReport p = verify_partition(decomposition());
            r = json::parse(partition_report_to_json(p));
            if (!p.ok()) {
                outcome.refute();
            }
        } else if (check == "cyclic") {
            const Decomposition &d = decomposition();
            if (!d.dims.all_equal()) {
                throw UsageError("the cyclic check needs all dims equal");
            }
            bool ok = verify_cyclic_invariance(d);
            bool closure = std::all_of(d.blocks.begin() + 1, d.blocks.end(), has_cyclic_closure);
            r = {{"ok", ok && closure}, {"rotation_invariant", ok}, {"cyclic_closure", closure}};
            if (!(ok && closure)) {
                outcome.refute();
            }
        } else if (check == "corners") {
            CornerCensus c = corner_census(decomposition());
            r = json::parse(corner_census_to_json(decomposition(), c));
            if (!c.ok()) {
                outcome.refute();
            }
        } else if (check == "orthogonality") {
            if (cfg.backend == "float") {
                FloatOrthoReport f = check_pairwise_orthogonal_float(*set, cfg.tolerance, threads);
                r = json::parse(float_ortho_report_to_json(f));
                r["backend"] = "float";
                if (!f.ok()) {
                    outcome.refute();
                }
            } else {
                OrthoReport o = check_pairwise_orthogonal(*set, threads);
                r = json::parse(ortho_report_to_json(o));
                r["backend"] = "exact";
                if (!o.ok()) {
                    outcome.refute();
                }
            }
        } else if (check == "completeness") {
            OrthoReport o = check_pairwise_orthogonal(*set, threads);
            bool complete = o.ok() && check_completeness(*set);
            r = {{"ok", complete}, {"orthogonal", o.ok()}, {"size", set->size()}};
            if (!complete) {
                outcome.refute();
            }
        } else if (check == "nonlocality" || check == "unextendibility") {
            OrthoReport o = check_pairwise_orthogonal(*set, threads);
            if (!o.ok()) {
                r = {{"ok", false}, {"status", "NotOrthogonal"}, {"violations", o.violations.size()}};
                outcome.refute();
            } else if (check == "nonlocality") {
                bool labeled = std::none_of(set->states.begin(), set->states.end(),
                                            [](const ProductState &s) { return s.label.origin == Origin::kCustom; });
                if (!labeled) {
                    throw ParseError("the nonlocality check needs block labels on every state");
                }
                Certificate cert = certify_strong_nonlocality(*set, threads);
                r = json::parse(certificate_to_json(*set, cert, cfg.trace == "full"));
                r["ok"] = cert.overall == CutStatus::kCertified;
                if (cert.overall != CutStatus::kCertified) {
                    outcome.undecided();
                }
            } else {
                UpbVerdict v = certify_unextendible(*set, cfg.node_budget);
                r = json::parse(upb_verdict_to_json(*set, v));
                r["ok"] = v.status == UpbStatus::kUPB;
                if (v.status == UpbStatus::kExtendible) {
                    outcome.refute();
                } else if (v.status == UpbStatus::kInconclusiveBudget) {
                    outcome.undecided();
                }
            }
        }
        report["checks"][check] = std::move(r);
        err << check << ": " << (report["checks"][check].value("ok", false) ? "ok" : "not ok") << "\n";
    }
    report["exit_code"] = outcome.code;
    write_output(cfg.report, report.dump(2) + "\n", out);
    return outcome.code;
}

}  // namespace

int thread_budget() {
    int hw = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    return threads_from_env(hw);
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Hypercube decompositions, product bases and their certificates", "nlcubes"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "nlcubes 0.1.0");

    std::vector<int> dims;
    std::string kind;
    std::string output;
    auto *construct = app.add_subcommand("construct", "Build a decomposition or state set and write JSON");
    construct->add_option("--dims", dims, "Comma-separated local dimensions, nondecreasing")
        ->delimiter(',')
        ->required();
    construct->add_option("--kind", kind, "What to build")->check(CLI::IsMember(kKinds))->required();
    construct->add_option("-o,--output", output, "Output path (default stdout)");

    VerifyConfig vcfg;
    auto *verify = app.add_subcommand("verify", "Run checks on a JSON artifact");
    verify->add_option("--in", vcfg.input, "Input JSON")->required();
    verify->add_option("--check", vcfg.checks, "Checks to run")->delimiter(',')->check(CLI::IsMember(kChecks));
    verify->add_option("--backend", vcfg.backend, "Arithmetic backend")
        ->check(CLI::IsMember({"exact", "float"}));
    verify->add_option("--tolerance", vcfg.tolerance, "Zero threshold for the float backend")
        ->check(CLI::PositiveNumber);
    verify->add_option("--node-budget", vcfg.node_budget, "Search node budget for unextendibility")
        ->check(CLI::PositiveNumber);
    verify->add_option("--trace", vcfg.trace, "Nonlocality trace detail")->check(CLI::IsMember({"none", "full"}));
    verify->add_option("--report", vcfg.report, "Report path (default stdout)");

    std::vector<int> rdims;
    std::string style = "table";
    auto *render = app.add_subcommand("render", "Draw a decomposition as text");
    render->add_option("--dims", rdims, "Comma-separated local dimensions")->delimiter(',')->required();
    render->add_option("--style", style, "table or slices")->check(CLI::IsMember({"table", "slices"}));

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp &e) {
        out << app.help();
        return kPass;
    } catch (const CLI::CallForAllHelp &e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kPass;
    } catch (const CLI::CallForVersion &e) {
        out << "nlcubes 0.1.0\n";
        return kPass;
    } catch (const CLI::ParseError &e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    }

    try {
        if (*construct) {
            PartyDims pd = make_dims(dims);
            std::string text;
            if (kind == "decomposition") {
                text = decomposition_to_json(build_decomposition(pd));
            } else if (kind == "opb") {
                text = state_set_to_json(build_opb(pd));
            } else if (kind == "ops") {
                text = state_set_to_json(build_ops(pd));
            } else {
                text = state_set_to_json(build_upb(pd));
            }
            write_output(output, text, out);
            return kPass;
        }
        if (*verify) {
            return cmd_verify(vcfg, out, err);
        }
        if (*render) {
            Decomposition dec = build_decomposition(make_dims(rdims));
            out << (style == "slices" ? render_slices(dec) : render_table(dec));
            return kPass;
        }
    } catch (const UsageError &e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const ParseError &e) {
        err << "malformed input: " << e.what() << "\n";
        return kMalformedInput;
    } catch (const std::invalid_argument &e) {
        err << "malformed input: " << e.what() << "\n";
        return kMalformedInput;
    }
    return kUsage;
}

}  // namespace nlcubes::cli
