// Copyright (c) 2026 The onesided authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <chrono>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "onesided/io.hpp"

namespace {

using namespace onesided;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitFails = 3;
constexpr int kExitBudget = 4;

struct Options {
    std::string command;
    std::string file;
    std::string output;
    int threads = 1;
    bool trace_steps = false;
    bool timing = false;
    bool assert_convex = false;
};

const SubgroupSpec& require_h(const ProblemFile& p) {
    if (!p.generators_h) throw ParseError("/generators_H", "this command requires generators_H");
    return *p.generators_h;
}

/// Expresses a coordinate vector as an integer combination of G's
/// generators, via the integer solution of the stacked theta-slice system.
std::optional<std::vector<Int>> express_in_group(const SubgroupSpec& g, const std::vector<Scalar>& x) {
    int t = g.count();
    int d = g.ctx->degree();
    std::vector<std::vector<Int>> rows;
    std::vector<Int> rhs;
    for (int i = 0; i < g.n; ++i)
        for (int k = 0; k < d; ++k) {
            Int den(1);
            for (int j = 0; j < t; ++j) den = int_lcm(den, Int(g.gens[j][i].coeffs()[k].get_den()));
            den = int_lcm(den, Int(x[i].coeffs()[k].get_den()));
            std::vector<Int> row(t);
            for (int j = 0; j < t; ++j) {
                const Rat& c = g.gens[j][i].coeffs()[k];
                row[j] = Int(c.get_num()) * (den / Int(c.get_den()));
            }
            const Rat& cx = x[i].coeffs()[k];
            rows.push_back(std::move(row));
            rhs.push_back(Int(cx.get_num()) * (den / Int(cx.get_den())));
        }
    if (rows.empty()) return std::nullopt;
    return int_solve(IntMatrix::from_rows(rows, t), rhs);
}

OrderedGroupSpec build_ordered_group(const ProblemFile& p) {
    if (!p.generators_g) throw ParseError("/generators_G", "this command requires generators_G");
    std::vector<Int> unit_combo;
    if (p.unit_in_g) {
        unit_combo = *p.unit_in_g;
        if (static_cast<int>(unit_combo.size()) != p.generators_g->count())
            throw ParseError("/unit_in_G", "length differs from the generator count of G");
    } else {
        auto derived = express_in_group(*p.generators_g, p.unit);
        if (!derived) throw ParseError("/unit_in_G", "the default unit is not an element of G; supply unit_in_G");
        unit_combo = *derived;
    }
    return OrderedGroupSpec::make(*p.generators_g, p.ordering, std::move(unit_combo));
}

json route_to_json(const RouteReport& r) {
    json coords = json::array();
    for (int c : r.coords) coords.push_back(c + 1);
    json out{{"holds", r.holds}, {"coords", coords}};
    if (r.witness) out["witness_m"] = int_vector_to_json(*r.witness);
    return out;
}

int run_decide(const ProblemFile& p, json& report) {
    const SubgroupSpec& h = require_h(p);
    DecisionOutcome out = decide(h, p.unit);
    report["verdict"] = out.verdict == Verdict::HoldsB ? "HoldsB" : "FailsB";
    report["routes"] = json{{"ii", route_to_json(out.route_ii)}, {"iii", route_to_json(out.route_iii)}};
    report["face"] = face_to_json(out.face);
    report["weighted_reduction"] = out.weighted_reduction;
    if (out.positivity) report["certificate"] = positivity_to_json(*out.positivity);
    if (out.certificate) report["certificate"] = failure_certificate_to_json(*out.certificate);
    return out.verdict == Verdict::HoldsB ? kExitOk : kExitFails;
}

int run_witness(const ProblemFile& p, json& report) {
    const SubgroupSpec& h = require_h(p);
    if (!p.h_combo) throw ParseError("/h", "witness requires the target combination h");
    if (static_cast<int>(p.h_combo->size()) != h.count())
        throw ParseError("/h", "length differs from the generator count");
    if (!p.m) throw ParseError("/m", "witness requires a modulus m");
    if (!p.epsilon) throw ParseError("/epsilon", "witness requires epsilon");
    long budget = p.budget.value_or(64);
    try {
        auto res = construct_witness(h, *p.h_combo, *p.m, *p.epsilon, budget, p.unit);
        if (auto* w = std::get_if<Witness>(&res)) {
            report["witness"] = json{{"coeffs", int_vector_to_json(w->coeffs)},
                                     {"m", w->m.get_str()},
                                     {"epsilon", rat_to_string(w->eps)},
                                     {"h_combo", int_vector_to_json(w->h_combo)},
                                     {"slack", scalar_vector_to_json(w->slack)}};
            return kExitOk;
        }
        report["budget_exhausted"] = std::get<BudgetExhausted>(res).max_radius;
        return kExitBudget;
    } catch (const NoWitnessExists& e) {
        report["no_witness_exists"] = true;
        report["certificate"] = failure_certificate_to_json(e.certificate);
        return kExitFails;
    }
}

int run_face(const ProblemFile& p, json& report) {
    const SubgroupSpec& h = require_h(p);
    FaceDescriptor f = smallest_face(h, p.unit);
    report["face"] = face_to_json(f);
    ZSetResult z = z_set_empty(h, p.unit);
    if (auto* t = std::get_if<TracePoint>(&z)) {
        report["z_set"] = json{{"empty", false}, {"point", trace_to_json(*t)}};
    } else {
        report["z_set"] =
            json{{"empty", true}, {"certificate", positivity_to_json(std::get<PositivityCertificate>(z))}};
    }
    return kExitOk;
}

int run_density(const ProblemFile& p, json& report) {
    const SubgroupSpec& h = require_h(p);
    if (!p.trace) throw ParseError("/trace", "density requires a trace");
    if (static_cast<int>(p.trace->size()) != h.n) throw ParseError("/trace", "trace length differs from ambient_n");
    TracePoint tau{*p.trace};
    std::vector<Scalar> values;
    values.reserve(h.gens.size());
    for (const auto& g : h.gens) values.push_back(tau.value_at(g));
    LineGroupClass cls = classify_line_group(values);
    report["values"] = scalar_vector_to_json(values);
    switch (cls.kind) {
        case LineKind::Zero: report["classification"] = "Zero"; break;
        case LineKind::Discrete:
            report["classification"] = "Discrete";
            report["delta"] = scalar_to_json(*cls.delta);
            report["bezout"] = int_vector_to_json(cls.bezout);
            break;
        case LineKind::Dense: report["classification"] = "Dense"; break;
    }
    return kExitOk;
}

int run_property_a(const ProblemFile& p, json& report) {
    const SubgroupSpec& h = require_h(p);
    PropertyAResult r = property_a(h);
    report["holds"] = r.holds;
    if (r.witness) report["witness_m"] = int_vector_to_json(*r.witness);
    return r.holds ? kExitOk : kExitFails;
}

int run_gordan(const ProblemFile& p, json& report) {
    if (!p.matrix) throw ParseError("/matrix", "gordan requires a matrix");
    GordanResult r = gordan(*p.matrix);
    if (!verify_gordan(*p.matrix, r)) throw InternalError("gordan certificate failed exact verification");
    if (r.y) {
        report["alternative"] = "i";
        report["y"] = scalar_vector_to_json(*r.y);
    } else {
        report["alternative"] = "ii";
        report["x"] = int_vector_to_json(*r.x);
    }
    return kExitOk;
}

int run_farkas(const ProblemFile& p, json& report) {
    if (!p.matrix) throw ParseError("/matrix", "farkas requires a matrix");
    if (!p.b) throw ParseError("/b", "farkas requires the vector b");
    if (static_cast<int>(p.b->size()) != p.matrix->cols())
        throw ParseError("/b", "b length differs from the matrix column count");
    FarkasResult r = farkas(*p.matrix, *p.b);
    if (!verify_farkas(*p.matrix, *p.b, r)) throw InternalError("farkas certificate failed exact verification");
    if (r.y) {
        report["alternative"] = "i";
        report["y"] = scalar_vector_to_json(*r.y);
    } else {
        report["alternative"] = "ii";
        report["x"] = scalar_vector_to_json(*r.x);
    }
    return kExitOk;
}

int run_unperforated(const ProblemFile& p, const Options& opt, json& report) {
    OrderedGroupSpec g = build_ordered_group(p);
    if (!p.h_in_g) throw ParseError("/H_in_G", "unperforated requires H_in_G");
    SubgroupInG h{*p.h_in_g};
    PurityResult purity = check_pure(g, h);
    report["torsion_free"] = purity.torsion_free;
    if (!purity.torsion_free) {
        report["torsion"] = json{{"k", purity.torsion->k.get_str()},
                                 {"g_combo", int_vector_to_json(purity.torsion->g_combo)},
                                 {"g", scalar_vector_to_json(purity.torsion->g_coords)}};
        throw NotPure("G/H has torsion; unperforation criterion does not apply");
    }
    UnperforationResult r = unperforation_verdict(g, h, opt.assert_convex);
    report["convexity"] = r.convexity == ConvexityVerdict::ConvexByTrivialIntersection
                              ? "ConvexByTrivialIntersection"
                              : "AssertedByCaller";
    report["verdict"] = r.unperforated ? "Unperforated" : "Perforated";
    report["decision"] = json{{"verdict", r.decision.verdict == Verdict::HoldsB ? "HoldsB" : "FailsB"},
                              {"weighted_reduction", r.decision.weighted_reduction}};
    if (r.decision.positivity) report["certificate"] = positivity_to_json(*r.decision.positivity);
    if (r.decision.certificate) report["certificate"] = failure_certificate_to_json(*r.decision.certificate);
    if (r.instance) {
        report["perforation_instance"] = json{{"g_combo", int_vector_to_json(r.instance->g_combo)},
                                              {"m", r.instance->m.get_str()},
                                              {"shift_k", r.instance->positive_shift_k.get_str()},
                                              {"zero_case", r.instance->zero_case}};
    }
    return r.unperforated ? kExitOk : kExitFails;
}

int run_refinable(const ProblemFile& p, json& report) {
    OrderedGroupSpec g = build_ordered_group(p);
    if (!p.trace) throw ParseError("/trace", "refinable requires a trace");
    if (static_cast<int>(p.trace->size()) != g.g.n) throw ParseError("/trace", "trace length differs from ambient_n");
    RefinabilityResult r = critical_refinable(g, *p.trace);
    report["verdict"] = r.refinable ? "Refinable" : "NotRefinable";
    if (!r.refinable) {
        report["kernel_generator"] = json{{"combo", int_vector_to_json(*r.kernel_combo)},
                                          {"element", scalar_vector_to_json(*r.kernel_element)}};
    }
    return r.refinable ? kExitOk : kExitFails;
}

int run_verify_cert(const ProblemFile& p, json& report) {
    const SubgroupSpec& h = require_h(p);
    if (!p.certificate) throw ParseError("/certificate", "verify-cert requires a certificate");
    const json& c = *p.certificate;
    if (!c.is_object() || !c.contains("type")) throw ParseError("/certificate/type", "missing certificate type");
    std::string type = c["type"].get<std::string>();
    if (type == "failure") {
        FailureCertificate cert = failure_certificate_from_json(c, p.ctx, h.n, "/certificate");
        std::vector<std::vector<Int>> candidates;
        if (p.sweep_radius) {
            long r = *p.sweep_radius;
            double count = 1;
            for (int j = 0; j < h.count(); ++j) count *= 2.0 * r + 1;
            if (count > 2e6) throw ParseError("/sweep_radius", "candidate sweep too large");
            std::vector<long> a(h.count(), -r);
            while (true) {
                std::vector<Int> cand(h.count());
                for (int j = 0; j < h.count(); ++j) cand[j] = Int(a[j]);
                candidates.push_back(std::move(cand));
                int k = h.count() - 1;
                while (k >= 0 && a[k] == r) --k;
                if (k < 0) break;
                a[k] += 1;
                for (int j = k + 1; j < h.count(); ++j) a[j] = -r;
            }
        }
        CertificateCheck chk = verify_failure_certificate(h, p.unit, cert, candidates, p.m.value_or(Int(2)));
        report["valid"] = chk.valid;
        if (!chk.valid) report["reason"] = chk.reason;
        if (p.sweep_radius) report["swept_candidates"] = static_cast<long>(candidates.size());
        return chk.valid ? kExitOk : kExitFails;
    }
    if (type == "positivity") {
        PositivityCertificate cert = positivity_certificate_from_json(c, p.ctx, "/certificate");
        bool valid = static_cast<int>(cert.combo.size()) == h.count();
        if (valid) {
            std::vector<Scalar> v = h.element(cert.combo);
            valid = v == cert.element && cert.margin.sign() > 0;
            for (std::size_t i = 0; i < v.size() && valid; ++i) valid = (v[i] - cert.margin).sign() >= 0;
        }
        report["valid"] = valid;
        if (!valid) report["reason"] = "positivity certificate does not verify";
        return valid ? kExitOk : kExitFails;
    }
    throw ParseError("/certificate/type", "unknown certificate type: " + type);
}

void emit(const Options& opt, const json& report) {
    std::string text = report.dump(2) + "\n";
    if (opt.output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(opt.output);
        if (!out) throw InputError("cannot open output file: " + opt.output);
        out << text;
    }
}

int run(const Options& opt) {
    json report{{"command", opt.command}};
    auto started = std::chrono::steady_clock::now();
    int code = kExitInput;
    try {
        std::ifstream in(opt.file);
        if (!in) throw InputError("cannot open problem file: " + opt.file);
        json doc = json::parse(in, nullptr, true, true);
        ProblemFile p = parse_problem(doc);
        if (opt.command == "decide") code = run_decide(p, report);
        else if (opt.command == "witness") code = run_witness(p, report);
        else if (opt.command == "face") code = run_face(p, report);
        else if (opt.command == "density") code = run_density(p, report);
        else if (opt.command == "property-a") code = run_property_a(p, report);
        else if (opt.command == "gordan") code = run_gordan(p, report);
        else if (opt.command == "farkas") code = run_farkas(p, report);
        else if (opt.command == "unperforated") code = run_unperforated(p, opt, report);
        else if (opt.command == "refinable") code = run_refinable(p, report);
        else if (opt.command == "verify-cert") code = run_verify_cert(p, report);
        else throw InputError("unknown command: " + opt.command);
    } catch (const json::exception& e) {
        report["error"] = json{{"kind", "json"}, {"message", e.what()}};
        code = kExitInput;
    } catch (const ParseError& e) {
        report["error"] = json{{"kind", "input"}, {"pointer", e.pointer}, {"message", e.what()}};
        code = kExitInput;
    } catch (const InputError& e) {
        report["error"] = json{{"kind", "input"}, {"message", e.what()}};
        code = kExitInput;
    } catch (const Error& e) {
        report["error"] = json{{"kind", "internal"}, {"message", e.what()}};
        code = kExitInput;
    }
    report["exit_code"] = code;
    if (opt.timing) {
        auto elapsed =
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started);
        report["timing_ms"] = elapsed.count();
    }
    emit(opt, report);
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact decision engine for one-sided approximation in ordered groups"};
    app.require_subcommand(1);
    Options opt;
    app.add_option("--threads", opt.threads, "worker threads for independent support LPs")->default_val(1);
    app.add_flag("--trace-steps", opt.trace_steps, "dump LP pivot steps to stderr");
    app.add_flag("--timing", opt.timing, "include timing_ms in the report (breaks byte determinism)");
    app.add_option("-o,--output", opt.output, "write the JSON report to a file instead of stdout");
    for (const char* name : {"decide", "witness", "face", "density", "property-a", "gordan", "farkas",
                             "unperforated", "refinable", "verify-cert"}) {
        auto* sub = app.add_subcommand(name);
        sub->fallthrough();
        sub->add_option("file", opt.file, "problem file (JSON)")->required();
        if (std::string(name) == "unperforated")
            sub->add_flag("--assert-convex", opt.assert_convex, "assert convexity of H in G");
        sub->callback([&opt, name]() { opt.command = name; });
    }
    CLI11_PARSE(app, argc, argv);
    onesided::face_lp_threads() = opt.threads;
    if (opt.trace_steps) onesided::simplex_trace() = &std::cerr;
    return run(opt);
}
