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

#ifndef ONESIDED_IO_HPP
#define ONESIDED_IO_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "onesided/ordered.hpp"

namespace onesided {

using json = nlohmann::ordered_json;

/// Input rejection with a JSON-pointer path to the offending element.
struct ParseError : InputError {
    ParseError(const std::string& path, const std::string& what) : InputError(path + ": " + what), pointer(path) {}
    std::string pointer;
};

namespace io_detail {

inline Rat parse_rat_at(const json& j, const std::string& path) {
    if (j.is_string()) {
        try {
            return parse_rat(j.get<std::string>());
        } catch (const InputError& e) {
            throw ParseError(path, e.what());
        }
    }
    if (j.is_number_integer()) return Rat(j.get<long>());
    throw ParseError(path, "expected a rational string \"p/q\" or an integer");
}

inline Int parse_int_at(const json& j, const std::string& path) {
    if (j.is_number_integer()) return Int(j.get<long>());
    if (j.is_string()) {
        Int v;
        if (mpz_set_str(v.get_mpz_t(), j.get<std::string>().c_str(), 10) != 0)
            throw ParseError(path, "expected an integer");
        return v;
    }
    throw ParseError(path, "expected an integer");
}

inline Scalar parse_scalar_at(const json& j, const Ctx& ctx, const std::string& path) {
    if (j.is_string() || j.is_number_integer()) return Scalar(ctx, parse_rat_at(j, path));
    if (j.is_array()) {
        if (static_cast<int>(j.size()) > ctx->degree())
            throw ParseError(path, "coefficient vector longer than the field degree");
        std::vector<Rat> coeffs;
        coeffs.reserve(j.size());
        for (std::size_t k = 0; k < j.size(); ++k)
            coeffs.push_back(parse_rat_at(j[k], path + "/" + std::to_string(k)));
        return Scalar(ctx, std::move(coeffs));
    }
    if (j.is_object() && j.contains("coeffs")) return parse_scalar_at(j["coeffs"], ctx, path + "/coeffs");
    throw ParseError(path, "expected a rational string or a coefficient vector");
}

inline std::vector<Scalar> parse_scalar_vector(const json& j, const Ctx& ctx, const std::string& path) {
    if (!j.is_array()) throw ParseError(path, "expected an array");
    std::vector<Scalar> v;
    v.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) v.push_back(parse_scalar_at(j[i], ctx, path + "/" + std::to_string(i)));
    return v;
}

inline std::vector<Int> parse_int_vector(const json& j, const std::string& path) {
    if (!j.is_array()) throw ParseError(path, "expected an array of integers");
    std::vector<Int> v;
    v.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) v.push_back(parse_int_at(j[i], path + "/" + std::to_string(i)));
    return v;
}

inline std::vector<std::vector<Scalar>> parse_scalar_matrix(const json& j, const Ctx& ctx, const std::string& path,
                                                            int expect_cols) {
    if (!j.is_array()) throw ParseError(path, "expected an array of rows");
    std::vector<std::vector<Scalar>> rows;
    rows.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        auto row = parse_scalar_vector(j[i], ctx, path + "/" + std::to_string(i));
        if (expect_cols >= 0 && static_cast<int>(row.size()) != expect_cols)
            throw ParseError(path + "/" + std::to_string(i), "row length differs from ambient_n");
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace io_detail

/// Parsed problem file: field context, ambient data, and the per-command
/// payload sections.
struct ProblemFile {
    Ctx ctx;
    int ambient_n = 0;
    std::vector<Scalar> unit;
    std::optional<SubgroupSpec> generators_h;
    std::optional<SubgroupSpec> generators_g;
    std::optional<IntMatrix> h_in_g;
    std::optional<std::vector<Int>> unit_in_g;
    std::optional<std::vector<Scalar>> trace;
    std::optional<std::vector<Int>> h_combo;
    std::optional<Int> m;
    std::optional<Rat> epsilon;
    std::optional<long> budget;
    std::optional<Matrix> matrix;
    std::optional<std::vector<Scalar>> b;
    std::optional<json> certificate;
    std::optional<long> sweep_radius;
    GroupOrdering ordering = GroupOrdering::Strict;
};

inline ProblemFile parse_problem(const json& j) {
    using namespace io_detail;
    if (!j.is_object()) throw ParseError("", "problem file must be a JSON object");
    ProblemFile p;
    if (j.contains("field")) {
        const json& f = j["field"];
        if (!f.is_object() || !f.contains("min_poly") || !f.contains("interval"))
            throw ParseError("/field", "expected {min_poly, interval}");
        std::vector<Rat> coeffs;
        const json& mp = f["min_poly"];
        if (!mp.is_array() || mp.empty()) throw ParseError("/field/min_poly", "expected ascending coefficients");
        for (std::size_t k = 0; k < mp.size(); ++k)
            coeffs.push_back(parse_rat_at(mp[k], "/field/min_poly/" + std::to_string(k)));
        const json& iv = f["interval"];
        if (!iv.is_array() || iv.size() != 2) throw ParseError("/field/interval", "expected [lo, hi]");
        Rat lo = parse_rat_at(iv[0], "/field/interval/0");
        Rat hi = parse_rat_at(iv[1], "/field/interval/1");
        try {
            p.ctx = FieldContext::make(QPoly(std::move(coeffs)), lo, hi);
        } catch (const InputError& e) {
            throw ParseError("/field", e.what());
        }
    } else {
        p.ctx = FieldContext::rational();
    }
    if (!j.contains("ambient_n") || !j["ambient_n"].is_number_integer())
        throw ParseError("/ambient_n", "expected a positive integer");
    p.ambient_n = j["ambient_n"].get<int>();
    if (p.ambient_n < 1) throw ParseError("/ambient_n", "expected a positive integer");

    if (j.contains("unit")) p.unit = parse_scalar_vector(j["unit"], p.ctx, "/unit");
    else p.unit = ones_unit(p.ctx, p.ambient_n);
    if (static_cast<int>(p.unit.size()) != p.ambient_n) throw ParseError("/unit", "unit length differs from ambient_n");

    if (j.contains("generators_H"))
        p.generators_h =
            SubgroupSpec::make(p.ctx, p.ambient_n, parse_scalar_matrix(j["generators_H"], p.ctx, "/generators_H", p.ambient_n));
    if (j.contains("generators_G"))
        p.generators_g =
            SubgroupSpec::make(p.ctx, p.ambient_n, parse_scalar_matrix(j["generators_G"], p.ctx, "/generators_G", p.ambient_n));
    if (j.contains("H_in_G")) {
        const json& hg = j["H_in_G"];
        if (!hg.is_array()) throw ParseError("/H_in_G", "expected an array of integer rows");
        if (!p.generators_g) throw ParseError("/H_in_G", "H_in_G requires generators_G");
        int t = p.generators_g->count();
        std::vector<std::vector<Int>> rows;
        for (std::size_t i = 0; i < hg.size(); ++i) {
            auto row = parse_int_vector(hg[i], "/H_in_G/" + std::to_string(i));
            if (static_cast<int>(row.size()) != t)
                throw ParseError("/H_in_G/" + std::to_string(i), "row length differs from the generator count of G");
            rows.push_back(std::move(row));
        }
        p.h_in_g = IntMatrix::from_rows(rows, t);
    }
    if (j.contains("unit_in_G")) p.unit_in_g = parse_int_vector(j["unit_in_G"], "/unit_in_G");
    if (j.contains("trace")) p.trace = parse_scalar_vector(j["trace"], p.ctx, "/trace");
    if (j.contains("h")) p.h_combo = parse_int_vector(j["h"], "/h");
    if (j.contains("m")) p.m = parse_int_at(j["m"], "/m");
    if (j.contains("epsilon")) p.epsilon = parse_rat_at(j["epsilon"], "/epsilon");
    if (j.contains("budget")) {
        if (!j["budget"].is_number_integer()) throw ParseError("/budget", "expected an integer");
        p.budget = j["budget"].get<long>();
    }
    if (j.contains("matrix")) {
        auto rows = parse_scalar_matrix(j["matrix"], p.ctx, "/matrix", -1);
        if (rows.empty()) throw ParseError("/matrix", "expected at least one row");
        int cols = static_cast<int>(rows.front().size());
        for (std::size_t i = 1; i < rows.size(); ++i)
            if (static_cast<int>(rows[i].size()) != cols)
                throw ParseError("/matrix/" + std::to_string(i), "ragged matrix");
        p.matrix = Matrix::from_rows(p.ctx, rows, cols);
    }
    if (j.contains("b")) p.b = parse_scalar_vector(j["b"], p.ctx, "/b");
    if (j.contains("certificate")) p.certificate = j["certificate"];
    if (j.contains("sweep_radius")) {
        if (!j["sweep_radius"].is_number_integer()) throw ParseError("/sweep_radius", "expected an integer");
        p.sweep_radius = j["sweep_radius"].get<long>();
    }
    if (j.contains("ordering")) {
        std::string o = j["ordering"].get<std::string>();
        if (o == "strict") p.ordering = GroupOrdering::Strict;
        else if (o == "coordinatewise") p.ordering = GroupOrdering::Coordinatewise;
        else throw ParseError("/ordering", "expected \"strict\" or \"coordinatewise\"");
    }
    return p;
}

// ---------------------------------------------------------------------------
// Report rendering. Exact values travel as coefficient vectors; the decimal
// field is a 30-digit informational rendering.
// ---------------------------------------------------------------------------

inline json scalar_to_json(const Scalar& s) {
    json coeffs = json::array();
    for (const Rat& c : s.coeffs()) coeffs.push_back(rat_to_string(c));
    return json{{"coeffs", coeffs}, {"decimal", s.decimal(30)}};
}

inline json scalar_vector_to_json(const std::vector<Scalar>& v) {
    json a = json::array();
    for (const Scalar& s : v) a.push_back(scalar_to_json(s));
    return a;
}

inline json int_vector_to_json(const std::vector<Int>& v) {
    json a = json::array();
    for (const Int& x : v) a.push_back(x.get_str());
    return a;
}

inline json trace_to_json(const TracePoint& t) { return scalar_vector_to_json(t.coords); }

inline json positivity_to_json(const PositivityCertificate& c) {
    return json{{"type", "positivity"},
                {"combo", int_vector_to_json(c.combo)},
                {"element", scalar_vector_to_json(c.element)},
                {"margin", scalar_to_json(c.margin)}};
}

inline json failure_certificate_to_json(const FailureCertificate& c) {
    return json{{"type", "failure"},
                {"h_combo", int_vector_to_json(c.h_combo)},
                {"h", scalar_vector_to_json(c.h)},
                {"tau1", trace_to_json(c.tau1)},
                {"tau2", trace_to_json(c.tau2)},
                {"lambda", scalar_to_json(c.lambda)},
                {"delta", scalar_to_json(c.delta)},
                {"eps0", scalar_to_json(c.eps0)}};
}

/// Face support rendered with 1-based coordinate indices.
inline json face_to_json(const FaceDescriptor& f) {
    json support = json::array();
    for (int i : f.support) support.push_back(i + 1);
    json out{{"support", support}};
    if (f.interior_point) out["nu"] = trace_to_json(*f.interior_point);
    return out;
}

inline FailureCertificate failure_certificate_from_json(const json& j, const Ctx& ctx, int n,
                                                        const std::string& path) {
    using namespace io_detail;
    FailureCertificate c;
    if (!j.is_object()) throw ParseError(path, "expected a certificate object");
    for (const char* key : {"h_combo", "h", "tau1", "tau2", "lambda", "delta", "eps0"})
        if (!j.contains(key)) throw ParseError(path, std::string("missing certificate field ") + key);
    c.h_combo = parse_int_vector(j["h_combo"], path + "/h_combo");
    c.h = parse_scalar_vector(j["h"], ctx, path + "/h");
    c.tau1 = TracePoint{parse_scalar_vector(j["tau1"], ctx, path + "/tau1")};
    c.tau2 = TracePoint{parse_scalar_vector(j["tau2"], ctx, path + "/tau2")};
    c.lambda = parse_scalar_at(j["lambda"], ctx, path + "/lambda");
    c.delta = parse_scalar_at(j["delta"], ctx, path + "/delta");
    c.eps0 = parse_scalar_at(j["eps0"], ctx, path + "/eps0");
    if (static_cast<int>(c.h.size()) != n || static_cast<int>(c.tau1.coords.size()) != n ||
        static_cast<int>(c.tau2.coords.size()) != n)
        throw ParseError(path, "certificate dimensions differ from ambient_n");
    return c;
}

inline PositivityCertificate positivity_certificate_from_json(const json& j, const Ctx& ctx,
                                                              const std::string& path) {
    using namespace io_detail;
    PositivityCertificate c;
    for (const char* key : {"combo", "element", "margin"})
        if (!j.contains(key)) throw ParseError(path, std::string("missing certificate field ") + key);
    c.combo = parse_int_vector(j["combo"], path + "/combo");
    c.element = parse_scalar_vector(j["element"], ctx, path + "/element");
    c.margin = parse_scalar_at(j["margin"], ctx, path + "/margin");
    return c;
}

}  // namespace onesided

#endif  // ONESIDED_IO_HPP
