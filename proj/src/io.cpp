#include "projcorrect/io.hpp"

#include <fstream>
#include <iostream>
#include <limits>

namespace projcorrect::io {

namespace {

Json integer_json(const BigInt& v) {
    if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
        return Json(v.convert_to<std::int64_t>());
    }
    return Json(v.str());
}

BigInt integer_from_json(const Json& j) {
    if (j.is_number_integer()) {
        return j.is_number_unsigned() ? BigInt(j.get<std::uint64_t>()) : BigInt(j.get<std::int64_t>());
    }
    require(j.is_string(), "expected an integer or a decimal string");
    const auto s = j.get<std::string>();
    require(!s.empty() && s.find_first_not_of("-0123456789") == std::string::npos, "malformed integer '" + s + "'");
    return BigInt(s);
}

template <class T>
T field_of(const Json& j, const char* key) {
    require(j.is_object() && j.contains(key), std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw PreconditionError(std::string("field '") + key + "' has the wrong type");
    }
}

const char* mode_name(CorrectionMode mode) { return mode == CorrectionMode::exact ? "exact" : "sampled"; }

template <class T>
Json optional_json(const std::optional<T>& v) {
    return v ? Json(*v) : Json(nullptr);
}

}  // namespace

Json to_json(const FieldSpec& spec) { return Json{{"p", spec.p}, {"k", spec.k}, {"modulus", spec.modulus}}; }

FieldSpec field_spec_from_json(const Json& j) {
    FieldSpec spec{field_of<int>(j, "p"), field_of<int>(j, "k"), field_of<std::vector<int>>(j, "modulus")};
    spec.validate();
    return spec;
}

Json to_json(const Rational& r) {
    return Json{{"num", integer_json(numerator(r))}, {"den", integer_json(denominator(r))}};
}

Rational rational_from_json(const Json& j) {
    require(j.is_object() && j.contains("num") && j.contains("den"), "rational must be {\"num\", \"den\"}");
    const BigInt den = integer_from_json(j.at("den"));
    require(den != 0, "zero denominator");
    return Rational(integer_from_json(j.at("num")), den);
}

Json to_json(const BoundReport& report) {
    return Json{{"q", report.q},
                {"n", report.n},
                {"eps", to_json(report.eps)},
                {"A", to_json(report.A)},
                {"B", to_json(report.B)},
                {"hyp1_strict", report.hyp1_strict},
                {"hyp1_theorem", report.hyp1_theorem},
                {"hyp2", report.hyp2},
                {"guaranteed_agreement", to_json(report.guaranteed_agreement)},
                {"guarantee_applicable", report.guarantee_applicable()}};
}

Json to_json(const PointMap& f) {
    return Json{{"field", to_json(f.domain().field().spec())},
                {"n_domain", f.domain().dim()},
                {"n_codomain", f.codomain().dim()},
                {"table", std::vector<std::uint32_t>(f.table().begin(), f.table().end())}};
}

PointMap point_map_from_json(const Json& j) {
    const Field field(field_spec_from_json(field_of<Json>(j, "field")));
    const ProjSpace domain(field, field_of<int>(j, "n_domain"));
    const ProjSpace codomain(field, field_of<int>(j, "n_codomain"));
    return PointMap(domain, codomain, field_of<std::vector<std::uint32_t>>(j, "table"));
}

Json to_json(const SemilinearMap& m) {
    Json rows = Json::array();
    for (int r = 0; r < m.size; ++r) {
        Json row = Json::array();
        for (int c = 0; c < m.size; ++c) {
            row.push_back(m.at(r, c).code);
        }
        rows.push_back(std::move(row));
    }
    return Json{{"sigma_exponent", m.sigma.exponent}, {"matrix", std::move(rows)}};
}

SemilinearMap semilinear_from_json(const Json& j, const Field& field) {
    const auto rows = field_of<std::vector<std::vector<std::int64_t>>>(j, "matrix");
    const int size = static_cast<int>(rows.size());
    std::vector<Elem> matrix;
    for (const auto& row : rows) {
        require(static_cast<int>(row.size()) == size, "matrix must be square");
        for (const auto code : row) {
            matrix.push_back(field.from_code(code));
        }
    }
    return make_semilinear(field, Frobenius{field_of<int>(j, "sigma_exponent")}, size, std::move(matrix));
}

Json to_json(const CorrectionOutcome& o) {
    return Json{{"x", o.x},
                {"z", optional_json(o.z)},
                {"candidate", optional_json(o.candidate)},
                {"support", o.support},
                {"quadruples_examined", o.quadruples_examined},
                {"candidates_at_half", o.candidates_at_half}};
}

Json to_json(const CorrectionReport& report, bool include_timing) {
    Json j{{"mode", mode_name(report.mode)}};
    j["eps"] = report.eps ? to_json(*report.eps) : Json(nullptr);
    j["eps_estimate"] = report.eps_estimate ? Json{{"estimate", report.eps_estimate->estimate},
                                                   {"standard_error", report.eps_estimate->standard_error}}
                                            : Json(nullptr);
    j["agreement_with_input"] = to_json(report.agreement_with_input);
    j["uncorrectable_count"] = report.uncorrectable_count;
    j["collision_reverts"] = report.collision_reverts;
    j["guarantee_applicable"] = report.guarantee_applicable;
    j["bound_report"] = to_json(report.bound_report);
    Json points = Json::array();
    for (const auto& o : report.outcomes) {
        points.push_back(to_json(o));
    }
    j["points"] = std::move(points);
    if (include_timing) {
        j["elapsed_seconds"] = report.elapsed_seconds;
    }
    return j;
}

Json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open '" + path + "' for reading");
    }
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw IoError("'" + path + "' is not valid JSON: " + e.what());
    }
}

void write_text(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    out << text;
    out.close();
    if (!out) {
        throw IoError("failed writing '" + path + "'");
    }
}

void write_json(const std::string& path, const Json& j) { write_text(path, j.dump(2) + "\n"); }

}  // namespace projcorrect::io
