#include "cryst/io.hpp"

#include <cstdint>
#include <limits>
#include <sstream>

#include "cryst/errors.hpp"

namespace cryst {

namespace {

Json matrix_to_json(const IntMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const Int& v = m(i, j);
            if (v > std::numeric_limits<std::int64_t>::max() ||
                v < std::numeric_limits<std::int64_t>::min())
                throw ParseError("matrix entry exceeds the file format's integer range");
            row.push_back(static_cast<std::int64_t>(v));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

IntMatrix matrix_from_json(const Json& j, std::size_t dim) {
    if (!j.is_array() || j.size() != dim)
        throw ParseError("field 'linear' must be a " + std::to_string(dim) + "-row matrix");
    IntMatrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        const Json& row = j[i];
        if (!row.is_array() || row.size() != dim)
            throw ParseError("row " + std::to_string(i) + " of 'linear' has wrong length");
        for (std::size_t k = 0; k < dim; ++k) {
            if (!row[k].is_number_integer())
                throw ParseError("matrix entries must be integers");
            m(i, k) = Int(row[k].get<std::int64_t>());
        }
    }
    return m;
}

Json translation_to_json(const RatVector& t) {
    Json arr = Json::array();
    for (const Rat& q : t) arr.push_back(rat_to_string(q));
    return arr;
}

RatVector translation_from_json(const Json& j, std::size_t dim) {
    if (!j.is_array() || j.size() != dim)
        throw ParseError("field 'translation' must hold " + std::to_string(dim) + " entries");
    RatVector t(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        if (!j[i].is_string())
            throw ParseError("translation entries must be rational strings like \"1/2\"");
        try {
            t[i] = parse_rational(j[i].get<std::string>());
        } catch (const std::invalid_argument& e) {
            throw ParseError(std::string("translation entry ") + std::to_string(i) + ": " +
                             e.what());
        }
    }
    return t;
}

Json divisors_to_json(const std::vector<Int>& ds) {
    Json arr = Json::array();
    for (const Int& d : ds) arr.push_back(d.str());
    return arr;
}

}  // namespace

Json group_to_json(const CrystGroup& gamma) {
    Json j;
    j["dimension"] = gamma.dim();
    Json gens = Json::array();
    for (const auto& [g, t] : gamma.affine_generators()) {
        Json rec;
        rec["linear"] = matrix_to_json(g);
        rec["translation"] = translation_to_json(t);
        gens.push_back(std::move(rec));
    }
    j["generators"] = std::move(gens);
    return j;
}

CrystGroup group_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("group file must be a JSON object");
    if (!j.contains("dimension") || !j["dimension"].is_number_integer() ||
        j["dimension"].get<std::int64_t>() < 0)
        throw ParseError("missing or invalid field 'dimension'");
    std::size_t dim = j["dimension"].get<std::size_t>();
    if (!j.contains("generators") || !j["generators"].is_array())
        throw ParseError("missing or invalid field 'generators'");
    std::vector<AffineGen> gens;
    std::size_t index = 0;
    for (const Json& rec : j["generators"]) {
        if (!rec.is_object() || !rec.contains("linear") || !rec.contains("translation"))
            throw ParseError("generator " + std::to_string(index) +
                             " must carry 'linear' and 'translation'");
        IntMatrix g = matrix_from_json(rec["linear"], dim);
        if (!g.is_unimodular())
            throw ParseError("generator " + std::to_string(index) +
                             ": linear part is not unimodular");
        gens.emplace_back(std::move(g), translation_from_json(rec["translation"], dim));
        ++index;
    }
    return make_cryst(dim, gens);
}

std::string serialize_group(const CrystGroup& gamma) {
    return group_to_json(gamma).dump(2) + "\n";
}

CrystGroup parse_group(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    return group_from_json(j);
}

Json report_to_json(const AnalysisReport& r) {
    Json j;
    j["dimension"] = r.dim;
    j["point_group_order"] = r.point_group_order.str();
    j["center_trivial"] = r.center_trivial;
    j["h1_invariants"] = divisors_to_json(r.h1_invariants);
    j["normalizer_order"] = r.normalizer_order.str();
    j["normalizer_status"] = to_string(r.normalizer_status);
    j["normalizer_backend"] = r.normalizer_backend;
    j["n_alpha_order"] = r.n_alpha_order.str();
    j["out_order"] = r.out_order.str();
    j["out_trivial"] = r.out_trivial;
    return j;
}

Json iteration_to_json(const IterationResult& res) {
    Json j;
    j["steps_taken"] = res.steps;
    Json steps = Json::array();
    for (const AnalysisReport& r : res.history) steps.push_back(report_to_json(r));
    j["steps"] = std::move(steps);
    j["final_group"] = group_to_json(res.group);
    return j;
}

}  // namespace cryst
