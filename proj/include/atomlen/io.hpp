#pragma once

#include "affine_classical.hpp"
#include "cores_abaci.hpp"
#include "finite_weyl.hpp"
#include "quadratic_forms.hpp"
#include "sumsets.hpp"

#include <json.hpp>

namespace atomlen {

using nlohmann::json;

// integers stay integers, half-integers become decimals
inline json rational_json(const Rational& r) {
    if (r.denominator() == 1) return r.numerator();
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

inline json to_json(const UniversalityReport& r) {
    json j;
    j["form"] = r.form;
    j["domain"] = r.domain;
    j["n"] = r.n;
    j["N"] = rational_json(r.max_k);
    j["radius"] = r.radius;
    j["half_grid"] = r.half_grid;
    if (!r.note.empty()) j["note"] = r.note;
    j["entries"] = json::array();
    for (const auto& e : r.entries) {
        json x;
        x["k"] = rational_json(e.k);
        x["status"] = status_name(e.status);
        if (e.status == Status::Witness) x["witness"] = e.witness;
        if (e.status == Status::ModularObstruction) {
            x["modulus"] = e.modulus;
            x["class"] = e.residue;
        }
        if (e.status == Status::NotFoundWithinRadius) x["radius"] = r.radius;
        j["entries"].push_back(x);
    }
    j["summary"] = {{"witness", r.count(Status::Witness)},
                    {"not_found", r.count(Status::NotFoundWithinRadius)},
                    {"obstructed", r.count(Status::ModularObstruction)}};
    return j;
}

inline std::string to_text(const UniversalityReport& r) {
    std::string s = "# form=" + r.form + " domain=" + r.domain + " n=" + std::to_string(r.n) +
                    " N=" + to_string(r.max_k) + " radius=" + std::to_string(r.radius) + "\n";
    if (!r.note.empty()) s += "# " + r.note + "\n";
    for (const auto& e : r.entries) {
        s += to_string(e.k) + "\t" + status_name(e.status);
        if (e.status == Status::Witness) s += "\t(" + to_csv(e.witness) + ")";
        if (e.status == Status::ModularObstruction)
            s += "\tmod " + std::to_string(e.modulus) + " class " + std::to_string(e.residue);
        if (e.status == Status::NotFoundWithinRadius) s += "\tR=" + std::to_string(r.radius);
        s += "\n";
    }
    s += "# witness=" + std::to_string(r.count(Status::Witness)) +
         " not_found=" + std::to_string(r.count(Status::NotFoundWithinRadius)) +
         " obstructed=" + std::to_string(r.count(Status::ModularObstruction)) + "\n";
    return s;
}

inline json to_json(const SumsetCertificate& c) {
    return {{"family", family_name(c.family)}, {"n", c.n},           {"modulus", c.modulus},
            {"equal", c.equal},               {"expected_size", c.expected_size},
            {"found_size", c.found_size},     {"missing", c.missing}};
}

inline json to_json(const SaturationResult& r) {
    return {{"type", std::string(1, series_char(r.type.series))},
            {"n", r.type.n},
            {"ell", r.ell},
            {"b", r.b},
            {"image_min", r.image_min},
            {"image_max", r.image_max},
            {"is_interval", r.is_interval},
            {"predicted_interval", r.predicted},
            {"missing", r.missing}};
}

inline json to_json(const ThresholdResult& r) {
    return {{"type", affine_name(r.type)}, {"n0", r.n0}, {"check_range", r.check_range}, {"monotone", r.monotone}};
}

} // namespace atomlen
