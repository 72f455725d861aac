// JSON (de)serialization of quadratic forms and multi-well energy inputs.
// Form schema: {"dim": 2|3, "coeffs": upper triangle of Q row-major in the
// embedded basis (6 or 21 numbers), "label": string}.
// Wells schema: {"wells": [[u0,u1,u2], ...], "moduli": [m, ...]}.
#pragma once

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "symconv/quadform.hpp"
#include "symconv/smallmat.hpp"

namespace symconv {

class FormParseError : public std::runtime_error {
public:
    explicit FormParseError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {
inline void require(bool ok, const std::string& field, const std::string& what) {
    if (!ok) throw FormParseError("form JSON: field '" + field + "' " + what);
}
}  // namespace detail

using AnyQuadForm = std::variant<QuadForm2, QuadForm3>;

inline AnyQuadForm form_from_json(const nlohmann::json& j) {
    using detail::require;
    require(j.is_object(), "(root)", "must be a JSON object");
    require(j.contains("dim") && j["dim"].is_number_integer(), "dim",
            "is required and must be an integer");
    const int dim = j["dim"].get<int>();
    require(dim == 2 || dim == 3, "dim", "must be 2 or 3");
    const std::size_t want = dim == 2 ? 6 : 21;
    require(j.contains("coeffs") && j["coeffs"].is_array(), "coeffs",
            "is required and must be an array");
    require(j["coeffs"].size() == want, "coeffs",
            "must have " + std::to_string(want) + " entries for dim " + std::to_string(dim));
    std::vector<double> coeffs;
    for (const auto& v : j["coeffs"]) {
        require(v.is_number(), "coeffs", "entries must be numbers");
        coeffs.push_back(v.get<double>());
    }
    std::string label = "form";
    if (j.contains("label")) {
        require(j["label"].is_string(), "label", "must be a string");
        label = j["label"].get<std::string>();
    }
    if (dim == 2) {
        std::array<double, 6> u{};
        std::copy(coeffs.begin(), coeffs.end(), u.begin());
        return quadform_from_coeffs_2d(u, label);
    }
    std::array<double, 21> u{};
    std::copy(coeffs.begin(), coeffs.end(), u.begin());
    return quadform_from_coeffs_3d(u, label);
}

template <int D>
nlohmann::json form_to_json(const QuadForm<D>& f) {
    nlohmann::json j;
    j["dim"] = D;
    j["coeffs"] = upper_triangle(f);
    j["label"] = f.label;
    return j;
}

struct WellSet {
    std::vector<SymMat2> wells;
    std::vector<double> moduli;
};

inline WellSet wells_from_json(const nlohmann::json& j) {
    using detail::require;
    require(j.is_object(), "(root)", "must be a JSON object");
    require(j.contains("wells") && j["wells"].is_array() && !j["wells"].empty(), "wells",
            "is required and must be a nonempty array");
    WellSet ws;
    for (const auto& w : j["wells"]) {
        require(w.is_array() && w.size() == 3, "wells",
                "entries must be arrays of 3 embedded coordinates");
        std::array<double, 3> u{};
        for (int i = 0; i < 3; ++i) {
            require(w[i].is_number(), "wells", "coordinates must be numbers");
            u[i] = w[i].get<double>();
        }
        ws.wells.push_back(SymMat2::from_embedded(u));
    }
    if (j.contains("moduli")) {
        require(j["moduli"].is_array() && j["moduli"].size() == ws.wells.size(), "moduli",
                "must match the number of wells");
        for (const auto& m : j["moduli"]) {
            require(m.is_number(), "moduli", "entries must be numbers");
            ws.moduli.push_back(m.get<double>());
        }
    } else {
        ws.moduli.assign(ws.wells.size(), 1.0);
    }
    return ws;
}

}  // namespace symconv
