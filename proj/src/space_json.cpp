#include "bwangle/space_json.hpp"

#include <cmath>
#include <limits>

namespace bwangle {

using nlohmann::json;

double extended_real_from_json(const json& j) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "inf" || s == "+inf" || s == "infinity")
            return std::numeric_limits<double>::infinity();
        if (s == "-inf" || s == "-infinity") return -std::numeric_limits<double>::infinity();
        throw DescriptorError("unrecognized extended real: " + s);
    }
    if (!j.is_number()) throw DescriptorError("extended real must be a number or \"inf\"/\"-inf\"");
    return j.get<double>();
}

static json extended_real_to_json(double v) {
    if (std::isinf(v)) return json(v > 0 ? "inf" : "-inf");
    return json(v);
}

SpaceDescriptor space_from_json(const json& j) {
    if (!j.is_object() || !j.contains("family"))
        throw DescriptorError("space descriptor must be an object with a \"family\" key");
    const std::string family = j.at("family").get<std::string>();
    if (family == "hoelder") {
        const int dim = j.value("dimension", 2);
        return SpaceDescriptor::hoelder(extended_real_from_json(j.at("p")), dim);
    }
    if (family == "hexagon") return SpaceDescriptor::hexagon(j.at("r").get<double>());
    if (family == "polygon") {
        std::vector<Vector2> verts;
        for (const auto& v : j.at("vertices"))
            verts.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
        return SpaceDescriptor::polygon(std::move(verts));
    }
    if (family == "radial_table") {
        std::vector<RadialSample> samples, overrides;
        for (const auto& s : j.at("samples"))
            samples.push_back({s.at(0).get<double>(), s.at(1).get<double>()});
        if (j.contains("overrides"))
            for (const auto& s : j.at("overrides"))
                overrides.push_back({s.at(0).get<double>(), s.at(1).get<double>()});
        return SpaceDescriptor::radial_table(std::move(samples), std::move(overrides));
    }
    if (family == "product")
        return SpaceDescriptor::product(space_from_json(j.at("left")),
                                        space_from_json(j.at("right")),
                                        extended_real_from_json(j.at("p")));
    if (family == "pathological_a") return SpaceDescriptor::pathological_a();
    if (family == "pathological_b") return SpaceDescriptor::pathological_b();
    if (family == "pathological_c") return SpaceDescriptor::pathological_c();
    throw DescriptorError("unknown family: " + family);
}

json space_to_json(const SpaceDescriptor& s) {
    json j;
    j["dimension"] = s.dimension;
    switch (s.family) {
        case Family::Hoelder:
            j["family"] = "hoelder";
            j["p"] = extended_real_to_json(s.p);
            break;
        case Family::Hexagon:
            j["family"] = "hexagon";
            j["r"] = s.r;
            break;
        case Family::Polygon: {
            j["family"] = "polygon";
            json verts = json::array();
            for (const Vector2& v : s.vertices) verts.push_back({v.x(), v.y()});
            j["vertices"] = verts;
            break;
        }
        case Family::RadialTable: {
            j["family"] = "radial_table";
            json samples = json::array(), overrides = json::array();
            for (const RadialSample& rs : s.samples) samples.push_back({rs.theta, rs.radius});
            for (const RadialSample& rs : s.overrides) overrides.push_back({rs.theta, rs.radius});
            j["samples"] = samples;
            if (!overrides.empty()) j["overrides"] = overrides;
            break;
        }
        case Family::Product:
            j["family"] = "product";
            j["p"] = extended_real_to_json(s.p);
            j["left"] = space_to_json(*s.left);
            j["right"] = space_to_json(*s.right);
            break;
        case Family::PathologicalA: j["family"] = "pathological_a"; break;
        case Family::PathologicalB: j["family"] = "pathological_b"; break;
        case Family::PathologicalC: j["family"] = "pathological_c"; break;
    }
    j["positive_definite"] = s.positive_definite;
    j["continuous_weight"] = s.continuous_weight;
    return j;
}

}  // namespace bwangle
