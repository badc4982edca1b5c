#pragma once

// Serialization: regions to and from JSON with exact "p/q" rationals
// (bit-exact round-trip), and OBJ meshes of the member polytopes.

#include "quadmap/geometry.hpp"
#include "quadmap/rational.hpp"

#include "json.hpp"

#include <sstream>
#include <stdexcept>
#include <string>

namespace quadmap {

using json = nlohmann::json;

inline json region_to_json(const Region& r) {
    json members = json::array();
    for (const auto& m : r.members) {
        json halfspaces = json::array();
        for (const auto& h : m.poly.halfspaces) {
            json a = json::array();
            for (const auto& c : h.a) a.push_back(rat_to_string(c));
            halfspaces.push_back({{"a", a}, {"b", rat_to_string(h.b)}});
        }
        members.push_back({{"label", m.label}, {"halfspaces", halfspaces}});
    }
    return {{"label", r.label}, {"members", members}};
}

inline Region region_from_json(const json& j) {
    Region r;
    r.label = j.at("label").get<std::string>();
    for (const auto& jm : j.at("members")) {
        RegionMember m;
        m.label = jm.at("label").get<std::string>();
        int dim = -1;
        for (const auto& jh : jm.at("halfspaces")) {
            HalfSpace h;
            for (const auto& c : jh.at("a"))
                h.a.push_back(rat_from_string(c.get<std::string>()));
            h.b = rat_from_string(jh.at("b").get<std::string>());
            if (dim < 0) dim = static_cast<int>(h.a.size());
            else if (dim != static_cast<int>(h.a.size()))
                throw std::invalid_argument("inconsistent halfspace dimensions");
            m.poly.halfspaces.push_back(std::move(h));
        }
        if (dim > 0) m.poly.dim = dim;
        r.members.push_back(std::move(m));
    }
    return r;
}

// One mesh object per member; vertices from exact enumeration, faces from
// the hull. Vertices are emitted in double precision.
inline std::string region_to_obj(const Region& r) {
    std::ostringstream os;
    os.precision(17);
    size_t base = 1;
    for (const auto& m : r.members) {
        auto verts = vertices(m.poly);
        if (verts.size() < 4) continue;
        os << "o " << m.label << "\n";
        for (const auto& v : verts)
            os << "v " << to_double(v[0]) << " " << to_double(v[1]) << " "
               << to_double(v[2]) << "\n";
        for (const auto& face : hull_faces(m.poly, verts)) {
            os << "f";
            for (size_t i : face) os << " " << base + i;
            os << "\n";
        }
        base += verts.size();
    }
    return os.str();
}

}  // namespace quadmap
