#include "pmc/io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace pmc::io {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& what) { throw ValidationError("io: " + what); }

const json& need(const json& j, const char* key, const char* where) {
    if (!j.is_object() || !j.contains(key)) {
        fail(std::string(where) + ": missing key \"" + key + "\"");
    }
    return j.at(key);
}

double need_finite(const json& j, const char* where) {
    if (!j.is_number()) fail(std::string(where) + ": expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) fail(std::string(where) + ": non-finite number");
    return v;
}

int need_int(const json& j, const char* where) {
    if (!j.is_number_integer()) fail(std::string(where) + ": expected an integer");
    return j.get<int>();
}

json p_to_json(NormP p) {
    switch (p) {
        case NormP::one: return json(1);
        case NormP::two: return json(2);
        case NormP::inf: return json("inf");
    }
    fail("unknown norm");
}

NormP p_from_json(const json& j, const char* where) {
    if (j.is_number_integer()) {
        const int p = j.get<int>();
        if (p == 1) return NormP::one;
        if (p == 2) return NormP::two;
    } else if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "1") return NormP::one;
        if (s == "2") return NormP::two;
        if (s == "inf") return NormP::inf;
    }
    fail(std::string(where) + ": \"p\" must be 1, 2 or \"inf\"");
}

/* Round-trip float formatting for the CSV writers. */
std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

json space_to_json(const Space& space) {
    json j;
    if (space.is_embedded()) {
        const EmbeddedSpace& es = space.embedded();
        j["kind"] = "embedded";
        j["p"] = p_to_json(es.norm());
        json points = json::array();
        for (int i = 0; i < es.size(); ++i) {
            const auto pt = es.point(i);
            points.push_back(json(std::vector<double>(pt.begin(), pt.end())));
        }
        j["points"] = std::move(points);
    } else {
        const FiniteMetricSpace& ms = space.metric();
        j["kind"] = "metric";
        json d = json::array();
        for (int i = 0; i < ms.size(); ++i) {
            json row = json::array();
            for (int k = 0; k < ms.size(); ++k) row.push_back(ms.distance(i, k));
            d.push_back(std::move(row));
        }
        j["d"] = std::move(d);
    }
    return j;
}

SpacePtr space_from_json(const json& j) {
    const json& kind = need(j, "kind", "space");
    if (!kind.is_string()) fail("space: \"kind\" must be a string");
    const std::string k = kind.get<std::string>();
    if (k == "embedded") {
        const NormP p = p_from_json(need(j, "p", "space"), "space");
        const json& pts = need(j, "points", "space");
        if (!pts.is_array() || pts.empty()) fail("space: \"points\" must be a nonempty array");
        std::vector<std::vector<double>> points;
        points.reserve(pts.size());
        for (const json& row : pts) {
            if (!row.is_array() || row.empty()) fail("space: each point must be a nonempty array");
            std::vector<double> coords;
            coords.reserve(row.size());
            for (const json& c : row) coords.push_back(need_finite(c, "space point"));
            points.push_back(std::move(coords));
        }
        const std::size_t dim = points.front().size();
        for (const auto& pt : points) {
            if (pt.size() != dim) fail("space: points have mixed dimensions");
        }
        return make_space(EmbeddedSpace(static_cast<int>(dim), p, points));
    }
    if (k == "metric") {
        const json& dj = need(j, "d", "space");
        if (!dj.is_array() || dj.empty()) fail("space: \"d\" must be a nonempty array");
        std::vector<std::vector<double>> d;
        d.reserve(dj.size());
        for (const json& row : dj) {
            if (!row.is_array()) fail("space: each distance row must be an array");
            std::vector<double> r;
            r.reserve(row.size());
            for (const json& c : row) {
                if (!c.is_number()) fail("space: distance entries must be numbers");
                r.push_back(c.get<double>());
            }
            d.push_back(std::move(r));
        }
        return make_space(FiniteMetricSpace(std::move(d)));
    }
    fail("space: \"kind\" must be \"embedded\" or \"metric\"");
}

json measure_to_json(const AtomicMeasure& mu) {
    json atoms = json::array();
    for (const auto& [index, weight] : mu.atoms()) {
        atoms.push_back(json::array({index, weight}));
    }
    return json{{"atoms", std::move(atoms)}};
}

AtomicMeasure measure_from_json(const json& j) {
    const json& atoms = need(j, "atoms", "measure");
    if (!atoms.is_array()) fail("measure: \"atoms\" must be an array");
    AtomicMeasure mu;
    for (const json& a : atoms) {
        if (!a.is_array() || a.size() != 2) fail("measure: each atom must be [index, weight]");
        const int index = need_int(a.at(0), "measure atom index");
        if (index < 0) fail("measure: negative atom index");
        mu.add(index, need_finite(a.at(1), "measure atom weight"));
    }
    return mu;
}

json current_to_json(const PolyhedralCurrent& t) {
    json edges = json::array();
    for (const auto& e : t.edges()) {
        edges.push_back(json::array({e.tail, e.head, e.weight}));
    }
    return json{{"space", space_to_json(*t.space())}, {"edges", std::move(edges)}};
}

PolyhedralCurrent current_from_json(const json& j) {
    SpacePtr space = space_from_json(need(j, "space", "current"));
    const json& edges = need(j, "edges", "current");
    if (!edges.is_array()) fail("current: \"edges\" must be an array");
    std::vector<EdgeInput> inputs;
    inputs.reserve(edges.size());
    for (const json& e : edges) {
        if (!e.is_array() || e.size() != 3) fail("current: each edge must be [tail, head, weight]");
        inputs.push_back({need_int(e.at(0), "current edge tail"),
                          need_int(e.at(1), "current edge head"),
                          need_finite(e.at(2), "current edge weight")});
    }
    return PolyhedralCurrent(std::move(space), inputs);
}

json grid_to_json(const GridCurrent& g) {
    json field = json::array();
    for (const auto& l : g.field) field.push_back(json::array({l[0], l[1]}));
    return json{{"rect", json::array({g.rect[0], g.rect[1], g.rect[2], g.rect[3]})},
                {"shape", json::array({g.nx, g.ny})},
                {"field", std::move(field)},
                {"p", p_to_json(g.p)}};
}

GridCurrent grid_from_json(const json& j) {
    GridCurrent g;
    const json& rect = need(j, "rect", "grid");
    if (!rect.is_array() || rect.size() != 4) fail("grid: \"rect\" must be [x0, y0, x1, y1]");
    for (int i = 0; i < 4; ++i) g.rect[i] = need_finite(rect.at(i), "grid rect");
    const json& shape = need(j, "shape", "grid");
    if (!shape.is_array() || shape.size() != 2) fail("grid: \"shape\" must be [nx, ny]");
    g.nx = need_int(shape.at(0), "grid shape");
    g.ny = need_int(shape.at(1), "grid shape");
    const json& field = need(j, "field", "grid");
    if (!field.is_array()) fail("grid: \"field\" must be an array");
    g.field.reserve(field.size());
    for (const json& cell : field) {
        if (!cell.is_array() || cell.size() != 2) fail("grid: each field cell must be [lx, ly]");
        g.field.push_back(
            {need_finite(cell.at(0), "grid field"), need_finite(cell.at(1), "grid field")});
    }
    g.p = p_from_json(need(j, "p", "grid"), "grid");
    g.validate();
    return g;
}

json transport_to_json(const Transport& transport) {
    json atoms = json::array();
    for (const auto& atom : transport.atoms()) {
        atoms.push_back(json::array({atom.weight, json(atom.path.vertices)}));
    }
    return json{{"atoms", std::move(atoms)}};
}

Transport transport_from_json(const json& j) {
    const json& atoms = need(j, "atoms", "transport");
    if (!atoms.is_array()) fail("transport: \"atoms\" must be an array");
    std::vector<TransportAtom> parsed;
    parsed.reserve(atoms.size());
    for (const json& a : atoms) {
        if (!a.is_array() || a.size() != 2) {
            fail("transport: each atom must be [weight, [vertices]]");
        }
        const double weight = need_finite(a.at(0), "transport atom weight");
        const json& verts = a.at(1);
        if (!verts.is_array() || verts.empty()) {
            fail("transport: atom path must be a nonempty vertex array");
        }
        std::vector<int> vertices;
        vertices.reserve(verts.size());
        for (const json& v : verts) vertices.push_back(need_int(v, "transport path vertex"));
        parsed.push_back({weight, Path(std::move(vertices))});
    }
    return Transport(std::move(parsed));
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open \"" + path + "\" for reading");
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded()) fail("\"" + path + "\" is not valid JSON");
    return j;
}

void save_text(const std::string& path, const std::string& content) {
    const std::string temp = path + ".tmp";
    {
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        if (!out) fail("cannot open \"" + temp + "\" for writing");
        out << content;
        out.flush();
        if (!out) {
            std::remove(temp.c_str());
            fail("short write to \"" + temp + "\"");
        }
    }
    if (std::rename(temp.c_str(), path.c_str()) != 0) {
        const int err = errno;
        std::remove(temp.c_str());
        fail("cannot rename \"" + temp + "\" to \"" + path + "\": " + std::strerror(err));
    }
}

void save_json(const std::string& path, const json& j) { save_text(path, j.dump(2) + "\n"); }

std::string convergence_csv(std::span<const ConvergenceRow> rows) {
    std::ostringstream out;
    out << "nu,mass_err,boundary_flat_gap,correction_mass\n";
    for (const auto& r : rows) {
        out << r.nu << ',' << fmt(r.mass_err) << ',' << fmt(r.boundary_flat_gap) << ','
            << fmt(r.correction_mass) << '\n';
    }
    return out.str();
}

std::string spiral_csv(std::span<const SpiralRow> rows) {
    std::ostringstream out;
    out << "nu,eta_mass,boundary_tv,max_form_err\n";
    for (const auto& r : rows) {
        out << r.nu << ',' << fmt(r.eta_mass) << ',' << fmt(r.boundary_tv) << ','
            << fmt(r.form_error) << '\n';
    }
    return out.str();
}

}  // namespace pmc::io
