#include "fiem/io.hpp"

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <stdexcept>

#include "fiem/library.hpp"

namespace fiem {

namespace {

using nlohmann::json;

json matrix_json(const Matrix& m, int n) {
    json rows = json::array();
    for (int i = 0; i < n; ++i) {
        json row = json::array();
        for (int j = 0; j < n; ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return rows;
}

json point_json(const Point& p, int n) {
    json v = json::array();
    for (int i = 0; i < n; ++i) v.push_back(p(i));
    return v;
}

Matrix matrix_from(const json& j, int n) {
    if (!j.is_array() || static_cast<int>(j.size()) != n) throw std::invalid_argument("rotation must be n x n");
    Matrix m = Matrix::Identity();
    for (int i = 0; i < n; ++i) {
        if (!j[static_cast<std::size_t>(i)].is_array() || static_cast<int>(j[static_cast<std::size_t>(i)].size()) != n)
            throw std::invalid_argument("rotation must be n x n");
        for (int c = 0; c < n; ++c) m(i, c) = j[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)].get<double>();
    }
    return m;
}

Point point_from(const json& j, int n) {
    if (!j.is_array() || static_cast<int>(j.size()) != n) throw std::invalid_argument("translation must have n entries");
    Point p = Point::Zero();
    for (int i = 0; i < n; ++i) p(i) = j[static_cast<std::size_t>(i)].get<double>();
    return p;
}

std::uint64_t fnv1a(std::string_view text) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

IFSAttractor library_part(const std::string& name, const json& j) {
    const double rho = j.value("rho", 1.0 / 3.0);
    const bool lift = j.value("lift", false);
    if (name == "cantor_set") return library::cantor_set(rho, lift);
    if (name == "cantor_dust") return library::cantor_dust(rho, j.value("n", 2), lift);
    if (name == "koch_curve") return library::koch_curve(lift);
    if (name == "koch_snowflake") return library::koch_snowflake();
    if (name == "sierpinski_tetrahedron") return library::sierpinski_tetrahedron(j.value("rho", 0.5));
    throw std::invalid_argument("unknown library attractor '" + name + "'");
}

}  // namespace

json attractor_to_json(const IFSAttractor& ifs) {
    const int n = ifs.ambient_dim();
    json j;
    j["name"] = ifs.name();
    j["ambient_dim"] = n;
    j["measure_total"] = ifs.measure_total();
    j["diameter"] = ifs.diameter();
    j["disjointness"] = std::string(to_string(ifs.disjointness()));
    j["maps"] = json::array();
    for (const auto& s : ifs.maps())
        j["maps"].push_back(
            {{"rho", s.rho()}, {"rotation", matrix_json(s.rotation(), n)}, {"translation", point_json(s.translation(), n)}});
    j["symmetries"] = json::array();
    for (const auto& t : ifs.symmetry_group())
        j["symmetries"].push_back({{"rotation", matrix_json(t.rotation(), n)}, {"translation", point_json(t.translation(), n)}});
    return j;
}

IFSAttractor attractor_from_json(const json& j) {
    const int n = j.at("ambient_dim").get<int>();
    if (n != 2 && n != 3) throw std::invalid_argument("ambient_dim must be 2 or 3");
    std::vector<Similarity> maps;
    for (const auto& m : j.at("maps"))
        maps.emplace_back(m.at("rho").get<double>(), matrix_from(m.at("rotation"), n), point_from(m.at("translation"), n));
    AttractorOptions opt;
    opt.measure_total = j.value("measure_total", 1.0);
    if (j.contains("diameter") && !j["diameter"].is_null()) opt.diameter = j["diameter"].get<double>();
    opt.disjointness = disjointness_from_string(j.value("disjointness", std::string("non-disjoint")));
    opt.name = j.value("name", std::string("custom"));
    if (j.contains("symmetries"))
        for (const auto& t : j["symmetries"]) {
            Isometry iso(1.0, matrix_from(t.at("rotation"), n), point_from(t.at("translation"), n));
            if (iso.distance(Isometry::identity()) > 1e-14) opt.symmetries.push_back(iso);
        }
    return IFSAttractor(std::move(maps), n, std::move(opt));
}

std::string attractor_hash(const IFSAttractor& ifs) { return hex(fnv1a(attractor_to_json(ifs).dump())); }

std::string scatterer_hash(const ScattererUnion& s) {
    json parts = json::array();
    for (const auto& p : s.parts()) parts.push_back(attractor_to_json(p));
    return hex(fnv1a(parts.dump()));
}

ScattererUnion scatterer_from_json(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("scatterer must be a JSON object");
    std::vector<IFSAttractor> parts;
    if (j.contains("union")) {
        for (const auto& p : j.at("union")) {
            const auto member = scatterer_from_json(p);
            parts.insert(parts.end(), member.parts().begin(), member.parts().end());
        }
    } else if (j.contains("ifs")) {
        parts.push_back(attractor_from_json(j.at("ifs")));
    } else if (j.contains("library")) {
        const auto name = j.at("library").get<std::string>();
        if (name == "koch_snowflake_boundary")
            parts = library::koch_snowflake_boundary();
        else
            parts.push_back(library_part(name, j));
    } else {
        throw std::invalid_argument("scatterer needs one of 'library', 'ifs' or 'union'");
    }
    if (j.contains("measure_total"))
        for (auto& p : parts) p = p.with_measure_total(j["measure_total"].get<double>());
    return ScattererUnion(std::move(parts));
}

json scatterer_spec_to_json(std::string_view spec) {
    json j;
    const auto colon = spec.find(':');
    j["library"] = std::string(spec.substr(0, colon));
    if (colon == std::string_view::npos) return j;
    std::string_view rest = spec.substr(colon + 1);
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        const auto item = rest.substr(0, comma);
        const auto eq = item.find('=');
        if (eq == std::string_view::npos) throw std::invalid_argument("malformed scatterer parameter '" + std::string(item) + "'");
        const std::string key(item.substr(0, eq));
        const std::string value(item.substr(eq + 1));
        if (value == "true" || value == "false") {
            j[key] = value == "true";
        } else if (key == "n") {
            j[key] = std::stoi(value);
        } else {
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
            if (ec != std::errc() || ptr != value.data() + value.size())
                throw std::invalid_argument("malformed number '" + value + "'");
            j[key] = v;
        }
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
    }
    return j;
}

}  // namespace fiem
