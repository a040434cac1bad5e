#include "fiem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace fiem {

namespace {

constexpr double diam_slack = 1e-12;

void subdivide_into(const IFSAttractor& ifs, const VectorIndex& m, double rho, double h, std::vector<VectorIndex>& out) {
    if (rho * ifs.diameter() <= h * (1.0 + diam_slack)) {
        out.push_back(m);
        return;
    }
    for (int i = 1; i <= static_cast<int>(ifs.size()); ++i)
        subdivide_into(ifs, m.child(i), rho * ifs.map(i).rho(), h, out);
}

MeshElement make_element(const IFSAttractor& ifs, const VectorIndex& m, int block) {
    const auto sub = ifs.subattractor(m);
    return {m, sub.mu, sub.map(ifs.barycentre()), sub.rho * ifs.diameter(), block};
}

}  // namespace

ScattererUnion::ScattererUnion(IFSAttractor part) { parts_.push_back(std::move(part)); }

ScattererUnion::ScattererUnion(std::vector<IFSAttractor> parts) : parts_(std::move(parts)) {
    if (parts_.empty()) throw std::invalid_argument("a scatterer needs at least one attractor");
    for (const auto& p : parts_)
        if (p.ambient_dim() != parts_.front().ambient_dim())
            throw std::invalid_argument("all parts of a scatterer must share the ambient dimension");
}

double ScattererUnion::total_measure() const {
    double s = 0.0;
    for (const auto& p : parts_) s += p.measure_total();
    return s;
}

double ScattererUnion::max_diameter() const {
    double d = 0.0;
    for (const auto& p : parts_) d = std::max(d, p.diameter());
    return d;
}

Mesh::Mesh(std::shared_ptr<const ScattererUnion> scatterer, double h, std::vector<MeshElement> elements)
    : scatterer_(std::move(scatterer)), h_(h), elements_(std::move(elements)) {}

double Mesh::total_measure() const {
    double s = 0.0;
    for (const auto& e : elements_) s += e.mu;
    return s;
}

double Mesh::max_diam() const {
    double d = 0.0;
    for (const auto& e : elements_) d = std::max(d, e.diam);
    return d;
}

double Mesh::min_diam() const {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& e : elements_) d = std::min(d, e.diam);
    return d;
}

std::vector<VectorIndex> subdivide(const IFSAttractor& ifs, const VectorIndex& root, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("subdivision width must be positive");
    std::vector<VectorIndex> out;
    subdivide_into(ifs, root, ifs.rho_of(root), h, out);
    return out;
}

Mesh build_mesh(const ScattererUnion& scatterer, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("mesh width h must be positive");
    std::vector<MeshElement> elements;
    for (std::size_t b = 0; b < scatterer.size(); ++b) {
        const auto& ifs = scatterer.part(b);
        if (h > ifs.diameter() * (1.0 + diam_slack))
            throw std::invalid_argument("mesh width h exceeds the diameter of the scatterer");
        for (const auto& m : subdivide(ifs, {}, h)) elements.push_back(make_element(ifs, m, static_cast<int>(b)));
    }
    return Mesh(std::make_shared<const ScattererUnion>(scatterer), h, std::move(elements));
}

Mesh uniform_mesh(const IFSAttractor& ifs, int level) { return uniform_mesh(ScattererUnion(ifs), level); }

Mesh uniform_mesh(const ScattererUnion& scatterer, int level) {
    if (level < 0) throw std::invalid_argument("mesh level must be non-negative");
    double h = 0.0;
    for (const auto& p : scatterer.parts()) {
        if (!p.is_homogeneous()) throw std::invalid_argument("uniform meshes need a homogeneous attractor");
        h = std::max(h, std::pow(p.max_rho(), level) * p.diameter());
    }
    std::vector<MeshElement> elements;
    for (std::size_t b = 0; b < scatterer.size(); ++b) {
        const auto& ifs = scatterer.part(b);
        const int M = static_cast<int>(ifs.size());
        std::vector<int> digits(static_cast<std::size_t>(level), 1);
        const auto total = static_cast<std::size_t>(std::llround(std::pow(M, level)));
        for (std::size_t n = 0; n < total; ++n) {
            elements.push_back(make_element(ifs, VectorIndex(digits), static_cast<int>(b)));
            for (int pos = level - 1; pos >= 0; --pos) {
                auto& d = digits[static_cast<std::size_t>(pos)];
                if (++d <= M) break;
                d = 1;
            }
        }
    }
    return Mesh(std::make_shared<const ScattererUnion>(scatterer), h, std::move(elements));
}

void write_mesh_csv(const Mesh& mesh, std::ostream& out) {
    const bool three = mesh.ambient_dim() == 3;
    out << "block,index,mu,diam,x,y" << (three ? ",z" : "") << '\n';
    out << std::setprecision(17);
    for (const auto& e : mesh.elements()) {
        out << e.block << ',' << e.index.to_string() << ',' << e.mu << ',' << e.diam << ',' << e.bary(0) << ','
            << e.bary(1);
        if (three) out << ',' << e.bary(2);
        out << '\n';
    }
}

}  // namespace fiem
