#pragma once

// Quasi-uniform meshes of self-similar elements Gamma_m.

#include <iosfwd>
#include <memory>
#include <vector>

#include "fiem/ifs.hpp"

namespace fiem {

/// One attractor or a union of attractors sharing the ambient dimension.
class ScattererUnion {
public:
    ScattererUnion(IFSAttractor part);  // NOLINT: implicit on purpose
    explicit ScattererUnion(std::vector<IFSAttractor> parts);

    const std::vector<IFSAttractor>& parts() const { return parts_; }
    std::size_t size() const { return parts_.size(); }
    const IFSAttractor& part(std::size_t block) const { return parts_.at(block); }
    int ambient_dim() const { return parts_.front().ambient_dim(); }
    double total_measure() const;
    double max_diameter() const;

private:
    std::vector<IFSAttractor> parts_;
};

struct MeshElement {
    VectorIndex index;
    double mu = 0.0;
    Point bary = Point::Zero();
    double diam = 0.0;
    int block = 0;
};

class Mesh {
public:
    Mesh(std::shared_ptr<const ScattererUnion> scatterer, double h, std::vector<MeshElement> elements);

    const std::vector<MeshElement>& elements() const { return elements_; }
    const MeshElement& operator[](std::size_t i) const { return elements_[i]; }
    std::size_t size() const { return elements_.size(); }
    double h() const { return h_; }
    const ScattererUnion& scatterer() const { return *scatterer_; }
    std::shared_ptr<const ScattererUnion> scatterer_ptr() const { return scatterer_; }
    const IFSAttractor& attractor(const MeshElement& e) const { return scatterer_->part(static_cast<std::size_t>(e.block)); }
    int ambient_dim() const { return scatterer_->ambient_dim(); }

    double total_measure() const;
    double max_diam() const;
    double min_diam() const;
    /// max diam / min diam (reported, not bounded).
    double diam_ratio() const { return max_diam() / min_diam(); }

private:
    std::shared_ptr<const ScattererUnion> scatterer_;
    double h_;
    std::vector<MeshElement> elements_;
};

/// Index set L_h: maximal indices with diam(Gamma_m) <= h, per part, in
/// lexicographic order; parts are concatenated with block tags.
Mesh build_mesh(const ScattererUnion& scatterer, double h);

/// All M^level elements of a homogeneous attractor.
Mesh uniform_mesh(const IFSAttractor& ifs, int level);

/// Uniform level-`level` mesh on each part of a union of homogeneous parts.
Mesh uniform_mesh(const ScattererUnion& scatterer, int level);

/// Indices of the subdivision of Gamma_root with diam <= h, lexicographic.
/// Subdivision stops once diam <= h (1 + 1e-12).
std::vector<VectorIndex> subdivide(const IFSAttractor& ifs, const VectorIndex& root, double h);

/// CSV: block,index,mu,diam,x,y[,z]
void write_mesh_csv(const Mesh& mesh, std::ostream& out);

}  // namespace fiem
