#pragma once

// Iterated function systems of contracting similarities and their attractors.

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fiem/similarity.hpp"

namespace fiem {

/// Separation class of the first-level copies Gamma_1, ..., Gamma_M.
/// hull_disjoint implies disjoint.
enum class Disjointness { disjoint, hull_disjoint, non_disjoint };

std::string_view to_string(Disjointness d);
Disjointness disjointness_from_string(std::string_view s);
inline bool is_disjoint(Disjointness d) { return d != Disjointness::non_disjoint; }

/// Vector index m = (m_1, ..., m_l) with 1-based entries; the empty index is
/// written "0" and denotes the attractor itself.
class VectorIndex {
public:
    VectorIndex() = default;
    explicit VectorIndex(std::vector<int> entries) : entries_(std::move(entries)) {}
    VectorIndex(std::initializer_list<int> entries) : entries_(entries) {}

    std::size_t length() const { return entries_.size(); }
    bool is_root() const { return entries_.empty(); }
    int operator[](std::size_t i) const { return entries_[i]; }
    const std::vector<int>& entries() const { return entries_; }

    VectorIndex child(int m) const;
    /// m_- : drops the last entry (root stays root).
    VectorIndex parent() const;
    VectorIndex concat(const VectorIndex& tail) const;
    bool is_prefix_of(const VectorIndex& other) const;
    /// Number of leading entries shared with `other`.
    std::size_t common_prefix(const VectorIndex& other) const;
    VectorIndex suffix(std::size_t from) const;

    /// "0" for the root, otherwise dash-separated entries, e.g. "1-4".
    std::string to_string() const;
    static VectorIndex parse(std::string_view text);

    auto operator<=>(const VectorIndex&) const = default;
    bool operator==(const VectorIndex&) const = default;

private:
    std::vector<int> entries_;
};

/// Composed map s_m = s_{m_1} o ... o s_{m_l}, its ratio, and the measure of
/// Gamma_m under the attractor's normalisation.
struct SubAttractor {
    Similarity map;
    double rho = 1.0;
    double mu = 1.0;
};

struct AttractorOptions {
    double measure_total = 1.0;
    /// Known diameter; estimated by branch-and-bound when absent.
    std::optional<double> diameter;
    /// Isometries T with T(Gamma) = Gamma. The identity is always added.
    std::vector<Isometry> symmetries;
    Disjointness disjointness = Disjointness::non_disjoint;
    std::string name = "custom";
};

/// Solves sum_m rho_m^d = 1 by bisection. Homogeneous input returns
/// log(M)/log(1/rho) directly.
double hausdorff_dimension(std::span<const double> rhos);

class IFSAttractor {
public:
    IFSAttractor(std::vector<Similarity> maps, int ambient_dim, AttractorOptions options = {});

    const std::vector<Similarity>& maps() const { return maps_; }
    std::size_t size() const { return maps_.size(); }
    /// Map for a 1-based index entry.
    const Similarity& map(int entry) const { return maps_.at(static_cast<std::size_t>(entry - 1)); }
    int ambient_dim() const { return ambient_dim_; }
    double hausdorff_dim() const { return dim_; }
    double measure_total() const { return measure_total_; }
    double diameter() const { return diameter_; }
    bool diameter_is_analytic() const { return diameter_analytic_; }
    const std::vector<Isometry>& symmetry_group() const { return symmetries_; }
    Disjointness disjointness() const { return disjointness_; }
    const std::string& name() const { return name_; }

    bool is_homogeneous(double tol = 1e-14) const;
    double max_rho() const;
    double min_rho() const;
    /// Self-similar measure weights p_m = rho_m^d.
    const std::vector<double>& weights() const { return weights_; }

    /// Centre of mass of the normalised Hausdorff measure on Gamma.
    const Point& barycentre() const { return barycentre_; }
    /// Radius R with Gamma inside the closed ball B(barycentre(), R).
    double bounding_radius() const { return bounding_radius_; }

    SubAttractor subattractor(const VectorIndex& m) const;
    Point barycentre(const VectorIndex& m) const;
    double rho_of(const VectorIndex& m) const;
    double mu_of(const VectorIndex& m) const;
    double diameter_of(const VectorIndex& m) const { return rho_of(m) * diameter_; }

    IFSAttractor with_measure_total(double measure_total) const;
    /// Embeds an attractor in R^2 into R^3 (x, y) -> (x, y, 0).
    IFSAttractor lifted() const;

private:
    void validate_index(const VectorIndex& m) const;

    std::vector<Similarity> maps_;
    int ambient_dim_ = 2;
    double dim_ = 0.0;
    double measure_total_ = 1.0;
    double diameter_ = 0.0;
    bool diameter_analytic_ = false;
    std::vector<Isometry> symmetries_;
    Disjointness disjointness_ = Disjointness::non_disjoint;
    std::string name_;
    std::vector<double> weights_;
    Point barycentre_ = Point::Zero();
    double bounding_radius_ = 0.0;
};

/// Barycentre of Gamma from the fixed-point relation x = sum_m p_m s_m(x).
Point attractor_barycentre(std::span<const Similarity> maps, std::span<const double> weights);

struct DiameterBracket {
    double lo = 0.0;
    double hi = 0.0;
    bool analytic = false;
    double width() const { return hi - lo; }
};

/// Analytic diameter when known, otherwise a rigorous bracket from a
/// branch-and-bound over pairs of cylinder sets.
DiameterBracket diameter_estimate(const IFSAttractor& ifs, double tolerance = 1e-9);

/// Unconditional bracket (ignores any analytic value).
DiameterBracket diameter_bracket(std::span<const Similarity> maps, double tolerance = 1e-9);

}  // namespace fiem
