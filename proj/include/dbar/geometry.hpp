#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "dbar/core.hpp"

namespace dbar {

/// A disc or an axis-aligned rectangle in the plane.
class PlanarDomain {
public:
    enum class Kind { Disc, Rectangle };

    static PlanarDomain disc(cplx center, double radius);
    static PlanarDomain rectangle(cplx lo, cplx hi);
    static PlanarDomain unit_disc() { return disc({0.0, 0.0}, 1.0); }

    Kind kind() const noexcept { return kind_; }
    bool is_disc() const noexcept { return kind_ == Kind::Disc; }
    bool is_unit_disc() const noexcept {
        return kind_ == Kind::Disc && center_ == cplx(0.0, 0.0) && radius_ == 1.0;
    }
    cplx center() const noexcept { return center_; }
    double radius() const noexcept { return radius_; }
    cplx lo() const noexcept { return lo_; }
    cplx hi() const noexcept { return hi_; }

    double area() const noexcept;
    double diameter() const noexcept;
    /// Signed distance to the boundary: positive inside, negative outside.
    double distance_to_boundary(cplx z) const noexcept;

    friend bool operator==(const PlanarDomain&, const PlanarDomain&) = default;

private:
    Kind kind_ = Kind::Disc;
    cplx center_{0.0, 0.0};
    double radius_ = 1.0;
    cplx lo_{0.0, 0.0};
    cplx hi_{0.0, 0.0};
};

/// D_1 x ... x D_n with a block structure on the planar factors.
class ProductDomain {
public:
    ProductDomain() = default;
    /// Singleton blocks.
    explicit ProductDomain(std::vector<PlanarDomain> factors);
    ProductDomain(std::vector<PlanarDomain> factors, BlockPartition blocks);

    static ProductDomain polydisc(int n);

    int dimension() const noexcept { return static_cast<int>(factors_.size()); }
    const PlanarDomain& factor(int j) const { return factors_.at(static_cast<std::size_t>(j)); }
    const std::vector<PlanarDomain>& factors() const noexcept { return factors_; }
    const BlockPartition& blocks() const noexcept { return blocks_; }
    bool is_unit_polydisc() const noexcept;
    ProductDomain with_blocks(BlockPartition blocks) const { return {factors_, std::move(blocks)}; }

private:
    std::vector<PlanarDomain> factors_;
    BlockPartition blocks_;
};

struct QuadratureRule {
    enum class Kind { Boundary, Area, SingularArea };

    Kind kind = Kind::Area;
    std::vector<cplx> nodes;
    /// Boundary: complex dζ weights. Area kinds: positive dA weights stored as real parts.
    std::vector<cplx> weights;
    std::optional<cplx> singular_center;

    std::size_t size() const noexcept { return nodes.size(); }
    cplx weight_sum() const;
};

/// Gauss-Legendre nodes and weights on [-1, 1].
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int m);

/// Rule for ∮ g dζ over the positively oriented boundary.
QuadratureRule boundary_quadrature(const PlanarDomain& dom, int m);
/// Rule for ∫ h dA. On discs m_theta sets the number of angles (0 means m).
QuadratureRule area_quadrature(const PlanarDomain& dom, int m, int m_theta = 0);
/// Rule for ∫ h dA whose nodes avoid z and whose weights vanish to first order at z,
/// so integrands with a 1/|ζ - z| singularity are integrated accurately.
/// Disc: polar coordinates about z. Rectangle: four Duffy triangles with apex z.
QuadratureRule singular_area_quadrature(const PlanarDomain& dom, int m, cplx z,
                                        double margin = 1e-8);

/// Chord length from z to the circle |ζ - c| = R in direction e^{iθ}.
double disc_chord(cplx center, double radius, cplx z, double theta);

/// Throws NearBoundaryError when z is within margin * diam of the boundary of dom.
void check_interior(const PlanarDomain& dom, cplx z, double margin = 1e-8, int factor = 0);
void check_interior(const ProductDomain& dom, std::span<const cplx> z, double margin = 1e-8);

// ---------------------------------------------------------------------------
// Grids
// ---------------------------------------------------------------------------

/// Points and cell volumes for one planar factor.
struct FactorGrid {
    std::vector<cplx> points;
    std::vector<double> volumes;
};

/// Tensor product of per-factor point sets. Flat indices are row-major with
/// factor 0 varying slowest.
class Grid {
public:
    Grid() = default;
    explicit Grid(std::vector<FactorGrid> factors);

    int dimension() const noexcept { return static_cast<int>(factors_.size()); }
    std::size_t size() const noexcept { return size_; }
    const FactorGrid& factor(int j) const { return factors_.at(static_cast<std::size_t>(j)); }
    std::size_t factor_size(int j) const { return factor(j).points.size(); }

    /// Per-factor indices of flat index k.
    void unflatten(std::size_t k, std::span<std::size_t> idx) const;
    std::size_t flatten(std::span<const std::size_t> idx) const;
    void point(std::size_t k, std::span<cplx> out) const;
    std::vector<cplx> point(std::size_t k) const;
    double volume(std::size_t k) const;

private:
    std::vector<FactorGrid> factors_;
    std::vector<std::size_t> strides_;
    std::size_t size_ = 0;
};

/// Complex samples on a grid, one per point in flat order.
struct GridField {
    Grid grid;
    std::vector<cplx> values;
};

/// Inset from the boundary used by tensor_grid, relative to factor diameter.
inline constexpr double kGridInset = 1e-3;

/// N x N interior points per planar factor: Chebyshev rings times uniform angles
/// on discs, cell midpoints on rectangles, kept kGridInset * diam from the boundary.
FactorGrid tensor_factor_grid(const PlanarDomain& dom, int N);
Grid tensor_grid(const ProductDomain& dom, int N);

/// Points and weights of area_quadrature(dom, m) as a grid factor.
FactorGrid quadrature_factor_grid(const PlanarDomain& dom, int m, int m_theta = 0);
Grid quadrature_grid(const ProductDomain& dom, int m, int m_theta = 0);

}  // namespace dbar
