#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <limits>

#include "dbar/geometry.hpp"

namespace dbar {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// (Σ |v|^p ΔV)^{1/p} with the grid's cell volumes; p = kInf gives max |v|.
/// NaN samples (points excluded by the boundary check) are skipped.
double lp_norm(const GridField& field, double p, int threads = 1);

/// True when 1 <= r <= p and 1/r - 1/p < 1/2.
bool admissible_exponents(double r, double p);

/// Outer L^p over the factors outside I of the inner L^r over the factors in I.
/// I indexes planar factors of the field's grid.
double mixed_H_norm(const GridField& field, SubsetIndex I, double r, double p);

struct HolderSampling {
    /// Every pair of an evenly spaced subgrid of this many points per block.
    int subgrid = 12;
    int random_pairs = 2000;
    std::uint64_t seed = 42;
    /// Best sampled pairs refined by coordinate ascent over all grid points; 0 disables.
    int ascent_starts = 32;
};

/// Sampled estimate (a lower bound) of the 2-iterated Hölder seminorm: the max over
/// pairs of |g(z1,z2) - g(w1,z2) - g(z1,w2) + g(w1,w2)| / (|z1-w1|^α1 |z2-w2|^α2).
double iterated_holder_seminorm(const GridField& field, const BlockPartition& blocks,
                                std::array<double, 2> alpha, const HolderSampling& sampling = {});

/// ‖g‖ in L^∞ over one block tensored with Λ^α over the other: the max over
/// points of the L^∞ block of sup|g| + Hölder seminorm in the Hölder block.
double linf_holder_norm(const GridField& field, const BlockPartition& blocks, int holder_block,
                        double alpha, const HolderSampling& sampling = {});

/// r' with 1/r + 1/r' = 1/p + 1.
double young_conjugate(double p, double r);

/// ‖χ_{|ζ|<R} / |ζ|‖_{L^{r'}} = (2π R^{2-r'} / (2-r'))^{1/r'}. Requires 1 <= r' < 2.
double young_bound_constant(double R, double p, double r);

/// g(z) = |z|^2 sin(1/|z|) on C^2 evaluated through the mixed difference at
/// z = (a, b), w = 0 with b = a^k, divided by a^α1 b^α2.
double oscillating_path_quotient(double a, double k, std::array<double, 2> alpha);

/// The mixed difference itself, cancellation-free.
double oscillating_mixed_difference(double a, double b);

}  // namespace dbar
