#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "dbar/blockrecursion.hpp"
#include "dbar/multicauchy.hpp"
#include "dbar/norms.hpp"

namespace dbar {

// ---------------------------------------------------------------------------
// ∂̄ residual by finite differences
// ---------------------------------------------------------------------------

struct FdResidual {
    std::vector<double> per_component;  // sup over points of |∂u/∂z̄_j - f_j|
    double sup = 0.0;
    std::size_t points = 0;
    std::vector<std::string> warnings;
};

/// Central-difference Wirtinger derivatives of u at every grid point compared
/// with the components of f. Points must stay interior after a step of h.
FdResidual dbar_residual_fd(const PointFn& u, const Grid& grid, const ProductDomain& dom,
                            const OneForm& f, double h, int threads = 1);

// ---------------------------------------------------------------------------
// Hardy-space orthogonality on the unit polydisc
// ---------------------------------------------------------------------------

struct HardyOptions {
    int M = 128;  // samples per circle
    int K = 16;   // largest coefficient index
    int cauchy_points = 5;
    int cauchy_m = 64;
    std::uint64_t seed = 42;
    int threads = 1;
};

struct HardyReport {
    /// max |û(k)| over 0 <= k_j <= K.
    double max_coefficient = 0.0;
    std::vector<int> argmax;
    /// max |𝒞ₙ(u)(z)| over the random interior points.
    double cauchy_max = 0.0;
    /// Coefficient at (1, 0, ..., 0), used by the negative control.
    cplx coefficient_e1{0.0, 0.0};
};

HardyReport hardy_orthogonality(const PointFn& u, int n, const HardyOptions& opts = {});

// ---------------------------------------------------------------------------
// The divergent example
// ---------------------------------------------------------------------------

struct CounterexampleOptions {
    int radial_nodes = 48;
    int angular_nodes = 16;
    int threads = 1;
};

struct CounterexampleRow {
    int K = 0;
    double T_at_0 = 0.0;
    double minus_harmonic = 0.0;
    double l1_fI = 0.0;
    double l1_fI_exact = 0.0;
    /// Relative error of the L¹ norm of the single term f^K_I against its closed form.
    double term_rel_error = 0.0;
    std::vector<double> l1_fJ;  // one per proper nonempty J ⊂ I
};

struct CounterexampleReport {
    int n = 0;
    SubsetIndex I;
    std::vector<SubsetIndex> proper;
    std::vector<CounterexampleRow> rows;
    /// Least-squares slope of the L¹ partial sums of f_I against log K over K/2..K,
    /// and the value π^n it should approach.
    double slope = 0.0;
    double slope_theory = 0.0;
    /// (S(K) - S(K/2)) / S(K) per proper J.
    std::vector<double> tail_ratio;
    /// f_J is the zero polynomial for every J not contained in I.
    bool zero_outside = true;
    double max_T_error = 0.0;
    double max_term_rel_error = 0.0;
};

/// L¹ norm over the unit polydisc of the single term f^k_J, J ⊆ I, in closed form.
double counterexample_l1_term(int n, int l, int j, int k);

/// Σ_{k<=K} 1/k as an exact rational rounded once.
double harmonic_number(int K);

CounterexampleReport counterexample_run(int n, SubsetIndex I, int K,
                                        const CounterexampleOptions& opts = {});

// ---------------------------------------------------------------------------
// Norm-inequality reports
// ---------------------------------------------------------------------------

/// ‖u‖_p against Σ_I ‖f_I‖_p on a tensor grid.
struct LpRatio {
    double p = 1.0;
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
};

/// u is T(f) (exact path) or the block recursion output when use_recursion is set.
LpRatio lp_ratio_report(const OneForm& f, const ProductDomain& dom, double p, int N,
                        bool use_recursion = false, int threads = 1);

struct HolderTheoremReport {
    double seminorm = 0.0;     // iterated Hölder seminorm of u
    double sup_u = 0.0;
    double lhs = 0.0;          // seminorm + sup|u|
    double f1_term = 0.0;      // ‖f_1‖ in L^∞ ⊗ Λ^{α2}
    double f2_term = 0.0;      // ‖f_2‖ in Λ^{α1} ⊗ L^∞
    double f12_term = 0.0;     // ‖f_12‖_∞
    double rhs = 0.0;
    double ratio = 0.0;
};

/// u from the block recursion with disc solvers; all norms estimated on a tensor grid.
HolderTheoremReport holder_theorem_report(const OneForm& f, const ProductDomain& dom,
                                          std::array<double, 2> alpha, int N,
                                          const HolderSampling& sampling = {}, int threads = 1);

/// Samples p on a grid.
GridField sample_field(const PointFn& p, const Grid& grid, int threads = 1);

}  // namespace dbar
