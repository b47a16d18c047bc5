#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dbar/forms.hpp"
#include "dbar/geometry.hpp"

namespace dbar {

/// Solves ∂̄_j v = data on one block. Data is a OneForm whose only nonzero
/// components belong to the block; the other variables enter as parameters.
struct FactorSolver {
    int block = 0;
    std::string name;
    std::function<MultiIndexPoly(const OneForm&)> solve;
    /// Declared, not enforced; see commutator_residual.
    bool linear = true;
    bool commutes = true;

    MultiIndexPoly operator()(const OneForm& data) const { return solve(data); }
};

/// T restricted to the block's planar factors, all of which must be unit discs.
FactorSolver disc_product_factor_solver(const ProductDomain& dom, int block);

/// S = T_j - P∘T_j for a single unit-disc block, P the Bergman projection.
FactorSolver make_orthogonal_solver(const FactorSolver& Tj, const ProductDomain& dom);

/// Negative control: the disc solver plus z_c z̄_e L(data), where c is the
/// block's first coordinate, e the first coordinate outside the block and
/// L(data) the sum of all coefficients of the data. Still a linear solver of
/// ∂̄_j, but it does not commute with ∂/∂z̄_e.
FactorSolver noncommuting_mock_solver(const ProductDomain& dom, int block);

struct RecursionStep {
    OneForm g;          // g_j
    MultiIndexPoly v;   // v^j = solver_j(π_j(g_j))
};

struct RecursionTrace {
    std::vector<RecursionStep> steps;
    OneForm remainder;  // g_{k+1} = g_k - ∂̄v^k, zero when the recursion succeeds
};

struct RecursionResult {
    MultiIndexPoly u;
    RecursionTrace trace;
};

/// g_1 = f, v^j = solvers[j](π_j(g_j)), g_{j+1} = g_j - ∂̄v^j, u = Σ v^j.
RecursionResult recursive_solve(const OneForm& f, const ProductDomain& dom,
                                const std::vector<FactorSolver>& solvers);

/// Default solvers: one disc_product_factor_solver per block.
std::vector<FactorSolver> disc_solvers(const ProductDomain& dom);

/// Largest coefficient over π_i(g_j) for i < j and over g_k - π_k(g_k).
double vanishing_check(const RecursionTrace& trace);

/// Coefficient norm of ∂(S(π_j f))/∂z̄_ν - S(∂(π_j f)/∂z̄_ν) for ν outside block j.
double commutator_residual(const FactorSolver& S, const OneForm& f, int nu);

/// Largest coefficient of ∂̄u - f.
double dbar_defect(const MultiIndexPoly& u, const OneForm& f);

}  // namespace dbar
