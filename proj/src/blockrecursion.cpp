#include "dbar/blockrecursion.hpp"

#include <algorithm>

#include "dbar/cauchy1d.hpp"
#include "dbar/multicauchy.hpp"

namespace dbar {

namespace {

void require_block(const ProductDomain& dom, int block) {
    if (block < 0 || block >= dom.blocks().block_count()) throw SpecError("block index out of range");
}

/// The data restricted to the block's components, with the domain's blocks.
OneForm block_data(const OneForm& data, const ProductDomain& dom, int block) {
    if (data.dimension() != dom.dimension()) throw SpecError("data dimension mismatch");
    return block_project(data.with_blocks(dom.blocks()), block);
}

ExactComplex coefficient_sum(const OneForm& f) {
    ExactComplex s;
    for (const auto& c : f.components()) {
        for (const auto& [m, v] : c.terms()) s += v;
    }
    return s;
}

OneForm dbar_components(const OneForm& f, int nu) {
    std::vector<MultiIndexPoly> comps;
    for (const auto& c : f.components()) comps.push_back(wirtinger_dbar(c, nu));
    return OneForm(std::move(comps), f.blocks());
}

}  // namespace

FactorSolver disc_product_factor_solver(const ProductDomain& dom, int block) {
    require_block(dom, block);
    const std::vector<int> coords = dom.blocks().coords(block);
    for (int c : coords) {
        if (!dom.factor(c).is_unit_disc()) {
            throw SpecError("disc factor solver needs unit disc factors (factor " + std::to_string(c + 1) +
                            " is not)");
        }
    }
    FactorSolver s;
    s.block = block;
    s.name = "disc-product";
    s.solve = [dom, block, coords](const OneForm& data) {
        return operator_T_exact_over(block_data(data, dom, block), coords);
    };
    return s;
}

FactorSolver make_orthogonal_solver(const FactorSolver& Tj, const ProductDomain& dom) {
    require_block(dom, Tj.block);
    if (dom.blocks().size(Tj.block) != 1) {
        throw SpecError("orthogonal solver requires a single-disc block");
    }
    const int coord = dom.blocks().offset(Tj.block);
    if (!dom.factor(coord).is_unit_disc()) throw SpecError("orthogonal solver requires a unit disc");
    FactorSolver s = Tj;
    s.name = "orthogonal(" + Tj.name + ")";
    s.solve = [inner = Tj.solve, coord](const OneForm& data) {
        const MultiIndexPoly v = inner(data);
        return v - disc_bergman_project(v, coord);
    };
    return s;
}

FactorSolver noncommuting_mock_solver(const ProductDomain& dom, int block) {
    FactorSolver base = disc_product_factor_solver(dom, block);
    const BlockPartition& blocks = dom.blocks();
    if (blocks.block_count() < 2) throw SpecError("mock solver needs a coordinate outside the block");
    const int c = blocks.offset(block);
    int e = 0;
    while (blocks.block_of(e) == block) ++e;
    const int n = dom.dimension();
    FactorSolver s = base;
    s.name = "noncommuting-mock";
    s.commutes = false;
    s.solve = [inner = base.solve, dom, block, c, e, n](const OneForm& data) {
        const MultiIndexPoly v = inner(data);
        const ExactComplex L = coefficient_sum(block_data(data, dom, block));
        return v + MultiIndexPoly::z(n, c) * MultiIndexPoly::zbar(n, e) * L;
    };
    return s;
}

std::vector<FactorSolver> disc_solvers(const ProductDomain& dom) {
    std::vector<FactorSolver> out;
    for (int j = 0; j < dom.blocks().block_count(); ++j) out.push_back(disc_product_factor_solver(dom, j));
    return out;
}

RecursionResult recursive_solve(const OneForm& f, const ProductDomain& dom,
                                const std::vector<FactorSolver>& solvers) {
    if (f.dimension() != dom.dimension()) throw SpecError("form dimension does not match domain");
    const int k = dom.blocks().block_count();
    if (static_cast<int>(solvers.size()) != k) {
        throw SpecError("need one solver per block: " + std::to_string(k) + " blocks, " +
                        std::to_string(solvers.size()) + " solvers");
    }
    const ClosedCheck chk = dbar_closed_check(f);
    if (!chk.closed) throw NotClosedError(chk.residual);

    RecursionResult res;
    res.u = MultiIndexPoly(f.dimension());
    OneForm g = f.with_blocks(dom.blocks());
    for (int j = 0; j < k; ++j) {
        MultiIndexPoly v = solvers[static_cast<std::size_t>(j)](block_project(g, j));
        res.trace.steps.push_back({g, v});
        g -= dbar_apply(v, dom.blocks());
        res.u += v;
    }
    res.trace.remainder = std::move(g);
    return res;
}

double vanishing_check(const RecursionTrace& trace) {
    double worst = 0.0;
    const auto k = trace.steps.size();
    for (std::size_t j = 0; j < k; ++j) {
        const OneForm& g = trace.steps[j].g;
        for (std::size_t i = 0; i < j; ++i) {
            worst = std::max(worst, block_project(g, static_cast<int>(i)).max_abs_coefficient());
        }
    }
    if (k > 0) {
        const OneForm& gk = trace.steps.back().g;
        worst = std::max(worst, (gk - block_project(gk, static_cast<int>(k - 1))).max_abs_coefficient());
    }
    return worst;
}

double commutator_residual(const FactorSolver& S, const OneForm& f, int nu) {
    const BlockPartition& blocks = f.blocks();
    if (nu < 0 || nu >= f.dimension()) throw SpecError("coordinate index out of range");
    if (blocks.block_of(nu) == S.block) {
        throw SpecError("commutator direction must lie outside the solver's block");
    }
    const ClosedCheck chk = dbar_closed_check(f);
    if (!chk.closed) throw NotClosedError(chk.residual);
    const OneForm data = block_project(f, S.block);
    const MultiIndexPoly lhs = wirtinger_dbar(S(data), nu);
    const MultiIndexPoly rhs = S(dbar_components(data, nu));
    return (lhs - rhs).max_abs_coefficient();
}

double dbar_defect(const MultiIndexPoly& u, const OneForm& f) {
    return (dbar_apply(u, f.blocks()) - f).max_abs_coefficient();
}

}  // namespace dbar
