#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dbar/io.hpp"
#include "dbar/verify.hpp"

namespace dbar {

/// Names accepted by run_verify_case.
const std::vector<std::string>& verify_case_names();

struct VerifyConfig {
    int n = 2;
    int trials = 10;
    /// Random evaluation points per trial (representation, stokes).
    int points = 10;
    std::uint64_t seed = 42;
    int threads = 1;
    bool negative_control = false;
    std::optional<ProblemSpec> spec;
    int quad = 96;
    int boundary_quad = 256;
    /// Tensor grid size per factor for the finite-difference residual.
    int grid = 6;
    double h = 1e-4;
};

/// Runs one check suite. The result always has "case", "pass" and "checks";
/// negative controls appear under "controls" with a "flagged" field.
/// Throws SpecError for an unknown case or unusable configuration.
json run_verify_case(const std::string& name, const VerifyConfig& cfg);

/// Table K, T_at_0, minus_harmonic_partial, L1_fI_partial, L1_fI_exact_partial,
/// then one L1_fJ_partial column per proper J.
std::string counterexample_csv(const CounterexampleReport& rep);
/// Summary with pass/fail per check and the tolerances used.
json counterexample_json(const CounterexampleReport& rep);

struct NormsConfig {
    std::vector<double> p{1.0, 2.0, kInf};
    std::array<double, 2> alpha{0.5, 0.5};
    int grid = 8;
    int threads = 1;
    HolderSampling sampling;
};

/// Rows norm_kind,parameters,value for T(f) (or the block recursion when the
/// blocks are not all singletons) and the data f_I.
std::string norms_csv(const ProblemSpec& spec, const NormsConfig& cfg);

}  // namespace dbar
