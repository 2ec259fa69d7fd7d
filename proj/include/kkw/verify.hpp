#pragma once

#include "kkw/numeric_oracle.hpp"
#include "kkw/report.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace kkw::verify {

// Tolerances for the floating-point checks.
inline constexpr double kMonteCarloTolerance = 1e-3;  // absolute, in units of pi^2
inline constexpr double kResidueTolerance = 1e-6;     // relative
inline constexpr double kResidueFloor = 1e-3;         // smaller test values are redrawn
inline constexpr double kCauchyTolerance = 1e-9;      // relative
inline constexpr double kPairOracleTolerance = 1e-8;  // relative
inline constexpr std::size_t kMonteCarloSamples = 4000000;

struct Options {
    int oracle_trials = 200;
    std::uint64_t seed = 1;
    bool numeric_pairs = true;
    // Also check the |alpha| = 1 pairs, which cost about half a second each.
    bool tangential_pairs = false;
};

CheckResult gamma_relations();
// Symbolic trace against the literal 4x4 trace on random elements, plus
// cyclicity of the symbolic trace.
CheckResult trace_oracle(int trials, std::mt19937_64& rng);
// The five boundary trace identities used for the first-order collar jets.
CheckResult trace_identities(const BoundaryModel& model);
// Exact moments up to degree 6 against the Gamma-function formula, odd
// moments, the quadratic moment, Omega_3, and Monte Carlo on degree 4.
CheckResult sphere_moments(std::mt19937_64& rng, std::size_t samples = kMonteCarloSamples);
// Idempotence, complementarity and a numeric Cauchy integral for pi^+.
CheckResult pi_plus_invariants(int trials, std::mt19937_64& rng);
// Line integral by residue against Gauss-Kronrod quadrature.
CheckResult residue_quadrature(int trials, std::mt19937_64& rng);
// q_{-1} and q_{-2}^X in closed form.
CheckResult parametrix_closed_forms(const BoundaryModel& model);
// p o q = 1 + O(-3) for the recursion's q_{-1}, q_{-2}, q_{-3}.
CheckResult composition_identity();
// Library sigma_{-2} against the recursion's unperturbed q_{-2}.
CheckResult library_sigma2(const BoundaryModel& model);
// The order -3 perturbation remainder from the recursion against the
// library transcription; the difference must be exactly
// q_{-1} (1 - p0 - c(X)) q_{-2}^X at x0.
CheckResult remainder_split(const BoundaryModel& model);
// Line integral of every engine pair integrand by quadrature.
CheckResult pair_integrand_quadrature(const SymbolLibrary& lib, std::mt19937_64& rng);
// Cases 9/10 and 14/15 agree; integrating case 7 by parts changes nothing.
// Cases missing from `cases` are evaluated.
CheckResult case_symmetries(const SymbolLibrary& lib, const ConstantsTable& imports,
                            const std::vector<CaseResult>& cases = {});
// Volume-word terms integrate to zero and engine channels are real.
CheckResult volume_and_reality(const std::vector<CaseResult>& cases);
// Engine channel pairs against the independent float evaluation.
CheckResult case_pairs_numeric(const SymbolLibrary& lib, std::mt19937_64& rng, bool tangential = true);

// All checks in a fixed order; `cases` are the results of evaluate_all.
std::vector<CheckResult> run_all(const Options& opts, const SymbolLibrary& lib, const ConstantsTable& imports,
                                 const std::vector<CaseResult>& cases);

}  // namespace kkw::verify
