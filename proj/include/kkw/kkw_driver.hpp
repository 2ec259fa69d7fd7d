#pragma once

#include "kkw/sphere_tensor.hpp"
#include "kkw/symbol_calculus.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kkw {

struct CaseIndex {
    int id = 0;
    int r = -1, l = -1;
    int k = 0, j = 0;
    int alpha = 0;  // |alpha|; the family sums over all tangential multi-indices
};

std::vector<CaseIndex> enumerate_cases();
const CaseIndex& case_by_id(int id);
// (-i)^{|alpha|+j+k+1} / (j+k+1)!; alpha! is applied per multi-index.
GaussianRational case_prefactor(const CaseIndex& c);

// One imported value: a coefficient of a boundary monomial for one case,
// stored as re + i*im times pi^pi_power * Omega_3^omega_power.
struct ImportedConstant {
    int case_id = 0;
    BoundaryMonomial monomial = BoundaryMonomial::H1SQ;
    GaussianRational value;
    int pi_power = 0;
    int omega_power = 0;
    std::string source;
    int line = 0;
};

// Imports keyed by case. Values are normalized to pi^3 on load.
class ConstantsTable {
public:
    void add(const ImportedConstant& c);
    bool has(int case_id) const;
    BoundaryVector vector_for(int case_id) const;
    std::string citation_for(int case_id) const;
    const std::vector<ImportedConstant>& entries() const { return entries_; }

private:
    std::vector<ImportedConstant> entries_;
};

enum class Provenance { Engine, Imported };

struct ChannelResult {
    std::string channel;  // "dirac" or "perturbation"
    Provenance provenance = Provenance::Engine;
    BoundaryVector value;
    std::string note;  // citation for imports, reason when a channel is unmodeled
};

struct CaseResult {
    CaseIndex index;
    GaussianRational prefactor;
    std::vector<ChannelResult> channels;
    BoundaryVector total;
    bool volume_word_cancels = true;
};

struct DriverOptions {
    ModelOptions model;
    // Move this many xi_n derivatives from the second factor to the first
    // (integration by parts); the value must not change.
    int ibp_shift = 0;
};

// Symbol components by order and channel, prepared once per model.
class SymbolLibrary {
public:
    explicit SymbolLibrary(const ModelOptions& opts);
    const BoundaryModel& model() const { return model_; }
    // Channels of the order -m symbol: index 0 is the unperturbed part.
    const std::vector<std::pair<std::string, SymbolField>>& order(int m) const;

private:
    BoundaryModel model_;
    std::map<int, std::vector<std::pair<std::string, SymbolField>>> parts_;
};

// Integral of tr[first x second] for one channel pair and one case; returns
// the contracted value without the case prefactor.
BoundaryVector evaluate_pair(const CaseIndex& c, const SymbolField& first, const SymbolField& second, int ibp_shift,
                             bool* volume_cancels = nullptr);

// The same pair as a function of xi_n after the trace and the sphere
// integral; its line integral, contracted, is evaluate_pair.
ScalarXi pair_integrand(const CaseIndex& c, const SymbolField& first, const SymbolField& second, int ibp_shift = 0);

CaseResult evaluate_case(const CaseIndex& c, const SymbolLibrary& lib, const ConstantsTable& imports,
                         const DriverOptions& opts = {});
std::vector<CaseResult> evaluate_all(const SymbolLibrary& lib, const ConstantsTable& imports,
                                     const DriverOptions& opts = {});
BoundaryVector sum_total(const std::vector<CaseResult>& cases);

// H1 = -K/2, H2 = (3 H1^2 + sb - sM)/4, X2 = XP2 + AN2.
GeometricVector geometric_form(const BoundaryVector& total);

}  // namespace kkw
