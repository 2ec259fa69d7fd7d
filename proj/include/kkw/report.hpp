#pragma once

#include "kkw/kkw_driver.hpp"

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace kkw {

inline constexpr const char* kVersion = "1.0.0";

// Malformed data file; carries the 1-based line of the failure.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& source, int line, const std::string& msg);
    int line() const { return line_; }

private:
    int line_;
};

// One `key=value key="quoted value" ...` line.
struct Record {
    int line = 0;
    std::map<std::string, std::string> fields;
};
// Blank lines and lines starting with '#' are skipped.
std::vector<Record> parse_records(std::istream& in, const std::string& source);

// Records `case= monomial= re= im= pi= [omega=] source=""`.
ConstantsTable parse_constants(std::istream& in, const std::string& source);
ConstantsTable load_constants(const std::string& path);

// Printed values: per-case table, printed sum, boundary theorem vector and
// geometric theorem vector, all normalized to pi^3.
struct ReferenceValues {
    std::map<int, BoundaryVector> cases;
    BoundaryVector total;
    BoundaryVector theorem;
    GeometricVector geometric;
};
ReferenceValues parse_reference(std::istream& in, const std::string& source);
ReferenceValues load_reference(const std::string& path);
// Sum of the printed per-case values.
BoundaryVector resum(const ReferenceValues& ref);

std::string default_data_dir();
GeometricMonomial parse_geometric_tag(const std::string& s);

struct CaseAudit {
    CaseResult result;
    std::optional<BoundaryVector> printed;
    bool match = false;
    // Explanation of a mismatch; empty when the values agree.
    std::string root_cause;
};

struct SummationRow {
    BoundaryMonomial monomial = BoundaryMonomial::H1SQ;
    GaussianRational engine, resum, printed;
};

struct GeometricRow {
    GeometricMonomial monomial = GeometricMonomial::K2;
    GaussianRational engine, from_printed, printed;
};

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct AuditReport {
    std::string version = kVersion;
    std::uint64_t seed = 0;
    int oracle_trials = 0;
    std::string frame = "printed";
    std::string index_constraint = "r + l - k - j - |alpha| = -4";

    std::vector<CaseAudit> cases;

    bool has_totals = false;
    BoundaryVector engine_total, printed_resum, printed_total, printed_theorem;
    GeometricVector engine_geometric, printed_geometric_from_theorem, printed_geometric;
    std::vector<SummationRow> summation;
    std::vector<GeometricRow> geometric;

    std::vector<CheckResult> invariants;

    bool has_mismatch() const;
    bool invariants_pass() const;
};

// Root-cause note for a known disagreement between an engine value and the
// printed value of a case, or an empty string.
std::string known_root_cause(int case_id);

// Per-case audit rows; totals and geometric rows when all 15 cases are given.
AuditReport build_audit(const std::vector<CaseResult>& results, const ReferenceValues& ref, FrameConvention frame);

// Values are shown in units of pi*Omega_3 = 2 pi^3 for boundary vectors and
// pi^3 for geometric vectors.
std::string format_boundary(const BoundaryVector& v);
std::string format_geometric(const GeometricVector& v);

std::string render_text(const AuditReport& r);
std::string render_json(const AuditReport& r);
std::string render_latex(const AuditReport& r);
// Inverse of render_json.
AuditReport parse_json_report(const std::string& text);

}  // namespace kkw
