#include "kkw/report.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

#ifndef KKW_DATA_DIR
#define KKW_DATA_DIR "data"
#endif

namespace kkw {

using ojson = nlohmann::ordered_json;

ParseError::ParseError(const std::string& source, int line, const std::string& msg)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + msg), line_(line) {}

std::vector<Record> parse_records(std::istream& in, const std::string& source) {
    std::vector<Record> out;
    std::string text;
    int line = 0;
    while (std::getline(in, text)) {
        ++line;
        std::size_t p = text.find_first_not_of(" \t\r");
        if (p == std::string::npos || text[p] == '#') continue;
        Record rec;
        rec.line = line;
        while (p < text.size()) {
            std::size_t eq = text.find('=', p);
            std::size_t ws = text.find_first_of(" \t\r", p);
            if (eq == std::string::npos || (ws != std::string::npos && ws < eq))
                throw ParseError(source, line, "expected key=value at column " + std::to_string(p + 1));
            std::string key = text.substr(p, eq - p);
            if (key.empty()) throw ParseError(source, line, "empty key at column " + std::to_string(p + 1));
            std::string value;
            p = eq + 1;
            if (p < text.size() && text[p] == '"') {
                std::size_t close = text.find('"', p + 1);
                if (close == std::string::npos) throw ParseError(source, line, "unterminated quote for key " + key);
                value = text.substr(p + 1, close - p - 1);
                p = close + 1;
                if (p < text.size() && text.find_first_of(" \t\r", p) != p)
                    throw ParseError(source, line, "missing space after quoted value of " + key);
            } else {
                std::size_t end = text.find_first_of(" \t\r", p);
                if (end == std::string::npos) end = text.size();
                value = text.substr(p, end - p);
                p = end;
            }
            if (!rec.fields.emplace(key, value).second) throw ParseError(source, line, "duplicate key " + key);
            p = text.find_first_not_of(" \t\r", p);
            if (p == std::string::npos) break;
        }
        out.push_back(std::move(rec));
    }
    return out;
}

namespace {

const std::string& field(const Record& r, const std::string& source, const std::string& key) {
    auto it = r.fields.find(key);
    if (it == r.fields.end()) throw ParseError(source, r.line, "missing key " + key);
    return it->second;
}

int int_field(const Record& r, const std::string& source, const std::string& key, const std::string& text) {
    try {
        std::size_t used = 0;
        int v = std::stoi(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ParseError(source, r.line, "key " + key + " needs an integer, got '" + text + "'");
    }
}

void check_keys(const Record& r, const std::string& source, std::initializer_list<const char*> allowed) {
    for (const auto& [k, v] : r.fields) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || k == a;
        if (!ok) throw ParseError(source, r.line, "unknown key " + k);
    }
}

// Coefficient of pi^3 from a value scaled by pi^pi * Omega_3^omega.
GaussianRational pi3_value(const Record& r, const std::string& source) {
    GaussianRational v;
    try {
        v = GaussianRational::parse(field(r, source, "re"), field(r, source, "im"));
    } catch (const std::invalid_argument& e) {
        throw ParseError(source, r.line, e.what());
    }
    int pi = int_field(r, source, "pi", field(r, source, "pi"));
    int omega = 0;
    if (r.fields.count("omega")) omega = int_field(r, source, "omega", r.fields.at("omega"));
    if (omega < 0 || pi + 2 * omega != 3)
        throw ParseError(source, r.line, "value must be of pi^3 grade (pi + 2*omega = 3)");
    return v * GaussianRational(2).pow(omega);
}

BoundaryMonomial boundary_tag(const Record& r, const std::string& source) {
    try {
        return parse_boundary_tag(field(r, source, "monomial"));
    } catch (const std::invalid_argument&) {
        throw ParseError(source, r.line, "unknown monomial " + field(r, source, "monomial"));
    }
}

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path, 0, "cannot open file");
    return in;
}

}  // namespace

ConstantsTable parse_constants(std::istream& in, const std::string& source) {
    ConstantsTable table;
    for (const Record& r : parse_records(in, source)) {
        check_keys(r, source, {"case", "monomial", "re", "im", "pi", "omega", "source"});
        ImportedConstant c;
        c.case_id = int_field(r, source, "case", field(r, source, "case"));
        if (c.case_id < 1 || c.case_id > 15) throw ParseError(source, r.line, "case number must be in 1..15");
        c.monomial = boundary_tag(r, source);
        // Stored already normalized to pi^3.
        c.value = pi3_value(r, source);
        c.pi_power = 3;
        c.omega_power = 0;
        c.source = field(r, source, "source");
        if (c.source.empty()) throw ParseError(source, r.line, "empty source citation");
        c.line = r.line;
        table.add(c);
    }
    return table;
}

ConstantsTable load_constants(const std::string& path) {
    auto in = open_or_throw(path);
    return parse_constants(in, path);
}

GeometricMonomial parse_geometric_tag(const std::string& s) {
    for (int t = 0; t <= static_cast<int>(GeometricMonomial::DIVX); ++t)
        if (s == tag(static_cast<GeometricMonomial>(t))) return static_cast<GeometricMonomial>(t);
    throw std::invalid_argument("unknown geometric monomial " + s);
}

ReferenceValues parse_reference(std::istream& in, const std::string& source) {
    ReferenceValues ref;
    for (const Record& r : parse_records(in, source)) {
        check_keys(r, source, {"entry", "monomial", "re", "im", "pi", "omega", "source"});
        const std::string& entry = field(r, source, "entry");
        GaussianRational v = pi3_value(r, source);
        if (entry == "geometric") {
            try {
                ref.geometric.add(parse_geometric_tag(field(r, source, "monomial")), v);
            } catch (const std::invalid_argument& e) {
                throw ParseError(source, r.line, e.what());
            }
            continue;
        }
        BoundaryMonomial m = boundary_tag(r, source);
        if (entry == "total") {
            ref.total.add(m, v);
        } else if (entry == "theorem") {
            ref.theorem.add(m, v);
        } else if (entry.rfind("case:", 0) == 0) {
            int id = int_field(r, source, "entry", entry.substr(5));
            if (id < 1 || id > 15) throw ParseError(source, r.line, "case number must be in 1..15");
            ref.cases[id].add(m, v);
        } else {
            throw ParseError(source, r.line, "unknown entry " + entry);
        }
    }
    return ref;
}

ReferenceValues load_reference(const std::string& path) {
    auto in = open_or_throw(path);
    return parse_reference(in, path);
}

BoundaryVector resum(const ReferenceValues& ref) {
    BoundaryVector t;
    for (const auto& [id, v] : ref.cases) t += v;
    return t;
}

std::string default_data_dir() {
    return KKW_DATA_DIR;
}

// ---------------------------------------------------------------------------

std::string known_root_cause(int case_id) {
    static const std::map<int, std::string> notes = {
        {2,
         "h1^2 differs, h2 agrees. The printed trace integrand is not the trace of the printed factors "
         "(second x_n derivative of pi^+ q_-1 times third xi_n derivative of q_-1); the engine trace gives "
         "9/16 h1^2, and integrating the printed integrand gives 29/64 h1^2 - 3/16 h2."},
        {6, "same integrand as case 2 after integration by parts; inherits the case 2 discrepancy."},
        {7,
         "an*h1 differs. The printed xi_n integrand numerator -6 xi_n^2 + 8i xi_n + 6 has 8i where the trace of "
         "the printed factors gives 12i; with 12i the residue is -3/4 an*h1 per pi*Omega_3, the engine value, "
         "which the numeric oracle confirms."},
        {12, "identical integrand to case 7 by the trace property; inherits the case 7 an*h1 discrepancy."},
        {13,
         "The pure Dirac h1^2 value and the perturbation vector differ. The printed perturbation carries a weight-3 "
         "monomial |X'|^2 h1 that no order -2 by order -2 product can produce, and the X x X product gives "
         "-3/4 |X'|^2 - 3/2 an^2 per pi*Omega_3 rather than 1/2 |X|^2 - an^2. Both products and the Dirac part "
         "are confirmed by the numeric oracle."},
        {8,
         "The imported unperturbed part agrees; divX' differs. The printed xi_i xi_j coefficient of the trace "
         "integrand, (-2 xi_n^3 + 6i xi_n^2 - 2 xi_n - 2i)/((xi_n - i)^5 (xi_n + i)^2), is not the trace of the "
         "printed factors, which also carries degree-4 xi' terms; the printed integrand gives -9/16 and the trace "
         "of the printed factors, computed independently with explicit gamma matrices, gives -3/4, the engine "
         "value."},
        {9,
         "The imported unperturbed part agrees; an*h1 and dan differ. The printed second xi_n derivative of "
         "pi^+ q_-1 has i/2 on c(dx_n) where the projection gives i (the printed first derivative agrees with the "
         "engine). With the corrected factor the trace gives 3/4 an*h1 - 3/4 dan, the engine value; with the "
         "printed factor it gives 9/16 an*h1 - 9/16 dan, so the printed integrand carries a further slip. The "
         "numeric oracle confirms the engine value."},
        {10, "printed as the case 9 value; inherits the case 9 discrepancy. Engine cases 9 and 10 agree exactly."},
        {14,
         "Both channels differ. Unperturbed: the trace of the printed sigma_-3 input (checked term by term "
         "against its printed form) gives 209/64 h1^2 - 27/16 h2 - 5/48 sb against the printed 239/64 h1^2 - "
         "27/16 h2 - 11/192 sb; h2 agrees and the source of the h1^2 and sb gaps is not isolated. Perturbation: "
         "the printed closed form of R_-3 drops the p_0 factor in -q_-1 p_0 q_-2^X and sums tangential "
         "derivatives only over j < n; the recursion gives R_-3 = printed + (-q_-1(p_0 + c(X))q_-2^X + q_-1 "
         "q_-2^X) exactly. Even the trace of the printed R_-3 gives -3/2 an*h1 + 3/4 dan + 3/8 divX', not the "
         "printed -5/8 an*h1 + 3/4 dan + 3/4 divX'."},
        {15, "equal to case 14 by the trace property and the printed relation; inherits the case 14 discrepancy."},
    };
    auto it = notes.find(case_id);
    return it == notes.end() ? std::string() : it->second;
}

bool AuditReport::has_mismatch() const {
    for (const auto& c : cases)
        if (!c.match) return true;
    return false;
}

bool AuditReport::invariants_pass() const {
    for (const auto& c : invariants)
        if (!c.pass) return false;
    return true;
}

AuditReport build_audit(const std::vector<CaseResult>& results, const ReferenceValues& ref, FrameConvention frame) {
    AuditReport r;
    r.frame = frame == FrameConvention::Printed ? "printed" : "geometric";
    for (const auto& res : results) {
        CaseAudit a;
        a.result = res;
        auto it = ref.cases.find(res.index.id);
        if (it != ref.cases.end()) {
            a.printed = it->second;
            a.match = res.total == it->second;
        }
        if (!a.match) {
            a.root_cause = known_root_cause(res.index.id);
            if (a.root_cause.empty()) a.root_cause = "no documented root cause";
        }
        r.cases.push_back(std::move(a));
    }
    if (results.size() == enumerate_cases().size()) {
        r.has_totals = true;
        r.engine_total = sum_total(results);
        r.printed_resum = resum(ref);
        r.printed_total = ref.total;
        r.printed_theorem = ref.theorem;
        for (int t = 0; t <= static_cast<int>(BoundaryMonomial::X2); ++t) {
            auto m = static_cast<BoundaryMonomial>(t);
            SummationRow row{m, r.engine_total.at(m), r.printed_resum.at(m), r.printed_total.at(m)};
            if (row.engine.is_zero() && row.resum.is_zero() && row.printed.is_zero()) continue;
            r.summation.push_back(row);
        }
        r.engine_geometric = geometric_form(r.engine_total);
        r.printed_geometric_from_theorem = geometric_form(ref.theorem);
        r.printed_geometric = ref.geometric;
        for (int t = 0; t <= static_cast<int>(GeometricMonomial::DIVX); ++t) {
            auto m = static_cast<GeometricMonomial>(t);
            GeometricRow row{m, r.engine_geometric.at(m), r.printed_geometric_from_theorem.at(m),
                             r.printed_geometric.at(m)};
            if (row.engine.is_zero() && row.from_printed.is_zero() && row.printed.is_zero()) continue;
            r.geometric.push_back(row);
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// Text

namespace {

const char* display(BoundaryMonomial m) {
    switch (m) {
        case BoundaryMonomial::H1SQ: return "h1^2";
        case BoundaryMonomial::H2: return "h2";
        case BoundaryMonomial::SB: return "sb";
        case BoundaryMonomial::AN_H1: return "an*h1";
        case BoundaryMonomial::DAN: return "dan";
        case BoundaryMonomial::XP2: return "|X'|^2";
        case BoundaryMonomial::XP2_H1: return "|X'|^2*h1";
        case BoundaryMonomial::AN2: return "an^2";
        case BoundaryMonomial::DIVX: return "divX'";
        case BoundaryMonomial::X2: return "|X|^2";
    }
    return "?";
}

const char* display(GeometricMonomial m) {
    switch (m) {
        case GeometricMonomial::K2: return "K^2";
        case GeometricMonomial::SM: return "sM";
        case GeometricMonomial::SB: return "sb";
        case GeometricMonomial::AN_K: return "an*K";
        case GeometricMonomial::XP2: return "|X'|^2";
        case GeometricMonomial::XP2_K: return "|X'|^2*K";
        case GeometricMonomial::AN2: return "an^2";
        case GeometricMonomial::DAN: return "dan";
        case GeometricMonomial::DIVX: return "divX'";
    }
    return "?";
}

const std::string kMinus = "\u2212";

std::string format_terms(const std::vector<std::pair<std::string, GaussianRational>>& terms) {
    std::string out;
    for (const auto& [name, c] : terms) {
        bool neg = c.is_real() && sgn(c.re()) < 0;
        GaussianRational a = neg ? -c : c;
        std::string body;
        if (!a.is_real()) body = "(" + a.str() + ")" + name;
        else if (a.re() == 1) body = name;
        else body = "(" + rational_str(a.re()) + ")" + name;
        if (out.empty()) out = (neg ? kMinus : "") + body;
        else out += (neg ? " " + kMinus + " " : " + ") + body;
    }
    return out.empty() ? "0" : out;
}

std::string show(const GaussianRational& c) {
    return c.str();
}

}  // namespace

std::string format_boundary(const BoundaryVector& v) {
    std::vector<std::pair<std::string, GaussianRational>> t;
    for (const auto& [m, c] : v.coeffs) t.emplace_back(display(m), c / GaussianRational(2));
    return format_terms(t);
}

std::string format_geometric(const GeometricVector& v) {
    std::vector<std::pair<std::string, GaussianRational>> t;
    for (const auto& [m, c] : v.coeffs) t.emplace_back(display(m), c);
    return format_terms(t);
}

std::string render_text(const AuditReport& r) {
    std::ostringstream o;
    const std::string unit = " [\u00d7\u03c0\u03a9\u2083]";
    for (const auto& a : r.cases) {
        const auto& c = a.result.index;
        o << "Case " << c.id << ": " << format_boundary(a.result.total) << unit << "  "
          << (a.match ? "MATCH" : "MISMATCH") << "\n";
        o << "  indices r=" << c.r << " l=" << c.l << " k=" << c.k << " j=" << c.j << " |alpha|=" << c.alpha
          << "  prefactor " << a.result.prefactor.str() << "\n";
        for (const auto& ch : a.result.channels) {
            o << "  " << ch.channel << " (" << (ch.provenance == Provenance::Engine ? "engine" : "imported")
              << "): " << format_boundary(ch.value) << "\n";
            if (ch.provenance == Provenance::Imported) o << "    source: " << ch.note << "\n";
        }
        if (a.printed) o << "  printed: " << format_boundary(*a.printed) << "\n";
        if (!a.match) o << "  root cause: " << a.root_cause << "\n";
    }
    if (r.has_totals) {
        o << "\nTotal (engine): " << format_boundary(r.engine_total) << unit << "\n";
        o << "Total (printed table re-sum): " << format_boundary(r.printed_resum) << unit << "\n";
        o << "Total (printed sum): " << format_boundary(r.printed_total) << unit << "\n";
        o << "\nSummation audit, coefficients of \u03c0\u03a9\u2083 (engine | re-sum | printed):\n";
        for (const auto& row : r.summation) {
            const GaussianRational two(2);
            o << "  " << display(row.monomial) << ": " << show(row.engine / two) << " | " << show(row.resum / two)
              << " | " << show(row.printed / two) << (row.resum == row.printed ? "  re-sum agrees" : "  re-sum differs")
              << (row.engine == row.printed ? "" : "  engine differs") << "\n";
        }
        o << "\nGeometric form (engine): " << format_geometric(r.engine_geometric) << " [\u00d7\u03c0\u00b3]\n";
        o << "Geometric form of the printed theorem vector: " << format_geometric(r.printed_geometric_from_theorem)
          << " [\u00d7\u03c0\u00b3]\n";
        o << "Printed geometric theorem: " << format_geometric(r.printed_geometric) << " [\u00d7\u03c0\u00b3]\n";
        o << "Geometric diff, coefficients of \u03c0\u00b3 (engine | from printed vector | printed):\n";
        for (const auto& row : r.geometric)
            o << "  " << display(row.monomial) << ": " << show(row.engine) << " | " << show(row.from_printed) << " | "
              << show(row.printed) << (row.from_printed == row.printed ? "" : "  printed vector differs") << "\n";
    }
    if (!r.invariants.empty()) {
        o << "\nInvariants (seed " << r.seed << ", " << r.oracle_trials << " oracle trials):\n";
        for (const auto& c : r.invariants)
            o << "  " << (c.pass ? "PASS " : "FAIL ") << c.name << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
    }
    return o.str();
}

// ---------------------------------------------------------------------------
// JSON

namespace {

ojson gauss_json(const GaussianRational& c) {
    return ojson{{"re", rational_str(c.re())}, {"im", rational_str(c.im())}};
}

GaussianRational gauss_from(const ojson& j) {
    return GaussianRational::parse(j.at("re").get<std::string>(), j.at("im").get<std::string>());
}

template <class Tag>
ojson vector_json(const InvariantVector<Tag>& v) {
    ojson coeffs = ojson::object();
    for (const auto& [m, c] : v.coeffs) coeffs[tag(m)] = gauss_json(c);
    return ojson{{"pi_power", 3}, {"coefficients", coeffs}};
}

BoundaryVector boundary_from(const ojson& j) {
    BoundaryVector v;
    for (const auto& [k, c] : j.at("coefficients").items()) v.add(parse_boundary_tag(k), gauss_from(c));
    v.pi_power = j.at("pi_power").get<int>();
    return v;
}

GeometricVector geometric_from(const ojson& j) {
    GeometricVector v;
    for (const auto& [k, c] : j.at("coefficients").items()) v.add(parse_geometric_tag(k), gauss_from(c));
    v.pi_power = j.at("pi_power").get<int>();
    return v;
}

}  // namespace

std::string render_json(const AuditReport& r) {
    ojson j;
    j["schema"] = "kkw-audit/1";
    j["environment"] = {{"version", r.version},
                        {"seed", r.seed},
                        {"oracle_trials", r.oracle_trials},
                        {"frame", r.frame},
                        {"index_constraint", r.index_constraint}};
    j["units"] = "exact coefficients of pi^3; Omega_3 = 2 pi^2";
    ojson cases = ojson::array();
    for (const auto& a : r.cases) {
        const auto& c = a.result.index;
        ojson channels = ojson::array();
        for (const auto& ch : a.result.channels)
            channels.push_back({{"channel", ch.channel},
                                {"provenance", ch.provenance == Provenance::Engine ? "engine" : "imported"},
                                {"value", vector_json(ch.value)},
                                {"note", ch.note}});
        cases.push_back({{"id", c.id},
                         {"indices", {{"r", c.r}, {"l", c.l}, {"k", c.k}, {"j", c.j}, {"alpha", c.alpha}}},
                         {"prefactor", gauss_json(a.result.prefactor)},
                         {"engine", vector_json(a.result.total)},
                         {"channels", channels},
                         {"volume_word_cancels", a.result.volume_word_cancels},
                         {"printed", a.printed ? vector_json(*a.printed) : ojson(nullptr)},
                         {"match", a.match},
                         {"root_cause", a.root_cause}});
    }
    j["cases"] = cases;
    if (r.has_totals) {
        j["totals"] = {{"engine", vector_json(r.engine_total)},
                       {"printed_resum", vector_json(r.printed_resum)},
                       {"printed_total", vector_json(r.printed_total)},
                       {"printed_theorem", vector_json(r.printed_theorem)}};
        ojson rows = ojson::array();
        for (const auto& row : r.summation)
            rows.push_back({{"monomial", tag(row.monomial)},
                            {"engine", gauss_json(row.engine)},
                            {"printed_resum", gauss_json(row.resum)},
                            {"printed_total", gauss_json(row.printed)},
                            {"resum_matches_printed", row.resum == row.printed}});
        j["summation_audit"] = rows;
        ojson grows = ojson::array();
        for (const auto& row : r.geometric)
            grows.push_back({{"monomial", tag(row.monomial)},
                             {"engine", gauss_json(row.engine)},
                             {"from_printed_theorem", gauss_json(row.from_printed)},
                             {"printed", gauss_json(row.printed)}});
        j["geometric"] = {{"engine", vector_json(r.engine_geometric)},
                          {"from_printed_theorem", vector_json(r.printed_geometric_from_theorem)},
                          {"printed", vector_json(r.printed_geometric)},
                          {"rows", grows}};
    }
    ojson inv = ojson::array();
    for (const auto& c : r.invariants) inv.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    j["invariants"] = inv;
    return j.dump(2) + "\n";
}

AuditReport parse_json_report(const std::string& text) {
    ojson j = ojson::parse(text);
    AuditReport r;
    const auto& env = j.at("environment");
    r.version = env.at("version").get<std::string>();
    r.seed = env.at("seed").get<std::uint64_t>();
    r.oracle_trials = env.at("oracle_trials").get<int>();
    r.frame = env.at("frame").get<std::string>();
    r.index_constraint = env.at("index_constraint").get<std::string>();
    for (const auto& c : j.at("cases")) {
        CaseAudit a;
        const auto& idx = c.at("indices");
        a.result.index = CaseIndex{c.at("id").get<int>(), idx.at("r").get<int>(), idx.at("l").get<int>(),
                                   idx.at("k").get<int>(), idx.at("j").get<int>(), idx.at("alpha").get<int>()};
        a.result.prefactor = gauss_from(c.at("prefactor"));
        a.result.total = boundary_from(c.at("engine"));
        for (const auto& ch : c.at("channels"))
            a.result.channels.push_back(
                {ch.at("channel").get<std::string>(),
                 ch.at("provenance").get<std::string>() == "engine" ? Provenance::Engine : Provenance::Imported,
                 boundary_from(ch.at("value")), ch.at("note").get<std::string>()});
        a.result.volume_word_cancels = c.at("volume_word_cancels").get<bool>();
        if (!c.at("printed").is_null()) a.printed = boundary_from(c.at("printed"));
        a.match = c.at("match").get<bool>();
        a.root_cause = c.at("root_cause").get<std::string>();
        r.cases.push_back(std::move(a));
    }
    if (j.contains("totals")) {
        r.has_totals = true;
        const auto& t = j.at("totals");
        r.engine_total = boundary_from(t.at("engine"));
        r.printed_resum = boundary_from(t.at("printed_resum"));
        r.printed_total = boundary_from(t.at("printed_total"));
        r.printed_theorem = boundary_from(t.at("printed_theorem"));
        for (const auto& row : j.at("summation_audit"))
            r.summation.push_back({parse_boundary_tag(row.at("monomial").get<std::string>()),
                                   gauss_from(row.at("engine")), gauss_from(row.at("printed_resum")),
                                   gauss_from(row.at("printed_total"))});
        const auto& g = j.at("geometric");
        r.engine_geometric = geometric_from(g.at("engine"));
        r.printed_geometric_from_theorem = geometric_from(g.at("from_printed_theorem"));
        r.printed_geometric = geometric_from(g.at("printed"));
        for (const auto& row : g.at("rows"))
            r.geometric.push_back({parse_geometric_tag(row.at("monomial").get<std::string>()),
                                   gauss_from(row.at("engine")), gauss_from(row.at("from_printed_theorem")),
                                   gauss_from(row.at("printed"))});
    }
    for (const auto& c : j.at("invariants"))
        r.invariants.push_back(
            {c.at("name").get<std::string>(), c.at("pass").get<bool>(), c.at("detail").get<std::string>()});
    return r;
}

// ---------------------------------------------------------------------------
// LaTeX

namespace {

std::string tex_rational(const mpq_class& q) {
    mpq_class a = abs(q);
    std::string body = a.get_den() == 1 ? a.get_num().get_str() : "\\frac{" + a.get_num().get_str() + "}{" +
                                                                      a.get_den().get_str() + "}";
    return (sgn(q) < 0 ? "-" : "") + body;
}

std::string tex_number(const GaussianRational& c) {
    if (c.is_real()) return tex_rational(c.re());
    if (sgn(c.re()) == 0) return tex_rational(c.im()) + "i";
    std::string im = tex_rational(c.im());
    return "\\big(" + tex_rational(c.re()) + (sgn(c.im()) < 0 ? "" : "+") + im + "i\\big)";
}

const char* tex(BoundaryMonomial m) {
    switch (m) {
        case BoundaryMonomial::H1SQ: return "h'(0)^{2}";
        case BoundaryMonomial::H2: return "h''(0)";
        case BoundaryMonomial::SB: return "s_{\\partial M}";
        case BoundaryMonomial::AN_H1: return "a_n h'(0)";
        case BoundaryMonomial::DAN: return "\\partial_{x_n} a_n";
        case BoundaryMonomial::XP2: return "|X'|^{2}";
        case BoundaryMonomial::XP2_H1: return "|X'|^{2} h'(0)";
        case BoundaryMonomial::AN2: return "a_n^{2}";
        case BoundaryMonomial::DIVX: return "C^1_1(\\nabla^{\\partial M} X'^{*})";
        case BoundaryMonomial::X2: return "|X|^{2}";
    }
    return "?";
}

const char* tex(GeometricMonomial m) {
    switch (m) {
        case GeometricMonomial::K2: return "K^{2}";
        case GeometricMonomial::SM: return "s_M";
        case GeometricMonomial::SB: return "s_{\\partial M}";
        case GeometricMonomial::AN_K: return "a_n K";
        case GeometricMonomial::XP2: return "|X'|^{2}";
        case GeometricMonomial::XP2_K: return "|X'|^{2} K";
        case GeometricMonomial::AN2: return "a_n^{2}";
        case GeometricMonomial::DAN: return "\\partial_{x_n} a_n";
        case GeometricMonomial::DIVX: return "C^1_1(\\nabla^{\\partial M} X'^{*})";
    }
    return "?";
}

template <class Tag>
std::string tex_sum(const std::vector<std::pair<Tag, GaussianRational>>& terms) {
    std::string out;
    for (const auto& [m, c] : terms) {
        std::string n = tex_number(c);
        if (!out.empty() && n[0] != '-') out += "+";
        out += n + " " + tex(m);
    }
    return out.empty() ? "0" : out;
}

std::string tex_boundary(const BoundaryVector& v) {
    std::vector<std::pair<BoundaryMonomial, GaussianRational>> t;
    for (const auto& [m, c] : v.coeffs) t.emplace_back(m, c / GaussianRational(2));
    return tex_sum(t) + (v.is_zero() ? "" : "\\;\\pi\\Omega_3");
}

// The geometric vector in the shape of the main theorem: curvature terms
// grouped under a common 1/16.
std::string tex_theorem(const GeometricVector& g) {
    std::vector<std::pair<GeometricMonomial, GaussianRational>> curv, rest;
    for (const auto& [m, c] : g.coeffs) {
        if (m == GeometricMonomial::K2 || m == GeometricMonomial::SM || m == GeometricMonomial::SB)
            curv.emplace_back(m, c * GaussianRational(16));
        else rest.emplace_back(m, c);
    }
    std::string body = "\\frac{1}{16}\\Big(" + tex_sum(curv) + "\\Big)";
    if (!rest.empty()) {
        std::string r = tex_sum(rest);
        body += (r[0] == '-' ? "" : "+") + r;
    }
    return "\\int_{\\partial M}\\Big[" + body + "\\Big]\\pi^{3}\\,\\mathrm{dvol}_{\\partial M}";
}

}  // namespace

std::string render_latex(const AuditReport& r) {
    std::ostringstream o;
    o << "\\documentclass{article}\n\\usepackage{amsmath}\n\\usepackage{longtable}\n\\begin{document}\n";
    o << "\\section*{Boundary residue audit}\n";
    o << "\\begin{longtable}{rlll}\n\\hline\nCase & Engine & Printed & \\\\\n\\hline\n";
    for (const auto& a : r.cases) {
        o << a.result.index.id << " & $" << tex_boundary(a.result.total) << "$ & $"
          << (a.printed ? tex_boundary(*a.printed) : std::string("\\text{n/a}")) << "$ & "
          << (a.match ? "match" : "mismatch") << " \\\\\n";
    }
    o << "\\hline\n\\end{longtable}\n";
    if (r.has_totals) {
        o << "\\subsection*{Totals}\n";
        o << "Engine: $$" << tex_boundary(r.engine_total) << "$$\n";
        o << "Printed table re-sum: $$" << tex_boundary(r.printed_resum) << "$$\n";
        o << "Printed sum: $$" << tex_boundary(r.printed_total) << "$$\n";
        o << "\\subsection*{Geometric form}\n";
        o << "Engine: $$" << tex_theorem(r.engine_geometric) << "$$\n";
        o << "Printed: $$" << tex_theorem(r.printed_geometric) << "$$\n";
    }
    if (!r.invariants.empty()) {
        o << "\\subsection*{Invariants}\n\\begin{itemize}\n";
        for (const auto& c : r.invariants)
            o << "\\item " << (c.pass ? "PASS" : "FAIL") << ": \\verb|" << c.name << "|\n";
        o << "\\end{itemize}\n";
    }
    o << "\\end{document}\n";
    return o.str();
}

}  // namespace kkw
