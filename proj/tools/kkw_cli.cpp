#include "kkw/report.hpp"
#include "kkw/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

using namespace kkw;

struct Common {
    std::string format = "text";
    std::string out;
    std::string constants;
    std::string reference;
    std::string frame = "printed";
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "json", "latex"}));
    cmd->add_option("--out", c.out, "Write the report to this file instead of stdout");
    cmd->add_option("--constants", c.constants, "Imported constants file");
    cmd->add_option("--reference", c.reference, "Printed reference values file");
    cmd->add_option("--frame", c.frame, "Second coframe jet convention")
        ->check(CLI::IsMember({"printed", "geometric"}));
}

std::string render(const AuditReport& r, const std::string& format) {
    if (format == "json") return render_json(r);
    if (format == "latex") return render_latex(r);
    return render_text(r);
}

// Returns false when the output file cannot be written.
bool emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return static_cast<bool>(std::cout);
    }
    std::ofstream f(path, std::ios::binary);
    f << text;
    return static_cast<bool>(f);
}

struct Inputs {
    ModelOptions model;
    ConstantsTable imports;
    ReferenceValues reference;
};

Inputs load_inputs(const Common& c) {
    Inputs in;
    in.model.frame = c.frame == "geometric" ? FrameConvention::Geometric : FrameConvention::Printed;
    std::string dir = default_data_dir();
    in.imports = load_constants(c.constants.empty() ? dir + "/imported_constants.txt" : c.constants);
    in.reference = load_reference(c.reference.empty() ? dir + "/reference_values.txt" : c.reference);
    return in;
}

int run_compute(const Common& c, int case_id) {
    Inputs in = load_inputs(c);
    SymbolLibrary lib(in.model);
    std::vector<CaseResult> results;
    if (case_id > 0) results.push_back(evaluate_case(case_by_id(case_id), lib, in.imports));
    else results = evaluate_all(lib, in.imports);
    AuditReport r = build_audit(results, in.reference, in.model.frame);
    return emit(render(r, c.format), c.out) ? 0 : 1;
}

int run_verify(const Common& c, int trials, std::uint64_t seed, bool tangential) {
    Inputs in = load_inputs(c);
    SymbolLibrary lib(in.model);
    std::vector<CaseResult> results = evaluate_all(lib, in.imports);
    AuditReport r = build_audit(results, in.reference, in.model.frame);
    verify::Options opts;
    opts.oracle_trials = trials;
    opts.seed = seed;
    opts.tangential_pairs = tangential;
    r.seed = seed;
    r.oracle_trials = trials;
    r.invariants = verify::run_all(opts, lib, in.imports, results);
    if (!emit(render(r, c.format), c.out)) return 1;
    return r.invariants_pass() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Boundary residue functional for perturbed Dirac operators on 5-manifolds with boundary"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    Common compute_opts;
    int case_id = 0;
    bool all = false;
    auto* compute = app.add_subcommand("compute", "Evaluate cases and compare with the printed values");
    auto* case_opt = compute->add_option("--case", case_id, "Case number")->check(CLI::Range(1, 15));
    compute->add_flag("--all", all, "All fifteen cases, totals and geometric form")->excludes(case_opt);
    add_common(compute, compute_opts);

    Common verify_opts;
    int trials = 200;
    std::uint64_t seed = 1;
    auto* verify = app.add_subcommand("verify", "Run the invariant suite and the full audit");
    verify->add_option("--oracle-trials", trials, "Random trace oracle comparisons")->check(CLI::NonNegativeNumber);
    verify->add_option("--seed", seed, "Random seed");
    bool tangential = false;
    verify->add_flag("--tangential-pairs", tangential, "Include the |alpha| = 1 pairs in the float oracle");
    add_common(verify, verify_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*compute) return run_compute(compute_opts, case_id);
        return run_verify(verify_opts, trials, seed, tangential);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const InvariantError& e) {
        std::cerr << "internal invariant failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
