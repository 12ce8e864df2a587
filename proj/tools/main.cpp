#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qlh/cases.hpp"
#include "qlh/noether.hpp"
#include "qlh/parser.hpp"
#include "qlh/reduce.hpp"
#include "qlh/symmetry.hpp"

namespace {

using namespace qlh;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw qlh::Error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Options {
    std::string format = "text";
    std::string command_echo;
};

int emit(const Report& rep, const Options& opt) {
    if (opt.format == "json")
        std::cout << rep.to_json();
    else
        std::cout << rep.to_text();
    return rep.fail_count() > 0 ? 1 : 0;
}

Report new_report(const Options& opt) {
    Report rep;
    rep.command = opt.command_echo;
    rep.generated_at = now_iso8601();
    return rep;
}

VectorField load_generator(const std::string& path, const PdeSpec& spec) {
    return parse_generator(read_file(path), spec);
}

ReportEntry info_entry(std::string id, std::string note, std::string kind) {
    ReportEntry e;
    e.check_id = std::move(id);
    e.kind = std::move(kind);
    e.pass = true;
    e.note = std::move(note);
    return e;
}

std::string field_str(const VectorField& vf) {
    return "xi = " + vf.xi.str() + "; tau = " + vf.tau.str() + "; phi = " + vf.phi.str() +
           "; eta = " + vf.eta.str();
}

int cmd_derive_determining(const std::string& problem, const Options& opt) {
    PdeSpec spec = parse_problem(read_file(problem));
    if (!spec.all_abstract())
        throw qlh::Error("derive-determining needs an abstract problem "
                         "(\"abstract\":[\"f\",\"g\",\"h\"])");
    DeterminingSystem sys = determining_system(spec);
    Report rep = new_report(opt);
    for (const auto& eq : sys.equations) {
        std::string mono = "1";
        if (!eq.mono.is_unit()) {
            mono.clear();
            for (auto& [a, e] : eq.mono.factors()) {
                if (!mono.empty()) mono += "*";
                mono += reg().atom(a).name;
                if (e > 1) mono += "^" + std::to_string(e);
            }
        }
        std::string id = "determining/constraint" + std::to_string(eq.constraint) + "/" + mono;
        std::string note = eq.lhs.str() + " = 0";
        if (eq.redundant_of)
            note += "  (redundant: multiple of equation #" +
                    std::to_string(*eq.redundant_of + 1) + ")";
        ReportEntry e = info_entry(id, note, "determining-equation");
        e.paper_ref = "constraint " + std::to_string(eq.constraint) + ", coefficient of " + mono;
        rep.entries.push_back(std::move(e));
    }
    for (auto& m : compare_with_listed(sys)) {
        ReportEntry e;
        e.check_id = "determining/" + m.label;
        e.kind = "determining-comparison";
        e.pass = m.matched;
        e.paper_ref = m.label;
        if (!m.matched) e.residuals.push_back(m.listed.str());
        e.note = m.matched ? ("matched " + m.mode) : m.note;
        rep.entries.push_back(std::move(e));
    }
    return emit(rep, opt);
}

int cmd_check_symmetry(const std::string& problem, const std::string& generator,
                       const Options& opt) {
    PdeSpec spec = parse_problem(read_file(problem));
    VectorField vf = load_generator(generator, spec);
    Verdict v = check_symmetry(spec, vf, "check-symmetry");
    Report rep = new_report(opt);
    ReportEntry e = ReportEntry::from_verdict(v, v.name, "symmetry");
    e.classification =
        classify_potential(vf) == SymmetryClass::Potential ? "potential" : "point";
    rep.entries.push_back(std::move(e));
    return emit(rep, opt);
}

int cmd_classify(const std::string& generator, const std::string& problem,
                 const std::vector<std::string>& params, const Options& opt) {
    PdeSpec spec;
    if (!problem.empty()) spec = parse_problem(read_file(problem));
    for (auto& p : params) spec.params.push_back(reg().param(p));
    VectorField vf = load_generator(generator, spec);
    Report rep = new_report(opt);
    ReportEntry e = info_entry("classify", field_str(vf), "classification");
    e.classification =
        classify_potential(vf) == SymmetryClass::Potential ? "potential" : "point";
    rep.entries.push_back(std::move(e));
    return emit(rep, opt);
}

int cmd_solve_ansatz(const std::string& problem, const std::vector<std::string>& basis,
                     const Options& opt) {
    PdeSpec spec = parse_problem(read_file(problem));
    std::vector<VectorField> fields;
    for (auto& b : basis) fields.push_back(load_generator(b, spec));
    std::vector<VectorField> out = solve_ansatz(spec, fields);
    Report rep = new_report(opt);
    rep.entries.push_back(info_entry("solve-ansatz/dimension",
                                     "solution space dimension " + std::to_string(out.size()),
                                     "ansatz"));
    for (std::size_t i = 0; i < out.size(); ++i)
        rep.entries.push_back(info_entry("solve-ansatz/field" + std::to_string(i + 1),
                                         field_str(out[i]), "ansatz"));
    return emit(rep, opt);
}

int cmd_derive_noether(const std::string& problem, const Options& opt) {
    PdeSpec spec = parse_problem(read_file(problem));
    std::vector<Expression> eqs = noether_constraints(spec);
    Report rep = new_report(opt);
    for (std::size_t i = 0; i < eqs.size(); ++i)
        rep.entries.push_back(info_entry("derive-noether/eq" + std::to_string(i + 1),
                                         eqs[i].str() + " = 0", "noether-constraints"));
    return emit(rep, opt);
}

int cmd_build_conserved(const std::string& problem, const std::string& alpha,
                        const std::string& beta, const std::string& gamma,
                        const Options& opt) {
    PdeSpec spec = parse_problem(read_file(problem));
    Scope sc = scope_solution_rhs(spec);
    NoetherAnsatz ansatz{parse_expr(alpha, sc), parse_expr(beta, sc), parse_expr(gamma, sc)};
    ConservedVector cv = build_conserved(spec, ansatz);
    Report rep = new_report(opt);
    rep.entries.push_back(info_entry("build-conserved/T1", cv.T1.str(), "conserved-vector"));
    rep.entries.push_back(info_entry("build-conserved/T2", cv.T2.str(), "conserved-vector"));
    rep.entries.push_back(
        info_entry("build-conserved/characteristic", cv.W->str(), "conserved-vector"));
    Verdict v = divergence_check(spec, cv.T1, cv.T2, cv.W, "build-conserved/divergence");
    rep.entries.push_back(ReportEntry::from_verdict(v, v.name, "conservation"));
    return emit(rep, opt);
}

int cmd_check_conservation(const std::string& problem, const std::string& conserved,
                           const std::string& characteristic, const Options& opt) {
    PdeSpec spec = parse_problem(read_file(problem));
    ConservedVector cv = parse_conserved(read_file(conserved), spec);
    std::optional<Expression> W;
    if (!characteristic.empty()) W = parse_expr(characteristic, scope_jet(spec));
    Verdict v = divergence_check(spec, cv.T1, cv.T2, W, "check-conservation");
    Report rep = new_report(opt);
    rep.entries.push_back(ReportEntry::from_verdict(v, v.name, "conservation"));
    return emit(rep, opt);
}

int cmd_check_solution(const std::string& problem, const std::string& solution,
                       const Options& opt) {
    PdeSpec spec = parse_problem(read_file(problem));
    Candidate c = parse_solution(read_file(solution), spec);
    Verdict v = check_solution(spec, c, "check-solution");
    Report rep = new_report(opt);
    rep.entries.push_back(ReportEntry::from_verdict(v, v.name, "solution"));
    return emit(rep, opt);
}

int cmd_reduce(const std::string& problem, const std::vector<double>& integrate,
               const std::string& csv, const std::vector<std::string>& binds,
               const Options& opt) {
    PdeSpec spec = parse_problem(read_file(problem));
    ReducedOde ode = reduced_ode(spec);
    Report rep = new_report(opt);
    rep.entries.push_back(
        info_entry("reduce/ode", ode.residual.str() + " = 0", "reduction"));

    if (!integrate.empty()) {
        NumericPoint extra;
        for (auto& b : binds) {
            auto eq = b.find('=');
            if (eq == std::string::npos)
                throw qlh::Error("--bind expects name=value, got '" + b + "'");
            extra[reg().param(b.substr(0, eq))] = std::stod(b.substr(eq + 1));
        }
        double x0 = integrate[0], x1 = integrate[1], step = integrate[2];
        double F0 = integrate[3], Fp0 = integrate[4];
        IntegrationReport ir = integrate_ode(ode, F0, Fp0, x0, x1, step, extra);
        ReportEntry e;
        e.check_id = "reduce/integrate";
        e.kind = "reduction";
        e.pass = ir.max_residual < 1e-6;
        e.numeric_max_abs = ir.max_residual;
        e.note = "grid [" + std::to_string(x0) + ", " + std::to_string(x1) + "], step " +
                 std::to_string(step) + ", " + std::to_string(ir.samples.size()) + " samples";
        rep.entries.push_back(std::move(e));

        if (!csv.empty()) {
            std::ofstream out(csv);
            if (!out) throw qlh::Error("cannot write CSV file: " + csv);
            out << "x,F,F',residual\n";
            out.precision(15);
            for (auto& s : ir.samples) {
                out << s.x << "," << s.F << "," << s.Fp << ",";
                if (s.residual) out << *s.residual;
                out << "\n";
            }
        }
    }
    return emit(rep, opt);
}

int cmd_paper_suite(const std::string& oracle_path, const Options& opt) {
    Report rep = run_paper_suite();
    rep.command = opt.command_echo;
    if (oracle_path.empty()) return emit(rep, opt);

    auto oracle = load_oracle(read_file(oracle_path));
    auto mismatches = compare_oracle(rep, oracle);
    if (opt.format == "json") {
        std::cout << rep.to_json();
    } else {
        std::cout << rep.to_text();
        if (mismatches.empty()) {
            std::cout << "oracle: all " << oracle.size() << " entries match\n";
        } else {
            for (auto& m : mismatches) std::cout << "oracle mismatch: " << m << "\n";
        }
    }
    return mismatches.empty() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"symmetry and conservation-law verification for f(x)u_tt = "
                 "[g(x,u)u_x + h(x,u)]_x and its potential system"};
    app.require_subcommand(1);

    Options opt;
    for (int i = 0; i < argc; ++i) opt.command_echo += (i ? " " : "") + std::string(argv[i]);
    app.add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();

    std::string problem, generator, solution, conserved, characteristic;
    std::string alpha, beta = "0", gamma = "0", oracle, csv;
    std::vector<std::string> basis, params, binds;
    std::vector<double> integrate;

    auto* dd = app.add_subcommand("derive-determining",
                                  "derive the determining system for abstract f, g, h");
    dd->add_option("--problem", problem)->required();

    auto* cs = app.add_subcommand("check-symmetry",
                                  "verify a generator against the potential system");
    cs->add_option("--problem", problem)->required();
    cs->add_option("--generator", generator)->required();

    auto* cl = app.add_subcommand("classify", "point vs potential classification");
    cl->add_option("--generator", generator)->required();
    cl->add_option("--problem", problem, "optional problem doc declaring parameters");
    cl->add_option("--param", params, "declare a parameter name (repeatable)");

    auto* sa = app.add_subcommand("solve-ansatz",
                                  "solve for symmetry combinations of basis fields");
    sa->add_option("--problem", problem)->required();
    sa->add_option("--basis", basis, "generator doc files")->required()->expected(-1);

    auto* dn = app.add_subcommand("derive-noether",
                                  "derive the gauge constraint system for alpha, beta, gamma");
    dn->add_option("--problem", problem)->required();

    auto* bc = app.add_subcommand("build-conserved",
                                  "build the conserved vector for a gauge ansatz");
    bc->add_option("--problem", problem)->required();
    bc->add_option("--alpha", alpha)->required();
    bc->add_option("--beta", beta);
    bc->add_option("--gamma", gamma);

    auto* cc = app.add_subcommand("check-conservation", "on-shell divergence test");
    cc->add_option("--problem", problem)->required();
    cc->add_option("--conserved", conserved)->required();
    cc->add_option("--characteristic", characteristic,
                   "expression; enforces the exact characteristic identity");

    auto* so = app.add_subcommand("check-solution", "verify a candidate solution");
    so->add_option("--problem", problem)->required();
    so->add_option("--solution", solution)->required();

    auto* rd = app.add_subcommand("reduce", "static reduction u = F(x), v = 0");
    rd->add_option("--problem", problem)->required();
    rd->add_option("--integrate", integrate, "x0 x1 step F0 F0'")->expected(5);
    rd->add_option("--csv", csv, "write samples as CSV (x, F, F', residual)");
    rd->add_option("--bind", binds, "numeric parameter binding name=value (repeatable)");

    auto* ps = app.add_subcommand("paper-suite", "run the built-in adjudication suite");
    ps->add_option("--oracle", oracle, "expected-verdict file to compare against");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (dd->parsed()) return cmd_derive_determining(problem, opt);
        if (cs->parsed()) return cmd_check_symmetry(problem, generator, opt);
        if (cl->parsed()) return cmd_classify(generator, problem, params, opt);
        if (sa->parsed()) return cmd_solve_ansatz(problem, basis, opt);
        if (dn->parsed()) return cmd_derive_noether(problem, opt);
        if (bc->parsed()) return cmd_build_conserved(problem, alpha, beta, gamma, opt);
        if (cc->parsed()) return cmd_check_conservation(problem, conserved, characteristic, opt);
        if (so->parsed()) return cmd_check_solution(problem, solution, opt);
        if (rd->parsed()) return cmd_reduce(problem, integrate, csv, binds, opt);
        if (ps->parsed()) return cmd_paper_suite(oracle, opt);
    } catch (const qlh::ConstraintViolation& e) {
        std::cerr << "error: " << e.what() << "\n";
        for (auto& r : e.residuals) std::cerr << "  residual: " << r.str() << " = 0\n";
        return 2;
    } catch (const qlh::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
