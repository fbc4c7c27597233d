#include "cli.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "kneser/bounds.hpp"
#include "kneser/census.hpp"
#include "kneser/constructions.hpp"
#include "kneser/family_io.hpp"
#include "kneser/search.hpp"

namespace kneser::cli {

namespace {

struct BudgetFlags {
    std::uint64_t max_nodes = 1'000'000'000;
    double max_seconds = 0;
    unsigned threads = 0;

    void attach(CLI::App *cmd)
    {
        cmd->add_option("--max-nodes", max_nodes, "Search node limit")->capture_default_str();
        cmd->add_option("--max-seconds", max_seconds, "Search wall-clock limit in seconds (0 = none)");
        cmd->add_option("--threads", threads, "Search worker threads (0 = all cores)");
    }

    SearchBudget budget() const
    {
        SearchBudget b;
        b.node_limit = max_nodes;
        if (max_seconds > 0)
            b.time_limit = max_seconds;
        b.threads = threads;
        return b;
    }
};

std::string join(const std::vector<std::string> &parts, const char *sep)
{
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i)
        out += (i ? sep : "") + parts[i];
    return out;
}

// Valid determining instance, or a message naming the violated constraint.
bool check_instance(int n, int k, std::ostream &err)
{
    if (auto why = instance_violation(n, k, Regime::Determining)) {
        err << "error: " << *why << '\n';
        return false;
    }
    return true;
}

int cmd_det(int n, int k, const BudgetFlags &flags, std::ostream &out, std::ostream &err)
{
    if (!check_instance(n, k, err))
        return kExitMalformed;
    const auto instance = Instance::determining(n, k);
    const auto budget = flags.budget();

    int value = 0;
    std::string certificate;
    std::vector<std::string> rules;
    std::optional<Family> witness;

    if (auto exact = known_exact(instance)) {
        value = exact->value;
        certificate = to_string(Certificate::ClosedForm);
        rules = exact->rules;
        if (n == 2 * k + 1 && k >= 2) {
            witness = det_set_odd(k);
        } else {
            auto decision = det_decision(instance, value, budget);
            witness = decision.witness;
        }
    } else {
        const DetResult result = det_exact(instance, budget);
        err << "nodes=" << result.nodes << '\n';
        if (!result.value) {
            out << "n=" << n << "\nk=" << k << "\ndet=unknown\ncertificate=" << to_string(result.certificate)
                << "\nproven_lower=" << result.proven_lower << '\n';
            return kExitBudget;
        }
        value = *result.value;
        certificate = to_string(result.certificate);
        witness = result.witness;
    }

    out << "n=" << n << "\nk=" << k << "\ndet=" << value << "\ncertificate=" << certificate << '\n';
    if (!rules.empty())
        out << "rules=" << join(rules, "+") << '\n';
    out << "witness=" << (witness ? family_to_line(*witness) : std::string("none")) << '\n';
    return kExitOk;
}

int cmd_bounds(int n, int k, std::ostream &out, std::ostream &err)
{
    if (!check_instance(n, k, err))
        return kExitMalformed;
    const auto report = bounds_report(Instance::determining(n, k));
    out << "n=" << n << "\nk=" << k << "\nlower=" << report.lower << "\nlower_rules=" << join(report.lower_rules, "+")
        << "\nupper=" << report.upper << "\nupper_rules=" << join(report.upper_rules, "+") << "\nexact=";
    if (report.exact)
        out << *report.exact << "\nexact_rules=" << join(report.exact_rules, "+") << '\n';
    else
        out << "unknown\n";
    return kExitOk;
}

void emit_certified(const Family &family, std::ostream &out)
{
    auto record = family_to_json(family);
    record["certified"] = family.instance().regime() == Regime::Auxiliary ? is_auxiliary(family)
                                                                           : is_determining(family);
    out << record.dump() << '\n';
}

// Applies `step` to every family record read from `input`.
int transform_families(std::istream &input, const std::function<Family(const Family &)> &step,
                       std::ostream &out, std::ostream &err)
{
    std::string line;
    int line_no = 0;
    int status = kExitOk;
    while (std::getline(input, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        try {
            emit_certified(step(parse_family_line(line)), out);
        } catch (const invalid_input &e) {
            err << "error: line " << line_no << ": " << e.what() << '\n';
            status = kExitMalformed;
        }
    }
    return status;
}

int cmd_verify(std::istream &input, std::ostream &out, std::ostream &err)
{
    std::string line;
    int line_no = 0;
    bool malformed = false;
    bool failed = false;
    while (std::getline(input, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        try {
            const Family family = parse_family_line(line);
            if (has_duplicate_sets(family))
                err << "warning: line " << line_no << ": family repeats a set\n";
            if (auto pair = first_unseparated_pair(family)) {
                out << "FAIL " << pair->first << ' ' << pair->second << '\n';
                failed = true;
            } else if (family.instance().regime() == Regime::Auxiliary && !uncovered_elements(family).empty()) {
                out << "FAIL uncovered " << uncovered_elements(family).front() << '\n';
                failed = true;
            } else {
                out << "PASS\n";
            }
        } catch (const invalid_input &e) {
            err << "error: line " << line_no << ": " << e.what() << '\n';
            out << "ERROR\n";
            malformed = true;
        }
    }
    if (malformed)
        return kExitMalformed;
    return failed ? kExitVerifyFail : kExitOk;
}

int cmd_census(int r, const BudgetFlags &flags, std::ostream &out, std::ostream &err)
{
    if (r < 2 || r > 20) {
        err << "error: census needs 2 <= r <= 20\n";
        return kExitMalformed;
    }
    const auto record = f_count(r, flags.budget());
    out << "r,n,k,det,method\n";
    for (const auto &m : record.members)
        out << r << ',' << m.n << ',' << m.k << ',' << m.det << ',' << to_string(m.method) << '\n';
    err << "f(" << r << ")=" << record.f << " F(" << r << ")=" << record.F << '\n';
    if (record.partial()) {
        err << "partial: " << record.unresolved.size() << " pairs unresolved within budget\n";
        return kExitBudget;
    }
    return kExitOk;
}

int cmd_table(int max_n, bool with_search, const BudgetFlags &flags, std::ostream &out, std::ostream &err)
{
    if (max_n < 3) {
        err << "error: table needs max_n >= 3\n";
        return kExitMalformed;
    }
    int status = kExitOk;
    out << "n,k,lower,upper,exact,det\n";
    for (int n = 3; n <= max_n; ++n) {
        for (int k = 1; 2 * k < n; ++k) {
            const auto instance = Instance::determining(n, k);
            const auto report = bounds_report(instance);
            std::string exact = report.exact ? std::to_string(*report.exact) : "";
            std::string det = exact;
            if (!report.exact && with_search) {
                const auto result = det_exact(instance, flags.budget());
                if (result.value)
                    det = std::to_string(*result.value);
                else
                    status = kExitBudget;
            }
            out << n << ',' << k << ',' << report.lower << ',' << report.upper << ',' << exact << ',' << det << '\n';
        }
    }
    return status;
}

int cmd_diagram(int max_n, std::ostream &out, std::ostream &err)
{
    if (max_n < 3) {
        err << "error: diagram needs max_n >= 3\n";
        return kExitMalformed;
    }
    out << "n,k,classification,value_or_bound,provenance\n";
    for (int n = 3; n <= max_n; ++n) {
        for (int k = 1; 2 * k <= n; ++k) {
            out << n << ',' << k << ',';
            if (n <= 2 * k) {
                out << "Invalid,0,n<=2k\n";
                continue;
            }
            const auto report = bounds_report(Instance::determining(n, k));
            if (report.exact)
                out << "ExactKnown," << *report.exact << ',' << join(report.exact_rules, "+") << '\n';
            else
                out << "UpperBoundOnly," << report.upper << ',' << join(report.upper_rules, "+") << '\n';
        }
    }
    return kExitOk;
}

std::istream *open_input(const std::string &path, std::istream &fallback, std::ifstream &file)
{
    if (path.empty() || path == "-")
        return &fallback;
    file.open(path);
    return file ? &file : nullptr;
}

} // namespace

int run(const std::vector<std::string> &args, std::istream &in, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Determining sets of Kneser graphs K(n,k)", "kneser"};
    app.require_subcommand(1);

    BudgetFlags flags;
    int n = 0, k = 0, r = 0, param = 0, max_n = 0;
    bool with_search = false;
    std::string rule, input_path;

    auto *det = app.add_subcommand("det", "Exact determining number with a witness family");
    det->add_option("n", n)->required();
    det->add_option("k", k)->required();
    flags.attach(det);

    auto *bounds = app.add_subcommand("bounds", "Lower/upper bounds and closed-form exact value");
    bounds->add_option("n", n)->required();
    bounds->add_option("k", k)->required();

    auto *construct = app.add_subcommand("construct", "Run a construction and certify its output");
    construct->add_option("rule", rule, "triangular | aux | det-odd | extend | reduce | lift")
        ->required()
        ->check(CLI::IsMember({"triangular", "aux", "det-odd", "extend", "reduce", "lift"}));
    construct->add_option("param", param, "r for triangular, k for aux and det-odd");
    construct->add_option("--input", input_path, "Family records for extend/reduce/lift (default stdin)");

    auto *verify = app.add_subcommand("verify", "Check family records, one per line");
    verify->add_option("file", input_path, "Family records (default stdin)");

    auto *census = app.add_subcommand("census", "CSV of all K(n,k) with determining number r");
    census->add_option("r", r)->required();
    flags.attach(census);

    auto *table = app.add_subcommand("table", "CSV of bounds for all valid (n,k) with n <= max_n");
    table->add_option("max_n", max_n)->required();
    table->add_flag("--search", with_search, "Fill the det column by exact search where no closed form applies");
    flags.attach(table);

    auto *diagram = app.add_subcommand("diagram", "CSV region classification (exact value vs upper bound)");
    diagram->add_option("max_n", max_n)->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitMalformed;
    }

    try {
        if (det->parsed())
            return cmd_det(n, k, flags, out, err);
        if (bounds->parsed())
            return cmd_bounds(n, k, out, err);
        if (census->parsed())
            return cmd_census(r, flags, out, err);
        if (table->parsed())
            return cmd_table(max_n, with_search, flags, out, err);
        if (diagram->parsed())
            return cmd_diagram(max_n, out, err);

        std::ifstream file;
        std::istream *input = open_input(input_path, in, file);
        if (!input) {
            err << "error: cannot open " << input_path << '\n';
            return kExitMalformed;
        }
        if (verify->parsed())
            return cmd_verify(*input, out, err);

        if (rule == "triangular" || rule == "aux" || rule == "det-odd") {
            if (rule == "aux") {
                const auto trace = aux_set(param);
                for (const auto &step : trace.steps)
                    err << "step " << step.rule << " (" << step.input.n() << "," << step.input.k() << ") -> ("
                        << step.output.n() << "," << step.output.k() << ")\n";
                emit_certified(trace.final, out);
            } else {
                emit_certified(rule == "triangular" ? construct_triangular(param) : det_set_odd(param), out);
            }
            return kExitOk;
        }
        const std::function<Family(const Family &)> step =
            rule == "extend" ? extend_n : rule == "reduce" ? reduce_n : lift_nk;
        return transform_families(*input, step, out, err);
    } catch (const invalid_input &e) {
        err << "error: " << e.what() << '\n';
        return kExitMalformed;
    } catch (const kneser::out_of_range &e) {
        err << "error: " << e.what() << '\n';
        return kExitMalformed;
    }
}

} // namespace kneser::cli
