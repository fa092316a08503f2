#include "rmra/cli.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>

#include <CLI11.hpp>

#include "rmra/catalog.hpp"
#include "rmra/cfe.hpp"
#include "rmra/coarray.hpp"
#include "rmra/robustness.hpp"
#include "rmra/search.hpp"

namespace rmra::cli {

namespace {

struct SearchArgs {
    int n = 0;
    std::string fixation = "standard";
    std::optional<int> first;
    std::optional<int> last;
    std::optional<Count> early_stop;
    std::optional<Count> budget;
    int persist_stages = 0;
    std::optional<int> l_start;
    unsigned workers = 1;
    std::optional<std::string> resume;
    std::optional<std::string> out;
    bool progress = false;
};

struct CfeArgs {
    std::optional<int> n;
    std::optional<std::string> range;
    std::optional<std::string> emit;
};

struct ReportArgs {
    std::string positions;
    std::string emit = "weights-csv";
    std::optional<int> failed_sensor;
};

struct CatalogArgs {
    std::string file = "catalog.jsonl";
    std::string query;
    std::string format = "jsonl";
};

class UsageError : public Error {
public:
    using Error::Error;
};

void print_outcome(std::ostream& out, const SearchOutcome& o) {
    out << "n=" << o.n << " fixation=" << o.fixation.label() << '\n';
    for (const auto& st : o.stages) {
        out << "stage L=" << st.aperture;
        if (st.infeasible) {
            out << " infeasible\n";
            continue;
        }
        out << " candidates=" << st.candidates_evaluated << '/' << st.search_space
            << " valid=" << st.valid_arrays.size() << (st.truncated ? " (early stop)" : "")
            << " time=" << std::fixed << std::setprecision(3) << st.elapsed.count() << "s\n";
        out.unsetf(std::ios::floatfield);
    }
    if (o.optimal_aperture == 0) {
        out << "no valid array found\n";
        return;
    }
    out << "optimal aperture: " << o.optimal_aperture << " (" << to_string(o.optimality) << ")\n";
    out << "optimal arrays: " << o.optimal_arrays.size() << '\n';
    for (const auto& a : o.optimal_arrays) out << "  " << a << '\n';
}

void write_records(const std::string& path, const SearchOutcome& o, std::ostream& out) {
    Catalog catalog{std::filesystem::path(path)};
    const bool proven = o.optimality == Optimality::proven;
    std::size_t added = 0;
    for (const auto& a : o.optimal_arrays) {
        added += catalog.insert(CatalogRecord::describe(
            a, proven ? Generator::search_optimal : Generator::search_near_optimal,
            proven ? RecordOptimality::proven : RecordOptimality::frontier, o.fixation.label()));
    }
    out << "catalog " << path << ": " << added << " new record(s)\n";
}

int run_search(const SearchArgs& args, std::ostream& out, std::ostream& err) {
    SearchConfig cfg;
    cfg.n = args.n;
    if (args.fixation == "endpoints") {
        cfg.fixation = Fixation::endpoints_only();
    } else if (args.fixation == "standard") {
        cfg.fixation = Fixation::standard();
    } else if (args.fixation == "custom") {
        if (!args.first || !args.last) throw UsageError("custom fixation needs --first and --last");
        cfg.fixation = Fixation::custom(*args.first, *args.last);
    } else {
        throw UsageError("unknown fixation '" + args.fixation + "'");
    }
    if (args.fixation != "custom" && (args.first || args.last)) {
        throw UsageError("--first/--last only apply to --fixation custom");
    }
    cfg.early_stop = args.early_stop;
    if (args.budget) cfg.budget = *args.budget;
    cfg.persist_stages = args.persist_stages;
    cfg.l_start = args.l_start;
    cfg.workers = args.workers;
    if (args.resume) cfg.checkpoint = *args.resume;
    if (args.progress) {
        cfg.on_progress = [&err](const SearchProgress& p) {
            err << "L=" << p.aperture << ' ' << p.evaluated << '/' << p.stage_size
                << " valid=" << p.valid << " rate=" << static_cast<long long>(p.rate) << "/s\n";
        };
    }

    const bool near = cfg.early_stop || cfg.fixation.kind == Fixation::Kind::custom;
    try {
        const auto outcome = near ? find_near_optimal(cfg) : find_optimal(cfg);
        print_outcome(out, outcome);
        if (args.out) write_records(*args.out, outcome, out);
        return kOk;
    } catch (const BudgetExceeded& e) {
        print_outcome(out, e.partial());
        if (args.out) write_records(*args.out, e.partial(), out);
        err << "aborted: " << e.what() << '\n';
        return kAborted;
    }
}

int run_validate(const std::string& positions, std::ostream& out) {
    const auto a = parse_positions(positions);
    const auto r = assess(a, AssessMode::full);
    out << "array: " << a << " n=" << a.size() << " L=" << a.aperture() << '\n';
    out << "healthy: ";
    if (r.healthy_ok) {
        out << "ok\n";
    } else {
        out << "violated at lag " << *r.first_weak_lag << '\n';
    }
    out << "failure analysis (interior sensors):\n";
    if (r.per_sensor.empty()) out << "  none\n";
    for (const auto& sv : r.per_sensor) {
        out << "  sensor " << sv.position << ": ";
        if (sv.verdict.ok) {
            out << "ok\n";
        } else {
            out << "hole at lag " << *sv.verdict.first_hole << '\n';
        }
    }
    out << "essential: [";
    for (std::size_t i = 0; i < r.essential.size(); ++i) out << (i ? "," : "") << r.essential[i];
    out << "]\n";
    out << "fragility: " << r.fragility.numerator << '/' << r.fragility.denominator << " ("
        << std::fixed << std::setprecision(4) << r.fragility.value() << ")\n";
    out.unsetf(std::ios::floatfield);
    out << "is_tfrsa: " << (r.is_tfrsa ? "true" : "false") << '\n';
    return r.is_tfrsa ? kOk : kValidationFailed;
}

void emit_weights_csv(std::ostream& out, const WeightFunction& w) {
    out << "lag,weight\n";
    for (int m = -w.max_lag(); m <= w.max_lag(); ++m) out << m << ',' << w(m) << '\n';
}

int run_cfe(const CfeArgs& args, std::ostream& out) {
    if (args.range) {
        const auto colon = args.range->find(':');
        if (colon == std::string::npos) throw UsageError("--range expects <lo>:<hi>");
        int lo = 0;
        int hi = 0;
        try {
            lo = std::stoi(args.range->substr(0, colon));
            hi = std::stoi(args.range->substr(colon + 1));
        } catch (const std::logic_error&) {
            throw UsageError("--range expects <lo>:<hi>");
        }
        if (lo > hi) throw UsageError("--range lower bound exceeds upper bound");
        const auto summary = validate_range(lo, hi);
        out << "range " << summary.n_lo << ':' << summary.n_hi
            << " mega_count=" << summary.mega_count << '\n';
        for (const auto& f : summary.failures) {
            out << "  n=" << f.n << ' ' << f.reason << ": " << f.detail << '\n';
        }
        return summary.mega_count == 0 ? kOk : kValidationFailed;
    }
    if (!args.n) throw UsageError("cfe needs --n or --range");
    const auto c = cfe_array(*args.n);
    const std::string emit = args.emit.value_or("");
    if (emit == "positions") {
        const auto pos = c.array.positions();
        for (std::size_t i = 0; i < pos.size(); ++i) out << (i ? "," : "") << pos[i];
        out << '\n';
    } else if (emit == "ies") {
        out << format_ies(c.ies) << '\n';
    } else if (emit == "weights") {
        emit_weights_csv(out, weight_function(c.array));
    } else if (emit.empty()) {
        out << "n=" << c.n << " p=" << c.p << '\n'
            << "positions: " << c.array << '\n'
            << "aperture: " << c.aperture << '\n'
            << "dof: " << c.dof << '\n'
            << "ies: " << format_ies(c.ies) << '\n';
    } else {
        throw UsageError("unknown --emit '" + emit + "'");
    }
    return kOk;
}

int run_report(const ReportArgs& args, std::ostream& out) {
    if (args.emit != "weights-csv") throw UsageError("unknown --emit '" + args.emit + "'");
    const auto a = parse_positions(args.positions);
    auto w = weight_function(a);
    if (args.failed_sensor) w = weight_after_removal(a, w, *args.failed_sensor);
    emit_weights_csv(out, w);
    return kOk;
}

int run_catalog(const CatalogArgs& args, std::ostream& out) {
    const auto q = CatalogQuery::parse(args.query);
    ExportFormat format = ExportFormat::jsonl;
    if (args.format == "csv") {
        format = ExportFormat::csv;
    } else if (args.format != "jsonl") {
        throw UsageError("unknown --format '" + args.format + "'");
    }
    Catalog catalog{std::filesystem::path(args.file)};
    catalog.export_to(out, format, q);
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Robust minimum redundancy array synthesis and validation", "rmra"};
    app.require_subcommand(1);

    SearchArgs search;
    auto* s = app.add_subcommand("search", "Staged exhaustive search for maximum-aperture TFRSAs");
    s->add_option("--n", search.n, "Sensor count")->required();
    s->add_option("--fixation", search.fixation, "endpoints, standard or custom")
        ->check(CLI::IsMember({"endpoints", "standard", "custom"}));
    s->add_option("--first", search.first, "Fixed ULA prefix length (custom fixation)");
    s->add_option("--last", search.last, "Fixed ULA suffix length (custom fixation)");
    s->add_option("--early-stop", search.early_stop, "Valid arrays per stage before stopping it");
    s->add_option("--budget", search.budget, "Largest stage size to attempt");
    s->add_option("--persist-stages", search.persist_stages, "Extra empty stages to scan");
    s->add_option("--l-start", search.l_start, "First aperture (default n)");
    s->add_option("--workers", search.workers, "Worker threads")->check(CLI::PositiveNumber);
    s->add_option("--resume", search.resume, "Checkpoint file to resume from and update");
    s->add_option("--out", search.out, "Catalog file receiving the optimal arrays");
    s->add_flag("--progress", search.progress, "Report progress on stderr");

    std::string validate_positions;
    auto* v = app.add_subcommand("validate", "Full robustness report for an array");
    v->add_option("--positions", validate_positions, "Comma-separated positions")->required();

    CfeArgs cfe;
    auto* c = app.add_subcommand("cfe", "Closed-form family: generate or validate over a range");
    c->add_option("--n", cfe.n, "Sensor count (>= 8)");
    c->add_option("--range", cfe.range, "Validate every n in <lo>:<hi>");
    c->add_option("--emit", cfe.emit, "positions, ies or weights")
        ->check(CLI::IsMember({"positions", "ies", "weights"}));

    ReportArgs report;
    auto* r = app.add_subcommand("report", "Weight function as CSV over [-L, L]");
    r->add_option("--positions", report.positions, "Comma-separated positions")->required();
    r->add_option("--emit", report.emit, "weights-csv");
    r->add_option("--failed-sensor", report.failed_sensor, "Sensor removed before counting");

    CatalogArgs catalog;
    auto* k = app.add_subcommand("catalog", "Filtered export of a catalog file");
    k->add_option("--file", catalog.file, "Catalog (JSON-Lines)");
    k->add_option("--query", catalog.query, "Filter, e.g. \"n=12,aperture=20:30\"");
    k->add_option("--format", catalog.format, "jsonl or csv")
        ->check(CLI::IsMember({"jsonl", "csv"}));

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*s) return run_search(search, out, err);
        if (*v) return run_validate(validate_positions, out);
        if (*c) return run_cfe(cfe, out);
        if (*r) return run_report(report, out);
        if (*k) return run_catalog(catalog, out);
    } catch (const Overflow& e) {
        err << "aborted: " << e.what() << '\n';
        return kAborted;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

}  // namespace rmra::cli
