#include "cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <thread>

#include "eisenpack/asymptotics.hpp"
#include "eisenpack/concat.hpp"
#include "eisenpack/errors.hpp"
#include "extended_report.hpp"

namespace eisenpack::cli {

namespace {

using nlohmann::json;

std::string fmt(double v, const char* spec = "%.15g") {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

void print_error(std::ostream& err, const std::string& category, const std::string& message) {
    err << "error: category=" << category << " message=\"" << message << "\"\n";
}

double parse_y_double(const std::string& literal) {
    try {
        const auto slash = literal.find('/');
        if (slash == std::string::npos) {
            std::size_t used = 0;
            const double v = std::stod(literal, &used);
            if (used != literal.size()) throw std::invalid_argument("trailing characters");
            return v;
        }
        const double num = std::stod(literal.substr(0, slash));
        const double den = std::stod(literal.substr(slash + 1));
        if (den == 0.0) throw std::invalid_argument("zero denominator");
        return num / den;
    } catch (const std::exception&) {
        throw std::invalid_argument("y: expected decimal or fraction, got '" + literal + "'");
    }
}

json report_to_json(const BoundReport& r) {
    json j;
    j["family"] = to_string(r.family);
    j["Q"] = r.Q;
    if (r.p != 0) {
        j["p"] = r.p;
        j["r"] = r.r;
    }
    if (r.y) j["y"] = *r.y;
    j["ell"] = r.ell;
    if (r.c) j["c"] = *r.c;
    j["lattice_term"] = r.lattice_term;
    j["codes_term"] = r.codes_term;
    j["lambda_lower"] = r.lambda_lower;
    if (r.ell_clamped) j["ell_clamped"] = true;
    return j;
}

const char* kCsvHeader = "family,Q,p,r,y,ell,c,lattice_term,codes_term,lambda_lower";

std::string report_to_csv(const BoundReport& r) {
    std::ostringstream os;
    os << to_string(r.family) << ',' << r.Q << ',';
    if (r.p != 0) os << r.p;
    os << ',';
    if (r.p != 0) os << r.r;
    os << ',';
    if (r.y) os << fmt(*r.y, "%.17g");
    os << ',' << r.ell << ',';
    if (r.c) os << fmt(*r.c, "%.17g");
    os << ',' << fmt(r.lattice_term, "%.17g") << ',' << fmt(r.codes_term, "%.17g") << ','
       << fmt(r.lambda_lower, "%.17g");
    return os.str();
}

void emit_report_text(const BoundReport& r, std::ostream& out) {
    out << "family        " << to_string(r.family) << "\n";
    out << "Q             " << r.Q << "\n";
    if (r.p != 0) out << "q             " << r.p << "^" << r.r << "\n";
    if (r.y) out << "y             " << fmt(*r.y) << "\n";
    out << "ell           " << r.ell << (r.ell_clamped ? "   (clamped to 0)" : "") << "\n";
    if (r.c) out << "c             " << fmt(*r.c) << "\n";
    out << "lattice_term  " << fmt(r.lattice_term) << "\n";
    out << "codes_term    " << fmt(r.codes_term) << "\n";
    out << "lambda_lower  " << fmt(r.lambda_lower) << "\n";
}

json extended_to_json(const ExtendedBound& e, BoundFamily family, std::int64_t Q, std::int64_t p,
                      int r, const std::string& y_literal) {
    json j;
    j["family"] = to_string(family);
    j["Q"] = Q;
    j["precision"] = "extended";
    if (p != 0) {
        j["p"] = p;
        j["r"] = r;
    }
    if (!y_literal.empty()) j["y"] = y_literal;
    j["ell"] = e.ell;
    if (!e.c.empty()) j["c"] = e.c;
    j["lattice_term"] = e.lattice_term;
    j["codes_term"] = e.codes_term;
    j["lambda_lower"] = e.lambda_lower;
    return j;
}

struct Options {
    std::string format;  // json, csv, text; "" = per-command default
    std::string precision{"double"};
    int threads{0};  // 0 = resolve from env / hardware
};

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("EISENPACK_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return static_cast<int>(std::min(4u, std::max(1u, hw)));
}

std::string effective_format(const Options& options, const std::string& command_default) {
    return options.format.empty() ? command_default : options.format;
}

int cmd_primes(std::int64_t limit, const Options& options, std::ostream& out) {
    const std::string format = effective_format(options, "csv");
    json rows = json::array();
    std::ostringstream csv;
    csv << "p,kind,t,Q\n";
    for (std::int64_t p : primes_up_to(limit)) {
        const PrimeIdealInfo info = split_prime(p);
        csv << info.p << ',' << to_string(info.kind) << ',' << to_string(info.t) << ',' << info.Q
            << '\n';
        rows.push_back({{"p", info.p},
                        {"kind", to_string(info.kind)},
                        {"t", to_string(info.t)},
                        {"Q", info.Q}});
    }
    if (format == "json")
        out << rows.dump(2) << "\n";
    else
        out << csv.str();
    return kOk;
}

void emit_bound(const BoundReport& report, const Options& options, std::ostream& out) {
    const std::string format = effective_format(options, "json");
    if (format == "json")
        out << report_to_json(report).dump(2) << "\n";
    else if (format == "csv")
        out << kCsvHeader << "\n" << report_to_csv(report) << "\n";
    else
        emit_report_text(report, out);
}

int cmd_exponent_ring(std::int64_t Q, long long ell, const Options& options, std::ostream& out) {
    if (options.precision == "extended") {
        const auto e = extended_ring(Q, ell);
        out << extended_to_json(e, BoundFamily::RingOfIntegers, Q, 0, 0, "").dump(2) << "\n";
        return kOk;
    }
    emit_bound(ring_of_integers_bound(Q, ell), options, out);
    return kOk;
}

int cmd_exponent_principal(std::int64_t Q, std::int64_t p, int r, const Options& options,
                           std::ostream& out) {
    if (options.precision == "extended") {
        const auto e = extended_principal(Q, p, r);
        out << extended_to_json(e, BoundFamily::Principal, Q, p, r, "").dump(2) << "\n";
        return kOk;
    }
    emit_bound(principal_bound(Q, make_prime_power(p, r)), options, out);
    return kOk;
}

int cmd_exponent_congruence(std::int64_t Q, std::int64_t p, int r, const std::string& y_literal,
                            const Options& options, std::ostream& out) {
    if (options.precision == "extended") {
        const auto e = extended_congruence(Q, p, r, y_literal);
        out << extended_to_json(e, BoundFamily::Congruence, Q, p, r, y_literal).dump(2) << "\n";
        return kOk;
    }
    emit_bound(congruence_bound(Q, make_prime_power(p, r), parse_y_double(y_literal)), options, out);
    return kOk;
}

SearchConfig load_search_config(const std::string& path, bool congruence) {
    std::ifstream in(path);
    if (!in) throw MalformedInputError("cannot open search config: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw MalformedInputError("search config " + path + ": " + e.what());
    }
    SearchConfig config = congruence ? paper_grid_congruence() : paper_grid_principal();
    try {
        if (j.contains("prime_limit_Q")) config.prime_limit_Q = j["prime_limit_Q"].get<std::int64_t>();
        if (j.contains("prime_limit_q")) config.prime_limit_q = j["prime_limit_q"].get<std::int64_t>();
        if (j.contains("q_primes")) config.q_primes = j["q_primes"].get<std::vector<std::int64_t>>();
        if (j.contains("r_min")) config.r_min = j["r_min"].get<int>();
        if (j.contains("r_max")) config.r_max = j["r_max"].get<int>();
        if (j.contains("auto_refine")) config.auto_refine = j["auto_refine"].get<bool>();
        if (j.contains("min_improvement")) config.min_improvement = j["min_improvement"].get<double>();
        if (j.contains("refine_top_k")) config.refine_top_k = j["refine_top_k"].get<int>();
        if (j.contains("y_floor")) config.y_floor = j["y_floor"].get<double>();
        if (j.contains("threads")) config.threads = j["threads"].get<int>();
        if (j.contains("y_schedule")) {
            config.y_schedule.clear();
            for (const auto& row : j["y_schedule"]) {
                if (!row.is_array() || row.size() != 3)
                    throw MalformedInputError("search config: y_schedule rows are [lo, hi, step]");
                config.y_schedule.push_back(
                    {row[0].get<double>(), row[1].get<double>(), row[2].get<double>()});
            }
        }
    } catch (const json::exception& e) {
        throw MalformedInputError("search config " + path + ": " + e.what());
    }
    return config;
}

int cmd_search(bool congruence, const std::string& config_path, bool paper_grid,
               const std::string& dump_path, const Options& options, std::ostream& out,
               std::ostream& err) {
    if (options.precision == "extended") {
        print_error(err, "usage", "extended precision supports 'exponent' and 'table1' only");
        return kUsage;
    }
    SearchConfig config;
    if (!config_path.empty())
        config = load_search_config(config_path, congruence);
    else if (paper_grid)
        config = congruence ? paper_grid_congruence() : paper_grid_principal();
    else {
        print_error(err, "usage", "search needs --config FILE or --paper-grid");
        return kUsage;
    }
    config.threads = options.threads > 0 ? options.threads : resolve_threads(config.threads);

    std::ofstream dump;
    ReportSink sink;
    if (!dump_path.empty()) {
        dump.open(dump_path);
        if (!dump) throw MalformedInputError("cannot open dump file: " + dump_path);
        dump << kCsvHeader << "\n";
        sink = [&dump](const BoundReport& r) { dump << report_to_csv(r) << "\n"; };
    }

    const SearchResult result =
        congruence ? search_congruence(config, sink) : search_principal(config, sink);

    const std::string format = effective_format(options, "json");
    if (format == "csv") {
        out << kCsvHeader << "\n" << report_to_csv(result.best) << "\n";
        return kOk;
    }
    json j;
    j["best"] = report_to_json(result.best);
    j["evaluations"] = result.evaluations;
    if (!result.stages.empty()) {
        json stages = json::array();
        for (const auto& s : result.stages)
            stages.push_back({{"lo", s.stage.lo},
                              {"hi", s.stage.hi},
                              {"step", s.stage.step},
                              {"best_lambda", s.best_lambda},
                              {"best_y", s.best_y},
                              {"accepted", s.accepted}});
        j["stages"] = stages;
    }
    if (format == "text") {
        emit_report_text(result.best, out);
        out << "evaluations   " << result.evaluations << "\n";
    } else {
        out << j.dump(2) << "\n";
    }
    return kOk;
}

int cmd_table1(const Options& options, std::ostream& out) {
    const std::string format = effective_format(options, "text");
    constexpr std::int64_t Q = 4;
    constexpr std::int64_t p = 11;
    constexpr int r = 94;
    const char* y_literal = "1/4000000000";

    if (options.precision == "extended") {
        const auto pr = extended_principal(Q, p, r);
        const auto co = extended_congruence(Q, p, r, y_literal);
        json j;
        j["principal"] = extended_to_json(pr, BoundFamily::Principal, Q, p, r, "");
        j["congruence"] = extended_to_json(co, BoundFamily::Congruence, Q, p, r, y_literal);
        out << j.dump(2) << "\n";
        return kOk;
    }

    const BoundReport pr = principal_bound(Q, make_prime_power(p, r));
    const BoundReport co = congruence_bound(Q, make_prime_power(p, r), parse_y_double(y_literal));

    if (format == "json") {
        json j;
        j["principal"] = report_to_json(pr);
        j["congruence"] = report_to_json(co);
        out << j.dump(2) << "\n";
        return kOk;
    }
    if (format == "csv") {
        out << kCsvHeader << "\n" << report_to_csv(pr) << "\n" << report_to_csv(co) << "\n";
        return kOk;
    }

    auto row = [&](const std::string& a, const std::string& b, const std::string& c) {
        out << a;
        for (std::size_t i = a.size(); i < 22; ++i) out << ' ';
        out << b;
        for (std::size_t i = b.size(); i < 31; ++i) out << ' ';
        out << c << "\n";
    };
    out << "Componential Contributions to Asymptotic Density Exponent\n";
    out << "(Q = 4 norm of prime ideal lying over 2; q = 11^94; y = " << y_literal << ")\n\n";
    row("", "Based on Principal lattices", "Based on Congruence lattices");
    row("Lattice  c", fmt(*pr.c), fmt(*co.c));
    row("         term", fmt(pr.lattice_term), fmt(co.lattice_term));
    row("Codes    ell", std::to_string(pr.ell), std::to_string(co.ell));
    row("         term", fmt(pr.codes_term), fmt(co.codes_term));
    row("lambda >=", fmt(pr.lambda_lower), fmt(co.lambda_lower));
    return kOk;
}

int cmd_construct(const std::string& spec_path, bool verify, int density_window,
                  std::int64_t coset_cap, const Options& options, std::ostream& out,
                  std::ostream& err) {
    const ConcatenationSpec spec = load_concat_spec(spec_path);
    const auto violations = validate(spec);
    if (!violations.empty()) {
        json j;
        j["violations"] = violations;
        out << j.dump(2) << "\n";
        print_error(err, "input", "spec violates concatenation hypotheses: " + violations.front());
        return kBadInput;
    }

    BuildOptions build_options;
    if (coset_cap > 0) build_options.coset_cap = coset_cap;
    const ConcatenatedPacking built = build(spec, build_options);
    const MinDistanceResult measured = certified_min_distance(built.packing, 2, 64);
    const double d2 = measured.distance * measured.distance;
    const double lambda_measured =
        density_metrics(measured.distance, built.packing.det_per_point, built.packing.real_dim).lambda;

    json j;
    j["n"] = spec.base.ambient_dim;
    j["Q"] = built.Q;
    j["ell"] = built.levels;
    j["M_list"] = built.code_sizes;
    j["d_E2_measured"] = d2;
    j["d_E2_certified"] = measured.certified;
    j["det_per_point"] = built.packing.det_per_point;
    j["lambda_lower"] = built.lambda_lower;
    j["lambda_measured"] = lambda_measured;

    bool ok = true;
    if (verify) {
        const double d2_required =
            std::pow(static_cast<double>(built.Q), built.levels) * built.base_min_distance *
            built.base_min_distance;
        const bool distance_ok = d2 >= d2_required - 1e-9;

        bool distinct = true;
        const auto& reps = built.packing.coset_reps;
        for (std::size_t a = 0; a < reps.size() && distinct; ++a)
            for (std::size_t b = a + 1; b < reps.size(); ++b) {
                double diff2 = 0.0;
                for (std::size_t c = 0; c < reps[a].size(); ++c) {
                    const double d = reps[a][c] - reps[b][c];
                    diff2 += d * d;
                }
                if (diff2 < 1e-12) {
                    distinct = false;
                    break;
                }
            }
        const bool count_ok =
            distinct && static_cast<std::int64_t>(reps.size()) == built.points_per_cell;
        const bool lambda_ok = lambda_measured >= built.lambda_lower - 1e-9;

        json v;
        v["d_E2_required"] = d2_required;
        v["distance_ok"] = distance_ok;
        v["coset_count_expected"] = built.points_per_cell;
        v["coset_count_measured"] = static_cast<std::int64_t>(reps.size());
        v["coset_count_ok"] = count_ok;
        v["lambda_ok"] = lambda_ok;
        j["verify"] = v;
        ok = distance_ok && count_ok && lambda_ok;
    }
    if (density_window > 0) {
        const DensityCheckReport d = brute_density_check(built.packing, density_window);
        j["density_check"] = {{"window", density_window},
                              {"points", d.points},
                              {"measured_density", d.measured_density},
                              {"expected_density", d.expected_density},
                              {"relative_error", d.relative_error},
                              {"tolerance", d.tolerance},
                              {"within_tolerance", d.within_tolerance}};
    }

    out << j.dump(2) << "\n";
    if (!ok) {
        print_error(err, "verify", "brute-force verification failed");
        return kInternal;
    }
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Eisenstein-lattice concatenation packings: bounds, searches, constructions"};
    app.name("eisenpack");

    Options options;
    app.add_option("--format", options.format, "Output format: json, csv, text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--precision", options.precision, "Numeric mode: double (15 digits) or extended (30)")
        ->check(CLI::IsMember({"double", "extended"}));
    app.add_option("--threads", options.threads,
                   "Search worker threads (default: EISENPACK_THREADS or hardware, capped at 4)");
    app.require_subcommand(1);

    std::int64_t primes_limit = 0;
    auto* primes_cmd = app.add_subcommand("primes", "Splitting table of rational primes in Q(sqrt(-3))");
    primes_cmd->add_option("--limit", primes_limit, "Upper bound on p")->required();

    auto* exponent_cmd = app.add_subcommand("exponent", "Evaluate one asymptotic density-exponent bound");
    exponent_cmd->require_subcommand(1);
    std::int64_t ring_Q = 4;
    long long ring_ell = 0;
    auto* ring_cmd = exponent_cmd->add_subcommand("ring", "Ring-of-integers family");
    ring_cmd->add_option("--Q", ring_Q, "Prime-ideal norm")->required();
    ring_cmd->add_option("--ell", ring_ell, "Number of code levels")->required();

    std::int64_t pr_Q = 4, pr_p = 0;
    int pr_r = 0;
    auto* principal_cmd = exponent_cmd->add_subcommand("principal", "Principal-lattice concatenation");
    principal_cmd->add_option("--Q", pr_Q, "Prime-ideal norm")->required();
    principal_cmd->add_option("--p", pr_p, "Prime of q = p^r")->required();
    principal_cmd->add_option("--r", pr_r, "Even exponent of q")->required();

    std::int64_t co_Q = 4, co_p = 0;
    int co_r = 0;
    std::string co_y;
    auto* congruence_cmd = exponent_cmd->add_subcommand("congruence", "Congruence-lattice concatenation");
    congruence_cmd->add_option("--Q", co_Q, "Prime-ideal norm")->required();
    congruence_cmd->add_option("--p", co_p, "Prime of q = p^r")->required();
    congruence_cmd->add_option("--r", co_r, "Even exponent of q")->required();
    congruence_cmd->add_option("--y", co_y, "Divisor density parameter (decimal or fraction a/b)")
        ->required();

    auto* search_cmd = app.add_subcommand("search", "Grid search for the optimal bound parameters");
    search_cmd->require_subcommand(1);
    std::string search_config, search_dump;
    bool search_paper = false;
    auto* sp = search_cmd->add_subcommand("principal", "Search over (Q, q)");
    auto* sc = search_cmd->add_subcommand("congruence", "Search over (Q, q, y)");
    for (auto* s : {sp, sc}) {
        s->add_option("--config", search_config, "JSON search configuration");
        s->add_flag("--paper-grid", search_paper, "Use the published experiment grid");
        s->add_option("--dump", search_dump, "Write every evaluation to this CSV file");
    }

    auto* table_cmd = app.add_subcommand("table1", "Componential contribution table at Q=4, q=11^94");
    (void)table_cmd;

    std::string construct_spec;
    bool construct_verify = false;
    int construct_window = 0;
    std::int64_t construct_cap = 0;
    auto* construct_cmd = app.add_subcommand("construct", "Build a desk-scale concatenated packing");
    construct_cmd->add_option("--spec", construct_spec, "Concatenation spec file")->required();
    construct_cmd->add_flag("--verify", construct_verify, "Run brute-force distance/count/exponent checks");
    construct_cmd->add_option("--density-window", construct_window,
                              "Also run the finite-window density probe with this half-width");
    construct_cmd->add_option("--coset-cap", construct_cap,
                              "Override the prod M_i enumeration cap (default 4096)");

    // let --format/--precision/--threads appear after the subcommand too
    for (auto* sub : app.get_subcommands({})) {
        sub->fallthrough();
        for (auto* nested : sub->get_subcommands({})) nested->fallthrough();
    }

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("eisenpack");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        print_error(err, "usage", e.what());
        return kUsage;
    }

    options.threads = options.threads > 0 ? options.threads : resolve_threads(0);

    try {
        if (primes_cmd->parsed()) return cmd_primes(primes_limit, options, out);
        if (exponent_cmd->parsed()) {
            if (ring_cmd->parsed()) return cmd_exponent_ring(ring_Q, ring_ell, options, out);
            if (principal_cmd->parsed())
                return cmd_exponent_principal(pr_Q, pr_p, pr_r, options, out);
            if (congruence_cmd->parsed())
                return cmd_exponent_congruence(co_Q, co_p, co_r, co_y, options, out);
        }
        if (search_cmd->parsed())
            return cmd_search(sc->parsed(), search_config, search_paper, search_dump, options, out,
                              err);
        if (app.get_subcommand("table1")->parsed()) return cmd_table1(options, out);
        if (construct_cmd->parsed())
            return cmd_construct(construct_spec, construct_verify, construct_window, construct_cap,
                                 options, out, err);
        print_error(err, "usage", "no subcommand");
        return kUsage;
    } catch (const MalformedInputError& e) {
        print_error(err, "input", e.what());
        return kBadInput;
    } catch (const InfeasibleError& e) {
        print_error(err, "infeasible", e.what());
        return kInfeasible;
    } catch (const std::invalid_argument& e) {
        print_error(err, "usage", e.what());
        return kUsage;
    } catch (const std::exception& e) {
        print_error(err, "internal", e.what());
        return kInternal;
    }
}

}  // namespace eisenpack::cli
