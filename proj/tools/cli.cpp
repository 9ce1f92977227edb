#include "cli.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "sparsesel/csv.hpp"
#include "sparsesel/diagnostics.hpp"
#include "sparsesel/error.hpp"
#include "sparsesel/experiments.hpp"
#include "sparsesel/json_io.hpp"
#include "sparsesel/solvers.hpp"
#include "sparsesel/tuning.hpp"

namespace sparsesel::cli {

namespace {

constexpr std::uint64_t kDefaultSeed = 20080801;

std::vector<std::string> split(const std::string& text)
{
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok.erase(0, tok.find_first_not_of(" \t"));
        tok.erase(tok.find_last_not_of(" \t") + 1);
        if (!tok.empty()) out.push_back(tok);
    }
    return out;
}

std::vector<double> parse_numbers(const std::string& text)
{
    std::vector<double> out;
    for (const auto& tok : split(text)) out.push_back(csv::to_double(tok));
    return out;
}

Eigen::VectorXd to_vector(const std::vector<double>& v)
{
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Index>(v.size()));
}

ResponseKind detect_kind(const Eigen::VectorXd& y)
{
    for (Index i = 0; i < y.size(); ++i)
        if (y(i) != 0.0 && y(i) != 1.0) return ResponseKind::real;
    return ResponseKind::binary;
}

void emit(const json& doc, const std::string& path, std::ostream& out)
{
    if (path.empty()) {
        out << doc.dump(2) << "\n";
        return;
    }
    std::ofstream f(path);
    if (!f) throw Error(Errc::invalid_argument, "cannot write '" + path + "'");
    f << doc.dump(2) << "\n";
}

std::ofstream open_out(const std::string& path)
{
    std::ofstream f(path);
    if (!f) throw Error(Errc::invalid_argument, "cannot write '" + path + "'");
    f.precision(17);
    return f;
}

// Resolves 1-based indices or column names to sorted 0-based indices.
IndexSet resolve_support(const std::string& text, const std::vector<std::string>& names)
{
    IndexSet out;
    for (const auto& tok : split(text)) {
        const bool numeric = std::all_of(tok.begin(), tok.end(), [](unsigned char ch) { return std::isdigit(ch); });
        if (numeric) {
            const long idx = std::stol(tok);
            if (idx < 1 || idx > static_cast<long>(names.size()))
                throw Error(Errc::invalid_argument, "support index " + tok + " out of range");
            out.push_back(idx - 1);
        } else {
            const auto it = std::find(names.begin(), names.end(), tok);
            if (it == names.end()) throw Error(Errc::missing_column, "column '" + tok + "' not found");
            out.push_back(it - names.begin());
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

struct DataArgs {
    std::string input;
    std::string response = "y";
    std::string kind;
    std::optional<double> l_bound;
    std::optional<double> sigma;
};

void add_data_options(CLI::App* cmd, DataArgs& a, bool response_required)
{
    cmd->add_option("--input,-i", a.input, "CSV file with a header row")->required();
    auto* resp = cmd->add_option("--response", a.response, "name of the response column");
    if (response_required) resp->capture_default_str();
    cmd->add_option("--kind", a.kind, "response kind: binary or real (detected when omitted)");
    cmd->add_option("--l-bound", a.l_bound, "bound L on |X_ij| after standardization (default: observed max)");
    cmd->add_option("--sigma", a.sigma, "noise standard deviation for a real response");
}

struct Loaded {
    Dataset ds;
    std::vector<std::string> names;
};

Loaded load(const DataArgs& a)
{
    const csv::RegressionData d = csv::to_regression(csv::read_file(a.input), a.response);
    const ResponseKind kind = a.kind.empty() ? detect_kind(d.y) : parse_response_kind(a.kind);
    return {standardize(d.x, d.y, kind, a.l_bound, a.sigma), d.predictor_names};
}

double choose_r(const std::optional<double>& r, Method method, const Dataset& ds, double delta,
                const std::optional<double>& k_upper)
{
    if (r) return *r;
    tuning::RRequest rr;
    rr.method = method;
    rr.kind = ds.kind();
    rr.n = static_cast<double>(ds.n());
    rr.num_predictors = static_cast<double>(ds.num_predictors());
    rr.delta = delta;
    rr.l_bound = ds.l_bound();
    rr.sigma = ds.sigma();
    rr.k_upper = k_upper;
    return tuning::r_for(rr);
}

double choose_c(const std::optional<double>& c, const std::optional<double>& b_big, Method method, double r)
{
    if (!has_ridge(method)) {
        if (c && *c != 0.0) throw Error(Errc::invalid_argument, "--c applies only to elastic-net methods");
        return 0.0;
    }
    if (c) return *c;
    if (b_big) return tuning::c_for(r, *b_big);
    throw Error(Errc::invalid_argument, "elastic-net methods need --c or --b-big");
}

// fit ------------------------------------------------------------------------

struct FitArgs {
    DataArgs data;
    std::string method = "lasso_ls";
    std::optional<double> r, c, b_big, k_upper;
    double delta = 0.05;
    int max_iter = 100000;
    double kkt_tol = 1e-8;
    std::string output = "json";
    std::string out_path;
};

int cmd_fit(const FitArgs& a, std::ostream& out, std::ostream& err)
{
    const Method method = parse_method(a.method);
    const Loaded in = load(a.data);
    const Dataset& ds = in.ds;
    const double r = choose_r(a.r, method, ds, a.delta, a.k_upper);
    const double c = choose_c(a.c, a.b_big, method, r);
    FitOptions opts;
    opts.max_iter = a.max_iter;
    opts.kkt_tol = a.kkt_tol;
    const FitResult res = fit(ds, PenaltySpec{loss_of(method), r, c}, opts);
    const Eigen::VectorXd original = ds.transform().to_original(res.beta_hat);

    if (a.output == "csv") {
        std::ostringstream buf;
        buf.precision(17);
        buf << "index,name,standardized,original,selected\n";
        for (Index j = 0; j < res.beta_hat.size(); ++j) {
            const bool sel = std::binary_search(res.support.begin(), res.support.end(), j);
            buf << j + 1 << ',' << csv::escape(in.names[static_cast<std::size_t>(j)]) << ','
                << res.beta_hat(j) << ',' << original(j) << ',' << (sel ? 1 : 0) << "\n";
        }
        if (a.out_path.empty())
            out << buf.str();
        else
            open_out(a.out_path) << buf.str();
    } else {
        json coefs = json::array();
        for (Index j = 0; j < res.beta_hat.size(); ++j)
            coefs.push_back({{"index", j + 1},
                             {"name", in.names[static_cast<std::size_t>(j)]},
                             {"standardized", number(res.beta_hat(j))},
                             {"original", number(original(j))}});
        json support = json::array();
        for (Index j : res.support)
            support.push_back({{"index", j + 1}, {"name", in.names[static_cast<std::size_t>(j)]}});
        json doc{{"method", method},
                 {"response", a.data.response},
                 {"response_kind", ds.kind()},
                 {"n", ds.n()},
                 {"num_predictors", ds.num_predictors()},
                 {"l_bound", number(ds.l_bound())},
                 {"r", number(r)},
                 {"c", number(c)},
                 {"coefficients", coefs},
                 {"support", support},
                 {"objective", number(res.objective)},
                 {"kkt_residual", number(res.kkt_residual)},
                 {"iterations", res.iterations},
                 {"converged", res.converged}};
        emit(doc, a.out_path, out);
    }
    if (!res.converged) {
        err << "fit did not converge: kkt residual " << res.kkt_residual << " after " << res.iterations
            << " iterations\n";
        return exit_not_converged;
    }
    return exit_ok;
}

// tune -----------------------------------------------------------------------

struct TuneArgs {
    std::string method = "lasso_ls";
    std::string kind = "binary";
    double n = 0, m = 0;
    double delta = 0.05;
    double l_bound = 1.0;
    std::optional<double> sigma, k_upper;
    double k_star = 1, b = 1.0, b_big = 1.0, d_big = 0.0;
    bool selection_c = false;
    std::string out_path;
};

int cmd_tune(const TuneArgs& a, std::ostream& out)
{
    tuning::BundleRequest req;
    req.r_request.method = parse_method(a.method);
    req.r_request.kind = parse_response_kind(a.kind);
    req.r_request.n = a.n;
    req.r_request.num_predictors = a.m;
    req.r_request.delta = a.delta;
    req.r_request.l_bound = a.l_bound;
    req.r_request.sigma = a.sigma;
    req.r_request.k_upper = a.k_upper;
    req.k_star = a.k_star;
    req.b = a.b;
    req.b_big = a.b_big;
    req.d_big = a.d_big;
    req.selection_c = a.selection_c;
    if (!(a.n >= 1 && a.m >= 1)) throw Error(Errc::invalid_argument, "--n and --M must be at least 1");
    emit(json(tuning::make_bundle(req)), a.out_path, out);
    return exit_ok;
}

// diagnose -------------------------------------------------------------------

struct DiagnoseArgs {
    std::string input;
    std::string response;
    std::string support;
    std::optional<double> d, b;
    double alpha = 3.0;
    double epsilon = 0.0;
    std::int64_t samples = 100000;
    std::uint64_t seed = kDefaultSeed;
    std::string beta;
    double radius = 0.0;
    bool require_pass = false;
    std::string out_path;
};

int cmd_diagnose(const DiagnoseArgs& a, std::ostream& out, std::ostream& err)
{
    const csv::Table table = csv::read_file(a.input);
    Eigen::MatrixXd x;
    std::vector<std::string> names;
    if (a.response.empty()) {
        const auto n = static_cast<Index>(table.rows.size());
        const auto m = static_cast<Index>(table.header.size());
        x.resize(n, m);
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < m; ++j)
                x(i, j) = csv::to_double(table.rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
        names = table.header;
    } else {
        csv::RegressionData d = csv::to_regression(table, a.response);
        x = std::move(d.x);
        names = std::move(d.predictor_names);
    }
    const Dataset ds = standardize(x, Eigen::VectorXd::Zero(x.rows()), ResponseKind::real);
    const IndexSet support = resolve_support(a.support, names);
    if (support.empty()) throw Error(Errc::empty_support, "--support lists no variables");
    const GramMatrix gm = gram(ds);

    json doc;
    bool ok = true;
    diagnostics::StabilOptions so;
    so.alpha = a.alpha;
    so.epsilon = a.epsilon;
    so.sample_count = a.samples;
    so.seed = a.seed;
    so.b = a.b ? *a.b : (a.d ? diagnostics::b_from_d(*a.d, a.alpha, a.epsilon) : 0.5);

    json sup = json::array();
    for (Index j : support) sup.push_back({{"index", j + 1}, {"name", names[static_cast<std::size_t>(j)]}});
    doc["support"] = sup;
    if (a.d) {
        const auto rep = diagnostics::check_identif(gm, support, *a.d);
        doc["identif"] = rep;
        ok = ok && rep.passes;
    }
    const auto stabil = diagnostics::check_stabil(gm, support, so);
    doc["stabil"] = stabil;
    ok = ok && stabil.verdict != diagnostics::StabilVerdict::certified_fail;

    if (!a.beta.empty()) {
        const Eigen::VectorXd beta = to_vector(parse_numbers(a.beta));
        if (beta.size() != ds.num_predictors())
            throw Error(Errc::dimension_mismatch, "--beta needs one value per predictor");
        const auto lst = diagnostics::check_lstabil(weighted_gram(ds, beta), support, so);
        doc["lstabil"] = lst;
        ok = ok && lst.verdict != diagnostics::StabilVerdict::certified_fail;
        if (a.d) {
            const auto li = diagnostics::check_lidentif(ds, beta, support, *a.d, a.radius);
            doc["lidentif"] = li;
            ok = ok && li.passes_adjusted;
        }
    }
    doc["passes"] = ok;
    emit(doc, a.out_path, out);
    if (a.require_pass && !ok) {
        err << "design check failed\n";
        return exit_check_failed;
    }
    return exit_ok;
}

// simulate -------------------------------------------------------------------

struct SimulateArgs {
    std::string config;
    std::optional<int> replications;
    std::optional<std::uint64_t> seed;
    bool serial = false;
    bool with_records = false;
    std::string records_csv;
    std::string sweep;
    std::string plot_csv = "sweep.csv";
    std::string out_path;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out, std::ostream& err)
{
    std::ifstream f(a.config);
    if (!f) throw Error(Errc::parse_error, "cannot open '" + a.config + "'");
    experiments::ExperimentConfig cfg;
    json::parse(f).get_to(cfg);
    if (a.replications) cfg.replications = *a.replications;
    if (a.seed) cfg.seed = *a.seed;
    cfg.validate();

    experiments::ExperimentReport rep = a.serial ? experiments::run_mc_serial(cfg) : experiments::run_mc(cfg);
    if (!a.records_csv.empty()) {
        auto rf = open_out(a.records_csv);
        rf << "rep,contains,contained,exact,l1_error,converged\n";
        for (const auto& r : rep.records)
            rf << r.rep << ',' << int(r.contains) << ',' << int(r.contained) << ',' << int(r.exact) << ','
               << r.l1_error << ',' << int(r.converged) << "\n";
    }
    if (!a.with_records) rep.records.clear();

    json doc{{"config", cfg}, {"report", rep}};
    if (!a.sweep.empty()) {
        const auto points = experiments::run_sweep(cfg, parse_numbers(a.sweep));
        auto pf = open_out(a.plot_csv);
        pf << "multiplier,p_exact,ci_half_width\n";
        for (const auto& p : points) pf << p.multiplier << ',' << p.p_exact << ',' << p.ci_half_width << "\n";
        doc["sweep"] = points;
    }
    emit(doc, a.out_path, out);
    if (rep.verdict == experiments::Verdict::fails) {
        err << "guarantee " << experiments::to_string(rep.guarantee_kind) << " not met: observed "
            << rep.observed << " < " << rep.guarantee << "\n";
        return exit_check_failed;
    }
    return exit_ok;
}

// kkt ------------------------------------------------------------------------

struct KktArgs {
    DataArgs data;
    std::string method = "lasso_ls";
    double r = 0.0;
    double c = 0.0;
    std::string beta;
    std::string beta_file;
    double tol = 1e-6;
    std::string out_path;
};

int cmd_kkt(const KktArgs& a, std::ostream& out, std::ostream& err)
{
    const Method method = parse_method(a.method);
    const Loaded in = load(a.data);
    Eigen::VectorXd beta;
    if (!a.beta_file.empty()) {
        std::ifstream f(a.beta_file);
        if (!f) throw Error(Errc::parse_error, "cannot open '" + a.beta_file + "'");
        const json doc = json::parse(f);
        const auto& coefs = doc.at("coefficients");
        beta.resize(static_cast<Index>(coefs.size()));
        for (std::size_t j = 0; j < coefs.size(); ++j)
            beta(static_cast<Index>(j)) = as_number(coefs[j].at("standardized"));
    } else if (!a.beta.empty()) {
        beta = to_vector(parse_numbers(a.beta));
    } else {
        throw Error(Errc::invalid_argument, "kkt needs --beta or --beta-file");
    }
    if (beta.size() != in.ds.num_predictors())
        throw Error(Errc::dimension_mismatch, "beta has " + std::to_string(beta.size()) + " entries, design has " +
                                                  std::to_string(in.ds.num_predictors()) + " predictors");
    const PenaltySpec spec{loss_of(method), a.r, a.c};
    spec.validate();
    if (spec.loss == Loss::logistic && in.ds.kind() != ResponseKind::binary)
        throw Error(Errc::loss_mismatch, "logistic loss needs a binary response");
    const KKTReport rep = kkt_check(in.ds, beta, spec);
    json doc = rep;
    const bool ok = rep.max_violation <= a.tol;
    doc["tolerance"] = number(a.tol);
    doc["certified"] = ok;
    emit(doc, a.out_path, out);
    if (!ok) {
        err << "KKT violation " << rep.max_violation << " exceeds " << a.tol << "\n";
        return exit_check_failed;
    }
    return exit_ok;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Penalized sparse regression with explicit finite-sample constants"};
    app.name(args.empty() ? "sparsesel" : args[0]);
    app.require_subcommand(1);

    FitArgs fa;
    auto* fit_cmd = app.add_subcommand("fit", "fit an estimator to CSV data");
    add_data_options(fit_cmd, fa.data, true);
    fit_cmd->add_option("--method,-m", fa.method, "lasso_ls, enet_ls, lasso_logistic or enet_logistic")
        ->capture_default_str();
    fit_cmd->add_option("--r", fa.r, "l1 level (default: from the tuning formulas)");
    fit_cmd->add_option("--c", fa.c, "l2 level for elastic-net methods");
    fit_cmd->add_option("--b-big", fa.b_big, "bound B on max |beta_j|; sets c = r/(2B)");
    fit_cmd->add_option("--K", fa.k_upper, "support-size bound folded into r");
    fit_cmd->add_option("--delta", fa.delta, "confidence level for the default r")->capture_default_str();
    fit_cmd->add_option("--max-iter", fa.max_iter)->capture_default_str();
    fit_cmd->add_option("--kkt-tol", fa.kkt_tol)->capture_default_str();
    fit_cmd->add_option("--output", fa.output, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    fit_cmd->add_option("--out,-o", fa.out_path, "write to a file instead of stdout");

    TuneArgs ta;
    auto* tune_cmd = app.add_subcommand("tune", "evaluate tuning constants, radii and thresholds");
    tune_cmd->add_option("--method,-m", ta.method)->capture_default_str();
    tune_cmd->add_option("--kind", ta.kind, "binary or real (squared loss)")->capture_default_str();
    tune_cmd->add_option("--n", ta.n, "sample size")->required();
    tune_cmd->add_option("--M", ta.m, "number of predictors")->required();
    tune_cmd->add_option("--delta", ta.delta)->capture_default_str();
    tune_cmd->add_option("--L", ta.l_bound, "bound on |X_ij|")->capture_default_str();
    tune_cmd->add_option("--sigma", ta.sigma, "noise standard deviation (real response)");
    tune_cmd->add_option("--K", ta.k_upper, "support-size bound; switches to the selection levels");
    tune_cmd->add_option("--k-star", ta.k_star, "support size used in radii")->capture_default_str();
    tune_cmd->add_option("--b", ta.b, "restricted eigenvalue constant")->capture_default_str();
    tune_cmd->add_option("--B", ta.b_big, "bound on max |beta_j|")->capture_default_str();
    tune_cmd->add_option("--D", ta.d_big, "bound on |beta|_1")->capture_default_str();
    tune_cmd->add_flag("--selection-c", ta.selection_c, "use c = 2r/B for enet_logistic");
    tune_cmd->add_option("--out,-o", ta.out_path);

    DiagnoseArgs da;
    auto* diag_cmd = app.add_subcommand("diagnose", "check coherence and restricted eigenvalue conditions");
    diag_cmd->add_option("--input,-i", da.input)->required();
    diag_cmd->add_option("--response", da.response, "column to exclude from the design");
    diag_cmd->add_option("--support,-s", da.support, "true variables: 1-based indices or names")->required();
    diag_cmd->add_option("--d", da.d, "coherence level d; threshold is d/|support|");
    diag_cmd->add_option("--b", da.b, "constant b (default: implied by --d, else 0.5)");
    diag_cmd->add_option("--alpha", da.alpha)->capture_default_str();
    diag_cmd->add_option("--epsilon", da.epsilon)->capture_default_str();
    diag_cmd->add_option("--samples", da.samples)->capture_default_str();
    diag_cmd->add_option("--seed", da.seed)->capture_default_str();
    diag_cmd->add_option("--beta", da.beta, "standardized coefficients for the weighted checks");
    diag_cmd->add_option("--radius", da.radius, "half-width of the predictor box")->capture_default_str();
    diag_cmd->add_flag("--require-pass", da.require_pass, "exit 2 when any check fails");
    diag_cmd->add_option("--out,-o", da.out_path);

    SimulateArgs sa;
    auto* sim_cmd = app.add_subcommand("simulate", "run a Monte Carlo verification");
    sim_cmd->add_option("--config,-c", sa.config, "experiment config JSON")->required();
    sim_cmd->add_option("--replications,-R", sa.replications);
    sim_cmd->add_option("--seed", sa.seed, "overrides the config seed (default 20080801)");
    sim_cmd->add_flag("--serial", sa.serial, "single-threaded run");
    sim_cmd->add_flag("--with-records", sa.with_records, "include per-replication records in the JSON");
    sim_cmd->add_option("--records-csv", sa.records_csv, "per-replication CSV");
    sim_cmd->add_option("--sweep", sa.sweep, "comma-separated signal multipliers");
    sim_cmd->add_option("--plot-csv", sa.plot_csv, "sweep output")->capture_default_str();
    sim_cmd->add_option("--out,-o", sa.out_path);

    KktArgs ka;
    auto* kkt_cmd = app.add_subcommand("kkt", "check the optimality conditions of a coefficient vector");
    add_data_options(kkt_cmd, ka.data, true);
    kkt_cmd->add_option("--method,-m", ka.method)->capture_default_str();
    kkt_cmd->add_option("--r", ka.r)->required();
    kkt_cmd->add_option("--c", ka.c)->capture_default_str();
    kkt_cmd->add_option("--beta", ka.beta, "standardized coefficients, comma-separated");
    kkt_cmd->add_option("--beta-file", ka.beta_file, "JSON written by fit");
    kkt_cmd->add_option("--tol", ka.tol)->capture_default_str();
    kkt_cmd->add_option("--out,-o", ka.out_path);

    std::vector<const char*> argv;
    for (const auto& s : args) argv.push_back(s.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_input_error;
    }

    try {
        if (fit_cmd->parsed()) return cmd_fit(fa, out, err);
        if (tune_cmd->parsed()) return cmd_tune(ta, out);
        if (diag_cmd->parsed()) return cmd_diagnose(da, out, err);
        if (sim_cmd->parsed()) return cmd_simulate(sa, out, err);
        if (kkt_cmd->parsed()) return cmd_kkt(ka, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_input_error;
    }
    return exit_input_error;
}

} // namespace sparsesel::cli
