#include "kzero/approx.hpp"
#include "kzero/checks.hpp"
#include "kzero/dist.hpp"
#include "kzero/kernels.hpp"
#include "kzero/sampling.hpp"
#include "kzero/specfun.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr const char* kVersion = "1.0.0";

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitPartial = 2;
constexpr int kExitAmbiguity = 3;
constexpr int kExitCheckFailed = 4;

std::string g_command_line;

std::string csv_num(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

void emit(const std::string& text, const std::string& output_path)
{
    if (output_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(output_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + output_path);
    f << text;
}

std::string csv_meta(const std::vector<std::pair<std::string, std::string>>& extra)
{
    std::ostringstream out;
    out << "# tool=kzero " << kVersion << "\n";
    out << "# command=" << g_command_line << "\n";
    for (const auto& [k, v] : extra) out << "# " << k << "=" << v << "\n";
    return out.str();
}

nlohmann::json json_meta(const std::vector<std::pair<std::string, std::string>>& extra)
{
    nlohmann::json meta;
    meta["tool"] = "kzero";
    meta["version"] = kVersion;
    meta["command"] = g_command_line;
    for (const auto& [k, v] : extra) meta[k] = v;
    return meta;
}

std::vector<double> parse_points(const std::string& points, const std::string& range)
{
    std::vector<double> xs;
    if (!range.empty()) {
        double lo, hi;
        int n;
        if (std::sscanf(range.c_str(), "%lf:%lf:%d", &lo, &hi, &n) != 3 || n < 2)
            throw CLI::ValidationError("--range expects lo:hi:count with count >= 2");
        for (int i = 0; i < n; ++i) xs.push_back(lo + (hi - lo) * i / (n - 1));
        return xs;
    }
    std::istringstream in(points);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        std::size_t used = 0;
        xs.push_back(std::stod(tok, &used));
        if (used != tok.size())
            throw CLI::ValidationError("bad point value: " + tok);
    }
    if (xs.empty()) throw CLI::ValidationError("no evaluation points given");
    return xs;
}

int run_eval(const std::string& spec_text, const std::string& fn,
             const std::string& points, const std::string& range,
             const std::string& format, const std::string& output)
{
    const auto spec = kzero::dist::parse_spec(spec_text);
    const auto xs = parse_points(points, range);

    struct Row {
        double x;
        std::optional<double> value;
        std::string error;
    };
    std::vector<Row> rows;
    bool partial = false;
    for (double x : xs) {
        try {
            double v;
            if (fn == "pdf") v = kzero::dist::pdf(spec, x);
            else if (fn == "cdf") v = kzero::dist::cdf(spec, x);
            else if (fn == "chf") v = kzero::dist::chf(spec, x);
            else v = kzero::dist::mgf(spec, x);
            rows.push_back({x, v, {}});
        } catch (const std::exception& e) {
            rows.push_back({x, std::nullopt, e.what()});
            partial = true;
        }
    }

    const std::vector<std::pair<std::string, std::string>> meta{
        {"dist", kzero::dist::to_string(spec)}, {"fn", fn}};
    if (format == "json") {
        nlohmann::json j;
        j["meta"] = json_meta(meta);
        auto& data = j["data"] = nlohmann::json::array();
        for (const auto& r : rows) {
            nlohmann::json row;
            row["x"] = r.x;
            if (r.value) row["value"] = *r.value;
            else row["error"] = r.error;
            data.push_back(row);
        }
        emit(j.dump(2) + "\n", output);
    } else {
        std::ostringstream out;
        out << csv_meta(meta) << "x,value,error\n";
        for (const auto& r : rows) {
            out << csv_num(r.x) << ",";
            if (r.value) out << csv_num(*r.value) << ",";
            else out << "," << r.error;
            out << "\n";
        }
        emit(out.str(), output);
    }
    return partial ? kExitPartial : kExitOk;
}

int run_table(const std::vector<double>& alphas, const std::vector<std::string>& columns,
              const std::string& format, const std::string& output)
{
    kzero::approx::QuantileTable table;
    if (alphas.empty() && columns.empty()) {
        table = kzero::approx::default_quantile_table();
    } else {
        auto def = kzero::approx::default_quantile_table();
        std::vector<double> a = alphas.empty() ? def.alphas : alphas;
        std::vector<kzero::dist::DistributionSpec> cols;
        if (columns.empty()) {
            cols = def.columns;
        } else {
            for (const auto& c : columns) cols.push_back(kzero::dist::parse_spec(c));
        }
        table = kzero::approx::quantile_table(a, cols, 0);
    }

    if (format == "json") {
        nlohmann::json j;
        j["meta"] = json_meta({});
        j["data"] = nlohmann::json::parse(kzero::approx::table_to_json(table));
        emit(j.dump(2) + "\n", output);
    } else {
        emit(csv_meta({}) + kzero::approx::table_to_csv(table), output);
    }
    return kExitOk;
}

int run_fit(const std::string& metric_name, double sigma,
            const std::pair<double, double>& bracket, const std::string& format,
            const std::string& output)
{
    const auto metric = metric_name == "ks" ? kzero::approx::Metric::ks
                                            : kzero::approx::Metric::wasserstein;
    kzero::approx::FitResult fit;
    try {
        fit = kzero::approx::fit_lambda(sigma, metric, bracket.first, bracket.second);
    } catch (const kzero::approx::AmbiguityError& e) {
        std::cerr << "error: " << e.what() << "\nscan dump (lambda,distance):\n";
        for (const auto& [l, d] : e.scan)
            std::cerr << csv_num(l) << "," << csv_num(d) << "\n";
        return kExitAmbiguity;
    }

    const std::vector<std::pair<std::string, std::string>> meta{
        {"metric", metric_name}, {"sigma", csv_num(sigma)}};
    if (format == "json") {
        nlohmann::json j;
        j["meta"] = json_meta(meta);
        auto& d = j["data"];
        d["lambda_star"] = fit.lambda_star;
        d["distance_star"] = fit.distance_star;
        d["metric"] = metric_name;
        d["sigma"] = fit.sigma;
        d["iterations"] = fit.iterations;
        d["bracket"] = {fit.bracket_lo, fit.bracket_hi};
        emit(j.dump(2) + "\n", output);
    } else {
        std::ostringstream out;
        out << csv_meta(meta)
            << "lambda_star,distance_star,metric,sigma,iterations,bracket_lo,bracket_hi\n"
            << csv_num(fit.lambda_star) << "," << csv_num(fit.distance_star) << ","
            << metric_name << "," << csv_num(fit.sigma) << "," << fit.iterations
            << "," << csv_num(fit.bracket_lo) << "," << csv_num(fit.bracket_hi)
            << "\n";
        emit(out.str(), output);
    }
    return kExitOk;
}

int run_sample(const std::string& spec_text, std::size_t n, std::uint64_t seed,
               const std::string& rep_name, const std::string& output)
{
    const auto spec = kzero::dist::parse_spec(spec_text);
    auto rep = kzero::sampling::Representation::canonical;
    if (rep_name == "product") rep = kzero::sampling::Representation::product;
    else if (rep_name == "chi_mixture") rep = kzero::sampling::Representation::chi_mixture;
    else if (rep_name == "exp_difference")
        rep = kzero::sampling::Representation::exp_difference;
    else if (rep_name == "exp_mixture") rep = kzero::sampling::Representation::exp_mixture;
    else if (rep_name == "direct_sum") rep = kzero::sampling::Representation::direct_sum;
    else if (rep_name == "gamma_difference")
        rep = kzero::sampling::Representation::gamma_difference;
    else if (rep_name != "canonical")
        throw CLI::ValidationError("unknown representation: " + rep_name);

    const auto batch = kzero::sampling::sample(spec, n, seed, rep);
    emit(kzero::sampling::batch_to_csv(batch), output);
    return kExitOk;
}

int run_check(const std::string& suite, double perturb_k0, const std::string& format,
              const std::string& output)
{
    kzero::specfun::set_k0_perturbation(perturb_k0);
    std::vector<kzero::checks::CheckResult> results;
    if (suite == "parity" || suite == "all") {
        auto r = kzero::checks::parity_suite();
        results.insert(results.end(), r.begin(), r.end());
    }
    if (suite == "representations" || suite == "all") {
        auto r = kzero::checks::representations_suite();
        results.insert(results.end(), r.begin(), r.end());
    }
    kzero::specfun::set_k0_perturbation(0.0);

    const bool ok = kzero::checks::all_pass(results);
    const std::vector<std::pair<std::string, std::string>> meta{
        {"suite", suite}, {"backend", kzero::kernels::backend_name(
                              kzero::kernels::active_backend())}};
    if (format == "json") {
        nlohmann::json j;
        j["meta"] = json_meta(meta);
        auto& data = j["data"] = nlohmann::json::array();
        for (const auto& r : results) {
            nlohmann::json row;
            row["name"] = r.name;
            row["pass"] = r.pass;
            row["observed"] = r.observed;
            row["bound"] = r.bound;
            row["detail"] = r.detail;
            data.push_back(row);
        }
        emit(j.dump(2) + "\n", output);
    } else {
        std::ostringstream out;
        out << csv_meta(meta) << "name,pass,observed,bound,detail\n";
        for (const auto& r : results)
            out << r.name << "," << (r.pass ? "pass" : "FAIL") << ","
                << csv_num(r.observed) << "," << csv_num(r.bound) << "," << r.detail
                << "\n";
        emit(out.str(), output);
    }
    return ok ? kExitOk : kExitCheckFailed;
}

} // namespace

int main(int argc, char** argv)
{
    {
        std::ostringstream cmd;
        for (int i = 0; i < argc; ++i) cmd << (i ? " " : "") << argv[i];
        g_command_line = cmd.str();
    }

    CLI::App app{"kzero: Bessel distribution toolkit (pdf/cdf/quantiles, Laplace "
                 "and Martin-Maas approximations, fitting, sampling, self-checks)"};
    app.require_subcommand(1);
    app.fallthrough();   // subcommands inherit --format/--output placement

    std::string format = "csv";
    std::string output;
    app.add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--output", output, "write to file instead of stdout");

    // eval
    auto* eval = app.add_subcommand("eval", "evaluate pdf/cdf/chf/mgf on points");
    std::string e_dist, e_fn = "pdf", e_points, e_range;
    eval->add_option("--dist", e_dist)->required();
    eval->add_option("--fn", e_fn)->check(CLI::IsMember({"pdf", "cdf", "chf", "mgf"}));
    eval->add_option("--points", e_points, "comma-separated x values");
    eval->add_option("--range", e_range, "lo:hi:count");

    // table
    auto* table = app.add_subcommand("table", "one-sided critical value table");
    std::vector<double> t_alphas;
    std::vector<std::string> t_columns;
    table->add_option("--alphas", t_alphas);
    table->add_option("--columns", t_columns, "dist spec strings");

    // fit
    auto* fit = app.add_subcommand("fit", "best-fit lambda for the Laplace proxy");
    std::string f_metric = "ks";
    double f_sigma = 1.0;
    std::pair<double, double> f_bracket{1.0, 2.5};
    fit->add_option("--metric", f_metric)->check(CLI::IsMember({"ks", "wasserstein"}));
    fit->add_option("--sigma", f_sigma);
    fit->add_option("--bracket", f_bracket);

    // sample
    auto* sample = app.add_subcommand("sample", "seeded sampling, CSV output");
    std::string s_dist, s_rep = "canonical";
    std::size_t s_n = 1000;
    std::uint64_t s_seed = 1;
    sample->add_option("--dist", s_dist)->required();
    sample->add_option("--n", s_n);
    sample->add_option("--seed", s_seed);
    sample->add_option("--representation", s_rep);

    // check
    auto* check = app.add_subcommand("check", "run self-check suites");
    std::string c_suite = "all";
    double c_perturb = 0.0;
    check->add_option("--suite", c_suite)
        ->check(CLI::IsMember({"parity", "representations", "all"}));
    check->add_option("--perturb-k0", c_perturb,
                      "test-only: multiply K0 by (1+eps) to prove suite sensitivity")
        ->group("");   // hidden

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? kExitUsage : kExitOk;
    }

    try {
        if (*eval) return run_eval(e_dist, e_fn, e_points, e_range, format, output);
        if (*table) return run_table(t_alphas, t_columns, format, output);
        if (*fit) return run_fit(f_metric, f_sigma, f_bracket, format, output);
        if (*sample) return run_sample(s_dist, s_n, s_seed, s_rep, output);
        if (*check) return run_check(c_suite, c_perturb, format, output);
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
