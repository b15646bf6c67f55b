#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sle/errors.hpp"
#include "sle/loewner/loewner.hpp"
#include "sle/mc/experiments.hpp"
#include "sle/symbolic/expression.hpp"
#include "sle/verify/suites.hpp"
#include "sle/virasoro/verma.hpp"
#include "sle/ward/correlators.hpp"

namespace {

using json = nlohmann::ordered_json;
using sle::symbolic::Rational;

constexpr int kUsageError = 2;
constexpr int kSuiteFailure = 1;

struct Config {
    std::string kappa = "8/3";
    std::string alpha = "5/8";
    int n = 1;
    std::string eval;
    std::string suite = "all";
    std::string T = "1";
    int steps = 1000;
    std::size_t samples = 1000;
    std::uint64_t seed = 1;
    std::string out;
    std::string format;  // json, or csv for trace
    int threads = 1;
    int max_doublings = 4;
    std::string x = "1";
    std::string eps;
    std::vector<std::string> slits;
    std::string times = "0.1,0.25,0.5";
    std::string dt = "1e-4";
    int vertices = 256;
};

std::vector<std::string> split(const std::string& text, char sep)
{
    std::vector<std::string> parts;
    std::stringstream in(text);
    for (std::string item; std::getline(in, item, sep);) parts.push_back(item);
    return parts;
}

// Accepts `p/q`, integers and decimals.
double parse_real(const std::string& text)
{
    if (text.find('/') != std::string::npos) return sle::symbolic::parse_rational(text).get_d();
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size() || !std::isfinite(v)) throw sle::MalformedInput("not a number: " + text);
    return v;
}

double eps_or_default(const Config& c)
{
    return c.eps.empty() ? 1.0 / std::sqrt(2.0) : parse_real(c.eps);
}

std::string fmt12(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// Writes to --out when given, stdout otherwise.
void emit(const Config& c, const std::string& text)
{
    if (c.out.empty()) {
        std::cout << text << '\n';
        return;
    }
    std::ofstream file(c.out);
    if (!file) throw sle::MalformedInput("cannot open " + c.out);
    file << text << '\n';
}

sle::mc::RunOptions run_options(const Config& c)
{
    if (c.threads < 1 || c.max_doublings < 0) throw sle::MalformedInput("need --threads >= 1 and --max-doublings >= 0");
    return {c.threads, c.max_doublings};
}

std::string estimate_text(const Config& c, const sle::mc::EstimateResult& r)
{
    if (c.format == "json") return sle::mc::to_json(r);
    const json j = json::parse(sle::mc::to_json(r));
    std::string header, row;
    for (const auto& [key, value] : j.items()) {
        header += (header.empty() ? "" : ",") + key;
        row += (row.empty() ? "" : ",") + (value.is_string() ? value.get<std::string>() : value.dump());
    }
    return header + "\n" + row;
}

int cmd_params(const Config& c)
{
    const sle::virasoro::VirParams p = sle::virasoro::params_of_kappa(sle::symbolic::parse_rational(c.kappa));
    using sle::symbolic::to_string;
    json j;
    j["kappa"] = to_string(p.kappa);
    j["c"] = to_string(p.c);
    j["h"] = to_string(p.h);
    j["lambda"] = to_string(p.lambda);
    if (c.format == "csv")
        emit(c, "kappa,c,h,lambda\n" + to_string(p.kappa) + "," + to_string(p.c) + "," + to_string(p.h) + "," +
                    to_string(p.lambda));
    else
        emit(c, j.dump());
    return 0;
}

int cmd_bn(const Config& c)
{
    if (c.n < 0) throw sle::MalformedInput("--n must be >= 0");
    const auto n = static_cast<std::size_t>(c.n);
    const sle::ward::BVector b = sle::ward::build_B(sle::symbolic::parse_rational(c.alpha), n);
    if (c.eval.empty()) {
        emit(c, sle::symbolic::to_string(b[n]));
        return 0;
    }
    std::vector<Rational> point;
    for (const std::string& s : split(c.eval, ',')) point.push_back(sle::symbolic::parse_rational(s));
    if (point.size() != n) throw sle::MalformedInput("--eval needs exactly n values");
    emit(c, sle::symbolic::to_string(b[n].evaluate(point)));
    return 0;
}

int cmd_verify(const Config& c)
{
    const sle::verify::SuiteReport report = sle::verify::run_suite(c.suite);
    const sle::verify::CheckResult* bad = report.first_failure();
    if (c.format == "json") {
        json j;
        j["suite"] = report.suite;
        j["ok"] = report.ok();
        j["checks"] = json::array();
        for (const auto& r : report.checks) j["checks"].push_back({{"name", r.name}, {"ok", r.ok}, {"cases", r.cases}});
        j["first_failure"] = bad ? json(bad->name + ": " + bad->detail) : json(nullptr);
        emit(c, j.dump());
    } else {
        std::string text = "name,ok,cases";
        for (const auto& r : report.checks)
            text += "\n\"" + r.name + "\"," + (r.ok ? "true" : "false") + "," + std::to_string(r.cases);
        emit(c, text);
    }
    if (bad) {
        std::cerr << "first failing identity: " << bad->name << ": " << bad->detail << '\n';
        return kSuiteFailure;
    }
    return 0;
}

int cmd_trace(const Config& c)
{
    const sle::loewner::DrivingSample d =
        sle::loewner::sample_driving(parse_real(c.kappa), parse_real(c.T), c.steps, c.seed);
    const sle::loewner::TracePath path = sle::loewner::trace_from_driving(d);
    if (c.format == "json") {
        json j;
        j["scheme"] = path.scheme;
        j["seed"] = c.seed;
        j["points"] = json::array();
        for (std::size_t k = 0; k < path.points.size(); ++k)
            j["points"].push_back({d.times[k], path.points[k].real(), path.points[k].imag()});
        emit(c, j.dump());
        return 0;
    }
    std::string text = "t,re,im";
    for (std::size_t k = 0; k < path.points.size(); ++k)
        text += "\n" + fmt12(d.times[k]) + "," + fmt12(path.points[k].real()) + "," + fmt12(path.points[k].imag());
    emit(c, text);
    return 0;
}

int cmd_restriction(const Config& c)
{
    const auto r = sle::mc::estimate_avoidance(parse_real(c.kappa), parse_real(c.x), eps_or_default(c), c.steps,
                                               c.samples, c.seed, run_options(c));
    emit(c, estimate_text(c, r));
    return 0;
}

int cmd_hitting(const Config& c)
{
    std::vector<sle::mc::Slit> slits;
    for (const std::string& s : c.slits) {
        const auto parts = split(s, ',');
        if (parts.size() != 2) throw sle::MalformedInput("--slit takes x,eps");
        slits.push_back({parse_real(parts[0]), parse_real(parts[1])});
    }
    const auto r = sle::mc::estimate_hitting(parse_real(c.kappa), slits, c.steps, c.samples, c.seed, run_options(c));
    emit(c, estimate_text(c, r));
    return 0;
}

int cmd_martingale(const Config& c)
{
    std::vector<double> times;
    for (const std::string& s : split(c.times, ',')) times.push_back(parse_real(s));
    const auto rep = sle::mc::martingale_check_Yt(parse_real(c.kappa), parse_real(c.x), eps_or_default(c), times,
                                                  c.steps, c.samples, c.seed, run_options(c));
    if (c.format == "json") {
        json j;
        j["initial"] = rep.initial_value;
        j["max"] = rep.max_value;
        j["discarded"] = rep.discarded;
        j["n"] = rep.n_replicas;
        j["seed"] = c.seed;
        j["estimates"] = json::array();
        for (std::size_t i = 0; i < rep.times.size(); ++i) {
            json e = json::parse(sle::mc::to_json(rep.estimates[i]));
            json row;
            row["t"] = rep.times[i];
            for (const auto& [key, value] : e.items()) row[key] = value;
            j["estimates"].push_back(row);
        }
        emit(c, j.dump());
        return 0;
    }
    std::string text = "t,mean,stderr,theory,n,discarded";
    for (std::size_t i = 0; i < rep.times.size(); ++i) {
        const auto& e = rep.estimates[i];
        text += "\n" + fmt12(rep.times[i]) + "," + fmt12(e.mean) + "," + fmt12(e.std_error) + "," +
                fmt12(e.theory.value_or(NAN)) + "," + std::to_string(e.n_samples) + "," + std::to_string(e.discarded);
    }
    emit(c, text);
    return 0;
}

int cmd_dimension(const Config& c)
{
    const auto r = sle::mc::estimate_dimension(parse_real(c.kappa), c.steps, c.samples, c.seed, run_options(c));
    emit(c, estimate_text(c, r));
    return 0;
}

int cmd_drift(const Config& c)
{
    const auto r = sle::mc::drift_check_t0(parse_real(c.x), eps_or_default(c), parse_real(c.dt), c.vertices);
    const double rel = (r.lhs - r.rhs) / std::abs(r.rhs);
    if (c.format == "json")
        emit(c, json{{"lhs", r.lhs}, {"rhs", r.rhs}, {"relative_error", rel}}.dump());
    else
        emit(c, "lhs,rhs,relative_error\n" + fmt12(r.lhs) + "," + fmt12(r.rhs) + "," + fmt12(rel));
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact restriction correlators, Virasoro checks and SLE Monte Carlo experiments"};
    app.require_subcommand(1);
    app.fallthrough();
    Config c;
    app.add_option("--format", c.format, "json or csv (default csv for trace, json otherwise)")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", c.out, "Write the artifact to this file instead of stdout");
    app.add_option("--threads", c.threads, "Worker threads for Monte Carlo runs")->capture_default_str();

    auto* params = app.add_subcommand("params", "Print c, h and lambda for kappa");
    params->add_option("--kappa", c.kappa, "kappa as p/q")->required();

    auto* bn = app.add_subcommand("bn", "Print the restriction correlator B_n");
    bn->add_option("--alpha", c.alpha, "alpha as p/q")->required();
    bn->add_option("--n", c.n, "Number of slits")->required();
    bn->add_option("--eval", c.eval, "Comma-separated rational point x1,...,xn");

    auto* verify = app.add_subcommand("verify", "Run an exact identity suite");
    verify->add_option("--suite", c.suite, "symbolic, ward, virasoro or all")
        ->check(CLI::IsMember(sle::verify::suite_names()))
        ->capture_default_str();

    auto* trace = app.add_subcommand("trace", "Export a discrete SLE trace as CSV");
    trace->add_option("--kappa", c.kappa, "kappa")->capture_default_str();
    trace->add_option("--T", c.T, "Horizon")->capture_default_str();
    trace->add_option("--steps", c.steps, "Grid steps")->capture_default_str();
    trace->add_option("--seed", c.seed, "Seed")->capture_default_str();

    auto add_mc = [&](CLI::App* sub) {
        sub->add_option("--kappa", c.kappa, "kappa")->capture_default_str();
        sub->add_option("--steps", c.steps, "Grid steps on the first horizon")->capture_default_str();
        sub->add_option("--samples", c.samples, "Replicas")->capture_default_str();
        sub->add_option("--seed", c.seed, "Seed")->capture_default_str();
    };
    auto* restriction = app.add_subcommand("restriction", "Avoidance probability of a vertical slit");
    add_mc(restriction);
    restriction->add_option("--x", c.x, "Slit foot")->capture_default_str();
    restriction->add_option("--eps", c.eps, "Slit parameter; height eps*sqrt2 (default 1/sqrt2)");
    restriction->add_option("--max-doublings", c.max_doublings, "Horizon doublings")->capture_default_str();

    auto* hitting = app.add_subcommand("hitting", "Probability of hitting every given slit");
    add_mc(hitting);
    hitting->add_option("--slit", c.slits, "Slit as x,eps; repeatable");
    hitting->add_option("--max-doublings", c.max_doublings, "Horizon doublings")->capture_default_str();

    auto* martingale = app.add_subcommand("martingale", "Check E[Y_t] against Y_0");
    add_mc(martingale);
    martingale->add_option("--x", c.x, "Slit foot")->capture_default_str();
    martingale->add_option("--eps", c.eps, "Slit parameter (default 1/sqrt2)");
    martingale->add_option("--times", c.times, "Comma-separated check times")->capture_default_str();

    auto* dimension = app.add_subcommand("dimension", "Box-counting dimension of the trace");
    int dim_steps = 2000;
    std::size_t dim_samples = 10;
    dimension->add_option("--kappa", c.kappa, "kappa")->capture_default_str();
    dimension->add_option("--steps", dim_steps, "Grid steps on [0, 1]")->capture_default_str();
    dimension->add_option("--samples", dim_samples, "Traces")->capture_default_str();
    dimension->add_option("--seed", c.seed, "Seed")->capture_default_str();

    auto* drift = app.add_subcommand("drift", "Finite-difference check of the drift at t = 0");
    drift->add_option("--x", c.x, "Slit foot")->capture_default_str();
    drift->add_option("--eps", c.eps, "Slit parameter (default 1/sqrt2)");
    drift->add_option("--dt", c.dt, "Time step")->capture_default_str();
    drift->add_option("--vertices", c.vertices, "Zipper vertices on the slit")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsageError;
    }

    if (c.format.empty()) c.format = *trace ? "csv" : "json";
    try {
        if (*params) return cmd_params(c);
        if (*bn) return cmd_bn(c);
        if (*verify) return cmd_verify(c);
        if (*trace) return cmd_trace(c);
        if (*restriction) return cmd_restriction(c);
        if (*hitting) return cmd_hitting(c);
        if (*martingale) return cmd_martingale(c);
        if (*dimension) {
            c.steps = dim_steps;
            c.samples = dim_samples;
            return cmd_dimension(c);
        }
        if (*drift) return cmd_drift(c);
    } catch (const sle::MalformedInput& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsageError;
    }
    return kUsageError;
}
