#include "pgap/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "pgap/bounds.hpp"
#include "pgap/solver1d.hpp"
#include "pgap/sweep.hpp"

namespace pgap {

namespace {

std::string fmt(double x) { return format_number(x); }

std::string fmt(const std::optional<double>& x) { return x ? fmt(*x) : std::string("n/a"); }

nlohmann::ordered_json json_number(const std::optional<double>& x) {
    if (!x) return nullptr;
    return round_sig12(*x);
}

template <class T>
std::vector<T> parse_list(const std::string& text, const char* what) {
    std::vector<T> out;
    std::istringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        try {
            std::size_t used = 0;
            if constexpr (std::is_same_v<T, int>) {
                out.push_back(std::stoi(tok, &used));
            } else {
                out.push_back(std::stod(tok, &used));
            }
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw InvalidParameter(std::string("bad entry '") + tok + "' in " + what);
        }
    }
    return out;
}

std::vector<std::string> parse_names(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(tok);
    }
    return out;
}

int cmd_bound(double p, int n, bool json, std::ostream& out) {
    const auto params = ProblemParams::make(p, n);
    const auto c = constants_table(params);
    const auto rb = ratio_bound(params);
    if (json) {
        nlohmann::ordered_json j;
        j["p"] = round_sig12(p);
        j["n"] = n;
        j["m"] = round_sig12(c.m);
        j["m_hat"] = round_sig12(c.m_hat);
        j["k_hat"] = round_sig12(c.k_hat);
        j["bound_eq7"] = json_number(rb.ratio_bound_eq7);
        j["bound_eq9"] = json_number(rb.ratio_bound_eq9);
        j["best"] = round_sig12(rb.best);
        out << j.dump() << '\n';
        return kExitOk;
    }
    out << "p = " << fmt(p) << ", N = " << n << " (" << to_string(c.regime) << ")\n"
        << "m         = " << fmt(c.m) << "\n"
        << "m (max)   = " << fmt(c.m_from_maximization) << "\n"
        << "m_hat     = " << fmt(c.m_hat) << "\n"
        << "k_hat     = " << fmt(c.k_hat) << "\n"
        << "bound_eq7 = " << fmt(rb.ratio_bound_eq7) << "\n"
        << "bound_eq9 = " << fmt(rb.ratio_bound_eq9) << "\n"
        << "best      = " << fmt(rb.best) << "\n";
    return kExitOk;
}

int cmd_solve1d(double p, double length, int modes, double tol, std::ostream& out) {
    if (modes < 1) throw InvalidParameter("--modes must be >= 1");
    const auto interval = Interval1D::make(0.0, length);
    std::vector<double> lambdas;
    for (int n = 1; n <= modes; ++n) {
        const auto mode = shoot_eigenvalue(interval, p, n, tol);
        lambdas.push_back(mode.lambda);
        out << "lambda_" << n << " = " << fmt(mode.lambda) << "  (closed form "
            << fmt(closed_form_eigenvalue_1d(p, n, length)) << ", zeros " << mode.zeros << ")\n";
    }
    if (modes >= 2) {
        const double ratio = lambdas[1] / lambdas[0];
        const double ref = ratio_1d(p);
        out << "ratio     = " << fmt(ratio) << "\n"
            << "2^p       = " << fmt(ref) << "\n"
            << "rel_error = " << fmt(std::abs(ratio - ref) / ref) << "\n";
    }
    return kExitOk;
}

int verdict_exit(const InstanceResult& r) {
    if (r.falsified) return kExitFalsified;
    if (!r.best_bound) return kExitRegime;
    return kExitOk;
}

int cmd_solve(const std::string& domain, double p, int grid, const InstanceOptions& opt,
              const std::string& dump, std::ostream& out) {
    const auto r = solve_instance(domain, p, grid, opt);
    out << "domain    = " << r.domain << " (N = " << r.n_dim << ", grid " << r.grid << ")\n"
        << "p         = " << fmt(r.p) << "\n"
        << "lambda1   = " << fmt(r.eig1.lambda) << "  (iterations " << r.eig1.iterations
        << ", residual " << fmt(r.eig1.residual) << ")\n"
        << "lambda2   = " << fmt(r.lambda2) << "  (" << to_string(r.estimate_kind) << ")\n";
    if (r.split) {
        out << "split     = axis " << r.split->axis << ", delta* " << fmt(r.split->delta)
            << ", endpoint " << to_string(r.split->endpoint) << "\n";
    }
    out << "ratio     = " << fmt(r.ratio) << "\n"
        << "bound_eq7 = " << fmt(r.bound_eq7) << "\n"
        << "bound_eq9 = " << fmt(r.bound_eq9) << "\n"
        << "best      = " << fmt(r.best_bound) << "\n";
    std::string verdict = "no bound applies (N > p fails and p < 2)";
    if (r.best_bound) {
        verdict = r.satisfied ? "satisfied" : (r.falsified ? "FALSIFIED" : "inconclusive");
    }
    out << "verdict   = " << verdict << "\n";
    if (!dump.empty()) {
        std::ofstream f(dump);
        if (!f) throw InvalidParameter("cannot write '" + dump + "'");
        write_eigenpair(f, r.eig1, r.p);
    }
    return verdict_exit(r);
}

int cmd_audit(const std::string& domain, double p, int grid, const InstanceOptions& opt,
              const std::string& out_path, std::ostream& out) {
    const auto r = solve_instance(domain, p, grid, opt);
    const auto report = audit_instance(r);
    const std::string text = to_json(report).dump(2) + "\n";
    if (out_path.empty()) {
        out << text;
    } else {
        std::ofstream f(out_path);
        if (!f) throw InvalidParameter("cannot write '" + out_path + "'");
        f << text;
    }
    return report.verdict() == Verdict::Falsified ? kExitFalsified : kExitOk;
}

int cmd_sweep(const SweepConfig& config, const std::string& out_path, std::ostream& out) {
    const auto rows = run_sweep(config);
    const std::string csv = sweep_csv(rows);
    if (out_path.empty()) {
        out << csv;
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw InvalidParameter("cannot write '" + out_path + "'");
        f << csv;
    }
    for (const auto& r : rows) {
        if (r.falsified) return kExitFalsified;
    }
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"p-Laplacian eigenvalue ratio toolkit", "pgap"};
    app.require_subcommand(1);

    double p = 2.0;
    int n = 1;
    bool json = false;
    auto* bound = app.add_subcommand("bound", "Constants and ratio bounds for (p, N)");
    bound->add_option("p", p, "Exponent p > 1")->required();
    bound->add_option("n", n, "Dimension N >= 1")->required();
    bound->add_flag("--json", json, "Emit JSON");

    double length = 1.0;
    int modes = 2;
    double tol = 1e-8;
    auto* solve1d = app.add_subcommand("solve1d", "1D eigenvalues by shooting");
    solve1d->add_option("p", p, "Exponent p > 1")->required();
    solve1d->add_option("--length", length, "Interval length")->capture_default_str();
    solve1d->add_option("--modes", modes, "Number of modes")->capture_default_str();
    solve1d->add_option("--tol", tol, "Relative tolerance")->capture_default_str();

    std::string domain = "square";
    int grid = 128;
    int axis = 0;
    int max_iter = 20000;
    std::string dump;
    auto* solve = app.add_subcommand("solve", "Principal eigenpair, lambda_2 and ratio-bound verdict");
    solve->add_option("--domain", domain, "interval|square|cube|rect|box:AxB[xC]")->capture_default_str();
    solve->add_option("--p", p, "Exponent p > 1")->capture_default_str();
    solve->add_option("--grid", grid, "Interior nodes per axis")->capture_default_str();
    solve->add_option("--tol", tol, "Solver tolerance")->capture_default_str();
    solve->add_option("--axis", axis, "Split axis for the lambda_2 upper estimate")->capture_default_str();
    solve->add_option("--max-iter", max_iter, "Iteration cap")->capture_default_str();
    solve->add_option("--dump", dump, "Write the eigenpair snapshot to this file");

    std::string out_path;
    auto* audit = app.add_subcommand("audit", "Audit every inequality on a computed eigenpair");
    audit->add_option("--domain", domain, "interval|square|cube|rect|box:AxB[xC]")->capture_default_str();
    audit->add_option("--p", p, "Exponent p > 1")->capture_default_str();
    audit->add_option("--grid", grid, "Interior nodes per axis")->capture_default_str();
    audit->add_option("--tol", tol, "Solver tolerance")->capture_default_str();
    audit->add_option("--max-iter", max_iter, "Iteration cap")->capture_default_str();
    audit->add_option("--out", out_path, "Write the JSON report here instead of stdout");

    std::string p_list = "1.5,2,3";
    std::string n_list;
    std::string domains = "interval,square";
    int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    auto* sweep = app.add_subcommand("sweep", "Solve a grid of instances and write CSV");
    sweep->add_option("--p-list", p_list, "Comma-separated exponents")->capture_default_str();
    sweep->add_option("--n-list", n_list, "Comma-separated dimensions to keep (default: all)");
    sweep->add_option("--domains", domains, "Comma-separated domain names")->capture_default_str();
    sweep->add_option("--grid", grid, "Interior nodes per axis")->capture_default_str();
    sweep->add_option("--tol", tol, "Solver tolerance")->capture_default_str();
    sweep->add_option("--max-iter", max_iter, "Iteration cap")->capture_default_str();
    sweep->add_option("--jobs", jobs, "Worker threads");
    sweep->add_option("--out", out_path, "CSV output file (default: stdout)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    const InstanceOptions instance{tol, max_iter, axis};
    try {
        if (bound->parsed()) return cmd_bound(p, n, json, out);
        if (solve1d->parsed()) return cmd_solve1d(p, length, modes, tol, out);
        if (solve->parsed()) return cmd_solve(domain, p, grid, instance, dump, out);
        if (audit->parsed()) return cmd_audit(domain, p, grid, instance, out_path, out);
        if (sweep->parsed()) {
            SweepConfig config;
            config.p_list = parse_list<double>(p_list, "--p-list");
            config.n_list = parse_list<int>(n_list, "--n-list");
            config.domains = parse_names(domains);
            config.grid = grid;
            config.instance = instance;
            config.jobs = jobs;
            return cmd_sweep(config, out_path, out);
        }
    } catch (const NoBoundAvailable& e) {
        err << "error: " << e.what() << '\n';
        return kExitRegime;
    } catch (const InvalidParameter& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "solver error: " << e.what() << '\n';
        return kExitSolver;
    }
    return kExitUsage;
}

}  // namespace pgap
