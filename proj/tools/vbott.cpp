#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "vb/suite.hpp"

namespace {

vb::GridSpec parse_grid(const std::string& s) {
    vb::GridSpec g;
    char sep1 = 0, sep2 = 0, sep3 = 0;
    std::istringstream in(s);
    if (!(in >> g.n_r >> sep1 >> g.n_theta >> sep2 >> g.n_rho >> sep3 >> g.n_plane) || sep1 != ',' || sep2 != ',' ||
        sep3 != ',' || !in.eof())
        throw vb::ConfigError("grid '" + s + "' is not n_r,n_theta,n_rho,n_plane");
    return g;
}

void parse_tols(const std::vector<std::string>& items, vb::SuiteConfig& cfg) {
    for (const std::string& kv : items) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw vb::ConfigError("--tol expects KEY=VAL, got '" + kv + "'");
        try {
            cfg.tol[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
        } catch (const std::logic_error&) {
            throw vb::ConfigError("--tol value in '" + kv + "' is not a number");
        }
    }
}

// --config belongs to the top-level app; accept it after the subcommand too.
std::vector<std::string> hoist_config(int argc, char** argv) {
    std::vector<std::string> front, rest;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--config" && i + 1 < argc) {
            front.push_back(a);
            front.push_back(argv[++i]);
        } else if (a.rfind("--config=", 0) == 0) {
            front.push_back(a);
        } else {
            rest.push_back(a);
        }
    }
    front.insert(front.end(), rest.begin(), rest.end());
    std::reverse(front.begin(), front.end());  // CLI11 takes the vector in reverse order
    return front;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Virasoro-Bott cocycle verification harness"};
    app.set_config("--config", "", "TOML/INI file; keys as the flags, in [verify] / [converge] sections");
    app.require_subcommand(1);

    vb::SuiteConfig cfg;
    std::string plan = "ANALYTIC";
    std::vector<std::string> tols;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--c0", cfg.c0, "coupling constant")->capture_default_str();
        sub->add_option("--grid-r", cfg.grid.n_r, "Gauss-Legendre radial nodes")->capture_default_str();
        sub->add_option("--grid-theta", cfg.grid.n_theta, "angular nodes")->capture_default_str();
        sub->add_option("--ball-rho", cfg.grid.n_rho, "ball radial nodes")->capture_default_str();
        sub->add_option("--ball-xy", cfg.grid.n_plane, "plane nodes per axis")->capture_default_str();
        sub->add_option("--plane-box", cfg.L, "plane box half-width L")->capture_default_str();
        sub->add_option("--plan", plan, "derivative plan")
            ->check(CLI::IsMember({"ANALYTIC", "FD4"}, CLI::ignore_case))
            ->capture_default_str();
        sub->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
        sub->add_option("--tol", tols, "tolerance override KEY=VAL (repeatable)");
        sub->add_option("--out", cfg.out_path, "output file");
        sub->add_option("--jobs", cfg.jobs, "checks run concurrently")->capture_default_str();
    };

    CLI::App* verify = app.add_subcommand("verify", "run a check suite and write a JSON report");
    add_common(verify);
    verify->add_option("--suite", cfg.suite, "all | cocycle | wz | liealg | forms")->capture_default_str();
    verify->add_flag("--timing", cfg.timing, "record wall time in the JSON report");
    std::string generators_csv;
    verify->add_option("--generator-table", generators_csv, "also write the generator bracket table (CSV)");

    CLI::App* converge = app.add_subcommand("converge", "run one check over a grid series and write CSV");
    add_common(converge);
    std::string check;
    std::vector<std::string> series;
    converge->add_option("--check", check, "check name")->required();
    converge->add_option("--grid", series, "n_r,n_theta,n_rho,n_plane (repeatable; default: the check's series)");
    CLI::App* checks = app.add_subcommand("checks", "list the registered checks");

    try {
        app.parse(hoist_config(argc, argv));
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    if (*checks) {
        for (const auto& s : vb::check_registry())
            std::printf("%-30s %-8s %9.1e  %s\n", s.name.c_str(), s.suite.c_str(), s.tolerance, s.anchor.c_str());
        return 0;
    }

    try {
        cfg.plan = (plan == "FD4" || plan == "fd4") ? vb::DerivativePlan::FD4 : vb::DerivativePlan::ANALYTIC;
        parse_tols(tols, cfg);

        if (*verify) {
            const auto t0 = std::chrono::steady_clock::now();
            vb::Report r = vb::run_suite(cfg);
            const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            if (cfg.timing) r.meta["wall_time_seconds"] = wall;
            std::cout << vb::summary_table(r, wall);
            if (!cfg.out_path.empty()) vb::write_report(r, cfg.out_path);
            if (!generators_csv.empty()) {
                std::ofstream f(generators_csv);
                if (!f) throw vb::ConfigError("cannot open '" + generators_csv + "'");
                f << vb::generator_table_csv(8, cfg.c0);
            }
            return r.pass() ? 0 : 1;
        }

        cfg.validate();
        std::vector<vb::GridSpec> grids;
        for (const std::string& s : series) grids.push_back(parse_grid(s));
        const auto rows = vb::convergence_study(check, grids, cfg);
        const std::string csv = vb::convergence_csv(rows);
        std::cout << csv;
        if (!cfg.out_path.empty()) {
            std::ofstream f(cfg.out_path);
            if (!f) throw vb::ConfigError("cannot open '" + cfg.out_path + "'");
            f << csv;
        }
        return 0;
    } catch (const vb::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
