#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "jetlie/suite.hpp"

using namespace jetlie;

int main(int argc, char** argv) {
    CLI::App app{"Exact verification suites for jet groups, Poisson-Lie structures and their quantizations"};
    app.set_version_flag("--version", "verify 1.0");

    std::string suite = "all";
    SuiteConfig cfg;
    int n = 0, d = 0, hOrder = 0, degree = 0;
    std::string set = "R2", format = "json";
    std::map<std::string, std::string> params;
    bool serial = false;

    app.add_option("suite", suite, "group, poisson, phi, bialgebra, cybe, classify, density, quantum, controls, all")
        ->check(CLI::IsMember({"group", "poisson", "phi", "bialgebra", "cybe", "classify", "density", "quantum",
                               "controls", "all"}));
    auto* on = app.add_option("--n", n, "truncation level or generator count");
    auto* od = app.add_option("--d", d, "power-family exponent");
    app.add_option("--lambda", cfg.lambda, "rational value or 'symbolic'");
    auto* oh = app.add_option("--h-order", hOrder, "h-truncation order of the quantum checks");
    app.add_option("--set", set, "quantum relation set")->check(CLI::IsMember({"R1", "R2", "R3", "R2-ansatz"}));
    for (const char* p : {"C", "C1", "C2", "C3", "C4", "C5"})
        app.add_option(std::string("--") + p, params[p], "rational value or 'symbolic'");
    app.add_option("--phi", cfg.phi, "power, extended, linear, exp or table:<file>");
    auto* odeg = app.add_option("--degree", degree, "phi truncation degree");
    app.add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--out", cfg.out, "write the report here instead of standard output");
    app.add_flag("--corrected", cfg.corrected, "use the tables with the misprints repaired");
    app.add_flag("--serial", serial, "run the verifiers on one thread");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    std::vector<Report> records;
    try {
        cfg.suite = suite_from_name(suite);
        if (*on) cfg.n = n;
        if (*od) cfg.d = d;
        if (*oh) cfg.hOrder = hOrder;
        if (*odeg) cfg.degree = degree;
        cfg.set = set == "R2-ansatz" ? "R2_ansatz" : set;
        for (const auto& [k, v] : params)
            if (!v.empty()) cfg.params[k] = v;
        cfg.format = format == "text" ? Format::Text : Format::Json;
        records = run_suite(cfg, serial ? Exec::Serial : Exec::Parallel);
    } catch (const ConfigError& e) {
        std::cerr << "verify: " << e.what() << "\n";
        return 2;
    }

    const std::string text = emit_reports(records, cfg.format);
    if (cfg.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(cfg.out, std::ios::binary);
        if (!(f << text)) {
            std::cerr << "verify: cannot write " << cfg.out << "\n";
            return 2;
        }
    }
    return all_pass(records) ? 0 : 1;
}
