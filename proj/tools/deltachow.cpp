#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "deltachow/script.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Differential characteristic sets, prolongations and Chow forms"};
    std::string file;
    std::string inline_script;
    bool pretty = false;
    deltachow::script::Options options;

    auto* file_opt = app.add_option("script", file, "script file");
    auto* expr_opt = app.add_option("-e,--eval", inline_script, "inline script text");
    file_opt->excludes(expr_opt);
    app.add_option("--degree-cap", options.limits.degree_cap, "maximum total degree in Groebner computations")
        ->capture_default_str();
    app.add_option("--term-cap", options.limits.term_cap, "maximum number of terms of a polynomial")
        ->capture_default_str();
    app.add_option("--irreducibility-bound", options.irreducibility_bound, "witness degree bound for chain irreducibility")
        ->capture_default_str();
    app.add_option("--jobs", options.limits.jobs, "worker threads for independent components")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_flag("--pretty", pretty, "indent the JSON report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    std::string source;
    if (!expr_opt->empty()) {
        source = inline_script;
    } else if (!file_opt->empty()) {
        std::ifstream in(file, std::ios::binary);
        if (!in) {
            std::cerr << "deltachow: cannot read '" << file << "'\n";
            return 1;
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        source = buf.str();
    } else {
        std::cerr << app.help();
        return 2;
    }

    const auto report = deltachow::script::execute(source, options);
    std::cout << report.document.dump(pretty ? 2 : -1) << '\n';
    return report.exit_code;
}
