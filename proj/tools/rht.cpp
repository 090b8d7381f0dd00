// rht: command-line front end.
//
// Exit status: 0 ok, 1 refuted / failed check, 2 usage or input error.

#include "rht/classify.hpp"
#include "rht/cohomology.hpp"
#include "rht/io.hpp"
#include "rht/report.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

namespace {

constexpr int default_cap = 12;

int env_cap()
{
    const char* s = std::getenv("RHT_CAP");
    if (!s || !*s)
        return default_cap;
    try {
        std::size_t used = 0;
        const int v = std::stoi(s, &used);
        if (used == std::string(s).size() && v >= 0)
            return v;
    } catch (const std::exception&) {
    }
    throw std::invalid_argument(std::string("RHT_CAP is not a non-negative integer: ") + s);
}

rht::Rational parse_scale(std::string s)
{
    if (s.rfind("N=", 0) == 0)
        s = s.substr(2);
    return rht::parse_rational(s);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"rational homotopy toolkit"};
    app.require_subcommand(1);
    bool machine = false;
    app.add_flag("--machine", machine, "print the versioned JSON report");

    std::string file;
    std::optional<int> degree;
    std::optional<int> through;
    bool bigraded = false;
    std::string cls;
    std::string bracket;
    std::optional<std::string> scale;
    std::string descriptor;
    std::vector<std::string> only;
    bool inject = false;
    std::string data_dir;

    auto* coh = app.add_subcommand("cohomology", "cohomology ranks and representatives");
    coh->add_option("file", file, "presentation file")->required();
    auto* deg_opt = coh->add_option("--degree", degree, "a single degree");
    coh->add_option("--through", through, "all degrees up to this cap")->excludes(deg_opt);

    auto* model = app.add_subcommand("model", "minimal or bigraded model");
    model->add_option("file", file, "presentation file")->required();
    model->add_option("--through", through, "truncation degree");
    model->add_flag("--bigraded", bigraded, "bigraded model of a ring file");

    auto* dist = app.add_subcommand("distortion", "distortion exponent of a generator");
    dist->add_option("file", file, "presentation file")->required();
    dist->add_option("--class", cls, "generator name")->required();
    dist->add_option("--through", through, "model cap when a model has to be built");

    auto* scal = app.add_subcommand("scalable", "classify a space descriptor");
    scal->add_option("descriptor", descriptor, "e.g. csum(3*CP2)")->required();

    auto* pair = app.add_subcommand("pair", "pair a generator with an iterated Whitehead bracket");
    pair->add_option("file", file, "presentation file")->required();
    pair->add_option("--class", cls, "generator name")->required();
    pair->add_option("--bracket", bracket, "e.g. [a,[a,b]]")->required();
    pair->add_option("--scale", scale, "multiply each leaf g by N^{|g|}");
    pair->add_option("--through", through, "model cap when a model has to be built");

    auto* ver = app.add_subcommand("verify-paper", "run the acceptance battery");
    ver->alias("verify");
    ver->add_option("--only", only, "criterion keys or numbers")->delimiter(',');
    ver->add_option("--data-dir", data_dir, "fixture directory");
    ver->add_flag("--inject-sign-bug", inject)->group("");

    for (auto* sub : app.get_subcommands({}))
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const int cap = through ? *through : env_cap();
        rht::Report report;
        if (coh->parsed()) {
            report = rht::report_cohomology(rht::load_presentation(file), degree, cap);
        } else if (model->parsed()) {
            report = rht::report_model(rht::load_presentation(file), cap, bigraded);
        } else if (dist->parsed()) {
            report = rht::report_distortion(rht::load_presentation(file), cls, cap);
        } else if (scal->parsed()) {
            report = rht::report_scalable(descriptor);
        } else if (pair->parsed()) {
            std::optional<rht::Rational> n;
            if (scale)
                n = parse_scale(*scale);
            report = rht::report_pair(rht::load_presentation(file), cls, bracket, n, cap);
        } else {
            rht::VerifyOptions options;
            options.only = only;
            options.inject_sign_bug = inject;
            options.data_dir = data_dir;
            report = rht::report_verify(options);
        }
        std::cout << (machine ? rht::render_machine(report) : rht::render_text(report));
        return report.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
