// pct: percentile-rank class attribution and citation impact indicators.

#include <cstdlib>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "pct/pct.hpp"

namespace {

enum ExitCode : int {
    kOk = 0,
    kInternalError = 1,
    kParseError = 2,
    kConfigError = 3,
    kBoundaryError = 4,
};

struct RawOptions {
    std::string scheme;
    std::string rule = "fractional";
    std::string rounding = "none";
    std::string boundary;
    std::string route = "exact";
    std::string format = "table";
    std::string input = "-";
    int precision = 0;
};

void add_run_options(CLI::App* cmd, RawOptions& raw, bool with_rule) {
    cmd->add_option("--scheme", raw.scheme, "top50 | pr6 | pr100 | topx=<x> | custom=<path>")->required();
    if (with_rule)
        cmd->add_option("--rule", raw.rule, "count-worse | count-worse-or-equal | midpoint | fractional")
            ->capture_default_str();
    cmd->add_option("--rounding", raw.rounding, "none | floor | ceil | half-up")->capture_default_str();
    cmd->add_option("--boundary", raw.boundary, "lower | upper | error (default: lower, with a warning)");
    cmd->add_option("--midpoint-route", raw.route, "exact | endpoints")->capture_default_str();
    cmd->add_option("--format", raw.format, "table | csv | json")->capture_default_str();
    cmd->add_option("--input", raw.input, "input file, or - for stdin")->capture_default_str();
    cmd->add_option("--precision", raw.precision, "significant digits of decimal renderings (env PCT_PRECISION)");
}

pct::cli::RunConfig to_config(const RawOptions& raw) {
    pct::cli::RunConfig config;
    config.scheme = raw.scheme;
    config.rule = pct::parse_counting_rule(raw.rule);
    config.rounding = pct::parse_rounding_mode(raw.rounding);
    if (!raw.boundary.empty()) config.boundary = pct::parse_boundary_policy(raw.boundary);
    config.route = pct::parse_midpoint_route(raw.route);
    config.format = pct::cli::parse_output_format(raw.format);
    if (raw.precision > 0) {
        config.precision = raw.precision;
    } else if (const char* env = std::getenv("PCT_PRECISION"); env && *env) {
        try {
            config.precision = std::stoi(env);
        } catch (const std::exception&) {
            throw pct::ConfigError(std::string("PCT_PRECISION must be a positive integer, got '") + env + "'");
        }
        if (config.precision < 1) throw pct::ConfigError("PCT_PRECISION must be a positive integer");
    }
    // validate the scheme before reading any input
    pct::cli::resolve_scheme(config.scheme);
    return config;
}

}

int main(int argc, char** argv) {
    CLI::App app{"Attribute documents to percentile rank classes and compute I3, R and PP_top indicators"};
    app.require_subcommand(1);

    RawOptions raw;
    auto* attribute = app.add_subcommand("attribute", "per-document class attribution");
    add_run_options(attribute, raw, true);
    auto* indicators = app.add_subcommand("indicators", "I3, R and PP_top per group");
    add_run_options(indicators, raw, true);
    auto* report = app.add_subcommand("report", "boundary hits and cross-rule disagreements of the point rules");
    add_run_options(report, raw, false);

    auto* schemes = app.add_subcommand("schemes", "list, show or validate class schemes");
    schemes->require_subcommand(1);
    schemes->add_subcommand("list", "list the built-in schemes");
    std::string selector, path;
    auto* show = schemes->add_subcommand("show", "print a scheme as a JSON definition");
    show->add_option("selector", selector, "scheme selector")->required();
    auto* validate = schemes->add_subcommand("validate", "check a scheme definition file");
    validate->add_option("path", path, "scheme file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfigError;
    }

    try {
        if (schemes->parsed()) {
            if (show->parsed())
                pct::cli::cmd_schemes_show(selector, std::cout);
            else if (validate->parsed())
                pct::cli::cmd_schemes_validate(path, std::cout);
            else
                pct::cli::cmd_schemes_list(std::cout);
            return kOk;
        }

        const pct::cli::RunConfig config = to_config(raw);
        const pct::io::InputDataset data = pct::io::parse_input(pct::io::read_source(raw.input));
        if (attribute->parsed())
            pct::cli::cmd_attribute(config, data, std::cout, std::cerr);
        else if (indicators->parsed())
            pct::cli::cmd_indicators(config, data, std::cout, std::cerr);
        else
            pct::cli::cmd_report(config, data, std::cout);
        return kOk;
    } catch (const pct::ParseError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kParseError;
    } catch (const pct::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kConfigError;
    } catch (const pct::BoundaryError& e) {
        std::cerr << "boundary error: " << e.what() << '\n';
        return kBoundaryError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInternalError;
    }
}
