// Command-line front end: catalog lookup, closed-form entropy evaluation,
// numerical verification runs and collision scans, with table, JSON or CSV
// output. Every report echoes its resolved configuration so runs can be
// reproduced exactly; identical flags and seed give byte-identical output.

#include <cmath>
#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "volent/catalog.hpp"
#include "volent/entropy.hpp"
#include "volent/errors.hpp"
#include "volent/specparse.hpp"
#include "volent/verify.hpp"

using json = nlohmann::ordered_json;
using volent::catalog::DomainSpec;
using volent::catalog::ProductSpec;

namespace {

constexpr int kExitFail = 1;  // a verification FAILed
constexpr int kExitError = 2; // bad input or runtime error

struct Options {
    std::string format = "table";
    uint64_t seed = 0;
    double tolerance = -1.0; // resolved per method when negative
    int64_t samples = 0;     // 0: quadrature; > 0: Monte Carlo
    std::string radii;
    int64_t max_dim = 24;
    std::string method = "exponent";
    std::string spec;
};

std::vector<double> parse_radii(const std::string& text) {
    double start = 0.0, stop = 0.0, step = 0.0;
    char c1 = 0, c2 = 0;
    std::istringstream in(text);
    if (!(in >> start >> c1 >> stop >> c2 >> step) || c1 != ':' || c2 != ':' ||
        !in.eof()) {
        throw volent::ParseError("radii must be start:stop:step, got '" + text + "'", 0);
    }
    if (!(step > 0.0) || stop < start) {
        throw volent::ParseError("radii range is empty or has nonpositive step", 0);
    }
    std::vector<double> radii;
    for (double t = start; t <= stop + 1e-9 * step; t += step) radii.push_back(t);
    return radii;
}

std::string format_double(double value) {
    std::ostringstream out;
    out.precision(12);
    out << value;
    return out.str();
}

json domain_json(const DomainSpec& domain) {
    const auto result = volent::entropy::entropy_hyperbolic(domain);
    json entry;
    entry["spec"] = volent::specparse::format(domain);
    entry["kind"] = volent::catalog::kind_name(domain.kind);
    entry["r"] = domain.r;
    entry["a"] = domain.a;
    entry["b"] = domain.b;
    entry["d"] = domain.d;
    entry["genus"] = domain.genus;
    entry["entropy"] = result.value;
    entry["squared_quarter"] = result.squared_quarter;
    entry["entropy_bergman"] = volent::entropy::entropy_bergman(domain);
    return entry;
}

std::string csv_escape(const std::string& cell) {
    if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
    std::string quoted = "\"";
    for (char c : cell) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

void emit_csv_row(std::ostream& out, const json& entry,
                  const std::vector<std::string>& columns) {
    for (size_t i = 0; i < columns.size(); ++i) {
        if (i > 0) out << ",";
        if (!entry.contains(columns[i])) continue;
        const auto& cell = entry[columns[i]];
        if (cell.is_string()) {
            out << csv_escape(cell.get<std::string>());
        } else {
            out << cell.dump();
        }
    }
    out << "\n";
}

// config echo: "config" object in JSON, comment lines elsewhere
void emit_config_header(std::ostream& out, const json& config, const std::string& format) {
    if (format == "json") return;
    const std::string prefix = format == "csv" ? "# " : "config: ";
    for (const auto& [key, value] : config.items()) {
        out << prefix << key << "=";
        if (value.is_string()) {
            out << value.get<std::string>();
        } else {
            out << value.dump();
        }
        out << "\n";
    }
}

json make_config(const std::string& command, const Options& opts) {
    json config;
    config["command"] = command;
    if (command != "scan") config["spec"] = opts.spec;
    config["format"] = opts.format;
    if (command == "verify") {
        config["method"] = opts.method;
        config["seed"] = opts.seed;
        config["samples"] = opts.samples;
        config["radii"] = opts.radii;
        config["tolerance"] = opts.tolerance;
    }
    if (command == "scan") config["max_dim"] = opts.max_dim;
    return config;
}

int cmd_info(const Options& opts) {
    const DomainSpec domain = volent::specparse::parse_domain(opts.spec);
    const auto result = volent::entropy::entropy_hyperbolic(domain);

    json report;
    report["config"] = make_config("info", opts);
    json entry = domain_json(domain);
    for (auto& [key, value] : entry.items()) report[key] = value;
    report["optimizer"] = result.optimizer;

    if (opts.format == "json") {
        std::cout << report.dump(2) << "\n";
    } else if (opts.format == "csv") {
        emit_config_header(std::cout, report["config"], "csv");
        std::cout << "spec,r,a,b,d,genus,entropy,squared_quarter,entropy_bergman\n";
        emit_csv_row(std::cout, entry,
                     {"spec", "r", "a", "b", "d", "genus", "entropy", "squared_quarter",
                      "entropy_bergman"});
    } else {
        emit_config_header(std::cout, report["config"], "table");
        std::cout << "spec             " << entry["spec"].get<std::string>() << "\n"
                  << "invariants       r=" << domain.r << " a=" << domain.a
                  << " b=" << domain.b << "\n"
                  << "dimension        " << domain.d << "\n"
                  << "genus            " << domain.genus << "\n"
                  << "entropy          " << format_double(result.value) << "\n"
                  << "entropy^2/4      " << result.squared_quarter << "\n"
                  << "entropy_bergman  "
                  << format_double(volent::entropy::entropy_bergman(domain)) << "\n";
        std::cout << "optimizer        [";
        for (size_t i = 0; i < result.optimizer.size(); ++i) {
            std::cout << (i ? ", " : "") << format_double(result.optimizer[i]);
        }
        std::cout << "]\n";
    }
    return 0;
}

int cmd_entropy(const Options& opts) {
    const ProductSpec product = volent::specparse::parse_product(opts.spec);
    const auto result = volent::entropy::entropy_product(product);

    json report;
    report["config"] = make_config("entropy", opts);
    report["spec"] = volent::specparse::format(product);
    report["d"] = product.dimension();
    report["entropy"] = result.value;
    report["squared_quarter"] = result.squared_quarter;
    report["factors"] = json::array();
    for (const auto& factor : product.factors) {
        report["factors"].push_back(domain_json(factor));
    }
    report["optimizer"] = result.optimizer;

    if (opts.format == "json") {
        std::cout << report.dump(2) << "\n";
    } else if (opts.format == "csv") {
        emit_config_header(std::cout, report["config"], "csv");
        std::cout << "spec,r,a,b,d,genus,entropy,squared_quarter,entropy_bergman\n";
        for (const auto& factor : report["factors"]) {
            emit_csv_row(std::cout, factor,
                         {"spec", "r", "a", "b", "d", "genus", "entropy",
                          "squared_quarter", "entropy_bergman"});
        }
        json total;
        total["spec"] = report["spec"];
        total["d"] = report["d"];
        total["entropy"] = report["entropy"];
        total["squared_quarter"] = report["squared_quarter"];
        emit_csv_row(std::cout, total,
                     {"spec", "r", "a", "b", "d", "genus", "entropy", "squared_quarter",
                      "entropy_bergman"});
    } else {
        emit_config_header(std::cout, report["config"], "table");
        for (const auto& factor : report["factors"]) {
            std::cout << "factor " << factor["spec"].get<std::string>()
                      << "  entropy=" << format_double(factor["entropy"].get<double>())
                      << "  entropy^2/4=" << factor["squared_quarter"] << "\n";
        }
        std::cout << "product " << report["spec"].get<std::string>()
                  << "  entropy=" << format_double(result.value)
                  << "  entropy^2/4=" << result.squared_quarter << "\n";
    }
    return 0;
}

int cmd_verify(const Options& opts) {
    Options resolved = opts;
    if (resolved.tolerance < 0.0) {
        resolved.tolerance = resolved.method == "exponent" ? 1e-9 : 0.05;
    }
    const ProductSpec product = volent::specparse::parse_product(resolved.spec);
    const auto closed_form = volent::entropy::entropy_product(product);

    json report;
    report["config"] = make_config("verify", resolved);
    report["spec"] = volent::specparse::format(product);
    report["method"] = resolved.method;
    report["closed_form"] = closed_form.value;

    double numerical = 0.0;
    if (resolved.method == "exponent") {
        const auto best = volent::verify::maximize_exponent(product, 50, resolved.seed);
        numerical = best.value;
        report["numerical"] = numerical;
        report["argmax"] = best.argmax;
    } else if (resolved.method == "growth") {
        if (resolved.radii.empty()) {
            throw volent::Error("--radii is required for the growth method");
        }
        const auto radii = parse_radii(resolved.radii);
        volent::verify::Method method;
        if (resolved.samples > 0) {
            method = volent::verify::MonteCarlo{resolved.samples, resolved.seed};
        } else {
            method = volent::verify::Quadrature{};
        }
        const auto estimate = volent::verify::growth_entropy(product, radii, method);
        numerical = estimate.slope;
        report["numerical"] = numerical;
        report["slope_std_error"] = estimate.slope_std_error;
        report["fit_window"] = estimate.fit_window;
        report["radii"] = estimate.radii;
        report["log_volumes"] = estimate.log_volumes;
    } else {
        throw volent::Error("unknown verify method '" + resolved.method + "'");
    }

    // exponent compares absolutely, growth relatively
    const double abs_dev = std::abs(numerical - closed_form.value);
    const double rel_dev = abs_dev / closed_form.value;
    const bool pass = resolved.method == "exponent" ? abs_dev <= resolved.tolerance
                                                    : rel_dev <= resolved.tolerance;
    report["abs_dev"] = abs_dev;
    report["rel_dev"] = rel_dev;
    report["tolerance"] = resolved.tolerance;
    report["pass"] = pass;

    if (resolved.format == "json") {
        std::cout << report.dump(2) << "\n";
    } else if (resolved.format == "csv") {
        emit_config_header(std::cout, report["config"], "csv");
        if (resolved.method == "growth") {
            std::cout << "spec,method,radius,log_volume,slope,slope_std_error,"
                         "closed_form,rel_dev,tolerance,pass\n";
            for (size_t i = 0; i < report["radii"].size(); ++i) {
                json row;
                row["spec"] = report["spec"];
                row["method"] = resolved.method;
                row["radius"] = report["radii"][i];
                row["log_volume"] = report["log_volumes"][i];
                row["slope"] = numerical;
                row["slope_std_error"] = report["slope_std_error"];
                row["closed_form"] = closed_form.value;
                row["rel_dev"] = rel_dev;
                row["tolerance"] = resolved.tolerance;
                row["pass"] = pass;
                emit_csv_row(std::cout, row,
                             {"spec", "method", "radius", "log_volume", "slope",
                              "slope_std_error", "closed_form", "rel_dev", "tolerance",
                              "pass"});
            }
        } else {
            std::cout << "spec,method,closed_form,numerical,abs_dev,rel_dev,tolerance,"
                         "pass\n";
            emit_csv_row(std::cout, report,
                         {"spec", "method", "closed_form", "numerical", "abs_dev",
                          "rel_dev", "tolerance", "pass"});
        }
    } else {
        emit_config_header(std::cout, report["config"], "table");
        std::cout << "spec         " << report["spec"].get<std::string>() << "\n"
                  << "closed form  " << format_double(closed_form.value) << "\n"
                  << "numerical    " << format_double(numerical) << "\n"
                  << "abs dev      " << format_double(abs_dev) << "\n"
                  << "rel dev      " << format_double(rel_dev) << "\n"
                  << "tolerance    " << format_double(resolved.tolerance)
                  << (resolved.method == "exponent" ? " (absolute)" : " (relative)")
                  << "\n"
                  << "result       " << (pass ? "PASS" : "FAIL") << "\n";
    }
    return pass ? 0 : kExitFail;
}

int cmd_scan(const Options& opts) {
    const auto scan = volent::verify::scan_collisions(opts.max_dim);

    json report;
    report["config"] = make_config("scan", opts);
    report["max_dim"] = scan.max_dim;
    report["groups"] = json::array();
    int same_dim_groups = 0;
    for (const auto& group : scan.groups) {
        json entry;
        entry["squared_quarter"] = group.squared_quarter;
        entry["entropy"] = 2.0 * std::sqrt(static_cast<double>(group.squared_quarter));
        entry["same_dimension_pair"] = group.same_dimension_pair;
        entry["members"] = json::array();
        for (const auto& member : group.members) {
            entry["members"].push_back(domain_json(member));
        }
        report["groups"].push_back(entry);
        if (group.same_dimension_pair) ++same_dim_groups;
    }
    report["conjecture_counterexample_candidates"] = same_dim_groups;

    if (opts.format == "json") {
        std::cout << report.dump(2) << "\n";
    } else if (opts.format == "csv") {
        emit_config_header(std::cout, report["config"], "csv");
        std::cout << "group,squared_quarter,entropy,spec,r,a,b,d,genus,"
                     "same_dimension_group\n";
        for (size_t g = 0; g < report["groups"].size(); ++g) {
            const auto& group = report["groups"][g];
            for (const auto& member : group["members"]) {
                json row = member;
                row["group"] = g;
                row["squared_quarter"] = group["squared_quarter"];
                row["entropy"] = group["entropy"];
                row["same_dimension_group"] = group["same_dimension_pair"];
                emit_csv_row(std::cout, row,
                             {"group", "squared_quarter", "entropy", "spec", "r", "a",
                              "b", "d", "genus", "same_dimension_group"});
            }
        }
    } else {
        emit_config_header(std::cout, report["config"], "table");
        if (scan.groups.empty()) {
            std::cout << "no entropy collisions up to dimension " << scan.max_dim << "\n";
        }
        for (const auto& group : scan.groups) {
            std::cout << "entropy^2/4 = " << group.squared_quarter << "  (entropy "
                      << format_double(2.0 *
                                       std::sqrt(static_cast<double>(group.squared_quarter)))
                      << ")";
            if (group.same_dimension_pair) {
                std::cout << "  ** same-dimension pair: conjecture counterexample "
                             "candidate **";
            }
            std::cout << "\n";
            for (const auto& member : group.members) {
                std::cout << "    " << volent::specparse::format(member)
                          << "  d=" << member.d << "\n";
            }
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"volume entropy of bounded symmetric domains"};
    app.require_subcommand(1);

    Options opts;

    auto* info = app.add_subcommand("info", "invariants and entropy of one domain");
    info->add_option("spec", opts.spec, "domain spec, e.g. I:2,12")->required();

    auto* entropy =
        app.add_subcommand("entropy", "closed-form entropy of a product of domains");
    entropy->add_option("spec", opts.spec, "product spec, e.g. 'I:2,12 x IV:18'")
        ->required();

    auto* verify = app.add_subcommand("verify", "check the closed form numerically");
    verify->add_option("spec", opts.spec, "domain or product spec")->required();
    verify->add_option("--method", opts.method, "exponent | growth")
        ->check(CLI::IsMember({"exponent", "growth"}));
    verify->add_option("--radii", opts.radii, "start:stop:step for the growth method");
    verify->add_option("--samples", opts.samples,
                       "Monte Carlo sample count (quadrature when omitted)");
    verify->add_option("--seed", opts.seed, "RNG seed (default 0)");
    verify->add_option("--tolerance", opts.tolerance,
                       "pass threshold; absolute for exponent, relative for growth");

    auto* scan = app.add_subcommand("scan", "entropy collisions in the catalog");
    scan->add_option("--max-dim", opts.max_dim, "dimension bound")->required();

    for (auto* sub : {info, entropy, verify, scan}) {
        sub->add_option("--format", opts.format, "table | json | csv")
            ->check(CLI::IsMember({"table", "json", "csv"}));
    }

    CLI11_PARSE(app, argc, argv);

    try {
        if (info->parsed()) return cmd_info(opts);
        if (entropy->parsed()) return cmd_entropy(opts);
        if (verify->parsed()) return cmd_verify(opts);
        return cmd_scan(opts);
    } catch (const volent::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
}
