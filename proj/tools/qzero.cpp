// qzero: zero-inclusion regions and zero-free balls for quaternionic polynomials.
//
//   qzero "0 0 1 0, 0 1 0 0"            # f(q) = q^2 + q i + j
//   qzero --file poly.txt --format json
//   echo "1 0 0 0, 0 0 0 0" | qzero --no-oracle
//
// Exit status: 0 success, 1 a zero escaped a region it must lie in,
// 2 usage or parse error, 3 numerical failure.

#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qzero/report.hpp"

namespace {

std::vector<qzero::BoundMethod> parse_bounds(const std::string& list) {
    if (list == "all") return {std::begin(qzero::kAllBoundMethods), std::end(qzero::kAllBoundMethods)};
    std::vector<qzero::BoundMethod> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto m = qzero::bound_method_from_string(item);
        if (!m) throw CLI::ValidationError("--bounds", "unknown bound '" + item + "'");
        out.push_back(*m);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Zero-inclusion regions and zero-free balls for quaternionic polynomials"};
    app.set_version_flag("--version", std::string("qzero ") + qzero::kReportSchema);

    std::string coefficients;
    std::string file;
    double t = 1.0;
    std::size_t samples = qzero::kDefaultSamples;
    std::uint64_t seed = 0;
    double tol_res = 1e-8;
    std::string bounds = "all";
    bool no_oracle = false;
    std::string format = "text";
    bool leading = false;
    bool g_form = false;
    bool timing = false;

    app.add_option("coefficients", coefficients,
                   "Quadruples \"w x y z\" for a_0, a_1, ..., comma separated (stdin when omitted)");
    app.add_option("--file", file, "Read coefficients from a file")->check(CLI::ExistingFile);
    app.add_option("--t", t, "Sphere radius for the zero-free ball")->check(CLI::PositiveNumber);
    app.add_option("--samples", samples, "Sphere sample count")->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "Sampling seed");
    app.add_option("--tol-res", tol_res, "Residual tolerance for isolated zeros")->check(CLI::PositiveNumber);
    app.add_option("--bounds", bounds, "Comma separated bound names, or \"all\"");
    app.add_flag("--no-oracle", no_oracle, "Bounds only; skip zero finding and verification");
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
    app.add_flag("--leading", leading, "Last quadruple is the (non-unit) leading coefficient a_n");
    app.add_flag("--g-form", g_form, "Coefficients stand left of the powers: a_n q^n + ... + a_0");
    app.add_flag("--timing", timing, "Record wall time in the report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    qzero::InputSpec spec;
    try {
        if (!file.empty() && !coefficients.empty()) throw qzero::ParseError("give coefficients or --file, not both", 0, 0);
        if (!file.empty()) {
            spec = qzero::parse_input_file(file);
        } else if (!coefficients.empty()) {
            spec = qzero::parse_input(coefficients);
        } else {
            const std::string in{std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
            spec = qzero::parse_input(in);
        }
        spec.bounds = parse_bounds(bounds);
    } catch (const qzero::ParseError& e) {
        std::cerr << "qzero: parse error: " << e.what() << "\n";
        return 2;
    } catch (const CLI::Error& e) {
        std::cerr << "qzero: " << e.what() << "\n";
        return 2;
    }
    spec.t = t;
    spec.samples = samples;
    spec.seed = seed;
    spec.tol_res = tol_res;
    spec.run_oracle = !no_oracle;
    spec.leading = leading;
    spec.form = g_form ? qzero::InputForm::g_form : qzero::InputForm::f_form;
    spec.timing = timing;

    qzero::Report report;
    try {
        report = qzero::run_report(spec);
    } catch (const qzero::ParseError& e) {
        std::cerr << "qzero: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "qzero: invalid input: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "qzero: invalid input: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "qzero: numerical failure: " << e.what() << "\n";
        return 3;
    }

    std::cout << (format == "json" ? qzero::emit_json(report) : qzero::emit_text(report));
    const int status = report.exit_status();
    if (status != 0) std::cerr << "qzero: containment failure, see report\n";
    return status;
}
