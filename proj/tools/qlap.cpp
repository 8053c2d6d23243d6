// Command-line frontend: spectra, theorem verification, eigenvector
// certificates, and Weyl inequality checks over graph6 inputs.
//
// Exit codes: 0 success / no violations, 1 violations found (or no
// certificate exists), 2 usage or input errors.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <qlap/qlap.hpp>

namespace {

using namespace qlap;

std::string format_value(double v) {
    const double snapped = std::round(v);
    if (std::abs(v - snapped) <= 1e-9) {
        std::ostringstream out;
        out << static_cast<long long>(snapped);
        return out.str();
    }
    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(4);
    out << v;
    return out.str();
}

std::string polynomial_string(const IntPolynomial& p) {
    std::ostringstream out;
    bool first = true;
    for (int d = p.degree(); d >= 0; --d) {
        const Int& c = p.coeff[static_cast<std::size_t>(d)];
        if (c == 0 && !(first && d == 0)) continue;
        const Int mag = abs(c);
        if (first) {
            if (c < 0) out << "-";
            first = false;
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        if (d == 0 || mag != 1) out << mag.str();
        if (d >= 1) out << "x";
        if (d >= 2) out << "^" << d;
    }
    return out.str();
}

std::string vector_string(const IntVector& y) {
    std::ostringstream out;
    out << "(";
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (i > 0) out << ",";
        out << y[i].str();
    }
    out << ")";
    return out.str();
}

std::vector<Graph> collect_graphs(const std::string& graph6, const std::string& family) {
    std::vector<Graph> graphs;
    if (!graph6.empty()) {
        graphs.push_back(parse_graph6(graph6));
    } else if (!family.empty()) {
        graphs.push_back(construct_family(parse_family(family)));
    } else {
        Graph6StreamReader reader(std::cin, /*fail_fast=*/true);
        while (auto g = reader.next()) graphs.push_back(std::move(*g));
        if (graphs.empty()) throw std::invalid_argument("no input: pass --graph6/--family or pipe graph6 lines");
    }
    return graphs;
}

void print_spectrum(const Graph& g, bool exact) {
    const SpectrumReport report = q_spectrum(g);
    std::ostringstream line;
    for (std::size_t i = 0; i < report.values.size(); ++i) {
        if (i > 0) line << " ";
        line << format_value(report.values[i]);
    }
    std::cout << line.str() << "\n";
    if (!exact) return;

    const ExactEigenProfile profile(q_matrix(g));
    std::cout << "char_poly: " << polynomial_string(profile.poly()) << "\n";

    IntPolynomial rest = profile.poly();
    std::ostringstream factored;
    std::ostringstream mults;
    for (int k = 1; k <= g.order();) {
        const auto value = profile.exact_value_at(k);
        if (!value) {
            ++k;
            continue;
        }
        const int mult = profile.counter().multiplicity_at(Rat(*value));
        factored << "(x - " << value->str() << ")";
        if (mult > 1) factored << "^" << mult;
        factored << " ";
        mults << " " << value->str() << ":" << mult;
        const IntPolynomial lin(std::vector<Int>{-*value, Int(1)});
        for (int e = 0; e < mult; ++e) rest = exact_divide(rest, lin);
        k += mult;
    }
    if (rest.degree() >= 1)
        factored << "(" << polynomial_string(rest) << ")";
    else
        factored << rest.coeff[0].str();
    std::cout << "factored: " << factored.str() << "\n";
    std::cout << "integer_eigenvalues:" << (mults.str().empty() ? " none" : mults.str()) << "\n";
    if (g.order() >= 2) {
        const SpectralIndexCount sic = spectral_index_count(g);
        std::cout << "index_count: a=" << sic.above << " m=" << sic.multiplicity << " m2=" << sic.m2
                  << "\n";
    }
}

int run_spectrum(const std::string& graph6, const std::string& family, bool exact) {
    for (const Graph& g : collect_graphs(graph6, family)) print_spectrum(g, exact);
    return 0;
}

int run_certificate(const std::string& graph6) {
    bool missing = false;
    for (const Graph& g : collect_graphs(graph6, "")) {
        try {
            for (const IntVector& y : certificate_vectors(g)) {
                std::cout << vector_string(y) << "\n";
                std::cout << "Q·y = (n-2)·y exact: OK\n";
            }
        } catch (const NoCertificateError& e) {
            std::cout << e.what() << "\n";
            missing = true;
        }
    }
    return missing ? 1 : 0;
}

int run_weyl(const std::string& graph6, int i, int j) {
    for (const Graph& g : collect_graphs(graph6, "")) {
        const std::vector<WeylVerdict> verdicts = weyl_check(q_matrix(g), q_matrix(complement(g)), i, j);
        for (const WeylVerdict& v : verdicts) {
            std::cout << weyl_side_name(v.side) << " (i=" << v.i << ", j=" << v.j << ", k=" << v.k
                      << "): lhs " << (v.exact_lhs ? v.exact_lhs->str() : format_value(v.lhs))
                      << (v.side == WeylSide::upper_bound ? " <= " : " >= ") << "rhs "
                      << (v.exact_rhs ? v.exact_rhs->str() : format_value(v.rhs)) << " : "
                      << (v.holds ? (v.equality ? "equality" : "holds") : "VIOLATED")
                      << (v.exact ? " [exact]" : " [float]") << "\n";
            if (v.certificate) std::cout << "  certificate: " << vector_string(*v.certificate) << "\n";
            if (!v.note.empty()) std::cout << "  note: " << v.note << "\n";
        }
    }
    return 0;
}

int run_verify(const std::string& theorem, const std::string& range, const std::string& input,
               bool dedupe, int jobs, bool no_timing, const std::string& out_path,
               std::string format_name) {
    SearchConfig cfg;
    if (theorem == "all") {
        cfg.suites.assign(kAllSuites.begin(), kAllSuites.end());
    } else {
        const std::string name = (theorem.size() == 1 && theorem >= "1" && theorem <= "4")
                                     ? "th" + theorem
                                     : theorem;
        const auto suite = parse_suite(name);
        if (!suite) throw std::invalid_argument("unknown suite '" + theorem + "'");
        cfg.suites.push_back(*suite);
    }

    const auto dots = range.find("..");
    if (dots == std::string::npos) {
        cfg.n_min = cfg.n_max = std::stoi(range);
    } else {
        cfg.n_min = std::stoi(range.substr(0, dots));
        cfg.n_max = std::stoi(range.substr(dots + 2));
    }
    cfg.dedupe = dedupe;
    cfg.jobs = jobs;
    cfg.include_timing = !no_timing;

    CorpusReport report;
    if (!input.empty()) {
        cfg.source = SearchConfig::Source::file;
        cfg.input_path = input;
        std::ifstream file;
        std::istream* stream = &std::cin;
        if (input != "-") {
            file.open(input);
            if (!file) throw std::invalid_argument("cannot open input file '" + input + "'");
            stream = &file;
        }
        Graph6StreamReader reader(*stream, /*fail_fast=*/true);
        report = run_verification(cfg, [&reader] { return reader.next(); });
    } else {
        report = run_verification(cfg);
    }

    ReportFormat format = out_path.empty() ? ReportFormat::text : ReportFormat::json;
    if (!format_name.empty()) {
        const auto parsed = parse_report_format(format_name);
        if (!parsed) throw std::invalid_argument("unknown format '" + format_name + "'");
        format = *parsed;
    }
    if (out_path.empty()) {
        emit_report(report, format, std::cout);
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::invalid_argument("cannot open output file '" + out_path + "'");
        emit_report(report, format, out);
    }
    return report.total_violations() > 0 ? 1 : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"signless Laplacian spectral toolkit"};
    app.require_subcommand(1);

    std::string graph6, family, theorem, range = "2..6", input, out_path, format_name;
    bool exact = false, dedupe = false, no_timing = false;
    int idx_i = 1, idx_j = 1;
    int jobs = 1;
    if (const char* env = std::getenv("QLAP_JOBS")) {
        const int parsed = std::atoi(env);
        if (parsed > 0) jobs = parsed;
    }

    CLI::App* spectrum = app.add_subcommand("spectrum", "print the Q-spectrum of graphs");
    CLI::Option* g6_opt = spectrum->add_option("--graph6", graph6, "graph6 string");
    spectrum->add_option("--family", family, "family spec: K:n, Km:a,b,c, K1t:t,r, star:n, path:n, cycle:n, empty:n, union:SPEC+SPEC")
        ->excludes(g6_opt);
    spectrum->add_flag("--exact", exact, "also print char poly, integer eigenvalues, and (a, m, m2)");

    CLI::App* verify = app.add_subcommand("verify", "run a theorem suite over a corpus");
    verify->add_option("--theorem", theorem, "suite: 1|2|3|4|weyl|das|k1t|all")->required();
    verify->add_option("--n", range, "order range A..B for labeled enumeration (default 2..6)");
    verify->add_option("--input", input, "graph6 file instead of labeled enumeration ('-' for stdin)");
    verify->add_flag("--dedupe", dedupe, "collapse isomorphic graphs (n <= 10)");
    verify->add_option("--jobs", jobs, "worker threads (default $QLAP_JOBS or 1)");
    verify->add_flag("--no-timing", no_timing, "report wall_ms as 0 for byte-stable output");
    verify->add_option("--out", out_path, "write the report to a file (default format json)");
    verify->add_option("--format", format_name, "report format: json|csv|text");

    CLI::App* certificate = app.add_subcommand("certificate", "print exact (n-2)-eigenvector certificates");
    certificate->add_option("--graph6", graph6, "graph6 string");

    CLI::App* weyl = app.add_subcommand("weyl", "check the Weyl inequalities for Q(G) + Q(complement)");
    weyl->add_option("--graph6", graph6, "graph6 string");
    weyl->add_option("--i", idx_i, "eigenvalue index into Q(G), 1-based")->required();
    weyl->add_option("--j", idx_j, "eigenvalue index into Q(complement), 1-based")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*spectrum) return run_spectrum(graph6, family, exact);
        if (*verify) return run_verify(theorem, range, input, dedupe, jobs, no_timing, out_path, format_name);
        if (*certificate) return run_certificate(graph6);
        if (*weyl) return run_weyl(graph6, idx_i, idx_j);
    } catch (const NoCertificateError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
