// Command-line surface: the (g, n) table of equivariant weight-two Euler
// characteristics, the n = 0 integer series with sign data, the Laurent
// polynomials A_g and C_g, the verification suites, and a debug dump of the
// graph enumeration.
#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "w2/graphs.hpp"
#include "w2/records.hpp"
#include "w2/verify.hpp"

namespace {

void write_out(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw w2::usage_error("cannot open output file: " + path);
    os << text;
}

int run_omega2(int g_max, int n_max, const std::string& basis, const std::string& format,
               const std::string& out) {
    w2::Weight2Config cfg{g_max, n_max};
    auto records = w2::omega2_records(cfg, basis);
    std::string text;
    if (format == "text") text = w2::records_to_table(records, cfg);
    else if (format == "json") text = w2::records_to_json(records).dump(2) + "\n";
    else if (format == "csv") text = w2::records_to_csv(records);
    else throw w2::usage_error("format must be text, json or csv");
    write_out(text, out);
    return 0;
}

int run_chi_mg(int g_max, bool signs, const std::string& format, const std::string& out) {
    auto chi = w2::chi2_mg_series(g_max);
    std::ostringstream os;
    if (format == "csv") {
        os << "g,chi2,sign,log1p_abs\n";
        for (int g = 0; g <= g_max; ++g) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.6f", w2::log1p_abs(chi[g]));
            os << g << "," << chi[g].get_str() << "," << sgn(chi[g]) << "," << buf << "\n";
        }
    } else if (format == "json") {
        nlohmann::json arr = nlohmann::json::array();
        for (int g = 0; g <= g_max; ++g) {
            nlohmann::json j;
            j["g"] = g;
            j["chi2"] = chi[g].get_str();
            j["sign"] = sgn(chi[g]);
            j["log1p_abs"] = w2::log1p_abs(chi[g]);
            arr.push_back(std::move(j));
        }
        os << arr.dump(2) << "\n";
    } else {
        throw w2::usage_error("format must be csv or json");
    }
    if (signs) {
        if (g_max < 23) {
            os << "# sign conjecture: window too small (needs g >= 23)\n";
        } else if (auto g = w2::sign_conjecture_counterexample(g_max)) {
            os << "# sign conjecture: COUNTEREXAMPLE at g = " << *g << "\n";
        } else {
            os << "# sign conjecture: holds for 23 <= g <= " << g_max << "\n";
        }
    }
    write_out(os.str(), out);
    return 0;
}

int run_laurent(const std::string& what, int genus, const std::string& out) {
    w2::PLaurent f;
    if (what == "A") f = w2::laurent_A(genus);
    else if (what == "C") f = w2::laurent_C(genus);
    else throw w2::usage_error("--what must be A or C");
    write_out(w2::laurent_to_string(f) + "\n", out);
    return 0;
}

int run_verify(const std::string& suite, int g_max, int n_max) {
    std::vector<w2::CheckResult> results;
    auto append = [&](std::vector<w2::CheckResult> r) {
        for (auto& c : r) results.push_back(std::move(c));
    };
    if (suite == "identities" || suite == "all") append(w2::verify_identities());
    if (suite == "pipeline" || suite == "all")
        append(w2::verify_pipeline(w2::Weight2Config{g_max, n_max}));
    if (suite == "oracle" || suite == "all") append(w2::verify_oracle());
    if (results.empty()) throw w2::usage_error("suite must be identities, pipeline, oracle or all");
    bool all_pass = true;
    for (const auto& c : results) {
        std::cout << (c.pass ? "PASS" : "FAIL") << "  " << c.name;
        if (!c.pass && !c.detail.empty()) std::cout << "  [" << c.detail << "]";
        std::cout << "\n";
        all_pass = all_pass && c.pass;
    }
    return all_pass ? 0 : 1;
}

int run_dump_graphs(int genus, int points, const std::string& out) {
    auto classes = w2::enumerate_x_generators(genus, points);
    std::ostringstream os;
    os << "# w2-graphs v1\n";
    for (const auto& cls : classes) os << cls.rep.dump_line() << "\n";
    write_out(os.str(), out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Equivariant weight-two Euler characteristics of moduli of curves"};
    app.require_subcommand(1);

    int g_max = 10, n_max = 5, genus = 1, points = 3;
    std::string basis = "schur", format = "text", out, what = "A", suite = "all";
    bool signs = false;

    auto* omega2 = app.add_subcommand("omega2", "print the (g, n) table");
    omega2->add_option("--max-genus", g_max, "largest genus")->check(CLI::NonNegativeNumber);
    omega2->add_option("--max-points", n_max, "largest number of marked points")
        ->check(CLI::NonNegativeNumber);
    omega2->add_option("--basis", basis, "schur or power");
    omega2->add_option("--format", format, "text, json or csv");
    omega2->add_option("--out", out, "write to a file instead of stdout");

    auto* chimg = app.add_subcommand("chi-mg", "n = 0 series chi_2(M_g)");
    chimg->add_option("--max-genus", g_max, "largest genus")->check(CLI::NonNegativeNumber);
    chimg->add_flag("--signs", signs, "report the sign-pattern conjecture status");
    std::string chi_format = "csv";
    chimg->add_option("--format", chi_format, "csv or json");
    chimg->add_option("--out", out, "write to a file instead of stdout");

    auto* laurent = app.add_subcommand("laurent", "Laurent polynomial A_g or C_g");
    laurent->add_option("--what", what, "A or C");
    laurent->add_option("--genus", genus, "genus g >= 1")->check(CLI::PositiveNumber);
    laurent->add_option("--out", out, "write to a file instead of stdout");

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("--suite", suite, "identities, pipeline, oracle or all");
    int vg = 8, vn = 4;
    verify->add_option("--max-genus", vg, "pipeline window genus")->check(CLI::NonNegativeNumber);
    verify->add_option("--max-points", vn, "pipeline window points")
        ->check(CLI::NonNegativeNumber);

    auto* dump = app.add_subcommand("dump-graphs", "debug dump of generator classes");
    dump->add_option("--genus", genus, "genus")->check(CLI::NonNegativeNumber);
    dump->add_option("--points", points, "marked points")->check(CLI::NonNegativeNumber);
    dump->add_option("--out", out, "write to a file instead of stdout");

    try {
        app.parse(argc, argv);
        if (omega2->parsed()) return run_omega2(g_max, n_max, basis, format, out);
        if (chimg->parsed()) return run_chi_mg(g_max, signs, chi_format, out);
        if (laurent->parsed()) return run_laurent(what, genus, out);
        if (verify->parsed()) return run_verify(suite, vg, vn);
        if (dump->parsed()) return run_dump_graphs(genus, points, out);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const w2::usage_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const w2::internal_error& e) {
        std::cerr << "internal consistency failure: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
