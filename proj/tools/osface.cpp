// Command-line harness for the OS-boundary face model library.
//
//   osface verify all|theta|pfaffian|ybe|reflection|oracle|recursion|formulas|identity|appendix
//          [--config PATH] [--seed N] [--q LIST] [--samples N] [--n-max N] [--out PATH] [--timing]
//   osface eval theta|P|E|F --u LIST --h VALUE --q VALUE
//
// Exit status: 0 all checks pass, 1 a check failed (or eval hit a pole), 2 usage
// or configuration error. OSFACE_CONFIG names a default config file.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "osface/osface.hpp"

namespace {

constexpr int exit_fail = 1;
constexpr int exit_usage = 2;

// Accepts "a", "bi", "a+bi", "a-bi" (also with j, and an optional '*' before i).
osface::cplx parse_complex(std::string text) {
    std::string s;
    for (char c : text)
        if (c != ' ' && c != '*') s.push_back(c == 'j' ? 'i' : c);
    if (s.empty()) throw osface::config_error("empty complex literal");
    auto num = [&](const std::string& part) {
        if (part.empty() || part == "+") return 1.0;
        if (part == "-") return -1.0;
        std::size_t used = 0;
        const double v = std::stod(part, &used);
        if (used != part.size()) throw osface::config_error("bad complex literal '" + text + "'");
        return v;
    };
    try {
        if (s.back() != 'i') return {num(s), 0.0};
        s.pop_back();
        // Split at the last sign that is not part of an exponent or the leading sign.
        for (std::size_t k = s.size(); k-- > 1;) {
            if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E')
                return {num(s.substr(0, k)), num(s.substr(k))};
        }
        return {0.0, num(s)};
    } catch (const std::logic_error&) {
        throw osface::config_error("bad complex literal '" + text + "'");
    }
}

std::vector<osface::cplx> parse_complex_list(const std::string& text) {
    std::vector<osface::cplx> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) out.push_back(parse_complex(item));
    return out;
}

void print_complex(osface::cplx z) {
    // Adding 0.0 turns a negative zero into +0.
    std::printf("%.15g %.15g\n", z.real() + 0.0, z.imag() + 0.0);
}

int run_verify(const std::string& group, const std::optional<std::string>& config_path,
               const std::optional<std::uint64_t>& seed, const std::optional<std::string>& q,
               const std::optional<std::uint64_t>& samples, const std::optional<int>& n_max,
               const std::optional<std::string>& out, bool timing) {
    osface::suite_config cfg;
    std::optional<std::string> path = config_path;
    if (!path) {
        if (const char* env = std::getenv("OSFACE_CONFIG"); env && *env) path = env;
    }
    if (path) cfg = osface::load_config(*path);
    if (seed) cfg.seed = *seed;
    if (q) cfg.nomes = osface::parse_nome_list(*q);
    if (samples) cfg.samples_per_check = *samples;
    if (n_max) cfg.n_max = *n_max;
    if (out) cfg.out = *out;
    if (timing) cfg.record_timing = true;
    cfg.validate();

    std::ofstream file(cfg.out, std::ios::binary | std::ios::trunc);
    if (!file) throw osface::config_error("cannot write report to " + cfg.out);

    const osface::suite_result result = osface::run_suite(cfg, group);
    osface::write_report(file, result.records);
    file.close();
    if (!file) throw osface::config_error("failed writing report to " + cfg.out);

    std::size_t failed_checks = 0;
    for (const auto& s : osface::summarize(result.records)) {
        const bool ok = s.failures == 0;
        if (!ok) ++failed_checks;
        std::printf("%-4s %-52s n=%-6zu max_residual=%.3e tol=%.1e", ok ? "PASS" : "FAIL",
                    s.check_name.c_str(), s.samples, s.max_residual, s.tolerance);
        if (cfg.record_timing) std::printf(" time=%lldus", static_cast<long long>(s.elapsed_micros));
        std::printf("\n");
    }
    std::printf("%zu records, %zu failing checks, report: %s\n", result.records.size(),
                failed_checks, cfg.out.c_str());
    return result.all_pass ? 0 : exit_fail;
}

int run_eval(const std::string& what, const std::string& u_text,
             const std::optional<std::string>& h_text, double q) {
    const osface::context ctx(q);
    const std::vector<osface::cplx> u = parse_complex_list(u_text);
    if (what == "theta") {
        if (u.size() != 1) throw osface::config_error("eval theta takes exactly one --u value");
        print_complex(osface::theta(u.front(), ctx));
        return 0;
    }
    if (!h_text) throw osface::config_error("eval " + what + " requires --h");
    const osface::parameter_point p(u, parse_complex(*h_text));
    if (what == "P") {
        print_complex(osface::partition_function(p, ctx));
    } else if (what == "E") {
        print_complex(osface::eval_E(p, ctx));
    } else if (what == "F") {
        print_complex(osface::eval_F(p, ctx));
    } else {
        throw osface::config_error("unknown eval target: " + what);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Verification harness for the elliptic free-fermion face model with OS boundary"};
    app.require_subcommand(1);

    auto* verify = app.add_subcommand("verify", "Run seeded identity checks and write a report");
    std::string group = "all";
    std::optional<std::string> config_path, q_list, out_path;
    std::optional<std::uint64_t> seed, samples;
    std::optional<int> n_max;
    bool timing = false;
    verify->add_option("group", group, "Check group")
        ->check(CLI::IsMember({"all", "theta", "pfaffian", "ybe", "reflection", "oracle",
                               "recursion", "formulas", "identity", "appendix"}));
    verify->add_option("--config", config_path, "key = value config file");
    verify->add_option("--seed", seed, "64-bit seed");
    verify->add_option("--q", q_list, "Comma-separated nomes in (0, 1)");
    verify->add_option("--samples", samples, "Samples per check and nome");
    verify->add_option("--n-max", n_max, "Largest n for the Pfaffian identity (<= 5)");
    verify->add_option("--out", out_path, "Report path (JSON lines)");
    verify->add_flag("--timing", timing, "Record elapsed_micros in the report");

    auto* eval = app.add_subcommand("eval", "Evaluate theta, P, E or F at a point");
    eval->set_help_flag("--help", "Print this help message and exit");
    std::string what;
    std::string u_text;
    std::optional<std::string> h_text;
    double q = 0.0;
    eval->add_option("what", what, "theta | P | E | F")
        ->required()
        ->check(CLI::IsMember({"theta", "P", "E", "F"}));
    eval->add_option("--u", u_text, "Comma-separated complex values, e.g. 0.1+0.02i,-0.3")
        ->required();
    eval->add_option("--h", h_text, "Height parameter (complex)");
    eval->add_option("--q", q, "Nome in (0, 1)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_usage;
    }

    try {
        if (*verify)
            return run_verify(group, config_path, seed, q_list, samples, n_max, out_path, timing);
        return run_eval(what, u_text, h_text, q);
    } catch (const osface::pole_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_fail;
    } catch (const osface::config_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return exit_usage;
    } catch (const osface::domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_usage;
    } catch (const osface::capacity_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_usage;
    }
}
