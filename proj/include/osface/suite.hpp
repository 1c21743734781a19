#ifndef OSFACE_SUITE_HPP
#define OSFACE_SUITE_HPP

// Seeded verification suite: configuration, the check groups, and the
// line-delimited JSON report.
//
// Every group draws its samples from its own stream, derived from
// (seed, group name, nome index), so groups can run concurrently and a group
// run alone produces the same records as inside `all`. Records are sorted by
// (check_name, sample_index) before writing.

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <functional>
#include <future>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "face_model.hpp"
#include "formulas.hpp"
#include "pfaffian.hpp"
#include "report.hpp"
#include "sampler.hpp"
#include "state_sum.hpp"
#include "theta.hpp"

namespace osface {

class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Default tolerance for a check, keyed by the part of the name before '['.
inline double default_tolerance(std::string_view base) {
    static const std::map<std::string, double, std::less<>> table = {
        {"theta.oddness", 1e-10},
        {"theta.quasi_period_1", 1e-10},
        {"theta.quasi_period_tau", 1e-10},
        {"theta.half_shift", 1e-10},
        {"theta.addition", 1e-10},
        {"pfaffian.expansion_vs_definition", 1e-10},
        {"pfaffian.elimination_vs_definition", 1e-10},
        {"pfaffian.square_vs_determinant", 1e-10},
        {"face.ybe", 1e-10},
        {"face.h_periodicity", 1e-12},
        {"face.ice_rule", 0.0},
        {"face.reflection", 1e-10},
        {"face.reflection_variant", 1e-10},
        {"oracle.two_site_closed_form", 1e-11},
        {"oracle.symmetry", 1e-10},
        {"oracle.quasi_period_1", 1e-9},
        {"oracle.quasi_period_tau", 1e-9},
        {"recursion.antipodal", 1e-10},
        {"recursion.antipodal_half", 1e-10},
        {"formulas.oracle_vs_E", 1e-9},
        {"formulas.oracle_vs_F", 1e-9},
        {"formulas.E_vs_F", 1e-9},
        {"formulas.row_expansion_E", 1e-10},
        {"formulas.kernel_skew_E", 1e-11},
        {"formulas.kernel_skew_F", 1e-11},
        {"formulas.reduction_E", 1e-10},
        {"formulas.reduction_F", 1e-10},
        {"formulas.prefactor_period_1", 1e-10},
        {"formulas.prefactor_period_tau", 1e-10},
        {"formulas.pfaffian_factor_period_1", 1e-10},
        {"formulas.pfaffian_factor_period_tau", 1e-10},
        {"identity.pfaffian_pair", 1e-8},
        {"identity.zero_height_sum_side", 1e-9},
        {"identity.zero_height_shifted_side", 1e-9},
        {"factorization.rosengren", 1e-9},
        {"factorization.rains", 1e-9},
        {"n2_chain.full_identity", 1e-10},
        {"n2_chain.quartic_12_34", 1e-10},
        {"n2_chain.quartic_13_24", 1e-10},
        {"n2_chain.quartic_14_23", 1e-10},
        {"n2_chain.three_term", 1e-10},
    };
    const auto it = table.find(base);
    if (it == table.end()) throw config_error("unknown check name: " + std::string(base));
    return it->second;
}

inline std::string_view check_base_name(std::string_view name) {
    return name.substr(0, name.find('['));
}

/// Check groups, in the order `all` runs them.
inline const std::vector<std::string>& suite_groups() {
    static const std::vector<std::string> groups = {"theta",     "pfaffian", "ybe",
                                                    "reflection", "oracle",  "recursion",
                                                    "formulas",  "identity", "appendix"};
    return groups;
}

struct suite_config {
    std::vector<double> nomes = {0.1, 0.3, 0.5, 0.7};
    /// Samples drawn per check and per nome.
    std::uint64_t samples_per_check = 250;
    std::uint64_t seed = 20181010;
    int n_max = 5;
    std::map<std::string, double> tolerance_overrides;
    std::string out = "osface_report.jsonl";
    /// Write measured elapsed_micros into the report. Off by default so identical
    /// configurations give byte-identical files.
    bool record_timing = false;

    void validate() const {
        if (nomes.empty()) throw config_error("at least one nome is required");
        for (double q : nomes)
            if (!(q > 0.0 && q < 1.0)) throw config_error("nome outside (0, 1)");
        if (samples_per_check < 1) throw config_error("samples_per_check must be >= 1");
        if (n_max < 1 || n_max > static_cast<int>(max_oracle_n))
            throw config_error("n_max must lie in 1..5");
        for (const auto& [name, tol] : tolerance_overrides) {
            default_tolerance(check_base_name(name));
            if (!(tol >= 0.0)) throw config_error("tolerance must be >= 0 for " + name);
        }
    }

    /// Override for the full name, else for its base name, else the default.
    double tolerance(std::string_view name) const {
        if (auto it = tolerance_overrides.find(std::string(name)); it != tolerance_overrides.end())
            return it->second;
        const std::string_view base = check_base_name(name);
        if (auto it = tolerance_overrides.find(std::string(base)); it != tolerance_overrides.end())
            return it->second;
        return default_tolerance(base);
    }
};

// ---------------------------------------------------------------------------
// Config text: one `key = value` per line, '#' starts a comment.
//   q = 0.1, 0.3          samples = 250       seed = 42
//   n_max = 5             out = report.jsonl  timing = false
//   tolerance.<check name> = 1e-10

namespace detail {

inline std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

inline double parse_double(const std::string& s, const std::string& key) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw config_error("bad number for " + key + ": '" + s + "'");
    }
}

inline std::uint64_t parse_unsigned(const std::string& s, const std::string& key) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw config_error("bad non-negative integer for " + key + ": '" + s + "'");
    try {
        return std::stoull(s);
    } catch (const std::exception&) {
        throw config_error("integer out of range for " + key + ": '" + s + "'");
    }
}

} // namespace detail

inline std::vector<double> parse_nome_list(std::string_view text) {
    std::vector<double> out;
    std::string item;
    std::istringstream in{std::string(text)};
    while (std::getline(in, item, ',')) out.push_back(detail::parse_double(detail::trim(item), "q"));
    return out;
}

/// Applies one key/value pair.
inline void apply_config_entry(suite_config& cfg, const std::string& key, const std::string& value) {
    if (key == "q" || key == "nomes") {
        cfg.nomes = parse_nome_list(value);
    } else if (key == "samples" || key == "samples_per_check") {
        cfg.samples_per_check = detail::parse_unsigned(value, key);
    } else if (key == "seed") {
        cfg.seed = detail::parse_unsigned(value, key);
    } else if (key == "n_max") {
        cfg.n_max = static_cast<int>(detail::parse_unsigned(value, key));
    } else if (key == "out") {
        cfg.out = value;
    } else if (key == "timing") {
        if (value != "true" && value != "false") throw config_error("timing must be true/false");
        cfg.record_timing = value == "true";
    } else if (key.rfind("tolerance.", 0) == 0) {
        cfg.tolerance_overrides[key.substr(10)] = detail::parse_double(value, key);
    } else {
        throw config_error("unknown config key: " + key);
    }
}

inline suite_config parse_config(std::istream& in, suite_config cfg = {}) {
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string body = detail::trim(line.substr(0, line.find('#')));
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos)
            throw config_error("line " + std::to_string(lineno) + ": expected key = value");
        apply_config_entry(cfg, detail::trim(body.substr(0, eq)), detail::trim(body.substr(eq + 1)));
    }
    cfg.validate();
    return cfg;
}

inline suite_config load_config(const std::string& path, suite_config cfg = {}) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot read config file " + path);
    return parse_config(in, std::move(cfg));
}

// ---------------------------------------------------------------------------
// Report serialization

inline nlohmann::ordered_json complex_json(cplx z) { return {z.real(), z.imag()}; }

inline nlohmann::ordered_json to_json(const verification_report& r) {
    nlohmann::ordered_json params;
    nlohmann::ordered_json u = nlohmann::ordered_json::array();
    for (const cplx& z : r.params.u) u.push_back(complex_json(z));
    params["u"] = std::move(u);
    params["h"] = r.params.h ? complex_json(*r.params.h) : nlohmann::ordered_json(nullptr);
    params["nome"] = r.params.nome;
    params["seed"] = r.params.seed;
    params["sample_index"] = r.params.sample_index;

    nlohmann::ordered_json j;
    j["check_name"] = r.check_name;
    j["params"] = std::move(params);
    j["lhs"] = complex_json(r.lhs);
    j["rhs"] = complex_json(r.rhs);
    j["residual"] = r.residual;
    j["tolerance"] = r.tolerance;
    j["pass"] = r.pass;
    j["elapsed_micros"] = r.elapsed_micros;
    return j;
}

inline verification_report report_from_json(const nlohmann::json& j) {
    auto z = [](const nlohmann::json& a) { return cplx(a.at(0).get<double>(), a.at(1).get<double>()); };
    verification_report r;
    r.check_name = j.at("check_name").get<std::string>();
    const auto& p = j.at("params");
    for (const auto& x : p.at("u")) r.params.u.push_back(z(x));
    if (!p.at("h").is_null()) r.params.h = z(p.at("h"));
    r.params.nome = p.at("nome").get<double>();
    r.params.seed = p.at("seed").get<std::uint64_t>();
    r.params.sample_index = p.at("sample_index").get<std::uint64_t>();
    r.lhs = z(j.at("lhs"));
    r.rhs = z(j.at("rhs"));
    r.residual = j.at("residual").is_null() ? std::numeric_limits<double>::quiet_NaN()
                                            : j.at("residual").get<double>();
    r.tolerance = j.at("tolerance").get<double>();
    r.pass = j.at("pass").get<bool>();
    r.elapsed_micros = j.at("elapsed_micros").get<std::int64_t>();
    return r;
}

inline void write_report(std::ostream& out, const std::vector<verification_report>& records) {
    for (const auto& r : records) out << to_json(r).dump() << '\n';
}

// ---------------------------------------------------------------------------
// Groups

struct suite_result {
    std::vector<verification_report> records;
    bool all_pass = true;
};

namespace detail {

// Collects records of one group, stamping tolerance, sample coordinates and timing.
class group_recorder {
public:
    group_recorder(const suite_config& cfg, std::vector<verification_report>& out)
        : cfg_(cfg), out_(out) {}

    void begin(double nome, std::uint64_t seed, std::uint64_t index) {
        nome_ = nome;
        seed_ = seed;
        index_ = index;
    }

    template <class F>
    auto timed(F&& f) {
        const auto start = std::chrono::steady_clock::now();
        auto value = f();
        elapsed_ = std::chrono::duration_cast<std::chrono::microseconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();
        return value;
    }

    void add(verification_report r) {
        r.tolerance = cfg_.tolerance(r.check_name);
        r.pass = r.residual <= r.tolerance;
        r.params.nome = nome_;
        r.params.seed = seed_;
        r.params.sample_index = index_;
        r.elapsed_micros = cfg_.record_timing ? elapsed_ : 0;
        out_.push_back(std::move(r));
    }

    template <class Range>
    void add_all(Range&& rs) {
        for (auto& r : rs) add(std::move(r));
    }

private:
    const suite_config& cfg_;
    std::vector<verification_report>& out_;
    double nome_ = 0.0;
    std::uint64_t seed_ = 0;
    std::uint64_t index_ = 0;
    std::int64_t elapsed_ = 0;
};

// Runs body(ctx, rng, recorder) samples_per_check times for every nome. A body
// that hits a degenerate sample or a pole is retried with fresh draws.
template <class Body>
void for_each_sample(const suite_config& cfg, std::string_view group,
                     std::vector<verification_report>& out, Body&& body) {
    group_recorder rec(cfg, out);
    for (std::size_t qi = 0; qi < cfg.nomes.size(); ++qi) {
        const context ctx(cfg.nomes[qi]);
        const std::uint64_t stream_seed = derive_seed(cfg.seed, group, qi);
        sampler rng(stream_seed);
        for (std::uint64_t s = 0; s < cfg.samples_per_check; ++s) {
            rec.begin(cfg.nomes[qi], stream_seed, qi * cfg.samples_per_check + s);
            for (int attempt = 0;; ++attempt) {
                const std::size_t mark = out.size();
                try {
                    body(ctx, rng, rec);
                    break;
                } catch (const degenerate_sample&) {
                    out.resize(mark);
                } catch (const pole_error&) {
                    out.resize(mark);
                }
                if (attempt >= sampler::max_attempts)
                    throw degenerate_sample("suite: too many rejected samples in " +
                                            std::string(group));
            }
        }
    }
}

inline void run_theta(const suite_config& cfg, std::vector<verification_report>& out) {
    for_each_sample(cfg, "theta", out, [](const context& ctx, sampler& rng, group_recorder& rec) {
        const cplx u = rng.in_box(ctx), v = rng.in_box(ctx), x = rng.in_box(ctx),
                   y = rng.in_box(ctx);
        verification_report odd = rec.timed([&] { return check_oddness(u, ctx); });
        auto [period_1, period_tau] = rec.timed([&] { return check_quasi_periodicity(u, ctx); });
        verification_report half = rec.timed([&] { return check_half_shift_symmetry(u, ctx); });
        verification_report add = rec.timed([&] { return check_addition_formula(u, v, x, y, ctx); });
        for (auto* r : {&odd, &period_1, &period_tau, &half}) r->params.u = {u};
        add.params.u = {u, v, x, y};
        rec.add_all(std::vector{odd, period_1, period_tau, half, add});
    });
}

inline void run_pfaffian(const suite_config& cfg, std::vector<verification_report>& out) {
    for_each_sample(cfg, "pfaffian", out, [](const context& ctx, sampler& rng, group_recorder& rec) {
        const std::size_t dim = 2 + 2 * static_cast<std::size_t>(rng.unit() * 5.0);
        auto x = skew_matrix<cplx>::from_upper(dim, [&](std::size_t, std::size_t) {
            return cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
        });
        const cplx def = pf_by_definition(x);
        const cplx exp = rec.timed([&] { return pf_by_expansion(x); });
        rec.add(make_report("pfaffian.expansion_vs_definition", exp, def, 0.0, ctx.zero_tolerance));
        const cplx elim = rec.timed([&] { return pf_by_elimination(x); });
        rec.add(make_report("pfaffian.elimination_vs_definition", elim, def, 0.0,
                            ctx.zero_tolerance));

        Eigen::MatrixXcd m(dim, dim);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j) m(i, j) = x(i, j);
        const cplx det = m.partialPivLu().determinant();
        rec.add(make_report("pfaffian.square_vs_determinant", elim * elim, det, 0.0,
                            ctx.zero_tolerance));
    });
}

inline void run_ybe(const suite_config& cfg, std::vector<verification_report>& out) {
    for_each_sample(cfg, "ybe", out, [](const context& ctx, sampler& rng, group_recorder& rec) {
        const cplx u = rng.in_box(ctx), v = rng.in_box(ctx), w = rng.in_box(ctx),
                   h = rng.in_box(ctx);
        auto ybe = rec.timed([&] { return check_dynamical_ybe(u, v, w, h, ctx); });
        auto per = rec.timed([&] { return check_h_periodicity(u, v, h, ctx); });
        auto ice = rec.timed([&] { return check_ice_rule(build_r_matrix(u, v, h, ctx)); });
        for (auto* r : {&ybe, &per, &ice}) {
            r->params.u = {u, v, w};
            r->params.h = h;
        }
        per.params.u.pop_back();
        ice.params.u.pop_back();
        rec.add_all(std::vector{ybe, per, ice});
    });
}

inline void run_reflection(const suite_config& cfg, std::vector<verification_report>& out) {
    for_each_sample(cfg, "reflection", out,
                    [&cfg](const context& ctx, sampler& rng, group_recorder& rec) {
        const cplx u = rng.in_box(ctx), v = rng.in_box(ctx), h = rng.in_box(ctx);
        std::vector<verification_report> rs;
        rs.push_back(rec.timed([&] { return check_reflection_equation(u, v, h, ctx); }));
        // If the literal reading fails, record every shifted variant so the report
        // shows which one holds.
        if (!(rs.front().residual <= cfg.tolerance("face.reflection"))) {
            for (const reflection_shifts& s : shifted_reflection_variants())
                rs.push_back(check_reflection_equation(u, v, h, ctx, 1e-10, s));
        }
        for (auto& r : rs) {
            r.params.u = {u, v};
            r.params.h = h;
        }
        rec.add_all(rs);
    });
}

inline void run_oracle(const suite_config& cfg, std::vector<verification_report>& out) {
    const std::size_t n_qp = std::min<std::size_t>(2, cfg.n_max);
    const bool symmetric = cfg.n_max >= 2;
    for_each_sample(cfg, "oracle", out,
                    [&](const context& ctx, sampler& rng, group_recorder& rec) {
        const parameter_point p1 = rng.point(1, ctx);
        rec.add(rec.timed([&] { return check_two_site_closed_form(p1, ctx); }));
        if (symmetric) {
            const parameter_point p2 = rng.point(2, ctx);
            for (std::size_t i = 0; i < 4; ++i)
                for (std::size_t j = i + 1; j < 4; ++j)
                    rec.add(rec.timed([&] { return check_symmetry(p2, i, j, ctx); }));
        }
        for (std::size_t n = 1; n <= n_qp; ++n) {
            const parameter_point p = rng.point(n, ctx);
            auto [a, b] = rec.timed([&] { return check_quasi_periodicity_p(p, ctx); });
            rec.add(a);
            rec.add(b);
        }
    });
}

inline void run_recursion(const suite_config& cfg, std::vector<verification_report>& out) {
    const std::size_t n_top = std::min<std::size_t>(3, cfg.n_max);
    for_each_sample(cfg, "recursion", out,
                    [&](const context& ctx, sampler& rng, group_recorder& rec) {
        for (std::size_t n = 2; n <= n_top; ++n) {
            const parameter_point p = rng.point(n, ctx);
            for (std::size_t l = 1; l < 2 * n; ++l) {
                rec.add(rec.timed([&] { return check_recursion_antipodal(p, l, ctx); }));
                rec.add(rec.timed([&] { return check_recursion_antipodal_half(p, l, ctx); }));
            }
        }
    });
}

inline void run_formulas(const suite_config& cfg, std::vector<verification_report>& out) {
    const std::size_t n_top = std::min<std::size_t>(3, cfg.n_max);
    for_each_sample(cfg, "formulas", out,
                    [&](const context& ctx, sampler& rng, group_recorder& rec) {
        for (std::size_t n = 1; n <= n_top; ++n) {
            const parameter_point p = rng.point(n, ctx);
            rec.add(rec.timed([&] { return check_against_oracle(p, pfaffian_form::sum, ctx); }));
            rec.add(rec.timed(
                [&] { return check_against_oracle(p, pfaffian_form::shifted_sum, ctx); }));
            rec.add(rec.timed([&] { return check_E_vs_F(p, ctx); }));
            rec.add(rec.timed(
                [&] { return check_expansion_consistency(p, pfaffian_form::sum, ctx); }));
            rec.add(rec.timed([&] { return check_kernel_skewness(p, pfaffian_form::sum, ctx); }));
            rec.add(rec.timed(
                [&] { return check_kernel_skewness(p, pfaffian_form::shifted_sum, ctx); }));
            rec.add_all(rec.timed([&] { return check_factor_quasi_periodicity(p, ctx); }));
            if (n < 2) continue;
            for (std::size_t l = 1; l < 2 * n; ++l) {
                rec.add(rec.timed(
                    [&] { return check_form_reduction(p, pfaffian_form::sum, l, ctx); }));
                rec.add(rec.timed(
                    [&] { return check_form_reduction(p, pfaffian_form::shifted_sum, l, ctx); }));
            }
        }
    });
}

inline void run_identity(const suite_config& cfg, std::vector<verification_report>& out) {
    const std::size_t n_top = static_cast<std::size_t>(cfg.n_max);
    for_each_sample(cfg, "identity", out,
                    [&](const context& ctx, sampler& rng, group_recorder& rec) {
        for (std::size_t n = 1; n <= n_top; ++n) {
            const parameter_point p = rng.point(n, ctx);
            rec.add(rec.timed([&] { return check_pfaffian_pair_identity(p, ctx); }));
            auto [ros, rains] = rec.timed([&] { return check_factorizations(p.u, ctx); });
            rec.add(ros);
            rec.add(rains);
            auto [zs, zf] = rec.timed([&] { return check_identity_at_zero_height(p.u, ctx); });
            rec.add(zs);
            rec.add(zf);
        }
    });
}

inline void run_appendix(const suite_config& cfg, std::vector<verification_report>& out) {
    for_each_sample(cfg, "appendix", out, [](const context& ctx, sampler& rng, group_recorder& rec) {
        const parameter_point p = rng.point(2, ctx);
        rec.add_all(rec.timed(
            [&] { return check_n2_chain({p.u[0], p.u[1], p.u[2], p.u[3]}, p.h, ctx); }));
    });
}

inline void run_group(const std::string& group, const suite_config& cfg,
                      std::vector<verification_report>& out) {
    if (group == "theta") return run_theta(cfg, out);
    if (group == "pfaffian") return run_pfaffian(cfg, out);
    if (group == "ybe") return run_ybe(cfg, out);
    if (group == "reflection") return run_reflection(cfg, out);
    if (group == "oracle") return run_oracle(cfg, out);
    if (group == "recursion") return run_recursion(cfg, out);
    if (group == "formulas") return run_formulas(cfg, out);
    if (group == "identity") return run_identity(cfg, out);
    if (group == "appendix") return run_appendix(cfg, out);
    throw config_error("unknown check group: " + group);
}

} // namespace detail

/// Runs `group` ("all" or one of suite_groups()). Groups run concurrently; the
/// result is sorted by (check_name, sample_index).
inline suite_result run_suite(const suite_config& cfg, const std::string& group = "all") {
    cfg.validate();
    std::vector<std::string> selected;
    if (group == "all") {
        selected = suite_groups();
    } else if (std::find(suite_groups().begin(), suite_groups().end(), group) !=
               suite_groups().end()) {
        selected = {group};
    } else {
        throw config_error("unknown check group: " + group);
    }

    std::vector<std::vector<verification_report>> parts(selected.size());
    std::vector<std::future<void>> jobs;
    for (std::size_t g = 0; g < selected.size(); ++g) {
        jobs.push_back(std::async(std::launch::async, [&, g] {
            detail::run_group(selected[g], cfg, parts[g]);
        }));
    }
    for (auto& j : jobs) j.get();

    suite_result result;
    for (auto& part : parts)
        for (auto& r : part) result.records.push_back(std::move(r));
    std::stable_sort(result.records.begin(), result.records.end(),
                     [](const verification_report& a, const verification_report& b) {
                         if (a.check_name != b.check_name) return a.check_name < b.check_name;
                         return a.params.sample_index < b.params.sample_index;
                     });
    result.all_pass = std::all_of(result.records.begin(), result.records.end(),
                                  [](const verification_report& r) { return r.pass; });
    return result;
}

/// Per-check aggregate for the human-readable summary.
struct check_summary {
    std::string check_name;
    std::size_t samples = 0;
    std::size_t failures = 0;
    double max_residual = 0.0;
    double tolerance = 0.0;
    std::int64_t elapsed_micros = 0;
};

inline std::vector<check_summary> summarize(const std::vector<verification_report>& records) {
    std::vector<check_summary> out;
    for (const auto& r : records) {
        if (out.empty() || out.back().check_name != r.check_name) out.push_back({r.check_name});
        check_summary& s = out.back();
        ++s.samples;
        if (!r.pass) ++s.failures;
        if (!(r.residual <= s.max_residual)) s.max_residual = r.residual;
        s.tolerance = r.tolerance;
        s.elapsed_micros += r.elapsed_micros;
    }
    return out;
}

} // namespace osface

#endif // OSFACE_SUITE_HPP
