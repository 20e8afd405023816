#pragma once

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wold/density.hpp"
#include "wold/report.hpp"
#include "wold/selftest.hpp"

namespace wold {

namespace cli_detail {

inline std::vector<double> parse_doubles(const std::string& spec) {
    std::vector<double> out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    return out;
}

inline std::vector<std::uint64_t> parse_u64s(const std::string& spec) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoull(item));
    return out;
}

inline std::vector<std::string> split_commas(const std::string& spec) {
    std::vector<std::string> out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
}

inline std::uint32_t require_prime(std::uint64_t q) {
    if (q < 3 || !is_prime(q))
        throw CLI::ValidationError("modulus " + std::to_string(q) + " is not an odd prime");
    return static_cast<std::uint32_t>(q);
}

// "lo:hi[:count]" -> up to count primes spread across [lo, hi]: the smallest
// prime >= lo, then for each later anchor the largest prime <= anchor.
inline std::vector<std::uint32_t> primes_in_range(const std::string& spec) {
    std::vector<std::uint64_t> parts;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(std::stoull(item));
    if (parts.size() < 2 || parts.size() > 3 || parts[0] < 3 || parts[1] < parts[0])
        throw CLI::ValidationError("q-range must be lo:hi[:count] with 3 <= lo <= hi");
    const std::uint64_t lo = parts[0], hi = parts[1];
    const std::size_t count = parts.size() == 3 ? std::max<std::uint64_t>(1, parts[2]) : 5;

    std::vector<std::uint32_t> qs;
    std::uint64_t first = lo;
    while (first <= hi && !is_prime(first)) ++first;
    if (first > hi) throw CLI::ValidationError("no prime in range");
    qs.push_back(static_cast<std::uint32_t>(first));
    for (std::size_t k = 1; k < count; ++k) {
        const double anchor = static_cast<double>(lo) +
                              static_cast<double>(k) * static_cast<double>(hi - lo) /
                                  static_cast<double>(count - 1);
        std::uint64_t cand = static_cast<std::uint64_t>(anchor);
        while (cand > first && !is_prime(cand)) --cand;
        if (is_prime(cand) && cand > qs.back())
            qs.push_back(static_cast<std::uint32_t>(cand));
    }
    return qs;
}

struct OutputOptions {
    std::string format = "csv";
    std::string path;
};

inline void emit(const Table& t, const std::string& echo, const OutputOptions& opt,
                 std::ostream& out, double wall_ms) {
    std::ofstream file;
    std::ostream* os = &out;
    if (!opt.path.empty()) {
        file.open(opt.path, std::ios::binary);
        if (!file) throw std::runtime_error("cannot open output file " + opt.path);
        os = &file;
    }
    if (opt.format == "json")
        write_json(*os, echo, t, wall_ms);
    else
        write_csv(*os, echo, t);
}

} // namespace cli_detail

// Parsed configuration echoed back into every report.
struct RunConfig {
    std::string command;
    std::string echo;
    std::vector<std::uint32_t> qs;
    std::vector<double> ss;
    std::vector<double> sps;
    std::vector<std::uint64_t> ms{1};
    std::vector<std::uint64_t> ns{1};
    std::vector<std::string> phi_specs;
    std::string mode = "prime";
    double T = 30.0;
    bool widen_support = false;
    double ceiling = 0.0;
    cli_detail::OutputOptions output;
};

// The central closed form can go non-positive once m n crowds q; flagged,
// not an error.
inline bool central_main_term_degenerate(std::uint32_t q, std::uint64_t m,
                                         std::uint64_t n, cplx s, cplx sp) {
    if (std::abs(s + sp - 1.0) > 1e-6) return false;
    const double mn = static_cast<double>(m) * static_cast<double>(n);
    return std::log(static_cast<double>(q) / mn) + kEulerGamma - kLog8Pi <= 0.0;
}

inline int cmd_moments(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto t0 = std::chrono::steady_clock::now();
    Table t;
    t.columns = {"q", "s_re", "s_im", "sp_re", "sp_im", "m", "n",
                 "brute_re", "brute_im", "main_re", "main_im", "abs_err", "norm_err"};
    bool ceiling_exceeded = false;
    for (std::uint32_t q : cfg.qs) {
        MomentEngine eng(q);
        for (std::size_t si = 0; si < cfg.ss.size(); ++si) {
            const cplx s(cfg.ss[si], 0.0);
            const cplx sp(si < cfg.sps.size() ? cfg.sps[si] : cfg.ss[si], 0.0);
            for (std::uint64_t m : cfg.ms) {
                for (std::uint64_t n : cfg.ns) {
                    const MomentReport r = moment_report(eng, s, sp, m, n);
                    if (central_main_term_degenerate(q, m, n, s, sp))
                        err << "warning: non-positive central main term at q=" << q
                            << " m=" << m << " n=" << n << "\n";
                    t.rows.push_back({std::to_string(r.q), fmt12(r.s.real()),
                                      fmt12(r.s.imag()), fmt12(r.s_prime.real()),
                                      fmt12(r.s_prime.imag()), std::to_string(r.m),
                                      std::to_string(r.n), fmt12(r.brute.real()),
                                      fmt12(r.brute.imag()), fmt12(r.main_term.real()),
                                      fmt12(r.main_term.imag()),
                                      fmt12(std::abs(r.observed_error)),
                                      fmt12(r.normalized_error)});
                    if (cfg.ceiling > 0.0 && r.normalized_error > cfg.ceiling)
                        ceiling_exceeded = true;
                }
            }
        }
    }
    const double wall =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    cli_detail::emit(t, cfg.echo, cfg.output, out, wall);
    if (ceiling_exceeded) {
        err << "error: normalized moment error exceeded ceiling " << cfg.ceiling << "\n";
        return 1;
    }
    return 0;
}

inline int cmd_density(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto t0 = std::chrono::steady_clock::now();
    ExperimentConfig ec;
    ec.qs = cfg.qs;
    ec.ss = cfg.ss;
    for (const auto& spec : cfg.phi_specs) ec.phis.push_back(parse_test_function(spec));
    ec.mode = cfg.mode;
    ec.T = cfg.T;
    ec.widen_support = cfg.widen_support;
    const auto rows = run_experiment(ec);

    Table t;
    t.columns = {"q", "s", "phi", "alpha", "mode", "value", "target", "dev",
                 "dev_times_logq", "m1", "m2", "tail_bound", "support_ok"};
    bool ceiling_exceeded = false;
    for (const auto& r : rows) {
        const double logq = std::log(static_cast<double>(r.stat.q));
        if (!r.stat.support_ok)
            err << "warning: support hypothesis violated at q=" << r.stat.q
                << " s=" << r.stat.s << " phi=" << r.stat.phi
                << " (theorem guarantee void)\n";
        t.rows.push_back({std::to_string(r.stat.q), fmt12(r.stat.s), r.stat.phi,
                          fmt12(r.stat.alpha), r.stat.mode, fmt12(r.stat.value),
                          fmt12(r.target), fmt12(r.dev), fmt12(r.dev * logq),
                          fmt12(r.stat.m1), fmt12(r.stat.m2), fmt12(r.stat.tail_bound),
                          r.stat.support_ok ? "true" : "false"});
        if (cfg.ceiling > 0.0 && r.stat.support_ok &&
            std::abs(r.dev) * logq > cfg.ceiling)
            ceiling_exceeded = true;
    }
    const double wall =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    cli_detail::emit(t, cfg.echo, cfg.output, out, wall);
    if (ceiling_exceeded) {
        err << "error: |dev| * log q exceeded ceiling " << cfg.ceiling << "\n";
        return 1;
    }
    return 0;
}

inline int cmd_zeros(const RunConfig& cfg, std::vector<std::uint64_t> js_requested,
                     std::ostream& out, std::ostream& err) {
    const auto t0 = std::chrono::steady_clock::now();
    Table t;
    t.columns = {"q", "j", "gamma"};
    bool incomplete = false;
    for (std::uint32_t q : cfg.qs) {
        auto G = build_group(q);
        auto ctx = make_lcontext(G);
        std::vector<std::uint32_t> js;
        if (js_requested.empty()) {
            for (std::uint32_t j = 1; j < G.order(); ++j) js.push_back(j);
        } else {
            for (auto j : js_requested) {
                if (j == 0 || j >= G.order())
                    throw CLI::ValidationError("character index " + std::to_string(j) +
                                               " out of range for q = " + std::to_string(q));
                js.push_back(static_cast<std::uint32_t>(j));
            }
        }
        for (const auto& zl : scan_zeros_many(ctx, js, cfg.T)) {
            if (!zl.complete) {
                incomplete = true;
                err << "error: incomplete zero list at q=" << q << " j=" << zl.j
                    << " (found " << zl.found_count << ", expected "
                    << fmt12(zl.expected_count) << ")\n";
            }
            for (double g : zl.ordinates)
                t.rows.push_back({std::to_string(q), std::to_string(zl.j), fmt12(g)});
        }
    }
    const double wall =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    cli_detail::emit(t, cfg.echo, cfg.output, out, wall);
    return incomplete ? 1 : 0;
}

inline int cmd_fourier_check(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    const auto t0 = std::chrono::steady_clock::now();
    Table t;
    t.columns = {"name", "lhs", "rhs", "abs_diff", "tol", "pass"};
    bool all_ok = true;
    auto add = [&](const std::string& name, double lhs, double rhs, double tol) {
        const bool ok = std::abs(lhs - rhs) <= tol;
        all_ok = all_ok && ok;
        t.rows.push_back({name, fmt12(lhs), fmt12(rhs), fmt12(std::abs(lhs - rhs)),
                          fmt12(tol), ok ? "true" : "false"});
    };

    add("triangle(1/3)*W_U1", kernel_integral(triangle(1.0 / 3.0), kernel_wu1()),
        19.0 / 27.0, 1e-8);
    add("triangle(1/3)*W_U", kernel_integral(triangle(1.0 / 3.0), kernel_wu()), 1.0, 1e-12);
    const double beta = 1.0 / 6.0;
    add("triangle2(1/6)*W_U1", kernel_integral(triangle_conv(beta), kernel_wu1()),
        1.0 - 1.5 * beta + 0.7 * beta * beta, 1e-8);
    for (double xi : {0.0, 0.1, 0.7, 1.3, 0.5}) {
        auto [wa, wb] = window_transforms(xi);
        const double qa = 2.0 * adaptive_simpson(
            [&](double x) { return std::cos(kTwoPi * xi * x); }, 0.0, 1.0, 1e-12);
        const double qb = 2.0 * adaptive_simpson(
            [&](double x) { return x * std::cos(kTwoPi * xi * x); }, 0.0, 1.0, 1e-12);
        add("window_eta(" + fmt12(xi) + ")", wa, qa, 1e-8);
        add("window_abs_eta(" + fmt12(xi) + ")", wb, qb, 1e-8);
    }
    const double wall =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    cli_detail::emit(t, cfg.echo, cfg.output, out, wall);
    return all_ok ? 0 : 1;
}

namespace cli_detail {
// Canonical config echo built from parsed values. Output path and worker
// count are deliberately excluded: they must not influence file bytes.
inline std::string canonical_echo(const std::string& sub, const RunConfig& cfg) {
    std::ostringstream ss;
    ss << sub;
    if (!cfg.qs.empty()) {
        ss << " --q=";
        for (std::size_t i = 0; i < cfg.qs.size(); ++i) ss << (i ? "," : "") << cfg.qs[i];
    }
    if (sub == "moments" || sub == "density") {
        ss << " --s=";
        for (std::size_t i = 0; i < cfg.ss.size(); ++i) ss << (i ? "," : "") << fmt12(cfg.ss[i]);
    }
    if (sub == "moments") {
        if (!cfg.sps.empty()) {
            ss << " --sp=";
            for (std::size_t i = 0; i < cfg.sps.size(); ++i)
                ss << (i ? "," : "") << fmt12(cfg.sps[i]);
        }
        ss << " --m=";
        for (std::size_t i = 0; i < cfg.ms.size(); ++i) ss << (i ? "," : "") << cfg.ms[i];
        ss << " --n=";
        for (std::size_t i = 0; i < cfg.ns.size(); ++i) ss << (i ? "," : "") << cfg.ns[i];
        ss << " --ceiling=" << fmt12(cfg.ceiling);
    }
    if (sub == "density") {
        ss << " --phi=";
        for (std::size_t i = 0; i < cfg.phi_specs.size(); ++i)
            ss << (i ? "," : "") << cfg.phi_specs[i];
        ss << " --mode=" << cfg.mode;
        if (cfg.mode == "zero") ss << " --T=" << fmt12(cfg.T);
        if (cfg.widen_support) ss << " --widen-support";
        ss << " --ceiling=" << fmt12(cfg.ceiling);
    }
    if (sub == "zeros") ss << " --T=" << fmt12(cfg.T);
    return ss.str();
}
} // namespace cli_detail

inline int cli_run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"weighted one-level density experiments for Dirichlet L-functions"};
    app.require_subcommand(1);

    std::string q_spec, q_range, s_spec = "0.5", sp_spec, m_spec = "1", n_spec = "1";
    std::string phi_spec = "triangle:1/3";
    std::string j_spec;
    RunConfig cfg;
    unsigned workers = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", cfg.output.format, "output format: csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--out", cfg.output.path, "output file (default stdout)");
        sub->add_option("--workers", workers, "worker thread count");
    };

    auto* mom = app.add_subcommand("moments",
                                   "brute-force twisted second moments vs formula main terms");
    mom->add_option("--q", q_spec, "prime moduli, comma separated")->required();
    mom->add_option("--s", s_spec, "s values, comma separated");
    mom->add_option("--sp", sp_spec, "s' values (defaults to s)");
    mom->add_option("--m", m_spec, "twist numerators");
    mom->add_option("--n", n_spec, "twist denominators");
    double mom_ceiling = 20.0, den_ceiling = 5.0;
    mom->add_option("--ceiling", mom_ceiling, "normalized-error ceiling (exit 1 beyond)");
    add_common(mom);

    auto* den = app.add_subcommand("density", "weighted one-level density sweep");
    den->add_option("--q", q_spec, "prime moduli, comma separated");
    den->add_option("--q-range", q_range, "lo:hi[:count], primes auto-selected");
    den->add_option("--s", s_spec, "weight exponents in [1/2, 1)");
    den->add_option("--phi", phi_spec, "test functions, e.g. triangle:0.3333,triangle2:1/6");
    den->add_option("--mode", cfg.mode, "prime or zero side")
        ->check(CLI::IsMember({"prime", "zero"}));
    den->add_option("--T", cfg.T, "zero-scan height (zero mode)");
    den->add_flag("--widen-support", cfg.widen_support,
                  "allow supp(phi_hat) up to [-1/2, 1/2] at s = 1/2");
    den->add_option("--ceiling", den_ceiling, "|dev| log q ceiling (exit 1 beyond)");
    add_common(den);

    auto* zer = app.add_subcommand("zeros", "export certified zero ordinates");
    zer->add_option("--q", q_spec, "prime moduli")->required();
    zer->add_option("--j", j_spec, "character indices (default: all non-principal)");
    zer->add_option("--T", cfg.T, "scan height");
    add_common(zer);

    auto* fc = app.add_subcommand("fourier-check", "density-kernel Fourier identities");
    add_common(fc);

    auto* st = app.add_subcommand("selftest", "run the invariant suite at small scale");
    st->add_option("--workers", workers, "worker thread count");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);

        if (workers > 0) worker_override() = workers;

        cfg.ss = cli_detail::parse_doubles(s_spec);
        if (!sp_spec.empty()) cfg.sps = cli_detail::parse_doubles(sp_spec);
        cfg.ms = cli_detail::parse_u64s(m_spec);
        cfg.ns = cli_detail::parse_u64s(n_spec);
        cfg.phi_specs = cli_detail::split_commas(phi_spec);

        if (!q_range.empty()) {
            cfg.qs = cli_detail::primes_in_range(q_range);
        } else if (!q_spec.empty()) {
            for (auto q : cli_detail::parse_u64s(q_spec))
                cfg.qs.push_back(cli_detail::require_prime(q));
        }

        if (mom->parsed()) {
            cfg.ceiling = mom_ceiling;
            cfg.echo = cli_detail::canonical_echo("moments", cfg);
            return cmd_moments(cfg, out, err);
        }
        if (den->parsed()) {
            if (cfg.qs.empty())
                throw CLI::ValidationError("density requires --q or --q-range");
            for (const auto& spec : cfg.phi_specs) {
                try {
                    parse_test_function(spec);
                } catch (const std::exception& e) {
                    throw CLI::ValidationError(std::string("bad test function: ") + e.what());
                }
            }
            cfg.ceiling = den_ceiling;
            cfg.echo = cli_detail::canonical_echo("density", cfg);
            return cmd_density(cfg, out, err);
        }
        if (zer->parsed()) {
            std::vector<std::uint64_t> js;
            if (!j_spec.empty()) js = cli_detail::parse_u64s(j_spec);
            cfg.echo = cli_detail::canonical_echo("zeros", cfg);
            return cmd_zeros(cfg, js, out, err);
        }
        if (fc->parsed()) {
            cfg.echo = cli_detail::canonical_echo("fourier-check", cfg);
            return cmd_fourier_check(cfg, out, err);
        }
        if (st->parsed()) return selftest_run(out);
        return 2;
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace wold
