#include "toricspec/commands.hpp"

#include "toricspec/abel.hpp"
#include "toricspec/invariant.hpp"
#include "toricspec/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace toricspec {

namespace {

namespace fs = std::filesystem;

std::string fmt(double v)
{
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string short_fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::ofstream open_output(const CommandOptions& opt, const std::string& file)
{
    fs::create_directories(opt.out_dir);
    const fs::path p = fs::path(opt.out_dir) / file;
    std::ofstream out(p);
    if (!out)
        throw std::runtime_error("cannot write " + p.string());
    return out;
}

void write_manifest(const std::string& command, const RunConfig& cfg, const CommandOptions& opt,
                    const std::vector<std::pair<std::string, std::string>>& results)
{
    std::ofstream m = open_output(opt, "manifest.ini");
    m << "; toricspec run manifest\n"
      << "; command = " << command << "\n";
    if (command == "forward")
        m << "; every alpha is accepted; no genericity condition is checked\n";
    if (command == "roundtrip")
        m << "; scale_fu = " << fmt(opt.scale_fu) << "\n";
    if (command == "reconstruct")
        m << "; input = " << opt.input << "\n; compare = " << (opt.compare ? "true" : "false") << "\n";
    cfg.write(m);
    if (!results.empty()) {
        m << "\n[results]\n";
        for (const auto& [k, v] : results)
            m << k << " = " << v << "\n";
    }
}

// ---------------------------------------------------------------- verification suites

/// A random valid cubic profile (1 + t(1-t)h'' >= 0.2) and an alpha with components of
/// magnitude in [0.5, 1.5] whose sum stays away from zero.
std::pair<RadialProfile, std::vector<double>> random_pair(const CounterRng& rng, std::uint64_t& k)
{
    std::vector<double> c(4);
    for (auto& v : c)
        v = 0.4 * (rng.uniform(k++) - 0.5);
    std::vector<double> alpha(2);
    do {
        for (auto& a : alpha) {
            const double sign = rng.uniform(k++) < 0.5 ? -1.0 : 1.0;
            a = sign * (0.5 + rng.uniform(k++));
        }
    } while (std::abs(alpha[0] + alpha[1]) < 0.25);
    return {RadialProfile::polynomial(c), alpha};
}

SuiteResult suite_raw_vs_reduced(const RunConfig& cfg)
{
    SuiteResult r{"raw_vs_reduced", 0.0, cfg.tol.mc_sigmas, true, ""};
    const CounterRng rng(cfg.seed);
    std::uint64_t k = 0;
    std::ostringstream detail;
    for (int p = 0; p < cfg.verify_pairs; ++p) {
        const auto [profile, alpha] = random_pair(rng, k);
        const std::vector<double> centroid{1.0 / 3.0, 1.0 / 3.0};
        const double q0 = quadratic_form(profile, alpha, centroid);
        const SupportedFunction F = SupportedFunction::from(BumpFunction(1.2 * q0, 0.6 * q0));
        const Estimate red = raw_invariant(profile, alpha, F, RawMode::reduced,
                                           {SimplexScheme::tensor_duffy, 128, 0});
        const Estimate mc = raw_invariant(profile, alpha, F, RawMode::brute_force,
                                          {SimplexScheme::monte_carlo, cfg.mc_samples, cfg.seed + std::uint64_t(p)});
        const double diff = std::abs(mc.value - red.value);
        const double z = mc.error > 0.0 ? diff / mc.error : (diff == 0.0 ? 0.0 : INFINITY);
        r.observed = std::max(r.observed, z);
        detail << (p ? "; " : "") << "reduced " << short_fmt(red.value) << " mc " << short_fmt(mc.value)
               << " +- " << short_fmt(mc.error);
    }
    r.pass = r.observed <= r.expected;
    r.detail = detail.str();
    return r;
}

SuiteResult suite_fu_direct(const RunConfig& cfg)
{
    const int n = std::min(cfg.n, 3);
    SuiteResult r{"fu_forward_vs_direct", 0.0, cfg.tol.fu_direct, true, "n = " + std::to_string(n)};
    const RadialProfile profile = cfg.profile();
    for (double nu : {5.0, 8.0, 16.0, 64.0})
        r.observed = std::max(r.observed, std::abs(fu_forward(profile, nu, n, std::size_t(cfg.abel_N)) -
                                                   fu_direct(profile, nu, n)));
    r.pass = r.observed <= r.expected;
    return r;
}

/// Relative error of jacobian_factor against central differences of cov_inverse.
SuiteResult suite_jacobian(const RunConfig& cfg)
{
    SuiteResult r{"jacobian_fd", 0.0, cfg.tol.jacobian, true, "100 random points"};
    const CounterRng rng(cfg.seed + 17);
    std::uint64_t k = 0;
    for (int i = 0; i < 100; ++i) {
        const double mu = 0.05 + 0.9 * rng.uniform(k++);
        const double sigma = 0.05 + 0.9 * rng.uniform(k++);  // 4 / (mu nu)
        const double nu = 4.0 / (mu * sigma);
        const double hn = 1e-5 * nu, hm = 1e-5 * mu;
        auto x = [](double v, double m) { return cov_inverse({v, {m}}, 2); };
        const auto xp = x(nu + hn, mu), xm = x(nu - hn, mu);
        const auto yp = x(nu, mu + hm), ym = x(nu, mu - hm);
        const double a = (xp[0] - xm[0]) / (2 * hn), b = (yp[0] - ym[0]) / (2 * hm);
        const double c = (xp[1] - xm[1]) / (2 * hn), d = (yp[1] - ym[1]) / (2 * hm);
        const double fd = std::abs(a * d - b * c);
        const double jf = jacobian_factor(nu, mu);
        r.observed = std::max(r.observed, std::abs(fd - jf) / jf);
    }
    r.pass = r.observed <= r.expected;
    return r;
}

/// int_{P+} phi dx computed in x and in (nu, mu) with the Jacobian factor.
std::pair<double, double> cov_integral_pair(const VectorFunction& phi)
{
    const double lhs = integrate_smooth(
        [&](double x2) {
            return integrate_smooth(
                [&](double x1) {
                    const double x[2] = {x1, x2};
                    return phi(x);
                },
                x2, 1.0 - x2, 32);
        },
        0.0, 0.5, 32);
    // nu = 4 / (mu sigma), sigma in (0, 1), dnu = 4 / (mu sigma^2) dsigma
    const double rhs = integrate_smooth(
        [&](double mu) {
            return integrate_singular(
                [&](double sigma) {
                    const double nu = 4.0 / (mu * sigma);
                    const auto x = cov_inverse({nu, {mu}}, 2);
                    return phi(x) * jacobian_factor(nu, mu) * 4.0 / (mu * sigma * sigma);
                },
                0.0, 1.0, SingularEnd::right, 32);
        },
        0.0, 1.0, 32);
    return {lhs, rhs};
}

SuiteResult suite_cov_integral(const RunConfig& cfg)
{
    SuiteResult r{"cov_integral", 0.0, cfg.tol.cov_integral, true, ""};
    const std::vector<VectorFunction> tests{
        [](std::span<const double>) { return 1.0; },
        [](std::span<const double> x) { return x[0] * x[1] * x[1] + x[1]; },
        [](std::span<const double> x) {
            return std::exp(-(x[0] - 0.3) * (x[0] - 0.3) / 0.01 - (x[1] - 0.1) * (x[1] - 0.1) / 0.004);
        },
    };
    std::ostringstream detail;
    for (std::size_t i = 0; i < tests.size(); ++i) {
        const auto [lhs, rhs] = cov_integral_pair(tests[i]);
        r.observed = std::max(r.observed, std::abs(lhs - rhs));
        detail << (i ? "; " : "") << short_fmt(lhs) << " vs " << short_fmt(rhs);
    }
    r.pass = r.observed <= r.expected;
    r.detail = detail.str();
    return r;
}

SuiteResult suite_abel_normalization(const RunConfig& cfg)
{
    SuiteResult r{"abel_normalization", 0.0, cfg.tol.abel_normalization, true, ""};
    const std::size_t n = std::size_t(cfg.abel_N);
    const WeightedGrid f{GridFunction::sample([](double x) { return 1.0 + std::cos(3.0 * x); }, 0.0, 1.0, n), 0.0};
    const GridFunction jj = abel_iterate(f, 2).values();
    auto running = [](double x) { return x + std::sin(3.0 * x) / 3.0; };
    for (std::size_t i = 0; i < n; ++i)
        r.observed = std::max(r.observed, std::abs(jj[i] - std::numbers::pi * running(jj.node(i))));
    r.detail = "J(J f)(1) / int_0^1 f = " + fmt(jj.values().back() / running(1.0));
    r.pass = r.observed <= r.expected;
    return r;
}

// ---------------------------------------------------------------- f_u CSV input

GridFunction read_fu_csv(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("reconstruct: cannot open input '" + path + "'");
    std::string line;
    std::vector<double> s, f;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("nu", 0) == 0)
            continue;
        std::stringstream ss(line);
        std::string a, b, c;
        if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') || !std::getline(ss, c, ','))
            throw ConfigError("reconstruct: expected rows nu,s1,f_u");
        try {
            s.push_back(std::stod(b));
            f.push_back(std::stod(c));
        } catch (const std::exception&) {
            throw ConfigError("reconstruct: non-numeric row: " + line);
        }
    }
    if (s.size() < 16)
        throw ConfigError("reconstruct: need at least 16 rows of f_u data");
    if (s.front() != 0.0)
        throw ConfigError("reconstruct: the s1 grid must start at s1 = 0 (nu = 4)");
    const double h = s.back() / double(s.size() - 1);
    for (std::size_t i = 0; i < s.size(); ++i)
        if (std::abs(s[i] - double(i) * h) > 1e-9 * s.back())
            throw ConfigError("reconstruct: the s1 grid must be uniform (as written by `fu` without a nu list)");
    return GridFunction(0.0, s.back(), std::move(f));
}

}  // namespace

// ---------------------------------------------------------------- commands

int cmd_forward(const RunConfig& cfg, const CommandOptions& opt, std::ostream& log)
{
    InvariantRequest req;
    req.profile = cfg.profile();
    req.alpha = cfg.alpha_or_zero();
    req.rho = SupportedFunction::from(BumpFunction(cfg.bump_center, cfg.bump_width));
    req.quadrature = {SimplexScheme::tensor_duffy, cfg.panels(), cfg.seed};
    const Estimate e = spectral_invariant(req);

    std::string alpha;
    for (std::size_t i = 0; i < req.alpha.size(); ++i)
        alpha += (i ? ";" : "") + fmt(req.alpha[i]);
    std::ofstream out = open_output(opt, "forward.csv");
    out << "alpha,c,w,value,error_estimate\n"
        << alpha << ',' << fmt(cfg.bump_center) << ',' << fmt(cfg.bump_width) << ',' << fmt(e.value)
        << ',' << fmt(e.error) << '\n';
    write_manifest("forward", cfg, opt, {{"value", fmt(e.value)}, {"error_estimate", fmt(e.error)}});
    log << "spectral invariant = " << fmt(e.value) << " (refinement difference " << short_fmt(e.error)
        << ")\n";
    return exit_pass;
}

int cmd_fu(const RunConfig& cfg, const CommandOptions& opt, std::ostream& log)
{
    const RadialProfile profile = cfg.profile();
    std::vector<double> nu, s1, fu;
    if (cfg.fu_nu.empty()) {
        const GridFunction curve = fu_curve(profile, cfg.n, cfg.s_max(), std::size_t(cfg.abel_N));
        for (std::size_t i = 0; i < curve.size(); ++i) {
            s1.push_back(curve.node(i));
            nu.push_back(4.0 / (1.0 - curve.node(i)));
            fu.push_back(curve[i]);
        }
    } else {
        for (double v : cfg.fu_nu) {
            nu.push_back(v);
            s1.push_back(s_from_nu(v));
            fu.push_back(fu_forward(profile, v, cfg.n, std::size_t(cfg.abel_N)));
        }
    }
    std::ofstream out = open_output(opt, "fu.csv");
    out << "nu,s1,f_u\n";
    for (std::size_t i = 0; i < nu.size(); ++i)
        out << fmt(nu[i]) << ',' << fmt(s1[i]) << ',' << fmt(fu[i]) << '\n';
    write_manifest("fu", cfg, opt, {{"rows", std::to_string(nu.size())}});
    log << "wrote " << nu.size() << " f_u values (n = " << cfg.n << ")\n";
    return exit_pass;
}

int cmd_reconstruct(const RunConfig& cfg, const CommandOptions& opt, std::ostream& log)
{
    if (opt.input.empty())
        throw ConfigError("reconstruct: --input is required");
    const GridFunction data = read_fu_csv(opt.input);
    const RadialProfile reference = cfg.profile();
    const ReconstructionReport rep =
        reconstruct_profile(data, cfg.n, opt.compare ? &reference : nullptr, {cfg.abel_smooth});
    std::ofstream out = open_output(opt, "reconstruct.csv");
    rep.write_csv(out);
    const double tol = cfg.tol.roundtrip_for(cfg.n);
    const bool pass = !opt.compare || rep.sup_error <= tol;
    write_manifest("reconstruct", cfg, opt,
                   {{"sup_error", fmt(rep.sup_error)}, {"l2_error", fmt(rep.l2_error)},
                    {"status", pass ? "pass" : "fail"}});
    log << "recovered h'' on mu in [" << short_fmt(rep.covered_mu_lo) << ", 1]";
    if (opt.compare)
        log << ", sup error " << short_fmt(rep.sup_error) << " (tolerance " << short_fmt(tol) << ")";
    log << "\n";
    return pass ? exit_pass : exit_tolerance;
}

int cmd_roundtrip(const RunConfig& cfg, const CommandOptions& opt, std::ostream& log)
{
    const RadialProfile profile = cfg.profile();
    auto run = [&](std::size_t points) {
        const GridFunction clean = fu_curve(profile, cfg.n, cfg.s_max(), points);
        std::vector<double> v = clean.values();
        for (double& x : v)
            x *= opt.scale_fu;
        return reconstruct_profile(GridFunction(clean.lo(), clean.hi(), std::move(v)), cfg.n, &profile,
                                   {cfg.abel_smooth});
    };
    const std::size_t N = std::size_t(cfg.abel_N);
    const ReconstructionReport rep = run(N);
    const ReconstructionReport coarse = run(N / 2 + 1);
    const double ratio = coarse.sup_error / rep.sup_error;
    const double tol = cfg.tol.roundtrip_for(cfg.n);
    const bool within = rep.sup_error <= tol;
    const bool converging = ratio >= cfg.tol.convergence_ratio;

    std::ofstream out = open_output(opt, "roundtrip.csv");
    rep.write_csv(out);
    write_manifest("roundtrip", cfg, opt,
                   {{"sup_error", fmt(rep.sup_error)},
                    {"l2_error", fmt(rep.l2_error)},
                    {"sup_error_half_N", fmt(coarse.sup_error)},
                    {"refinement_ratio", fmt(ratio)},
                    {"converging", converging ? "yes" : "no"},
                    {"status", within ? "pass" : "fail"}});
    log << "n = " << cfg.n << ", N = " << N << ": sup error " << short_fmt(rep.sup_error)
        << " (tolerance " << short_fmt(tol) << "), l2 error " << short_fmt(rep.l2_error) << "\n"
        << "N/2: sup error " << short_fmt(coarse.sup_error) << ", ratio " << short_fmt(ratio)
        << (converging ? " (converging)\n" : " (not converging)\n")
        << (within ? "PASS" : "FAIL") << "\n";
    return within ? exit_pass : exit_tolerance;
}

std::vector<SuiteResult> run_verification(const RunConfig& cfg)
{
    return {suite_raw_vs_reduced(cfg), suite_fu_direct(cfg), suite_jacobian(cfg),
            suite_cov_integral(cfg), suite_abel_normalization(cfg)};
}

SuiteResult run_suite(const std::string& name, const RunConfig& cfg)
{
    if (name == "raw_vs_reduced")
        return suite_raw_vs_reduced(cfg);
    if (name == "fu_forward_vs_direct")
        return suite_fu_direct(cfg);
    if (name == "jacobian_fd")
        return suite_jacobian(cfg);
    if (name == "cov_integral")
        return suite_cov_integral(cfg);
    if (name == "abel_normalization")
        return suite_abel_normalization(cfg);
    throw std::invalid_argument("unknown suite '" + name + "'");
}

int cmd_verify(const RunConfig& cfg, const CommandOptions& opt, std::ostream& log)
{
    const std::vector<SuiteResult> results = run_verification(cfg);
    bool all = true;
    std::ofstream out = open_output(opt, "verify.csv");
    out << "suite,observed,bound,status,detail\n";
    char line[160];
    std::snprintf(line, sizeof line, "%-22s %-13s %-13s %s\n", "suite", "observed", "bound", "status");
    log << line;
    for (const SuiteResult& r : results) {
        all = all && r.pass;
        out << r.name << ',' << fmt(r.observed) << ',' << fmt(r.expected) << ','
            << (r.pass ? "pass" : "fail") << ",\"" << r.detail << "\"\n";
        std::snprintf(line, sizeof line, "%-22s %-13.4g %-13.4g %s\n", r.name.c_str(), r.observed,
                      r.expected, r.pass ? "pass" : "FAIL");
        log << line;
        if (!r.detail.empty())
            log << "    " << r.detail << "\n";
    }
    write_manifest("verify", cfg, opt, {{"status", all ? "pass" : "fail"}});
    return all ? exit_pass : exit_tolerance;
}

int run_command(const std::string& name, RunConfig cfg, const CommandOptions& opt,
                std::ostream& out, std::ostream& err)
{
    try {
        if (opt.seed)
            cfg.seed = *opt.seed;
        if (opt.tol) {
            if (!(*opt.tol > 0.0))
                throw ConfigError("--tol must be positive");
            cfg.tol.roundtrip = *opt.tol;
        }
        if (!(opt.scale_fu > 0.0) || !std::isfinite(opt.scale_fu))
            throw ConfigError("--scale-fu must be a positive number");
        cfg.validate();
        if (name == "forward")
            return cmd_forward(cfg, opt, out);
        if (name == "fu")
            return cmd_fu(cfg, opt, out);
        if (name == "reconstruct")
            return cmd_reconstruct(cfg, opt, out);
        if (name == "roundtrip")
            return cmd_roundtrip(cfg, opt, out);
        if (name == "verify")
            return cmd_verify(cfg, opt, out);
        throw ConfigError("unknown command '" + name + "'");
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return exit_invalid;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return exit_invalid;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_invalid;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_tolerance;
    }
}

}  // namespace toricspec
