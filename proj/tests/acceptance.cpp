// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "toricspec/commands.hpp"
#include "toricspec/invariant.hpp"
#include "toricspec/reconstruct.hpp"

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

using namespace toricspec;

namespace {

constexpr double PI = std::numbers::pi;

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, double time_limit, const std::function<Outcome()>& body)
{
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = time_limit <= 0.0 || secs < time_limit;
    const bool pass = o.pass && in_time;
    if (!pass)
        ++failures;
    std::printf("[%s] %2d %-48s %s | %.2f s", pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), secs);
    if (time_limit > 0.0)
        std::printf(" (limit %.0f s)", time_limit);
    std::printf("\n");
    std::fflush(stdout);
}

std::string sci(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

const RadialProfile ZERO = RadialProfile::polynomial({0.0});
const RadialProfile LINEAR = RadialProfile::polynomial({0.25, -0.25});    // 0.25 (1 - t)
const RadialProfile BUMPY = RadialProfile::polynomial({0.0, 0.2, -0.2});  // 0.2 t (1 - t)

double sup_diff(const GridFunction& a, const ScalarFunction& f, std::size_t skip = 0)
{
    double e = 0.0;
    for (std::size_t i = skip; i + skip < a.size(); ++i)
        e = std::max(e, std::abs(a[i] - f(a.node(i))));
    return e;
}

double x2_roundtrip(std::size_t n)
{
    const GridFunction f = GridFunction::sample([](double x) { return x * x; }, 0.0, 1.0, n);
    return sup_diff(abel_inverse(abel_forward(f, AbelSide::left), AbelSide::left),
                    [](double x) { return x * x; }, 1);
}

double spectral_volume(int n, long budget)
{
    InvariantRequest r;
    r.profile = ZERO;
    r.alpha.assign(static_cast<std::size_t>(n), 0.0);
    r.rho = SupportedFunction::from(BumpFunction(0.0, 1.0));  // rho(0) = 1
    r.quadrature = {SimplexScheme::tensor_duffy, budget, 0};
    return spectral_invariant(r).value;
}

std::string manifest_value(const std::filesystem::path& file, const std::string& key)
{
    std::ifstream in(file);
    std::string line;
    while (std::getline(in, line))
        if (line.rfind(key + " = ", 0) == 0)
            return line.substr(key.size() + 3);
    return "";
}

}  // namespace

int main()
{
    criterion(1, "f_u baseline, n = 2, flat profile", 5.0, [] {
        double e = 0.0;
        for (double nu : {5.0, 8.0, 16.0, 64.0})
            e = std::max(e, std::abs(fu_forward(ZERO, nu, 2, 4096) - PI));
        return Outcome{e <= 1e-6, "max |f_u - pi| = " + sci(e) + " (<= 1e-6)"};
    });

    criterion(2, "f_u baseline, n = 3, flat profile", 10.0, [] {
        double e = 0.0;
        for (double nu : {5.0, 8.0, 16.0, 64.0})
            e = std::max(e, std::abs(fu_forward(ZERO, nu, 3, 4096) - 2 * PI * std::sqrt(1 - 4 / nu)));
        return Outcome{e <= 1e-5, "max |f_u - 2 pi sqrt(s1)| = " + sci(e) + " (<= 1e-5)"};
    });

    criterion(3, "volume checks, alpha = 0", 30.0, [] {
        const double r2 = std::abs(spectral_volume(2, 256) / (2 * PI) - 1);
        const double r3 = std::abs(spectral_volume(3, 32) / (PI * PI) - 1);
        return Outcome{r2 <= 1e-3 && r3 <= 1e-2,
                       "rel err n=2 " + sci(r2) + " (<= 1e-3), n=3 " + sci(r3) + " (<= 1e-2)"};
    });

    criterion(4, "Abel normalization and inversion", 5.0, [] {
        const std::size_t N = 4096;
        const WeightedGrid f{GridFunction::sample([](double x) { return 1 + std::cos(3 * x); }, 0, 1, N), 0};
        const double norm = sup_diff(abel_iterate(f, 2).values(),
                                     [](double x) { return PI * (x + std::sin(3 * x) / 3); });
        const double e1 = x2_roundtrip(N), e2 = x2_roundtrip(2 * N);
        return Outcome{norm <= 1e-6 && e1 <= 1e-3 && e1 / e2 >= 3.0,
                       "|JJf - pi int f| = " + sci(norm) + ", x^2 round trip " + sci(e1) +
                           ", refinement ratio " + sci(e1 / e2) + " (>= 3)"};
    });

    criterion(5, "rho <-> F round trips and exponential triples", 10.0, [] {
        const BumpFunction bump(2.0, 1.0);
        const std::size_t N = 4096;
        double worst = 0.0;
        for (int n = 1; n <= 3; ++n) {
            const GridFunction rho = rho_from_F(bump, n, N);
            worst = std::max(worst, sup_diff(F_from_rho(rho, n), [&](double t) { return bump(t); }));
            const GridFunction r0 = GridFunction::sample([&](double t) { return bump(t); }, 0.0, 3.0, N);
            const GridFunction back = rho_from_F(F_from_rho(r0, n), n);
            worst = std::max(worst, sup_diff(back, [&](double t) { return bump(t); }));
        }
        const SupportedFunction F{[](double s) { return std::exp(-s); }, 0.0, 40.0};
        const double c[4] = {0.0, std::sqrt(PI) / 2, 0.5, std::sqrt(PI) / 4};
        double triple = 0.0;
        for (int n = 1; n <= 3; ++n)
            for (double t : {0.0, 0.5, 1.0, 3.0, 8.0})
                triple = std::max(triple, std::abs(rho_from_F_at(F, n, t) - c[n] * std::exp(-t)));
        return Outcome{worst <= 1e-3 && triple <= 1e-8,
                       "bump round trip " + sci(worst) + " (<= 1e-3), triples " + sci(triple) + " (<= 1e-8)"};
    });

    criterion(6, "raw vs reduced invariant, n = 2", 180.0, [] {
        RunConfig cfg;  // 5 pairs, 1e7 samples
        const SuiteResult r = run_suite("raw_vs_reduced", cfg);
        return Outcome{r.pass, "max |raw - reduced| / stderr = " + sci(r.observed) + " (<= 3)"};
    });

    criterion(7, "change-of-variables certification, n = 2", 30.0, [] {
        RunConfig cfg;
        const SuiteResult integral = run_suite("cov_integral", cfg);
        const SuiteResult jac = run_suite("jacobian_fd", cfg);
        return Outcome{integral.pass && jac.pass && integral.expected <= 1e-6 && jac.expected <= 1e-6,
                       "integral diff " + sci(integral.observed) + ", Jacobian rel err " +
                           sci(jac.observed) + " (<= 1e-6)"};
    });

    criterion(8, "end-to-end reconstruction", 120.0, [] {
        const auto dir = std::filesystem::temp_directory_path() / "toricspec_acceptance";
        std::string detail;
        bool pass = true;
        for (int n : {2, 3})
            for (const auto& [name, poly] : {std::pair{"0.25(1-t)", std::vector<double>{0.25, -0.25}},
                                             std::pair{"0.2t(1-t)", std::vector<double>{0.0, 0.2, -0.2}}}) {
                RunConfig cfg;
                cfg.n = n;
                cfg.hpp_poly = poly;
                cfg.abel_N = 2048;
                cfg.nu_max = 4096;
                CommandOptions opt;
                opt.out_dir = (dir / ("rt" + std::to_string(n) + name)).string();
                std::ostringstream log;
                const int code = cmd_roundtrip(cfg, opt, log);
                const auto manifest = std::filesystem::path(opt.out_dir) / "manifest.ini";
                const double sup = std::stod(manifest_value(manifest, "sup_error"));
                const double ratio = std::stod(manifest_value(manifest, "refinement_ratio"));
                pass = pass && code == exit_pass && sup <= cfg.tol.roundtrip_for(n) && ratio >= 1.5;
                detail += "n=" + std::to_string(n) + " " + name + ": " + sci(sup) + " x" + sci(ratio) + "; ";
            }
        return Outcome{pass, detail + "(sup <= 5e-3 / 1e-2, N/2 ratio >= 1.5)"};
    });

    criterion(9, "data extraction via invariant_to_fu, n = 2", 180.0, [] {
        double worst = 0.0;
        for (const RadialProfile* p : {&LINEAR, &BUMPY})
            for (double nu0 : {8.0, 16.0, 32.0}) {
                const Extraction ex = invariant_to_fu(*p, 2, nu0, {1.0, 0.5, 0.25}, 1024);
                worst = std::max(worst, std::abs(ex.value - fu_forward(*p, nu0, 2, 4096)));
            }
        return Outcome{worst <= 5e-2, "max |extracted - f_u| = " + sci(worst) + " (<= 5e-2)"};
    });

    criterion(10, "h-independence of the alpha = (1,-1,0..) form", 0.0, [] {
        const CounterRng rng(77);
        std::uint64_t k = 0;
        const RadialProfile profiles[] = {ZERO, LINEAR, BUMPY,
                                          RadialProfile::polynomial({0.1, -0.3, 0.2, 0.05})};
        long compared = 0, mismatched = 0;
        for (int n = 2; n <= 5; ++n) {
            std::vector<double> alpha(static_cast<std::size_t>(n), 0.0);
            alpha[0] = 1.0;
            alpha[1] = -1.0;
            for (int i = 0; i < 500; ++i) {
                std::vector<double> x(static_cast<std::size_t>(n));
                double total = 0.0;
                for (auto& v : x)
                    total += (v = -std::log(rng.uniform(k++)));
                total -= std::log(rng.uniform(k++));
                for (auto& v : x)
                    v /= total;
                const auto ref = std::bit_cast<std::uint64_t>(quadratic_form(profiles[0], alpha, x));
                for (const RadialProfile& p : profiles) {
                    ++compared;
                    mismatched += std::bit_cast<std::uint64_t>(quadratic_form(p, alpha, x)) != ref;
                }
            }
        }
        return Outcome{mismatched == 0, std::to_string(mismatched) + " of " + std::to_string(compared) +
                                            " evaluations differ bitwise"};
    });

    std::printf("%s: %d criteria failed\n", failures ? "FAILED" : "ALL PASSED", failures);
    return failures ? 1 : 0;
}
