#pragma once

/** Run configuration: an INI-style file (key = value, [section] headers, full-line
    comments with # or ;). Lists are written [a, b, c].

        n = 2
        seed = 1
        [profile]
        hpp_poly = [0.25, -0.25]        ; h''(t) = 0.25 - 0.25 t
        # hpp_table = table.csv         ; two columns t,hpp covering [0, 1]
        [grids]
        abel_N = 2048
        quad_panels = 256
        mc_samples = 10000000
        nu_max = 4096
        abel_smooth = false
*/

#include "toricspec/metric.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace toricspec {

/// Bad configuration or command-line input; maps to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Tolerances {
    double roundtrip = 0.0;  ///< 0 means the default for n: 5e-3 (n = 2), 1e-2 (n >= 3)
    double convergence_ratio = 1.5;
    double fu_direct = 1e-5;
    double jacobian = 1e-6;
    double cov_integral = 1e-6;
    double abel_normalization = 1e-6;
    double mc_sigmas = 3.0;

    double roundtrip_for(int n) const { return roundtrip > 0.0 ? roundtrip : (n == 2 ? 5e-3 : 1e-2); }
};

struct RunConfig {
    int n = 2;
    std::uint64_t seed = 1;

    std::vector<double> hpp_poly{0.0};
    std::string hpp_table;  ///< CSV path; takes precedence over hpp_poly when set

    long abel_N = 2048;
    long quad_panels = 0;  ///< 0: 256 for n = 2, 32 for n = 3, 8 beyond
    long mc_samples = 10000000;
    double nu_max = 4096.0;
    bool abel_smooth = false;  ///< 1-2-1 smoothing before differentiation in the inverse

    std::vector<double> alpha;  ///< empty: zero vector of length n
    double bump_center = 0.0;
    double bump_width = 1.0;

    std::vector<double> fu_nu;  ///< empty: uniform s1 grid of abel_N nodes on [0, 1 - 4/nu_max]

    std::vector<double> extract_nu0{8.0, 16.0, 32.0};
    std::vector<double> extract_widths{1.0, 0.5, 0.25};
    long extract_budget = 1024;

    int verify_pairs = 5;

    Tolerances tol;

    long panels() const { return quad_panels > 0 ? quad_panels : (n == 2 ? 256 : (n == 3 ? 32 : 8)); }
    double s_max() const { return 1.0 - 4.0 / nu_max; }
    std::vector<double> alpha_or_zero() const;

    /// The profile described by hpp_poly / hpp_table.
    RadialProfile profile() const;

    /// Range checks and profile validity; throws ConfigError with the diagnostic.
    void validate() const;

    /// Resolved parameters, one `key = value` per line, in the input format.
    void write(std::ostream& os) const;
};

RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::string& path);

/// Parse "[a, b, c]" (or a bare scalar) into numbers.
std::vector<double> parse_list(const std::string& text);

}  // namespace toricspec
