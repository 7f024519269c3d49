#include "toricspec/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace toricspec {

namespace {

namespace pt = boost::property_tree;

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& text, const std::string& key)
{
    const std::string t = trim(text);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(t, &used);
    } catch (const std::exception&) {
        throw ConfigError("config: " + key + ": '" + t + "' is not a number");
    }
    if (used != t.size() || !std::isfinite(v))
        throw ConfigError("config: " + key + ": '" + t + "' is not a finite number");
    return v;
}

long parse_count(const std::string& text, const std::string& key)
{
    const double v = parse_number(text, key);
    if (v != std::floor(v) || std::abs(v) > 9e15)
        throw ConfigError("config: " + key + " must be an integer");
    return long(v);
}

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_list(const std::vector<double>& v)
{
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? ", " : "") + fmt(v[i]);
    return s + "]";
}

RadialProfile read_table(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("config: cannot open hpp_table '" + path + "'");
    std::vector<double> t, h;
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#')
            continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw ConfigError("config: hpp_table rows must be 't,hpp'");
        try {
            const double a = std::stod(line.substr(0, comma));
            const double b = std::stod(line.substr(comma + 1));
            t.push_back(a);
            h.push_back(b);
        } catch (const std::invalid_argument&) {
            if (!t.empty())
                throw ConfigError("config: hpp_table has a non-numeric row: " + line);
            // header row
        }
    }
    try {
        return RadialProfile::table(std::move(t), std::move(h));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: hpp_table: ") + e.what());
    }
}

}  // namespace

std::vector<double> parse_list(const std::string& text)
{
    std::string t = trim(text);
    if (!t.empty() && t.front() == '[') {
        if (t.back() != ']')
            throw ConfigError("config: unterminated list '" + t + "'");
        t = t.substr(1, t.size() - 2);
    }
    std::vector<double> out;
    if (trim(t).empty())
        return out;
    std::stringstream ss(t);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(parse_number(item, "list entry"));
    return out;
}

std::vector<double> RunConfig::alpha_or_zero() const
{
    return alpha.empty() ? std::vector<double>(static_cast<std::size_t>(n), 0.0) : alpha;
}

RadialProfile RunConfig::profile() const
{
    if (!hpp_table.empty())
        return read_table(hpp_table);
    return RadialProfile::polynomial(hpp_poly);
}

void RunConfig::validate() const
{
    if (n < 2)
        throw ConfigError("config: n = " + std::to_string(n) + " is not allowed; need n >= 2");
    if (abel_N < 16)
        throw ConfigError("config: grids.abel_N must be at least 16");
    if (quad_panels < 0 || (quad_panels > 0 && quad_panels < 8))
        throw ConfigError("config: grids.quad_panels must be at least 8");
    if (mc_samples <= 0)
        throw ConfigError("config: grids.mc_samples must be positive");
    if (!(nu_max > 4.0))
        throw ConfigError("config: grids.nu_max must exceed 4");
    if (extract_budget < 8)
        throw ConfigError("config: extract.budget must be at least 8");
    if (verify_pairs <= 0)
        throw ConfigError("config: verify.pairs must be positive");
    if (!alpha.empty() && alpha.size() != std::size_t(n))
        throw ConfigError("config: forward.alpha must have n = " + std::to_string(n) + " entries");
    if (!(bump_width > 0.0))
        throw ConfigError("config: forward.bump_width must be positive");
    for (double v : fu_nu)
        if (!(v > 4.0))
            throw ConfigError("config: fu.nu entry " + fmt(v) + " is not above 4 (f_u is defined for nu > 4)");
    for (double v : {tol.roundtrip, tol.fu_direct, tol.jacobian, tol.cov_integral,
                     tol.abel_normalization, tol.mc_sigmas, tol.convergence_ratio})
        if (v < 0.0)
            throw ConfigError("config: tolerances must be nonnegative");
    const ValidityReport rep = is_valid(profile(), n);
    if (!rep.valid)
        throw ConfigError("config: invalid profile: " + rep.diagnostic);
}

RunConfig parse_config(std::istream& in)
{
    pt::ptree tree;
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }

    RunConfig c;
    std::set<std::string> seen;
    for (const auto& [key, node] : tree) {
        if (node.empty()) {
            const std::string v = node.data();
            if (key == "n")
                c.n = int(parse_count(v, key));
            else if (key == "seed") {
                const long s = parse_count(v, key);
                if (s < 0)
                    throw ConfigError("config: seed must be nonnegative");
                c.seed = std::uint64_t(s);
            } else
                throw ConfigError("config: unknown top-level key '" + key + "'");
            continue;
        }
        for (const auto& [sub, leaf] : node) {
            const std::string name = key + "." + sub;
            const std::string v = leaf.data();
            if (name == "profile.hpp_poly")
                c.hpp_poly = parse_list(v);
            else if (name == "profile.hpp_table")
                c.hpp_table = trim(v);
            else if (name == "grids.abel_N")
                c.abel_N = parse_count(v, name);
            else if (name == "grids.quad_panels")
                c.quad_panels = parse_count(v, name);
            else if (name == "grids.mc_samples")
                c.mc_samples = parse_count(v, name);
            else if (name == "grids.nu_max")
                c.nu_max = parse_number(v, name);
            else if (name == "grids.abel_smooth") {
                const std::string b = trim(v);
                if (b != "true" && b != "false")
                    throw ConfigError("config: grids.abel_smooth must be true or false");
                c.abel_smooth = b == "true";
            } else if (name == "forward.alpha")
                c.alpha = parse_list(v);
            else if (name == "forward.bump_center")
                c.bump_center = parse_number(v, name);
            else if (name == "forward.bump_width")
                c.bump_width = parse_number(v, name);
            else if (name == "fu.nu")
                c.fu_nu = parse_list(v);
            else if (name == "extract.nu0")
                c.extract_nu0 = parse_list(v);
            else if (name == "extract.widths")
                c.extract_widths = parse_list(v);
            else if (name == "extract.budget")
                c.extract_budget = parse_count(v, name);
            else if (name == "verify.pairs")
                c.verify_pairs = int(parse_count(v, name));
            else if (name == "tolerances.roundtrip")
                c.tol.roundtrip = parse_number(v, name);
            else if (name == "tolerances.convergence_ratio")
                c.tol.convergence_ratio = parse_number(v, name);
            else if (name == "tolerances.fu_direct")
                c.tol.fu_direct = parse_number(v, name);
            else if (name == "tolerances.jacobian")
                c.tol.jacobian = parse_number(v, name);
            else if (name == "tolerances.cov_integral")
                c.tol.cov_integral = parse_number(v, name);
            else if (name == "tolerances.abel_normalization")
                c.tol.abel_normalization = parse_number(v, name);
            else if (name == "tolerances.mc_sigmas")
                c.tol.mc_sigmas = parse_number(v, name);
            else
                throw ConfigError("config: unknown key '" + name + "'");
        }
    }
    return c;
}

RunConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("config: cannot open '" + path + "'");
    return parse_config(in);
}

void RunConfig::write(std::ostream& os) const
{
    os << "n = " << n << "\n"
       << "seed = " << seed << "\n\n[profile]\n";
    if (!hpp_table.empty())
        os << "hpp_table = " << hpp_table << "\n";
    else
        os << "hpp_poly = " << fmt_list(hpp_poly) << "\n";
    os << "\n[grids]\n"
       << "abel_N = " << abel_N << "\n"
       << "quad_panels = " << panels() << "\n"
       << "mc_samples = " << mc_samples << "\n"
       << "nu_max = " << fmt(nu_max) << "\n"
       << "abel_smooth = " << (abel_smooth ? "true" : "false") << "\n\n[forward]\n"
       << "alpha = " << fmt_list(alpha_or_zero()) << "\n"
       << "bump_center = " << fmt(bump_center) << "\n"
       << "bump_width = " << fmt(bump_width) << "\n\n[fu]\n"
       << "nu = " << fmt_list(fu_nu) << "\n\n[extract]\n"
       << "nu0 = " << fmt_list(extract_nu0) << "\n"
       << "widths = " << fmt_list(extract_widths) << "\n"
       << "budget = " << extract_budget << "\n\n[verify]\n"
       << "pairs = " << verify_pairs << "\n\n[tolerances]\n"
       << "roundtrip = " << fmt(tol.roundtrip_for(n)) << "\n"
       << "convergence_ratio = " << fmt(tol.convergence_ratio) << "\n"
       << "fu_direct = " << fmt(tol.fu_direct) << "\n"
       << "jacobian = " << fmt(tol.jacobian) << "\n"
       << "cov_integral = " << fmt(tol.cov_integral) << "\n"
       << "abel_normalization = " << fmt(tol.abel_normalization) << "\n"
       << "mc_sigmas = " << fmt(tol.mc_sigmas) << "\n";
}

}  // namespace toricspec
