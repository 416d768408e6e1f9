#include "bardina/config.hpp"

#include "bardina/error.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace bardina {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double to_double(std::string_view v, const std::string& where) {
    if (v == "inf" || v == "+inf") return std::numeric_limits<double>::infinity();
    double out = 0.0;
    const auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || end != v.data() + v.size())
        throw ConfigError(where + ": expected a number, got '" + std::string(v) + "'");
    return out;
}

long long to_integer(std::string_view v, const std::string& where) {
    long long out = 0;
    const auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || end != v.data() + v.size())
        throw ConfigError(where + ": expected an integer, got '" + std::string(v) + "'");
    return out;
}

int to_int(std::string_view v, const std::string& where) {
    const long long x = to_integer(v, where);
    if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max())
        throw ConfigError(where + ": integer out of range");
    return static_cast<int>(x);
}

bool to_bool(std::string_view v, const std::string& where) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError(where + ": expected true or false, got '" + std::string(v) + "'");
}

using Setter = std::function<void(RunConfig&, std::string_view, const std::string&,
                                  const std::filesystem::path&)>;

std::filesystem::path resolve(std::string_view v, const std::filesystem::path& base) {
    std::filesystem::path p{std::string(v)};
    return p.is_absolute() ? p : base / p;
}

void add_field_keys(std::map<std::string, Setter>& t, const std::string& prefix,
                    FieldSpec SolverConfig::*member) {
    t[prefix + ".kind"] = [member](RunConfig& c, std::string_view v, const std::string&,
                                   const std::filesystem::path&) {
        (c.solver.*member).kind = parse_field_kind(std::string(v));
    };
    t[prefix + ".amplitude"] = [member](RunConfig& c, std::string_view v, const std::string& w,
                                        const std::filesystem::path&) {
        (c.solver.*member).amplitude = to_double(v, w);
    };
    t[prefix + ".k1"] = [member](RunConfig& c, std::string_view v, const std::string& w,
                                 const std::filesystem::path&) {
        (c.solver.*member).k1 = to_int(v, w);
    };
    t[prefix + ".k2"] = [member](RunConfig& c, std::string_view v, const std::string& w,
                                 const std::filesystem::path&) {
        (c.solver.*member).k2 = to_double(v, w);
    };
    t[prefix + ".reference"] = [member](RunConfig& c, std::string_view v, const std::string&,
                                        const std::filesystem::path&) {
        (c.solver.*member).reference = std::string(v);
    };
    t[prefix + ".path"] = [member](RunConfig& c, std::string_view v, const std::string&,
                                   const std::filesystem::path& base) {
        (c.solver.*member).path = resolve(v, base).string();
    };
}

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = [] {
        std::map<std::string, Setter> t;
        using P = const std::filesystem::path&;
        using W = const std::string&;
        t["lx"] = [](RunConfig& c, std::string_view v, W w, P) { c.solver.domain.lx = to_double(v, w); };
        t["m"] = [](RunConfig& c, std::string_view v, W w, P) { c.solver.domain.m = to_double(v, w); };
        t["nx"] = [](RunConfig& c, std::string_view v, W w, P) { c.solver.nx = to_int(v, w); };
        t["ny"] = [](RunConfig& c, std::string_view v, W w, P) { c.solver.ny = to_int(v, w); };
        t["alpha"] = [](RunConfig& c, std::string_view v, W w, P) { c.solver.alpha = to_double(v, w); };
        t["nu"] = [](RunConfig& c, std::string_view v, W w, P) { c.solver.nu = to_double(v, w); };
        t["dt"] = [](RunConfig& c, std::string_view v, W w, P) { c.solver.dt = to_double(v, w); };
        t["t_end"] = [](RunConfig& c, std::string_view v, W w, P) { c.solver.t_end = to_double(v, w); };
        t["scheme"] = [](RunConfig& c, std::string_view v, W, P) {
            c.solver.scheme = parse_scheme(std::string(v));
        };
        t["gamma"] = [](RunConfig& c, std::string_view v, W w, P) { c.solver.weight.gamma = to_double(v, w); };
        t["epsilon"] = [](RunConfig& c, std::string_view v, W w, P) {
            c.solver.weight.epsilon = to_double(v, w);
        };
        t["rho"] = [](RunConfig& c, std::string_view v, W w, P) { c.solver.weight.rho = to_double(v, w); };
        add_field_keys(t, "forcing", &SolverConfig::forcing);
        add_field_keys(t, "ic", &SolverConfig::ic);
        t["output.dir"] = [](RunConfig& c, std::string_view v, W, P base) { c.output_dir = resolve(v, base); };
        t["output.every"] = [](RunConfig& c, std::string_view v, W w, P) {
            c.solver.output_every = to_int(v, w);
        };
        t["output.snapshot_every"] = [](RunConfig& c, std::string_view v, W w, P) {
            c.snapshot_every = to_int(v, w);
            if (c.snapshot_every < 0) throw ConfigError(w + ": must be non-negative");
        };
        t["seed"] = [](RunConfig& c, std::string_view v, W w, P) {
            const long long s = to_integer(v, w);
            if (s < 0) throw ConfigError(w + ": seed must be non-negative");
            c.seed = static_cast<std::uint64_t>(s);
        };
        t["nonlinear"] = [](RunConfig& c, std::string_view v, W w, P) { c.solver.nonlinear = to_bool(v, w); };
        t["dealias"] = [](RunConfig& c, std::string_view v, W w, P) { c.solver.dealias = to_bool(v, w); };
        return t;
    }();
    return table;
}

}  // namespace

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = {
        "lx", "m", "nx", "ny", "alpha", "nu", "dt", "t_end", "scheme", "gamma", "epsilon", "rho",
        "forcing.kind", "forcing.amplitude", "forcing.k1", "forcing.k2", "forcing.reference",
        "forcing.path", "ic.kind", "ic.amplitude", "ic.k1", "ic.k2", "ic.reference", "ic.path",
        "output.dir", "output.every", "output.snapshot_every", "seed", "nonlinear", "dealias"};
    return keys;
}

RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir,
                       const std::string& origin) {
    RunConfig config;
    std::set<std::string> seen;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::string where = origin + ":" + std::to_string(line_no);
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError(where + ": expected 'key = value', got '" + std::string(line) + "'");
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));
        const auto it = setters().find(key);
        if (it == setters().end()) throw ConfigError(where + ": unknown config key '" + key + "'");
        if (!seen.insert(key).second) throw ConfigError(where + ": duplicate key '" + key + "'");
        if (value.empty()) throw ConfigError(where + ": empty value for '" + key + "'");
        it->second(config, value, where + " (" + key + ")", base_dir);
    }
    return config;
}

void apply_config_value(RunConfig& config, const std::string& key, std::string_view value,
                        const std::filesystem::path& base_dir) {
    const auto it = setters().find(key);
    if (it == setters().end()) throw ConfigError("unknown config key '" + key + "'");
    value = trim(value);
    if (value.empty()) throw ConfigError("empty value for '" + key + "'");
    it->second(config, value, key, base_dir);
}

double config_number(const RunConfig& c, const std::string& key) {
    static const std::map<std::string, double (*)(const RunConfig&)> getters = {
        {"lx", [](const RunConfig& r) { return r.solver.domain.lx; }},
        {"m", [](const RunConfig& r) { return r.solver.domain.m; }},
        {"nx", [](const RunConfig& r) { return double(r.solver.nx); }},
        {"ny", [](const RunConfig& r) { return double(r.solver.ny); }},
        {"alpha", [](const RunConfig& r) { return r.solver.alpha; }},
        {"nu", [](const RunConfig& r) { return r.solver.nu; }},
        {"dt", [](const RunConfig& r) { return r.solver.dt; }},
        {"t_end", [](const RunConfig& r) { return r.solver.t_end; }},
        {"gamma", [](const RunConfig& r) { return r.solver.weight.gamma; }},
        {"epsilon", [](const RunConfig& r) { return r.solver.weight.epsilon; }},
        {"rho", [](const RunConfig& r) { return r.solver.weight.rho; }},
        {"forcing.amplitude", [](const RunConfig& r) { return r.solver.forcing.amplitude; }},
        {"forcing.k1", [](const RunConfig& r) { return double(r.solver.forcing.k1); }},
        {"forcing.k2", [](const RunConfig& r) { return r.solver.forcing.k2; }},
        {"ic.amplitude", [](const RunConfig& r) { return r.solver.ic.amplitude; }},
        {"ic.k1", [](const RunConfig& r) { return double(r.solver.ic.k1); }},
        {"ic.k2", [](const RunConfig& r) { return r.solver.ic.k2; }},
        {"output.every", [](const RunConfig& r) { return double(r.solver.output_every); }},
        {"output.snapshot_every", [](const RunConfig& r) { return double(r.snapshot_every); }},
        {"seed", [](const RunConfig& r) { return double(r.seed); }},
        {"nonlinear", [](const RunConfig& r) { return r.solver.nonlinear ? 1.0 : 0.0; }},
        {"dealias", [](const RunConfig& r) { return r.solver.dealias ? 1.0 : 0.0; }},
    };
    const auto it = getters.find(key);
    if (it == getters.end()) throw ConfigError("'" + key + "' is not a numeric config key");
    return it->second(c);
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read config " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path.parent_path().empty() ? "." : path.parent_path(),
                        path.string());
}

std::string to_text(const RunConfig& c) {
    std::ostringstream os;
    os.precision(17);
    const SolverConfig& s = c.solver;
    os << "lx = " << s.domain.lx << "\nm = " << s.domain.m << "\nnx = " << s.nx << "\nny = " << s.ny
       << "\nalpha = " << s.alpha << "\nnu = " << s.nu << "\ndt = " << s.dt
       << "\nt_end = " << s.t_end << "\nscheme = " << to_string(s.scheme)
       << "\ngamma = " << s.weight.gamma << "\nepsilon = " << s.weight.epsilon << "\nrho = ";
    if (s.weight.is_limit())
        os << "inf";
    else
        os << s.weight.rho;
    for (const auto& [name, f] : {std::pair{"forcing", &s.forcing}, std::pair{"ic", &s.ic}}) {
        os << '\n' << name << ".kind = " << to_string(f->kind);
        os << '\n' << name << ".amplitude = " << f->amplitude;
        os << '\n' << name << ".k1 = " << f->k1;
        os << '\n' << name << ".k2 = " << f->k2;
        if (!f->reference.empty()) os << '\n' << name << ".reference = " << f->reference;
        if (!f->path.empty()) os << '\n' << name << ".path = " << f->path;
    }
    os << "\noutput.dir = " << c.output_dir.string() << "\noutput.every = " << s.output_every
       << "\noutput.snapshot_every = " << c.snapshot_every << "\nseed = " << c.seed
       << "\nnonlinear = " << (s.nonlinear ? "true" : "false")
       << "\ndealias = " << (s.dealias ? "true" : "false") << '\n';
    return os.str();
}

}  // namespace bardina
