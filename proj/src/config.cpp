#include "radgas/config.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace radgas {

namespace {

std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace((unsigned char)s[a])) ++a;
    while (b > a && std::isspace((unsigned char)s[b - 1])) --b;
    return s.substr(a, b - a);
}

[[noreturn]] void fail_at(const std::string& origin, int line, const std::string& msg) {
    throw ConfigError(origin + ":" + std::to_string(line) + ": " + msg);
}

double parse_double(const std::string& origin, int line, const std::string& s) {
    size_t pos = 0;
    double v;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        fail_at(origin, line, "not a number: '" + s + "'");
    }
    if (pos != s.size()) fail_at(origin, line, "trailing characters in number: '" + s + "'");
    return v;
}

long long parse_int(const std::string& origin, int line, const std::string& s) {
    size_t pos = 0;
    long long v;
    try {
        v = std::stoll(s, &pos);
    } catch (const std::exception&) {
        fail_at(origin, line, "not an integer: '" + s + "'");
    }
    if (pos != s.size()) fail_at(origin, line, "trailing characters in integer: '" + s + "'");
    return v;
}

unsigned long long parse_uint(const std::string& origin, int line, const std::string& s) {
    size_t pos = 0;
    unsigned long long v;
    try {
        v = std::stoull(s, &pos);
    } catch (const std::exception&) {
        fail_at(origin, line, "not an unsigned integer: '" + s + "'");
    }
    if (pos != s.size()) fail_at(origin, line, "trailing characters in integer: '" + s + "'");
    return v;
}

FluxKind parse_flux_kind(const std::string& origin, int line, const std::string& s) {
    if (s == "burgers") return FluxKind::burgers;
    if (s == "linear") return FluxKind::linear;
    if (s == "zero") return FluxKind::zero;
    fail_at(origin, line, "unknown flux kind '" + s + "' (burgers|linear|zero)");
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

const char* flux_kind_name(FluxKind k) {
    switch (k) {
    case FluxKind::burgers: return "burgers";
    case FluxKind::linear: return "linear";
    case FluxKind::zero: return "zero";
    }
    return "?";
}

const char* bc_kind_name(EllipticBCKind k) {
    return k == EllipticBCKind::compatibility ? "compatibility" : "homogeneous";
}

const char* perturbation_kind_name(PerturbationKind k) {
    switch (k) {
    case PerturbationKind::none: return "none";
    case PerturbationKind::gaussian: return "gaussian";
    case PerturbationKind::weighted_tail: return "weighted_tail";
    }
    return "?";
}

SimConfig parse_config_text(const std::string& text, const std::string& origin) {
    SimConfig cfg;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos) fail_at(origin, lineno, "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty()) fail_at(origin, lineno, "empty key");
        if (val.empty()) fail_at(origin, lineno, "empty value for key '" + key + "'");

        if (key == "u_minus") {
            cfg.endpoints.u_minus = parse_double(origin, lineno, val);
        } else if (key == "u_plus") {
            cfg.endpoints.u_plus = parse_double(origin, lineno, val);
        } else if (key == "flux.f") {
            cfg.flux.f_kind = parse_flux_kind(origin, lineno, val);
        } else if (key == "flux.g") {
            cfg.flux.g_kind = parse_flux_kind(origin, lineno, val);
        } else if (key == "flux.g_coeff") {
            cfg.flux.g_coeff = parse_double(origin, lineno, val);
        } else if (key == "grid.nx") {
            cfg.nx = (int)parse_int(origin, lineno, val);
        } else if (key == "grid.ny") {
            cfg.ny = (int)parse_int(origin, lineno, val);
        } else if (key == "grid.lx") {
            cfg.lx = parse_double(origin, lineno, val);
        } else if (key == "grid.ly") {
            cfg.ly = parse_double(origin, lineno, val);
        } else if (key == "cfl") {
            cfg.cfl = parse_double(origin, lineno, val);
        } else if (key == "t_end") {
            cfg.t_end = parse_double(origin, lineno, val);
        } else if (key == "bc") {
            if (val == "compatibility") cfg.bc = EllipticBCKind::compatibility;
            else if (val == "homogeneous") cfg.bc = EllipticBCKind::homogeneous;
            else fail_at(origin, lineno, "unknown bc '" + val + "' (compatibility|homogeneous)");
        } else if (key == "alpha") {
            cfg.alpha = parse_double(origin, lineno, val);
        } else if (key == "perturbation.kind") {
            if (val == "none") cfg.pert.kind = PerturbationKind::none;
            else if (val == "gaussian") cfg.pert.kind = PerturbationKind::gaussian;
            else if (val == "weighted_tail") cfg.pert.kind = PerturbationKind::weighted_tail;
            else fail_at(origin, lineno,
                         "unknown perturbation kind '" + val + "' (none|gaussian|weighted_tail)");
        } else if (key == "perturbation.amp") {
            cfg.pert.amp = parse_double(origin, lineno, val);
        } else if (key == "perturbation.x0") {
            cfg.pert.x0 = parse_double(origin, lineno, val);
        } else if (key == "perturbation.y0") {
            cfg.pert.y0 = parse_double(origin, lineno, val);
        } else if (key == "perturbation.sx") {
            cfg.pert.sx = parse_double(origin, lineno, val);
        } else if (key == "perturbation.sy") {
            cfg.pert.sy = parse_double(origin, lineno, val);
        } else if (key == "perturbation.beta") {
            cfg.pert.beta = parse_double(origin, lineno, val);
        } else if (key == "record_every") {
            cfg.record_every = (int)parse_int(origin, lineno, val);
        } else if (key == "seed") {
            cfg.seed = parse_uint(origin, lineno, val);
        } else {
            fail_at(origin, lineno, "unknown key '" + key + "'");
        }
    }
    try {
        cfg.validate();
    } catch (const ConfigError& e) {
        throw ConfigError(origin + ": " + e.what());
    }
    return cfg;
}

SimConfig parse_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    ensure(in.good(), "cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

std::string emit_config(const SimConfig& cfg) {
    std::ostringstream out;
    out << "u_minus = " << fmt(cfg.endpoints.u_minus) << "\n";
    out << "u_plus = " << fmt(cfg.endpoints.u_plus) << "\n";
    out << "flux.f = " << flux_kind_name(cfg.flux.f_kind) << "\n";
    out << "flux.g = " << flux_kind_name(cfg.flux.g_kind) << "\n";
    out << "flux.g_coeff = " << fmt(cfg.flux.g_coeff) << "\n";
    out << "grid.nx = " << cfg.nx << "\n";
    out << "grid.ny = " << cfg.ny << "\n";
    out << "grid.lx = " << fmt(cfg.lx) << "\n";
    out << "grid.ly = " << fmt(cfg.ly) << "\n";
    out << "cfl = " << fmt(cfg.cfl) << "\n";
    out << "t_end = " << fmt(cfg.t_end) << "\n";
    out << "bc = " << bc_kind_name(cfg.bc) << "\n";
    out << "alpha = " << fmt(cfg.alpha) << "\n";
    out << "perturbation.kind = " << perturbation_kind_name(cfg.pert.kind) << "\n";
    out << "perturbation.amp = " << fmt(cfg.pert.amp) << "\n";
    out << "perturbation.x0 = " << fmt(cfg.pert.x0) << "\n";
    out << "perturbation.y0 = " << fmt(cfg.pert.y0) << "\n";
    out << "perturbation.sx = " << fmt(cfg.pert.sx) << "\n";
    out << "perturbation.sy = " << fmt(cfg.pert.sy) << "\n";
    out << "perturbation.beta = " << fmt(cfg.pert.beta) << "\n";
    out << "record_every = " << cfg.record_every << "\n";
    out << "seed = " << cfg.seed << "\n";
    return out.str();
}

bool config_equal(const SimConfig& a, const SimConfig& b) {
    return a.endpoints.u_minus == b.endpoints.u_minus && a.endpoints.u_plus == b.endpoints.u_plus &&
           a.flux.f_kind == b.flux.f_kind && a.flux.g_kind == b.flux.g_kind &&
           a.flux.g_coeff == b.flux.g_coeff && a.nx == b.nx && a.ny == b.ny && a.lx == b.lx &&
           a.ly == b.ly && a.cfl == b.cfl && a.t_end == b.t_end && a.bc == b.bc &&
           a.alpha == b.alpha && a.pert.kind == b.pert.kind && a.pert.amp == b.pert.amp &&
           a.pert.x0 == b.pert.x0 && a.pert.y0 == b.pert.y0 && a.pert.sx == b.pert.sx &&
           a.pert.sy == b.pert.sy && a.pert.beta == b.pert.beta &&
           a.record_every == b.record_every && a.seed == b.seed && a.topology == b.topology;
}

} // namespace radgas
