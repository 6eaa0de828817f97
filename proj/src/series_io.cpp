#include "radgas/series_io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <ctime>
#include <fstream>
#include <sstream>

#include "radgas/config.hpp"

#include <json.hpp>

static_assert(std::endian::native == std::endian::little,
              "checkpoint payload assumes a little-endian host");

namespace radgas {

const char* const kSeriesHeader =
    "t,sup_v,sup_vx,sup_vy,h0,h1,h2,h3,w_a0,w_a1,w_a2,E,D,dissip_v,dissip_gv,"
    "sup_p1,sup_p2,sup_divp_x,sup_divp_y,bres,cres,m0sq,malphasq";

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<double> record_values(const DiagnosticsRecord& r) {
    return {r.t,      r.sup_v,  r.sup_vx,    r.sup_vy,     r.h0,        r.h1,
            r.h2,     r.h3,     r.w_a0,      r.w_a1,       r.w_a2,      r.e_norm,
            r.d_norm, r.dissip_v, r.dissip_gv, r.sup_p1,   r.sup_p2,    r.sup_divp_x,
            r.sup_divp_y, r.bres, r.cres,     r.m0_sq,     r.malpha_sq};
}

DiagnosticsRecord record_from_values(const std::vector<double>& v) {
    DiagnosticsRecord r;
    r.t = v[0];
    r.sup_v = v[1];
    r.sup_vx = v[2];
    r.sup_vy = v[3];
    r.h0 = v[4];
    r.h1 = v[5];
    r.h2 = v[6];
    r.h3 = v[7];
    r.w_a0 = v[8];
    r.w_a1 = v[9];
    r.w_a2 = v[10];
    r.e_norm = v[11];
    r.d_norm = v[12];
    r.dissip_v = v[13];
    r.dissip_gv = v[14];
    r.sup_p1 = v[15];
    r.sup_p2 = v[16];
    r.sup_divp_x = v[17];
    r.sup_divp_y = v[18];
    r.bres = v[19];
    r.cres = v[20];
    r.m0_sq = v[21];
    r.malpha_sq = v[22];
    return r;
}

} // namespace

std::string format_series_row(const DiagnosticsRecord& r) {
    std::string out;
    bool first = true;
    for (double v : record_values(r)) {
        if (!first) out += ',';
        out += fmt(v);
        first = false;
    }
    return out;
}

void write_series(const std::vector<DiagnosticsRecord>& records, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    ensure(out.good(), "cannot open series file for writing: " + path);
    out << kSeriesHeader << "\n";
    for (const auto& r : records) out << format_series_row(r) << "\n";
    out.flush();
    ensure(out.good(), "failed writing series file: " + path);
}

std::vector<DiagnosticsRecord> read_series(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    ensure(in.good(), "cannot open series file: " + path);
    std::string line;
    ensure(bool(std::getline(in, line)), "empty series file: " + path);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    ensure(line == kSeriesHeader, "series header mismatch in " + path);
    std::vector<DiagnosticsRecord> out;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<double> vals;
        std::istringstream row(line);
        std::string cell;
        while (std::getline(row, cell, ',')) {
            try {
                vals.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw ConfigError(path + ":" + std::to_string(lineno) + ": bad number '" + cell +
                                  "'");
            }
        }
        ensure(vals.size() == 23,
               path + ":" + std::to_string(lineno) + ": expected 23 columns, got " +
                   std::to_string(vals.size()));
        out.push_back(record_from_values(vals));
    }
    return out;
}

std::vector<std::pair<double, double>> series_column(const std::vector<DiagnosticsRecord>& recs,
                                                     const std::string& name) {
    std::vector<std::string> names;
    {
        std::istringstream h(kSeriesHeader);
        std::string cell;
        while (std::getline(h, cell, ',')) names.push_back(cell);
    }
    int idx = -1;
    for (size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) idx = (int)i;
    ensure(idx >= 1, "unknown series column '" + name + "'");
    std::vector<std::pair<double, double>> out;
    out.reserve(recs.size());
    for (const auto& r : recs) {
        const std::vector<double> v = record_values(r);
        out.emplace_back(v[0], v[idx]);
    }
    return out;
}

void write_checkpoint(const SimState& st, const std::string& path) {
    const Grid& g = st.u.grid;
    std::ofstream out(path, std::ios::binary);
    ensure(out.good(), "cannot open checkpoint for writing: " + path);
    out << "RADGAS1 " << g.nx << " " << g.ny << " " << fmt(g.dx) << " " << fmt(g.dy) << " "
        << fmt(st.t) << "\n";
    auto dump = [&](const std::vector<double>& v) {
        out.write(reinterpret_cast<const char*>(v.data()), (std::streamsize)(v.size() * 8));
    };
    dump(st.u.v);
    dump(st.r.v);
    dump(st.q.c1.v);
    dump(st.q.c2.v);
    out.flush();
    ensure(out.good(), "failed writing checkpoint: " + path);
}

CheckpointData read_checkpoint(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    ensure(in.good(), "cannot open checkpoint: " + path);
    std::string header;
    ensure(bool(std::getline(in, header)), "TruncatedFile: no header in " + path);
    std::istringstream h(header);
    std::string magic;
    CheckpointData cd;
    h >> magic;
    if (magic != "RADGAS1") throw ConfigError("BadMagic: " + path + " is not a checkpoint");
    if (!(h >> cd.nx >> cd.ny >> cd.dx >> cd.dy >> cd.t))
        throw ConfigError("BadMagic: malformed checkpoint header in " + path);
    if (cd.nx < 1 || cd.ny < 1 || cd.nx > (1 << 24) || cd.ny > (1 << 24))
        throw ConfigError("ShapeMismatch: implausible grid shape in " + path);

    const long nodes = (long)(cd.nx + 1) * cd.ny;
    auto slurp = [&](std::vector<double>& v) {
        v.resize(nodes);
        in.read(reinterpret_cast<char*>(v.data()), (std::streamsize)(nodes * 8));
        if (in.gcount() != (std::streamsize)(nodes * 8))
            throw ConfigError("TruncatedFile: checkpoint payload short in " + path);
    };
    slurp(cd.u);
    slurp(cd.r);
    slurp(cd.q1);
    slurp(cd.q2);
    char extra;
    if (in.read(&extra, 1))
        throw ConfigError("ShapeMismatch: payload longer than the header shape in " + path);
    return cd;
}

SimState restore_from_checkpoint(const SimConfig& cfg, const std::string& path) {
    ensure(cfg.topology == Topology::halfstrip, "checkpoints cover half-strip runs only");
    SimState st = initialize(cfg);
    const CheckpointData cd = read_checkpoint(path);
    const Grid& g = st.u.grid;
    if (cd.nx != g.nx || cd.ny != g.ny)
        throw ConfigError("ShapeMismatch: checkpoint " + std::to_string(cd.nx) + "x" +
                          std::to_string(cd.ny) + " vs config grid " + std::to_string(g.nx) + "x" +
                          std::to_string(g.ny));
    const double rel = std::max({1.0, g.dx, g.dy});
    if (std::abs(cd.dx - g.dx) > 1e-12 * rel || std::abs(cd.dy - g.dy) > 1e-12 * rel)
        throw ConfigError("ShapeMismatch: checkpoint spacing differs from the config grid");
    st.t = cd.t;
    st.u.v = cd.u;
    st.r.v = cd.r;
    st.q.c1.v = cd.q1;
    st.q.c2.v = cd.q2;
    ensure_num(st.u.all_finite() && st.r.all_finite(), "restored fields are not finite");
    return st;
}

std::string wall_time_now() {
    std::time_t t = std::time(nullptr);
    char buf[32];
    std::tm tmv{};
    gmtime_r(&t, &tmv);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tmv);
    return buf;
}

void write_manifest(const std::string& path, const std::string& scenario, const SimConfig& cfg,
                    const std::vector<std::string>& outputs, const std::string& started,
                    const std::string& finished) {
    nlohmann::json j;
    j["scenario"] = scenario;
    j["version"] = "0.1.0";
    j["started"] = started;
    j["finished"] = finished;
    j["outputs"] = outputs;
    nlohmann::json echo;
    std::istringstream lines(emit_config(cfg));
    std::string line;
    while (std::getline(lines, line)) {
        const size_t eq = line.find('=');
        if (eq == std::string::npos) continue;
        std::string key = line.substr(0, eq);
        std::string val = line.substr(eq + 1);
        while (!key.empty() && key.back() == ' ') key.pop_back();
        while (!val.empty() && val.front() == ' ') val.erase(val.begin());
        echo[key] = val;
    }
    j["config"] = echo;
    std::ofstream out(path, std::ios::binary);
    ensure(out.good(), "cannot open manifest for writing: " + path);
    out << j.dump(2) << "\n";
    ensure(out.good(), "failed writing manifest: " + path);
}

} // namespace radgas
