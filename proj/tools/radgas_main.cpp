#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "radgas/config.hpp"
#include "radgas/diagnostics.hpp"
#include "radgas/series_io.hpp"

namespace {

using namespace radgas;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

SimConfig load_config(const std::string& path) {
    return path.empty() ? SimConfig{} : parse_config(path);
}

int cmd_stationary(const std::string& cfg_path, const std::string& out_path,
                   const std::string& manifest_path) {
    const std::string started = wall_time_now();
    const SimConfig cfg = load_config(cfg_path);
    const StationaryProfile p = profile_for_grid(cfg.flux, cfg.endpoints, cfg.lx, cfg.nx, 1e-10);
    std::ofstream out(out_path, std::ios::binary);
    ensure(out.good(), "cannot open output file: " + out_path);
    out << "x,ubar,qbar,d1ubar,d2ubar,d3ubar,d4ubar\n";
    for (int i = 0; i <= p.n; ++i)
        out << fmt(p.x[i]) << ',' << fmt(p.ubar[i]) << ',' << fmt(p.qbar[i]) << ','
            << fmt(p.d1[i]) << ',' << fmt(p.d2[i]) << ',' << fmt(p.d3[i]) << ',' << fmt(p.d4[i])
            << "\n";
    out.flush();
    ensure(out.good(), "failed writing " + out_path);
    std::printf("stationary: %s case, %d nodes, first-integral residual %.3g\n",
                p.case_tag == ProfileCase::degenerate ? "degenerate" : "nondegenerate", p.n + 1,
                first_integral_residual(p));
    if (!manifest_path.empty())
        write_manifest(manifest_path, "stationary", cfg, {out_path}, started, wall_time_now());
    return 0;
}

int cmd_evolve(const std::string& cfg_path, const std::string& out_path,
               const std::string& restore_path, const std::string& ckpt_path, int ckpt_at,
               const std::string& manifest_path) {
    const std::string started = wall_time_now();
    const SimConfig cfg = load_config(cfg_path);
    SimState st =
        restore_path.empty() ? initialize(cfg) : restore_from_checkpoint(cfg, restore_path);

    std::ofstream out(out_path, std::ios::binary);
    ensure(out.good(), "cannot open output file: " + out_path);
    out << kSeriesHeader << "\n";
    out.flush();

    RecordHook hook = [&](int idx, const SimState& s, const DiagnosticsRecord& rec) {
        out << format_series_row(rec) << "\n";
        out.flush(); // keep partial series on disk if the run aborts
        ensure(out.good(), "failed writing " + out_path);
        if (!ckpt_path.empty() && (ckpt_at < 0 || idx == ckpt_at)) write_checkpoint(s, ckpt_path);
    };
    const RunResult res = run_from(cfg, std::move(st), hook);

    std::printf("evolve: %zu records to t=%.6g, sup|v| %.6g -> %.6g\n", res.records.size(),
                res.state.t, res.records.front().sup_v, res.records.back().sup_v);
    if (!manifest_path.empty()) {
        std::vector<std::string> outputs{out_path};
        if (!ckpt_path.empty()) outputs.push_back(ckpt_path);
        write_manifest(manifest_path, "evolve", cfg, outputs, started, wall_time_now());
    }
    return 0;
}

int cmd_verify_rates(const std::string& series_path, const std::string& column, double expect,
                     double tol, double window, bool expect_set) {
    const std::vector<DiagnosticsRecord> recs = read_series(series_path);
    struct Row {
        std::string column;
        double expect;
    };
    std::vector<Row> table;
    if (!column.empty()) {
        ensure(expect_set, "--column needs --expect");
        table.push_back({column, expect});
    } else {
        // default targets: the predicted decay rates at weight exponent alpha = 0
        table.push_back({"sup_v", -0.25});
        table.push_back({"sup_vx", -0.75});
        table.push_back({"sup_vy", -0.75});
        table.push_back({"sup_p2", -0.50});
    }
    bool all_ok = true;
    std::printf("%-10s %10s %10s %8s  %s\n", "column", "fitted", "expect", "tol", "status");
    for (const Row& row : table) {
        const auto series = series_column(recs, row.column);
        const DecayFit fit = fit_decay_exponent(series, window);
        const bool ok = fit.exponent <= row.expect + tol; // decay at least this fast
        all_ok = all_ok && ok;
        std::printf("%-10s %10.4f %10.4f %8.3f  %s (r2=%.3f)\n", row.column.c_str(), fit.exponent,
                    row.expect, tol, ok ? "pass" : "FAIL", fit.r2);
    }
    if (!all_ok) throw CheckError("verify-rates: at least one fitted exponent misses its target");
    return 0;
}

int cmd_check_inequalities(unsigned long long seed, int trials) {
    ensure(trials >= 1, "--trials must be >= 1");
    const Grid g = property_grid();
    const InterpKind kinds[] = {InterpKind::L_inf_1d, InterpKind::Lx2Lyinf, InterpKind::LxinfLy2,
                                InterpKind::v_Linfty, InterpKind::GN};
    const char* names[] = {"L_inf_1d", "Lx2Lyinf", "LxinfLy2", "v_Linfty", "GN"};
    int violations = 0;
    double worst_margin = 0;
    std::string worst_tag = "-";
    for (int t = 0; t < trials; ++t) {
        const ScalarField f = random_test_field(seed + (unsigned long long)t, g, true);
        for (int k = 0; k < 5; ++k) {
            const IneqCheck c = check_interp_inequality(kinds[k], f);
            const double margin = c.rhs > 0 ? c.lhs / c.rhs : 0.0;
            if (margin > worst_margin) {
                worst_margin = margin;
                worst_tag = names[k];
            }
            if (!c.holds) {
                ++violations;
                std::printf("violation: %s trial %d lhs=%.6g rhs=%.6g\n", names[k], t, c.lhs,
                            c.rhs);
            }
        }
        if (t % 5 == 0) {
            const auto [r2, r3] = norm_equivalence_check(f);
            if (r2 < 0.2 || r2 > 5.0 || r3 < 0.2 || r3 > 5.0) {
                ++violations;
                std::printf("violation: norm equivalence trial %d ratio2=%.4f ratio3=%.4f\n", t,
                            r2, r3);
            }
        }
    }
    std::printf("check-inequalities: %d trials, %d violations, worst lhs/rhs %.4f (%s)\n", trials,
                violations, worst_margin, worst_tag.c_str());
    if (violations > 0) throw CheckError("inequality sweep found violations");
    return 0;
}

int cmd_elliptic_mms(int levels, const std::string& out_path) {
    const std::vector<MmsRow> rows = elliptic_mms_table(levels);
    std::string csv = "h,max_error,ratio\n";
    for (const MmsRow& r : rows)
        csv += fmt(r.h) + "," + fmt(r.max_error) + "," + fmt(r.ratio) + "\n";
    if (out_path.empty()) {
        std::fputs(csv.c_str(), stdout);
    } else {
        std::ofstream out(out_path, std::ios::binary);
        ensure(out.good(), "cannot open output file: " + out_path);
        out << csv;
        ensure(out.good(), "failed writing " + out_path);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"radiating-gas half-space simulator and verification harness"};
    app.require_subcommand(1);
    int rc = 0;

    std::string cfg_path, out_path, manifest_path;

    auto* st = app.add_subcommand("stationary", "solve the wall-to-far-field stationary profile");
    st->add_option("--config", cfg_path, "config file (defaults apply when omitted)");
    std::string st_out = "profile.csv";
    st->add_option("--out", st_out, "profile CSV path");
    st->add_option("--manifest", manifest_path, "write a run manifest JSON here");
    st->callback([&]() { rc = cmd_stationary(cfg_path, st_out, manifest_path); });

    auto* ev = app.add_subcommand("evolve", "advance the coupled system and record diagnostics");
    ev->add_option("--config", cfg_path, "config file (defaults apply when omitted)");
    std::string ev_out = "series.csv", restore_path, ckpt_path;
    int ckpt_at = -1;
    ev->add_option("--out", ev_out, "series CSV path");
    ev->add_option("--restore", restore_path, "resume from this checkpoint");
    ev->add_option("--checkpoint", ckpt_path, "write a checkpoint here at record time");
    ev->add_option("--checkpoint-at-record", ckpt_at,
                   "record index to checkpoint at (-1 = refresh at every record)");
    ev->add_option("--manifest", manifest_path, "write a run manifest JSON here");
    ev->callback(
        [&]() { rc = cmd_evolve(cfg_path, ev_out, restore_path, ckpt_path, ckpt_at, manifest_path); });

    auto* vr = app.add_subcommand("verify-rates", "fit decay exponents from a series CSV");
    std::string series_path, column;
    double expect = 0, tol = 0.35, window = 0.5;
    vr->add_option("--series", series_path, "series CSV produced by evolve")->required();
    vr->add_option("--column", column, "single column to fit (default: built-in table)");
    auto* expect_opt = vr->add_option("--expect", expect, "expected exponent for --column");
    vr->add_option("--tol", tol, "pass when fitted <= expect + tol");
    vr->add_option("--window", window, "trailing fraction of samples to fit");
    vr->callback([&]() {
        rc = cmd_verify_rates(series_path, column, expect, tol, window, expect_opt->count() > 0);
    });

    auto* ci = app.add_subcommand("check-inequalities",
                                  "seeded property sweep of the interpolation inequalities");
    unsigned long long seed = 42;
    int trials = 100;
    ci->add_option("--seed", seed, "base seed");
    ci->add_option("--trials", trials, "number of seeded fields");
    ci->callback([&]() { rc = cmd_check_inequalities(seed, trials); });

    auto* mm = app.add_subcommand("elliptic-mms",
                                  "manufactured-solution convergence table for the elliptic solver");
    int levels = 4;
    std::string mms_out;
    mm->add_option("--levels", levels, "number of grid halvings");
    mm->add_option("--out", mms_out, "write the CSV here instead of stdout");
    mm->callback([&]() { rc = cmd_elliptic_mms(levels, mms_out); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2; // usage problems are config errors
    } catch (const radgas::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return e.exit_code;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return rc;
}
