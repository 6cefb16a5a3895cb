#include "aptmech/experiments.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>

#include "aptmech/csv.hpp"
#include "aptmech/dynamics.hpp"
#include "aptmech/optomech.hpp"
#include "aptmech/resonator.hpp"
#include "aptmech/sensing.hpp"
#include "aptmech/sweep.hpp"

namespace aptmech {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

// Flat-override reader: typed access with Hz→rad/s conversion for the
// frequency-like keys, plus unknown-key rejection once resolution is done.
class ParamReader {
  public:
    explicit ParamReader(const json& values) : values_(values) {
        if (!values_.is_object())
            throw ConfigError("overrides must form a flat JSON object");
    }

    bool has(const std::string& key) const { return values_.contains(key); }

    double number(const std::string& key, double fallback) {
        if (!has(key)) return fallback;
        used_.insert(key);
        const json& v = values_.at(key);
        if (!v.is_number())
            throw ConfigError("key '" + key + "' must be a number");
        const double x = v.get<double>();
        if (!std::isfinite(x))
            throw ConfigError("key '" + key + "' must be finite");
        return x;
    }

    // Ordinary frequency in Hz; converted to angular units.  The fallback is
    // already angular.
    double freq(const std::string& key, double fallback) {
        if (!has(key)) return fallback;
        return kTwoPi * number(key, 0.0);
    }

    std::size_t count(const std::string& key, std::size_t fallback) {
        const double x = number(key, static_cast<double>(fallback));
        if (x < 1.0 || x != std::floor(x) || x > 1e8)
            throw ConfigError("key '" + key + "' must be a small positive integer");
        return static_cast<std::size_t>(x);
    }

    std::string str(const std::string& key, const std::string& fallback) {
        if (!has(key)) return fallback;
        used_.insert(key);
        const json& v = values_.at(key);
        if (!v.is_string())
            throw ConfigError("key '" + key + "' must be a string");
        return v.get<std::string>();
    }

    void reject_unknown() const {
        std::string unknown;
        for (auto it = values_.begin(); it != values_.end(); ++it)
            if (!used_.count(it.key()))
                unknown += (unknown.empty() ? "" : ", ") + it.key();
        if (!unknown.empty())
            throw ConfigError("unknown configuration key(s): " + unknown);
    }

  private:
    const json& values_;
    std::set<std::string> used_;
};

struct Preset {
    double omega_m;
    double q_m;
    double gamma_c;
    double g;
    double mass;
};

Preset preset_values(const std::string& name) {
    // Desk scale keeps the two exceptional points visually separated from the
    // critical drive (Q_m = 100); the laboratory scale uses the published
    // photonic-crystal cavity numbers.
    if (name == "desk") return {1.0, 100.0, 50.0, -0.01, 3.6e-15};
    if (name == "paper")
        return {kTwoPi * 8.7e6, 1e4, kTwoPi * 5e9, -kTwoPi * 245.0, 3.6e-15};
    throw ConfigError("unknown preset '" + name + "' (expected desk or paper)");
}

// Resolves the full optomechanical parameter set minus the drive strength,
// which each experiment handles itself (sweep grid or single value).
OptomechParams resolve_physics(ParamReader& r, const std::string& default_preset,
                               double default_q_m = 0.0) {
    const Preset base = preset_values(r.str("preset", default_preset));
    OptomechParams p;
    p.resonator.omega_m = r.freq("omega_m", base.omega_m);
    if (r.has("gamma_m") && r.has("Q_m"))
        throw ConfigError("give either gamma_m or Q_m, not both");
    if (r.has("gamma_m")) {
        p.resonator.gamma_m = r.freq("gamma_m", 0.0);
    } else {
        const double q = r.number("Q_m", default_q_m > 0.0 ? default_q_m : base.q_m);
        if (!(q > 0.0)) throw ConfigError("Q_m must be > 0");
        p.resonator.gamma_m = p.resonator.omega_m / q;
    }
    p.resonator.mass = r.number("mass", base.mass);
    p.gamma_c = r.freq("gamma_c", base.gamma_c);
    p.g = r.freq("g", base.g);
    return p;
}

json physics_json(const OptomechParams& p) {
    return json{{"omega_m_rad_per_s", p.resonator.omega_m},
                {"gamma_m_rad_per_s", p.resonator.gamma_m},
                {"Q_m", p.resonator.quality_factor()},
                {"mass_kg", p.resonator.mass},
                {"gamma_c_rad_per_s", p.gamma_c},
                {"g_rad_per_s", p.g},
                {"Omega_rad_per_s", p.Omega}};
}

std::string join(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

void write_json_file(const std::string& path, const json& j,
                     RunResult& result) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << j.dump(2) << '\n';
    out.flush();
    if (!out) throw IoError("write failed: " + path);
    result.files.push_back(path);
}

void prepare_out_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir + ": " +
                          ec.message());
}

void add_adiabatic_warning(const OptomechParams& p, RunResult& result) {
    if (adiabatic_regime_warning(p))
        result.warnings.push_back(
            "gamma_c < 10*omega_m: outside the adiabatic regime the "
            "closed-form steady-state results are approximate");
}

json complex_json(const cplx& z) {
    return json{{"re", z.real()}, {"im", z.imag()}};
}

// ---------------------------------------------------------------------------
// fig1: bare-resonator trajectories at the three damping ratios plus the
// eigenvalue sweep over γ_m/ω_m.
// ---------------------------------------------------------------------------
RunResult run_fig1(const ExperimentConfig& cfg) {
    ParamReader r(cfg.values);
    const std::string preset = r.str("preset", "desk");
    const double omega_m = r.freq("omega_m", preset_values(preset).omega_m);
    const double q0 = r.number("Q0", 1.0);
    const double p0 = r.number("P0", 0.0);
    const double step = r.number("step", 1e-3 / omega_m);
    const double t_end = r.number("t_end", 20.0 / omega_m);
    const std::size_t stride = r.count("record_stride", 10);
    Grid grid;
    grid.start = r.number("sweep_start", 0.0);
    grid.stop = r.number("sweep_stop", 4.0);
    grid.count = r.count("sweep_count", 401);
    r.reject_unknown();

    prepare_out_dir(cfg.out_dir);
    RunResult result;

    const struct {
        double ratio;
        const char* tag;
    } runs[] = {{0.5, "under"}, {2.0, "critical"}, {4.0, "over"}};
    for (const auto& run : runs) {
        IntegratorConfig icfg{step, t_end, stride};
        const Trajectory traj = simulate_resonator(
            {omega_m, run.ratio * omega_m, 1.0}, q0, p0, icfg);
        const std::string path =
            join(cfg.out_dir, std::string("fig1_traj_") + run.tag + ".csv");
        CsvWriter csv(path, {"t", "Q", "P"});
        for (const auto& s : traj)
            csv.field(s.t).field(s.Q).field(s.P), csv.end_row();
        csv.close();
        result.files.push_back(path);
    }

    const auto rows =
        eigen_ratio_sweep(omega_m, grid.points(), Execution::Parallel);
    const std::string sweep_path = join(cfg.out_dir, "fig1_eigen_sweep.csv");
    CsvWriter csv(sweep_path,
                  {"ratio", "re_lambda_plus", "re_lambda_minus",
                   "im_lambda_plus", "im_lambda_minus", "phase"});
    for (const auto& row : rows) {
        csv.field(row.ratio)
            .field(row.sol.lambda_plus.real())
            .field(row.sol.lambda_minus.real())
            .field(row.sol.lambda_plus.imag())
            .field(row.sol.lambda_minus.imag())
            .field(to_string(row.sol.phase));
        csv.end_row();
    }
    csv.close();
    result.files.push_back(sweep_path);

    json sidecar{{"experiment", "fig1"},
                 {"preset", preset},
                 {"omega_m_rad_per_s", omega_m},
                 {"Q0", q0},
                 {"P0", p0},
                 {"step", step},
                 {"t_end", t_end},
                 {"record_stride", stride},
                 {"trajectory_ratios", {0.5, 2.0, 4.0}},
                 {"sweep", {{"start", grid.start},
                            {"stop", grid.stop},
                            {"count", grid.count},
                            {"scale", "linear"}}}};
    write_json_file(join(cfg.out_dir, "fig1_config.json"), sidecar, result);
    return result;
}

// ---------------------------------------------------------------------------
// fig2: steady-state branches and eigenvalues versus drive strength.
// ---------------------------------------------------------------------------
RunResult run_fig2(const ExperimentConfig& cfg) {
    ParamReader r(cfg.values);
    OptomechParams base = resolve_physics(r, "desk");
    Grid grid;  // in units of Ω/Ω_c
    grid.start = r.number("sweep_start", 0.0);
    grid.stop = r.number("sweep_stop", 2.0);
    grid.count = r.count("sweep_count", 401);
    r.reject_unknown();
    if (base.g >= 0.0)
        throw ConfigError("fig2 requires softening coupling (g < 0)");

    prepare_out_dir(cfg.out_dir);
    RunResult result;
    add_adiabatic_warning(base, result);

    const double omega_c = critical_drive(base);
    std::vector<double> omegas = grid.points();
    for (double& v : omegas) v *= omega_c;
    const auto rows = drive_sweep(base, omegas, Execution::Parallel);

    const std::string ss_path = join(cfg.out_dir, "fig2_steady_states.csv");
    CsvWriter ss(ss_path, {"Omega", "Omega_over_Omega_c", "branch", "Q_s",
                           "P_s", "alpha_re", "alpha_im", "stable", "regime"});
    const char* branch_names[] = {"origin", "ssb_plus", "ssb_minus"};
    for (const auto& row : rows) {
        for (std::size_t b = 0; b < row.steady.branches.size(); ++b) {
            const SteadyBranch& br = row.steady.branches[b];
            ss.field(row.Omega)
                .field(row.Omega / omega_c)
                .field(branch_names[b])
                .field(br.Q_s)
                .field(br.P_s)
                .field(br.alpha_s.real())
                .field(br.alpha_s.imag())
                .field(br.stable ? 1 : 0)
                .field(to_string(row.steady.regime));
            ss.end_row();
        }
    }
    ss.close();
    result.files.push_back(ss_path);

    const std::string ev_path = join(cfg.out_dir, "fig2_eigenvalues.csv");
    CsvWriter ev(ev_path,
                 {"Omega", "Omega_over_Omega_c", "branch", "re_lambda_plus",
                  "re_lambda_minus", "im_lambda_plus", "im_lambda_minus",
                  "omega_eff_sq", "dashed"});
    for (const auto& row : rows) {
        const DriveEigenvalues& de = row.eigen;
        ev.field(row.Omega)
            .field(row.Omega / omega_c)
            .field("stable")
            .field(de.lambda_plus.real())
            .field(de.lambda_minus.real())
            .field(de.lambda_plus.imag())
            .field(de.lambda_minus.imag())
            .field(de.omega_eff_sq)
            .field(0);
        ev.end_row();
        if (de.has_unstable_branch) {
            ev.field(row.Omega)
                .field(row.Omega / omega_c)
                .field("origin")
                .field(de.unstable_lambda_plus.real())
                .field(de.unstable_lambda_minus.real())
                .field(de.unstable_lambda_plus.imag())
                .field(de.unstable_lambda_minus.imag())
                .field(de.omega_eff_sq_origin)
                .field(1);
            ev.end_row();
        }
    }
    ev.close();
    result.files.push_back(ev_path);

    json sidecar{{"experiment", "fig2"},
                 {"physics", physics_json(base)},
                 {"Omega_c_rad_per_s", omega_c},
                 {"sweep_Omega_over_Omega_c", {{"start", grid.start},
                                               {"stop", grid.stop},
                                               {"count", grid.count},
                                               {"scale", "linear"}}}};
    write_json_file(join(cfg.out_dir, "fig2_config.json"), sidecar, result);
    return result;
}

// ---------------------------------------------------------------------------
// fig3: splitting sensitivity versus drive, and splitting versus perturbation
// at the two exceptional points.
// ---------------------------------------------------------------------------
RunResult run_fig3(const ExperimentConfig& cfg) {
    ParamReader r(cfg.values);
    OptomechParams base = resolve_physics(r, "desk");
    Grid grid;  // Ω/Ω_c
    grid.start = r.number("sweep_start", 0.02);
    grid.stop = r.number("sweep_stop", 2.0);
    grid.count = r.count("sweep_count", 4001);
    const double fd_rel_step = r.number("fd_rel_step", 1e-6);
    const double delta_half = r.number("delta_half_width", 2e-3);  // δ/γ_m
    const std::size_t delta_count = r.count("delta_count", 201);
    r.reject_unknown();
    if (base.g >= 0.0)
        throw ConfigError("fig3 requires softening coupling (g < 0)");

    prepare_out_dir(cfg.out_dir);
    RunResult result;
    add_adiabatic_warning(base, result);

    const EpResult eps = locate_eps(base);
    std::vector<double> omegas = grid.points();
    for (double& v : omegas) v *= eps.omega_c;
    const auto sens = sensitivity_sweep(base, omegas, fd_rel_step,
                                        1e-9 * eps.omega_c, Execution::Parallel);

    const std::string sens_path = join(cfg.out_dir, "fig3_sensitivity.csv");
    CsvWriter sc(sens_path,
                 {"Omega", "Omega_over_Omega_c", "regime",
                  "sens_plus_analytic", "sens_plus_fd", "in_ep_band"});
    for (const auto& row : sens) {
        sc.field(row.Omega)
            .field(row.Omega / eps.omega_c)
            .field(row.analytic.regime)
            .field(row.analytic.plus)
            .field(row.fd_plus)
            .field(row.in_ep_band ? 1 : 0);
        sc.end_row();
    }
    sc.close();
    result.files.push_back(sens_path);

    Grid dgrid;  // δ/γ_m
    dgrid.start = -delta_half;
    dgrid.stop = delta_half;
    dgrid.count = delta_count;
    std::vector<double> deltas = dgrid.points();
    for (double& v : deltas) v *= base.resonator.gamma_m;

    const std::string split_path = join(cfg.out_dir, "fig3_splitting.csv");
    CsvWriter sp(split_path,
                 {"ep", "delta", "delta_over_gamma_m", "omega_plus_exact",
                  "omega_minus_exact", "decay_splitting_exact",
                  "omega_plus_near", "omega_minus_near", "wrong_sign",
                  "validity_warning"});
    for (EpIndex which : {EpIndex::Ep1, EpIndex::Ep2}) {
        const auto rows =
            splitting_delta_sweep(base, which, deltas, Execution::Parallel);
        for (const auto& row : rows) {
            sp.field(which == EpIndex::Ep1 ? 1 : 2)
                .field(row.delta)
                .field(row.delta / base.resonator.gamma_m)
                .field(row.exact.omega_plus)
                .field(row.exact.omega_minus)
                .field(row.exact.decay_splitting)
                .field(row.near.omega_plus)
                .field(row.near.omega_minus)
                .field(row.near.wrong_sign_delta ? 1 : 0)
                .field(row.near.validity_warning ? 1 : 0);
            sp.end_row();
        }
    }
    sp.close();
    result.files.push_back(split_path);

    json sidecar{{"experiment", "fig3"},
                 {"physics", physics_json(base)},
                 {"Omega_c_rad_per_s", eps.omega_c},
                 {"Omega_EP1_rad_per_s", eps.omega_ep1},
                 {"Omega_EP2_rad_per_s", eps.omega_ep2},
                 {"fd_rel_step", fd_rel_step},
                 {"sweep_Omega_over_Omega_c", {{"start", grid.start},
                                               {"stop", grid.stop},
                                               {"count", grid.count},
                                               {"scale", "linear"}}},
                 {"delta_over_gamma_m", {{"half_width", delta_half},
                                         {"count", delta_count}}}};
    write_json_file(join(cfg.out_dir, "fig3_config.json"), sidecar, result);
    return result;
}

// ---------------------------------------------------------------------------
// mass_sense: minimum resolvable particle mass and the splitting for a given
// particle, as a JSON report.
// ---------------------------------------------------------------------------
RunResult run_mass_sense(const ExperimentConfig& cfg) {
    ParamReader r(cfg.values);
    OptomechParams p = resolve_physics(r, "paper", 7e5);
    const double m_p = r.number("m_p", 0.0);
    r.reject_unknown();
    if (p.g >= 0.0)
        throw ConfigError("mass_sense requires softening coupling (g < 0)");
    if (m_p < 0.0) throw ConfigError("m_p must be >= 0");

    prepare_out_dir(cfg.out_dir);
    RunResult result;
    add_adiabatic_warning(p, result);

    const EpResult eps = locate_eps(p);
    p.Omega = eps.omega_ep2;
    const double min_mass = min_resolvable_mass(p);
    const MassPerturbation pert = mass_perturbation(p, m_p);
    const SplittingResult split = mass_splitting(p, m_p);

    json report{{"experiment", "mass_sense"},
                {"physics", physics_json(p)},
                {"Omega_c_rad_per_s", eps.omega_c},
                {"Omega_EP2_rad_per_s", eps.omega_ep2},
                {"min_resolvable_mass_kg", min_mass},
                {"min_resolvable_mass_g", min_mass * 1e3},
                {"m_p_kg", m_p},
                {"delta_rad_per_s", pert.delta},
                {"splitting",
                 {{"omega_plus_rad_per_s", split.omega_plus},
                  {"omega_minus_rad_per_s", split.omega_minus},
                  {"omega_plus_over_gamma_m",
                   split.omega_plus / p.resonator.gamma_m},
                  {"resolvable", split.resolvable}}}};
    write_json_file(join(cfg.out_dir, "mass_sense_report.json"), report,
                    result);
    return result;
}

// ---------------------------------------------------------------------------
// eigen: single-point eigenstructure report.
// ---------------------------------------------------------------------------
RunResult run_eigen(const ExperimentConfig& cfg) {
    ParamReader r(cfg.values);
    const std::string preset = r.str("preset", "desk");
    const Preset base = preset_values(preset);
    ResonatorParams p;
    p.omega_m = r.freq("omega_m", base.omega_m);
    if (r.has("ratio") && (r.has("gamma_m") || r.has("Q_m")))
        throw ConfigError("give ratio or gamma_m/Q_m, not both");
    if (r.has("ratio")) {
        p.gamma_m = r.number("ratio", 0.0) * p.omega_m;
    } else if (r.has("gamma_m")) {
        p.gamma_m = r.freq("gamma_m", 0.0);
    } else {
        const double q = r.number("Q_m", base.q_m);
        if (!(q > 0.0)) throw ConfigError("Q_m must be > 0");
        p.gamma_m = p.omega_m / q;
    }
    p.mass = r.number("mass", base.mass);
    r.reject_unknown();
    if (p.gamma_m < 0.0) throw ConfigError("damping must be >= 0");

    prepare_out_dir(cfg.out_dir);
    RunResult result;

    const EffectiveHamiltonian h = build_hamiltonian(p);
    const EigenSolution sol = eigen_analytic(p);
    const EigenSolution num = eigen_numeric(h);
    const PtEigenstateResult pt = pt_eigenstate_test(sol);

    json report{{"experiment", "eigen"},
                {"omega_m_rad_per_s", p.omega_m},
                {"gamma_m_rad_per_s", p.gamma_m},
                {"ratio_gamma_over_omega", p.gamma_m / p.omega_m},
                {"phase", to_string(sol.phase)},
                {"degenerate", sol.degenerate},
                {"anti_pt_residual", check_anti_pt(h)},
                {"lambda_plus", complex_json(sol.lambda_plus)},
                {"lambda_minus", complex_json(sol.lambda_minus)},
                {"lambda_plus_numeric", complex_json(num.lambda_plus)},
                {"lambda_minus_numeric", complex_json(num.lambda_minus)},
                {"ratio_plus", complex_json(sol.ratio_plus)},
                {"ratio_minus", complex_json(sol.ratio_minus)},
                {"pt_eigenstate",
                 {{"plus", pt.plus}, {"minus", pt.minus}}}};
    write_json_file(join(cfg.out_dir, "eigen.json"), report, result);
    return result;
}

// ---------------------------------------------------------------------------
// simulate: one trajectory, bare or optomechanical.
// ---------------------------------------------------------------------------
RunResult run_simulate(const ExperimentConfig& cfg) {
    ParamReader r(cfg.values);
    const std::string mode = r.str("mode", "bare");
    if (mode != "bare" && mode != "optomech")
        throw ConfigError("mode must be bare or optomech");

    prepare_out_dir(cfg.out_dir);
    RunResult result;
    const std::string path = join(cfg.out_dir, "trajectory.csv");
    json sidecar{{"experiment", "simulate"}, {"mode", mode}};

    if (mode == "bare") {
        const std::string preset = r.str("preset", "desk");
        const Preset base = preset_values(preset);
        ResonatorParams p;
        p.omega_m = r.freq("omega_m", base.omega_m);
        if (r.has("ratio") && r.has("gamma_m"))
            throw ConfigError("give ratio or gamma_m, not both");
        if (r.has("ratio")) {
            p.gamma_m = r.number("ratio", 0.0) * p.omega_m;
        } else {
            p.gamma_m = r.freq("gamma_m", p.omega_m / base.q_m);
        }
        const double q0 = r.number("Q0", 1.0);
        const double p0 = r.number("P0", 0.0);
        IntegratorConfig icfg;
        icfg.step = r.number(
            "step", 0.02 / std::max(p.omega_m, std::max(p.gamma_m, 1e-300)));
        icfg.t_end = r.number("t_end", 20.0 / p.omega_m);
        icfg.record_stride = r.count("record_stride", 1);
        r.reject_unknown();

        const Trajectory traj = simulate_resonator(p, q0, p0, icfg);
        CsvWriter csv(path, {"t", "Q", "P"});
        for (const auto& s : traj)
            csv.field(s.t).field(s.Q).field(s.P), csv.end_row();
        csv.close();
        result.files.push_back(path);
        sidecar["omega_m_rad_per_s"] = p.omega_m;
        sidecar["gamma_m_rad_per_s"] = p.gamma_m;
        sidecar["Q0"] = q0;
        sidecar["P0"] = p0;
        sidecar["step"] = icfg.step;
        sidecar["t_end"] = icfg.t_end;
        sidecar["record_stride"] = icfg.record_stride;
    } else {
        OptomechParams p = resolve_physics(r, "desk");
        if (r.has("Omega") && r.has("Omega_over_Omega_c"))
            throw ConfigError("give Omega or Omega_over_Omega_c, not both");
        if (r.has("Omega_over_Omega_c")) {
            p.Omega = r.number("Omega_over_Omega_c", 0.0) * critical_drive(p);
        } else {
            p.Omega = r.freq("Omega", 0.0);
        }
        OptomechState s0;
        s0.Q = r.number("Q0", 0.1);
        s0.P = r.number("P0", 0.0);
        s0.alpha_re = r.number("alpha_re0", 0.0);
        s0.alpha_im = r.number("alpha_im0", 0.0);
        const double alpha_bound =
            std::max(std::hypot(s0.alpha_re, s0.alpha_im),
                     2.0 * p.Omega / p.gamma_c);
        const double max_rate =
            std::max({p.resonator.omega_m, p.resonator.gamma_m,
                      p.gamma_c / 2.0,
                      4.0 * std::abs(p.g) * alpha_bound * alpha_bound});
        IntegratorConfig icfg;
        icfg.step = r.number("step", 0.02 / max_rate);
        icfg.t_end = r.number("t_end", 100.0 / p.resonator.omega_m);
        icfg.record_stride = r.count("record_stride", 10);
        r.reject_unknown();

        add_adiabatic_warning(p, result);
        const Trajectory traj = simulate_optomech(p, s0, icfg);
        CsvWriter csv(path, {"t", "Q", "P", "alpha_re", "alpha_im"});
        for (const auto& s : traj) {
            csv.field(s.t).field(s.Q).field(s.P).field(s.alpha_re).field(
                s.alpha_im);
            csv.end_row();
        }
        csv.close();
        result.files.push_back(path);
        sidecar["physics"] = physics_json(p);
        sidecar["Q0"] = s0.Q;
        sidecar["P0"] = s0.P;
        sidecar["alpha_re0"] = s0.alpha_re;
        sidecar["alpha_im0"] = s0.alpha_im;
        sidecar["step"] = icfg.step;
        sidecar["t_end"] = icfg.t_end;
        sidecar["record_stride"] = icfg.record_stride;
    }
    write_json_file(join(cfg.out_dir, "simulate_config.json"), sidecar,
                    result);
    return result;
}

}  // namespace

ExperimentConfig load_config(const std::string& experiment,
                             const std::string& config_path,
                             const std::vector<std::string>& set_pairs,
                             const std::string& out_dir_flag) {
    ExperimentConfig cfg;
    cfg.experiment = experiment;

    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw ConfigError("cannot read config file: " + config_path);
        json file;
        try {
            in >> file;
        } catch (const json::exception& e) {
            throw ConfigError("config file " + config_path + ": " + e.what());
        }
        if (!file.is_object())
            throw ConfigError("config file must hold a JSON object");
        if (file.contains("experiment")) {
            const auto ex = file.at("experiment");
            if (!ex.is_string() || ex.get<std::string>() != experiment)
                throw ConfigError("config file experiment does not match '" +
                                  experiment + "'");
            file.erase("experiment");
        }
        if (file.contains("out_dir")) {
            const auto od = file.at("out_dir");
            if (!od.is_string())
                throw ConfigError("out_dir must be a string");
            cfg.out_dir = od.get<std::string>();
            file.erase("out_dir");
        }
        cfg.values = std::move(file);
    }

    for (const std::string& pair : set_pairs) {
        const auto eq = pair.find('=');
        if (eq == std::string::npos || eq == 0)
            throw ConfigError("--set expects key=value, got '" + pair + "'");
        const std::string key = pair.substr(0, eq);
        const std::string raw = pair.substr(eq + 1);
        char* end = nullptr;
        const double num = std::strtod(raw.c_str(), &end);
        if (end && *end == '\0' && !raw.empty())
            cfg.values[key] = num;
        else
            cfg.values[key] = raw;
    }

    if (!out_dir_flag.empty()) cfg.out_dir = out_dir_flag;
    return cfg;
}

RunResult run_experiment(const ExperimentConfig& cfg) {
    try {
        if (cfg.experiment == "fig1") return run_fig1(cfg);
        if (cfg.experiment == "fig2") return run_fig2(cfg);
        if (cfg.experiment == "fig3") return run_fig3(cfg);
        if (cfg.experiment == "mass_sense") return run_mass_sense(cfg);
        if (cfg.experiment == "eigen") return run_eigen(cfg);
        if (cfg.experiment == "simulate") return run_simulate(cfg);
    } catch (const std::invalid_argument& e) {
        // Parameter validation from the library layer counts as bad config.
        throw ConfigError(e.what());
    } catch (const std::domain_error& e) {
        throw ConfigError(e.what());
    }
    throw ConfigError("unknown experiment '" + cfg.experiment + "'");
}

}  // namespace aptmech
