#include "cli/commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "cli/svg.hpp"

namespace royal::cli {

namespace {

constexpr double kMatchTol = 1e-6;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::InvalidData, "cannot read input file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Json read_input(const JobConfig& cfg) { return parse_json_text(read_file(cfg.input), cfg.input); }

void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::InvalidData, "cannot write output file '" + path + "'");
    out << text;
}

void write_json(const JobConfig& cfg, const Json& j) { write_text(cfg.output, j.dump(2) + "\n"); }

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double max_residual(const VerificationReport& r) {
    double m = 0.0;
    for (const auto& [k, v] : r.residuals) m = std::max(m, v);
    return m;
}

// Steps 1, 2 and 4: Pick matrix, base point and parametrization.
struct Setup {
    PickMatrix m;
    PdCheck pd;
    cplx tau;
    Parametrization param;
};

struct Failure {
    int step;
    std::string reason;
};

std::optional<Setup> prepare(const BlaschkeData& data, const Tolerance& tol, int tau_start, Json& out,
                             std::optional<Failure>& fail) {
    Setup s{build_pick_matrix(data, tol), {}, 0.0, {}};
    s.pd = check_positive_definite(s.m, tol);
    out["pick_matrix"] = to_json(s.m);
    out["min_eigenvalue"] = s.pd.min_eigenvalue;
    if (s.pd.kind != Definiteness::Definite) {
        fail = Failure{1, s.pd.kind == Definiteness::Indefinite
                              ? "Pick matrix is indefinite"
                              : "Pick matrix is singular (rank " + std::to_string(s.pd.rank) + ")"};
        return std::nullopt;
    }
    try {
        s.tau = choose_tau(s.m, data, tol, tau_start);
        s.param = build_parametrization(s.m, data, s.tau, tol);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::SingularPick) fail = Failure{1, e.what()};
        else if (e.kind() == ErrorKind::NoSuitableTau || e.kind() == ErrorKind::UnsuitableTau) fail = Failure{2, e.what()};
        else throw;
        return std::nullopt;
    }
    out["tau"] = to_json(s.tau);
    out["parametrization"] = to_json(s.param);
    return s;
}

int report_failure(const Failure& f, Json& out, const JobConfig& cfg, std::ostream& log) {
    out["status"] = "unsolvable";
    out["step"] = f.step;
    out["reason"] = f.reason;
    write_json(cfg, out);
    log << "not solvable: step " << f.step << ": " << f.reason << "\n";
    return kUnsolvable;
}

struct Row {
    S0P0Candidate cand;
    std::optional<GammaInnerFn> h;
    std::optional<VerificationReport> report;
    std::string error;
};

std::vector<Row> construct_rows(const Setup& s, const BlaschkeData& data, const std::vector<S0P0Candidate>& members,
                                const Tolerance& tol) {
    std::vector<Row> rows;
    rows.reserve(members.size());
    for (const auto& c : members) {
        Row r{c, std::nullopt, std::nullopt, {}};
        try {
            r.h = construct_h(s.param, c.s0, c.p0, tol);
            r.report = verify_royal_solution(*r.h, data, tol);
        } catch (const Error& e) {
            r.error = to_string(e.kind());
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

Json candidate_json(const S0P0Candidate& c) {
    return Json{{"omega", to_json(c.omega)}, {"t", c.t}, {"s0", to_json(c.s0)}, {"p0", to_json(c.p0)}};
}

std::vector<double> boundary_angles(const BlaschkeData& data) {
    std::vector<double> out;
    for (size_t j = 0; j < data.k(); ++j) {
        double a = std::arg(data.sigma()[j]);
        if (a < 0) a += 2.0 * std::numbers::pi;
        out.push_back(a);
    }
    return out;
}

void write_plot(const std::string& path, const std::vector<const GammaInnerFn*>& hs,
                const std::vector<std::string>& labels, const BlaschkeData& data) {
    constexpr int samples = 256;
    Panel ms{"|s(e^{i theta})|", "|s|", {}, boundary_angles(data)};
    Panel ap{"arg p(e^{i theta}) (unwrapped)", "arg p", {}, boundary_angles(data)};
    for (size_t k = 0; k < hs.size(); ++k) {
        Curve cs{labels[k], {}, {}}, cp{labels[k], {}, {}};
        double prev = 0.0, shift = 0.0;
        for (int i = 0; i <= samples; ++i) {
            const double th = 2.0 * std::numbers::pi * i / samples;
            const GammaPoint g = (*hs[k])(std::polar(1.0, th));
            double a = std::arg(g.p);
            if (i > 0) {
                while (a + shift - prev > std::numbers::pi) shift -= 2.0 * std::numbers::pi;
                while (a + shift - prev < -std::numbers::pi) shift += 2.0 * std::numbers::pi;
            }
            prev = a + shift;
            cs.x.push_back(th);
            cs.y.push_back(std::abs(g.s));
            cp.x.push_back(th);
            cp.y.push_back(prev);
        }
        ms.curves.push_back(std::move(cs));
        ap.curves.push_back(std::move(cp));
    }
    write_text(path, render_svg({ms, ap}, 0.0, 2.0 * std::numbers::pi));
}

}  // namespace

std::string plot_path(const std::string& output) {
    std::filesystem::path p(output);
    p.replace_extension(".svg");
    return p.string();
}

Tolerance tolerance_of(const JobConfig& cfg) {
    Tolerance t;
    if (cfg.tol) t.residual_tol = *cfg.tol;
    t.validate();
    return t;
}

void validate(const JobConfig& cfg) {
    if (cfg.omega_grid < kMinOmegaGrid || cfg.omega_grid > kMaxOmegaGrid)
        throw Error(ErrorKind::InvalidData, "--omega-grid must lie in [" + std::to_string(kMinOmegaGrid) + ", " +
                                                std::to_string(kMaxOmegaGrid) + "]");
    if (cfg.tol && !(*cfg.tol > 0.0 && std::isfinite(*cfg.tol)))
        throw Error(ErrorKind::InvalidData, "--tol must be a positive number");
    if (cfg.tau_start < 0) throw Error(ErrorKind::InvalidData, "tau start index must be nonnegative");
    const bool generated = cfg.command == Command::Roundtrip && !cfg.generator.empty();
    if (!generated && cfg.input.empty()) throw Error(ErrorKind::InvalidData, "--input is required");
    if (!cfg.generator.empty()) {
        if (cfg.generator != "h_nu") throw Error(ErrorKind::InvalidData, "unknown generator '" + cfg.generator + "'");
        if (cfg.nu < 0 || cfg.nu > 16) throw Error(ErrorKind::InvalidData, "--nu must lie in [0, 16]");
        if (!(cfg.r > 0.0 && cfg.r < 1.0)) throw Error(ErrorKind::InvalidData, "--r must lie in (0, 1)");
    }
    if (cfg.plot && cfg.output.empty()) throw Error(ErrorKind::InvalidData, "--plot needs --output");
}

int cmd_solve(const JobConfig& cfg, std::ostream& log) {
    const Tolerance tol = tolerance_of(cfg);
    const BlaschkeData data = data_from_json(read_input(cfg));
    Json out;
    out["data"] = to_json(data);
    std::optional<Failure> fail;
    const auto setup = prepare(data, tol, cfg.tau_start, out, fail);
    if (!setup) return report_failure(*fail, out, cfg, log);

    const S0P0Solution sol = solve_s0_p0(setup->param, data, tol);
    out["s0p0"] = to_json(sol);
    const auto members = sol.members(cfg.omega_grid);
    if (members.empty())
        return report_failure({3, "no admissible (s0, p0) pair satisfies the parametrization identity"}, out, cfg, log);

    const auto rows = construct_rows(*setup, data, members, tol);
    Json sols = Json::array();
    int verified = 0;
    for (const auto& r : rows) {
        Json j = candidate_json(r.cand);
        if (r.h) {
            j["h"] = to_json(*r.h);
            j["report"] = to_json(*r.report);
            if (r.report->pass) ++verified;
        } else {
            j["error"] = r.error;
        }
        sols.push_back(std::move(j));
    }
    out["solutions"] = std::move(sols);
    out["verified"] = verified;
    out["status"] = verified > 0 ? "solved" : "verification_failed";
    write_json(cfg, out);
    log << verified << " of " << rows.size() << " constructed solutions verified\n";
    return verified > 0 ? kSuccess : kVerificationFailed;
}

int cmd_verify(const JobConfig& cfg, std::ostream& log) {
    const Tolerance tol = tolerance_of(cfg);
    const Json in = read_input(cfg);
    std::optional<BlaschkeData> data;
    std::optional<GammaInnerFn> h;
    if (in.is_object() && in.contains("h")) {
        h = gamma_from_json(in["h"], "h");
        if (in.contains("data") && !in["data"].is_null()) data = data_from_json(in["data"]);
    } else {
        h = gamma_from_json(in);
    }
    const VerificationReport rep = verify_royal_solution(*h, data, tol);
    Json out;
    out["h"] = to_json(*h);
    if (data) out["data"] = to_json(*data);
    out["report"] = to_json(rep);
    write_json(cfg, out);
    for (const auto& f : rep.flags) log << "flag: " << f << "\n";
    log << (rep.pass ? "verification passed" : "verification failed") << "\n";
    return rep.pass ? kSuccess : kVerificationFailed;
}

int cmd_sweep(const JobConfig& cfg, std::ostream& log) {
    const Tolerance tol = tolerance_of(cfg);
    const BlaschkeData data = data_from_json(read_input(cfg));
    Json meta;
    std::optional<Failure> fail;
    const auto setup = prepare(data, tol, cfg.tau_start, meta, fail);
    if (!setup) {
        log << "not solvable: step " << fail->step << ": " << fail->reason << "\n";
        return kUnsolvable;
    }
    const S0P0Solution sol = solve_s0_p0(setup->param, data, tol);
    if (sol.kind != S0P0Kind::Family) {
        log << "nothing to sweep: (s0, p0) solution is " << to_string(sol.kind) << "\n";
        return kUnsolvable;
    }
    const auto rows = construct_rows(*setup, data, sol.members(cfg.omega_grid), tol);

    const int width = static_cast<int>(data.n()) + 1;
    std::ostringstream csv;
    csv << "index,omega_re,omega_im,t,s0_re,s0_im,p0_re,p0_im";
    for (const char* name : {"s_num", "p_num", "den"})
        for (int j = 0; j < width; ++j) csv << "," << name << "_" << j << "_re," << name << "_" << j << "_im";
    csv << ",max_residual\n";

    std::vector<const GammaInnerFn*> plotted;
    std::vector<std::string> labels;
    int accepted = 0;
    for (size_t i = 0; i < rows.size(); ++i) {
        const Row& r = rows[i];
        if (!r.h) continue;
        ++accepted;
        const auto& c = r.cand;
        csv << i << "," << num(c.omega.real()) << "," << num(c.omega.imag()) << "," << num(c.t) << ","
            << num(c.s0.real()) << "," << num(c.s0.imag()) << "," << num(c.p0.real()) << "," << num(c.p0.imag());
        for (const Poly* q : {&r.h->s_num(), &r.h->p_num(), &r.h->den()})
            for (int j = 0; j < width; ++j) csv << "," << num(q->coeff(j).real()) << "," << num(q->coeff(j).imag());
        csv << "," << num(max_residual(*r.report)) << "\n";
    }
    write_text(cfg.output, csv.str());

    if (cfg.plot) {
        constexpr size_t kMaxCurves = 12;
        std::vector<const Row*> ok;
        for (const auto& r : rows)
            if (r.h) ok.push_back(&r);
        const size_t stride = std::max<size_t>(1, (ok.size() + kMaxCurves - 1) / kMaxCurves);
        for (size_t i = 0; i < ok.size(); i += stride) {
            plotted.push_back(&*ok[i]->h);
            labels.push_back("omega arg " + num(std::arg(ok[i]->cand.omega)));
        }
        write_plot(plot_path(cfg.output), plotted, labels, data);
    }
    log << accepted << " of " << cfg.omega_grid << " omega values accepted\n";
    return accepted > 0 ? kSuccess : kUnsolvable;
}

int cmd_blaschke(const JobConfig& cfg, std::ostream& log) {
    const Tolerance tol = tolerance_of(cfg);
    const BlaschkeData data = data_from_json(read_input(cfg));
    Json out;
    out["data"] = to_json(data);
    std::optional<Failure> fail;
    const auto setup = prepare(data, tol, cfg.tau_start, out, fail);
    if (!setup) return report_failure(*fail, out, cfg, log);

    const ParametrizationCheck chk = check_parametrization(setup->param, tol);
    out["parametrization_check"] = Json{{"normalization", chk.normalization}, {"max_degree", chk.max_degree},
                                        {"common_root", chk.common_root}, {"cd_excess", chk.cd_excess},
                                        {"ok", chk.ok}};
    bool all = chk.ok;
    Json sols = Json::array();
    const auto grid = circle_grid(cfg.omega_grid);
    for (const auto& zeta : grid) {
        if (setup->param.exceptional.contains(zeta, kExceptionalBand)) continue;
        Json j{{"zeta", to_json(zeta)}};
        try {
            const RationalFn phi = solve_blaschke(setup->param, zeta, tol);
            double interp = std::abs(phi(setup->tau) - zeta), phasar = 0.0, inner = 0.0;
            for (size_t i = 0; i < data.n(); ++i) {
                interp = std::max(interp, std::abs(phi(data.sigma()[i]) - data.eta()[i]));
                if (i < data.k())
                    phasar = std::max(phasar,
                                      std::abs(phasar_derivative(phi, data.sigma()[i], tol).value - data.rho()[i]));
            }
            for (const auto& z : circle_grid(256)) inner = std::max(inner, std::abs(std::abs(phi(z)) - 1.0));
            const BlaschkeProduct bp = to_blaschke_product(phi, tol);
            Json zeros = Json::array();
            for (const auto& a : bp.zeros) zeros.push_back(to_json(a));
            const bool pass = interp <= tol.residual_tol && phasar <= tol.residual_tol && inner <= tol.residual_tol &&
                              phi.degree() == static_cast<int>(data.n());
            all = all && pass;
            j["phi"] = to_json(phi);
            j["blaschke"] = Json{{"constant", to_json(bp.constant)}, {"zeros", std::move(zeros)}};
            j["residuals"] = Json{{"interpolation", interp}, {"phasar", phasar}, {"inner", inner}};
            j["pass"] = pass;
        } catch (const Error& e) {
            all = false;
            j["error"] = to_string(e.kind());
        }
        sols.push_back(std::move(j));
    }
    out["solutions"] = std::move(sols);
    out["status"] = all ? "solved" : "verification_failed";
    write_json(cfg, out);
    log << (all ? "all Blaschke solutions verified" : "some Blaschke solutions failed verification") << "\n";
    return all ? kSuccess : kVerificationFailed;
}

int cmd_roundtrip(const JobConfig& cfg, std::ostream& log) {
    const Tolerance tol = tolerance_of(cfg);
    const GammaInnerFn source =
        cfg.generator.empty() ? gamma_from_json(read_input(cfg)) : generate_h_nu(cfg.nu, cfg.r);
    const GammaInnerFn h = reduce_jointly(source, tol);

    Json out;
    out["h"] = to_json(h);
    const BlaschkeData data = extract_royal_data(h, tol);
    out["data"] = to_json(data);

    std::optional<Failure> fail;
    const auto setup = prepare(data, tol, cfg.tau_start, out, fail);
    if (!setup) return report_failure(*fail, out, cfg, log);
    const S0P0Solution sol = solve_s0_p0(setup->param, data, tol);
    out["s0p0"] = to_json(sol);

    std::vector<S0P0Candidate> members = sol.members(cfg.omega_grid);
    if (sol.kind == S0P0Kind::Family) {
        // The member reproducing h has p0 = p(tau); seed it alongside the grid.
        const cplx seed = std::sqrt(h(setup->tau).p);
        for (const cplx w : {seed, -seed})
            if (auto c = sol.at(w)) members.push_back(*c);
    }

    double best = std::numeric_limits<double>::infinity();
    std::optional<Row> match;
    for (auto& r : construct_rows(*setup, data, members, tol)) {
        if (!r.h) continue;
        const double dist = coeff_distance(h, *r.h);
        if (dist < best) {
            best = dist;
            match = std::move(r);
        }
    }
    out["best_distance"] = std::isfinite(best) ? Json(best) : Json(nullptr);
    const bool ok = match && best <= kMatchTol;
    if (match) {
        Json m = candidate_json(match->cand);
        m["h"] = to_json(*match->h);
        m["report"] = to_json(*match->report);
        out["closest"] = std::move(m);
    }
    out["status"] = ok ? "match" : "no_match";
    write_json(cfg, out);
    log << (ok ? "original function recovered" : "original function not found in the solution family")
        << " (distance " << best << ")\n";
    return ok ? kSuccess : kVerificationFailed;
}

int run(const JobConfig& cfg, std::ostream& log) {
    try {
        validate(cfg);
        switch (cfg.command) {
            case Command::Solve: return cmd_solve(cfg, log);
            case Command::Verify: return cmd_verify(cfg, log);
            case Command::Sweep: return cmd_sweep(cfg, log);
            case Command::Blaschke: return cmd_blaschke(cfg, log);
            case Command::Roundtrip: return cmd_roundtrip(cfg, log);
        }
    } catch (const Error& e) {
        switch (e.kind()) {
            case ErrorKind::InvalidData:
            case ErrorKind::DegenerateData:
                log << "input error: " << e.what() << "\n";
                return kInputError;
            case ErrorKind::MultiplicityAboveOne:
            case ErrorKind::RoyalRange:
            case ErrorKind::SingularPick:
            case ErrorKind::NoSuitableTau:
            case ErrorKind::UnsuitableTau:
                log << "inapplicable: " << e.what() << "\n";
                return kUnsolvable;
            default:
                log << "failure: " << e.what() << "\n";
                return kVerificationFailed;
        }
    }
    return kInputError;
}

}  // namespace royal::cli
