#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "royalgamma/gamma.hpp"

namespace royal::testing {

/// Derivative of arg f(e^{i theta}) by central differences.
template <class F>
double fd_phasar(F&& f, cplx z, double step = 1e-6) {
    const double th = std::arg(z);
    const cplx fp = f(std::polar(1.0, th + step));
    const cplx fm = f(std::polar(1.0, th - step));
    return std::arg(fp / fm) / (2.0 * step);
}

inline double fd_phasar(const RationalFn& f, cplx z, double step = 1e-6) {
    return fd_phasar([&f](cplx w) { return f(w); }, z, step);
}

/// c prod (l - a_j) / (1 - conj(a_j) l) as (num, den).
inline RationalFn blaschke_rational(cplx c, const std::vector<cplx>& zeros) {
    return BlaschkeProduct{c, zeros}.to_rational();
}

/// h = (beta + conj(beta) p, p) for a Blaschke product p.
inline GammaInnerFn affine_in_p(cplx beta, const RationalFn& p) {
    const Poly s = beta * p.den() + std::conj(beta) * p.num();
    return {s, p.num(), p.den()};
}

/// Worst interpolation error |f(sigma_j) - eta_j| and worst boundary phasar
/// error |Af(sigma_j) - rho_j|, both analytic and by finite differences.
struct BlaschkeResiduals {
    double interpolation = 0.0;
    double phasar = 0.0;
    double phasar_fd = 0.0;
};

template <class F>
BlaschkeResiduals blaschke_residuals(F&& f, const RationalFn& rational, const BlaschkeData& d) {
    BlaschkeResiduals r;
    for (size_t j = 0; j < d.n(); ++j) r.interpolation = std::max(r.interpolation, std::abs(f(d.sigma()[j]) - d.eta()[j]));
    for (size_t j = 0; j < d.k(); ++j) {
        r.phasar = std::max(r.phasar, std::abs(phasar_derivative(rational, d.sigma()[j]).value - d.rho()[j]));
        r.phasar_fd = std::max(r.phasar_fd, std::abs(fd_phasar(f, d.sigma()[j]) - d.rho()[j]));
    }
    return r;
}

inline BlaschkeResiduals blaschke_residuals(const RationalFn& f, const BlaschkeData& d) {
    return blaschke_residuals([&f](cplx z) { return f(z); }, f, d);
}

/// max | |f| - 1 | over `points` circle points.
inline double inner_defect(const RationalFn& f, int points = 256) {
    double worst = 0.0;
    for (const cplx z : circle_grid(points)) worst = std::max(worst, std::abs(std::abs(f(z)) - 1.0));
    return worst;
}

struct Instance {
    std::string label;
    GammaInnerFn h;
    BlaschkeData data;
};

inline cplx random_in_disc(std::mt19937_64& rng, double radius) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return std::polar(radius * std::sqrt(u(rng)), 2.0 * std::numbers::pi * u(rng));
}

inline cplx random_on_circle(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
    return std::polar(1.0, u(rng));
}

inline double min_node_gap(const BlaschkeData& d) {
    double g = 2.0;
    for (size_t i = 0; i < d.n(); ++i)
        for (size_t j = i + 1; j < d.n(); ++j) g = std::min(g, std::abs(d.sigma()[i] - d.sigma()[j]));
    return g;
}

/// Solvable data sets with n <= 4, obtained by extracting royal data from
/// h_nu and from (beta + conj(beta) p, p) with |beta| < 1 and |beta| = 1.
/// Candidates whose nodes crowd together (gap < 0.05) or whose Pick matrix
/// has smallest eigenvalue below 1e-6 are redrawn.
inline std::vector<Instance> random_instances(int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Instance> out;
    for (int attempt = 0; static_cast<int>(out.size()) < count && attempt < 50 * count; ++attempt) {
        const int kind = attempt % 3;
        std::string label;
        std::optional<GammaInnerFn> h;
        if (kind == 0) {
            const int nu = static_cast<int>(u(rng) * 2.0);
            const double r = 0.2 + 0.6 * u(rng);
            h = generate_h_nu(nu, r);
            label = "h_nu(" + std::to_string(nu) + "," + std::to_string(r) + ")";
        } else {
            const int n = 1 + static_cast<int>(u(rng) * (kind == 1 ? 4 : 3));
            std::vector<cplx> zeros;
            for (int j = 0; j < n; ++j) zeros.push_back(random_in_disc(rng, 0.7));
            const cplx beta = kind == 1 ? random_in_disc(rng, 0.9) : random_on_circle(rng);
            h = affine_in_p(beta, blaschke_rational(random_on_circle(rng), zeros));
            label = std::string(kind == 1 ? "interior" : "boundary") + " affine n=" + std::to_string(n);
        }
        try {
            BlaschkeData d = extract_royal_data(*h);
            if (d.n() > 4 || min_node_gap(d) < 0.05) continue;
            const PdCheck pd = check_positive_definite(build_pick_matrix(d));
            if (pd.kind != Definiteness::Definite || pd.min_eigenvalue < 1e-6) continue;
            out.push_back({label, *h, std::move(d)});
        } catch (const Error&) {
            continue;
        }
    }
    return out;
}

/// Classification of (s, p) from the roots z, w of x^2 - s x + p. A root
/// counts as on the circle when | |z| - 1 | <= 1e-12. `ambiguous` marks
/// samples inside the 1e-8 band around a decision boundary: a root modulus
/// in (1e-12, 1e-8] from 1, or a Gamma membership margin (1 - |p|^2 -
/// |s - conj(s) p|, 2 - |s|) within 1e-8 of zero for a point not built
/// with roots exactly on the circle.
struct OracleVerdict {
    GammaClass cls;
    bool ambiguous;
};

inline OracleVerdict oracle_classify(GammaPoint pt) {
    const cplx disc = std::sqrt(pt.s * pt.s - 4.0 * pt.p);
    const double mz = std::abs((pt.s + disc) / 2.0), mw = std::abs((pt.s - disc) / 2.0);
    constexpr double on = 1e-12, band = 1e-8;
    bool ambiguous = false;
    int on_count = 0;
    for (const double m : {mz, mw}) {
        const double dev = std::abs(m - 1.0);
        if (dev <= on) ++on_count;
        else if (dev <= band) ambiguous = true;
    }
    const double mx = std::max(mz, mw);
    GammaClass cls;
    if (mx > 1.0 + on) cls = GammaClass::Outside;
    else if (on_count == 2) cls = GammaClass::DistinguishedBGamma;
    else if (on_count == 1) cls = GammaClass::BoundaryGamma;
    else cls = GammaClass::InteriorG;
    if (on_count == 0) {
        const double gap = (1.0 - std::norm(pt.p)) - std::abs(pt.s - std::conj(pt.s) * pt.p);
        if (std::abs(gap) <= band || std::abs(std::abs(pt.s) - 2.0) <= band) ambiguous = true;
    }
    return {cls, ambiguous};
}

/// Mixture of symmetrized pairs (z + w, z w) with z, w inside, on or outside
/// the circle, and raw (s, p) drawn from a box around Gamma.
inline GammaPoint random_gamma_sample(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> kind(0, 5);
    auto draw = [&](int k) -> cplx {
        switch (k) {
            case 0: return random_on_circle(rng);
            case 1: return random_in_disc(rng, 1.0);
            case 2: return random_in_disc(rng, 1.5);
            default: return random_in_disc(rng, 1.0 - 1e-6) ;
        }
    };
    const int k = kind(rng);
    if (k == 5) return {random_in_disc(rng, 2.5), random_in_disc(rng, 1.3)};
    const cplx z = draw(k % 4), w = draw((k + 1) % 4);
    return {z + w, z * w};
}

/// Pipeline output for one data set: the parametrization at the chosen base
/// point, the (s0, p0) solution, and every member that could be constructed.
struct Solved {
    Parametrization param;
    S0P0Solution sol;
    std::vector<std::pair<S0P0Candidate, GammaInnerFn>> members;
};

inline Solved solve_all(const BlaschkeData& d, int grid = 256) {
    const PickMatrix m = build_pick_matrix(d);
    Solved out{build_parametrization(m, d, choose_tau(m, d)), {}, {}};
    out.sol = solve_s0_p0(out.param, d);
    for (const auto& c : out.sol.members(grid)) {
        try {
            out.members.emplace_back(c, construct_h(out.param, c.s0, c.p0));
        } catch (const Error&) {
        }
    }
    return out;
}

/// Random tuple satisfying the hypotheses of the |s| <= 2 <=> |c| <= |d|
/// equivalence: |p0| = 1, s0 = conj(s0) p0, |s0| < 2, s0 c != 2 d. Tuples
/// within `band` of |c| = |d| are redrawn.
struct BoundTuple {
    cplx c, d, s0, p0;
    cplx s() const { return 2.0 * (2.0 * p0 * c - s0 * d) / (s0 * c - 2.0 * d); }
};

inline BoundTuple bound_tuple(std::mt19937_64& rng, double band = 1e-6) {
    std::uniform_real_distribution<double> t(-0.999, 0.999);
    for (;;) {
        const cplx w = random_on_circle(rng);
        BoundTuple x{random_in_disc(rng, 2.0), random_in_disc(rng, 2.0), 2.0 * t(rng) * w, w * w};
        if (std::abs(std::abs(x.c) - std::abs(x.d)) < band) continue;
        if (std::abs(x.s0 * x.c - 2.0 * x.d) < 1e-6) continue;
        return x;
    }
}

/// Largest |Phi_w(h(l)) - (a zeta + b)/(c zeta + d)| with zeta = Phi_w(s0, p0)
/// over `pairs` random (w, l) with l in the disc.
inline double phi_identity_gap(const Parametrization& pr, const S0P0Candidate& cand, const GammaInnerFn& h,
                               std::mt19937_64& rng, int pairs) {
    double worst = 0.0;
    for (int i = 0; i < pairs;) {
        const cplx w = random_on_circle(rng);
        const cplx l = random_in_disc(rng, 0.95);
        const GammaPoint v = h(l);
        if (std::abs(2.0 - w * v.s) < 1e-3 || std::abs(2.0 - w * cand.s0) < 1e-3) continue;
        const cplx zeta = (2.0 * w * cand.p0 - cand.s0) / (2.0 - w * cand.s0);
        const cplx den = pr.c(l) * zeta + pr.d(l);
        if (std::abs(den) < 1e-3) continue;
        const cplx lhs = (2.0 * w * v.p - v.s) / (2.0 - w * v.s);
        worst = std::max(worst, std::abs(lhs - (pr.a(l) * zeta + pr.b(l)) / den));
        ++i;
    }
    return worst;
}

}  // namespace royal::testing
