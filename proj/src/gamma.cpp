#include "royalgamma/gamma.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/SVD>

namespace royal {

namespace {

// Relative size below which s^2 - 4p counts as identically zero.
constexpr double kRoyalRangeTol = 1e-10;

double abcd_residual(const std::array<Poly, 4>& q, cplx s0, cplx p0) {
    const Poly e = s0 * q[0] - 2.0 * q[1] + (2.0 * p0) * q[2] - s0 * q[3];
    double scale = 1.0;
    for (const auto& x : q) scale = std::max(scale, x.max_abs_coeff());
    return e.max_abs_coeff() / scale;
}

bool is_royal_range(const GammaInnerFn& h) {
    const Poly ss = h.s_num() * h.s_num();
    const Poly pd = 4.0 * (h.p_num() * h.den());
    const Poly r = ss - pd;
    const double scale = std::max(ss.max_abs_coeff(), pd.max_abs_coeff());
    return r.is_zero() || r.max_abs_coeff() <= kRoyalRangeTol * scale;
}

double angle_key(cplx z) {
    double a = std::arg(z);
    if (a < 0) a += 2.0 * std::numbers::pi;
    return a;
}

std::vector<cplx> flat_roots(const Poly& p, const Tolerance& tol) {
    if (p.degree() <= 0) return {};
    return flatten(poly_roots(p, tol));
}

// Index of the nearest unused root within tol, or npos.
size_t take_nearest(const std::vector<cplx>& roots, std::vector<bool>& used, cplx z, double tol) {
    size_t best = roots.size();
    double best_dist = tol;
    for (size_t i = 0; i < roots.size(); ++i) {
        if (used[i]) continue;
        const double d = std::abs(roots[i] - z);
        if (d <= best_dist) {
            best_dist = d;
            best = i;
        }
    }
    if (best < roots.size()) used[best] = true;
    return best;
}

}  // namespace

const char* to_string(GammaClass c) {
    switch (c) {
        case GammaClass::InteriorG: return "interior_G";
        case GammaClass::BoundaryGamma: return "boundary_Gamma";
        case GammaClass::DistinguishedBGamma: return "distinguished_bGamma";
        case GammaClass::Outside: return "outside";
    }
    return "unknown";
}

const char* to_string(S0P0Kind k) {
    switch (k) {
        case S0P0Kind::Unique: return "unique";
        case S0P0Kind::Family: return "family";
        case S0P0Kind::NoSolution: return "no_solution";
    }
    return "unknown";
}

GammaClass classify_point(GammaPoint pt, const Tolerance& tol) {
    const double eps = tol.residual_tol;
    const double ms = std::abs(pt.s);
    const double mp = std::abs(pt.p);
    const double skew = std::abs(pt.s - std::conj(pt.s) * pt.p);
    if (std::abs(mp - 1.0) <= eps && skew <= eps && ms <= 2.0 + eps) return GammaClass::DistinguishedBGamma;
    const double gap = (1.0 - mp * mp) - skew;
    if (ms < 2.0 - eps && gap > eps) return GammaClass::InteriorG;
    if (ms <= 2.0 + eps && gap >= -eps) return GammaClass::BoundaryGamma;
    return GammaClass::Outside;
}

cplx phi_omega(cplx omega, GammaPoint pt, const Tolerance& tol) {
    const cplx den = 2.0 - omega * pt.s;
    if (std::abs(den) < tol.trim_tol) throw Error(ErrorKind::SingularPoint, "2 - omega s vanishes");
    return (2.0 * omega * pt.p - pt.s) / den;
}

GammaPoint h_from_values(cplx a, cplx b, cplx c, cplx d, cplx s0, cplx p0) {
    const cplx den = s0 * c - 2.0 * d;
    return {2.0 * (2.0 * p0 * c - s0 * d) / den, (-2.0 * p0 * a + s0 * b) / den};
}

GammaInnerFn::GammaInnerFn(Poly s_num, Poly p_num, Poly den)
    : s_num_(std::move(s_num)), p_num_(std::move(p_num)), den_(std::move(den)) {
    if (den_.is_zero()) throw Error(ErrorKind::InvalidData, "Gamma-inner function with zero denominator");
    const cplx lead = den_.leading();
    s_num_ = s_num_ / lead;
    p_num_ = p_num_ / lead;
    std::vector<cplx> monic = (den_ / lead).coeffs();
    monic.back() = 1.0;
    den_ = Poly(std::move(monic));
}

GammaInnerFn GammaInnerFn::from_rational(const RationalFn& s, const RationalFn& p, const Tolerance& tol) {
    return reduce_jointly(GammaInnerFn(s.num() * p.den(), p.num() * s.den(), s.den() * p.den()), tol);
}

GammaPoint GammaInnerFn::operator()(cplx z) const {
    const cplx d = den_(z);
    return {s_num_(z) / d, p_num_(z) / d};
}

int GammaInnerFn::degree(const Tolerance& tol) const { return rat_reduce(p(), tol).degree(); }

Poly GammaInnerFn::royal_polynomial() const { return s_num_ * s_num_ - 4.0 * (p_num_ * den_); }

RationalFn GammaInnerFn::compose_phi(cplx omega) const {
    return {(2.0 * omega) * p_num_ - s_num_, 2.0 * den_ - omega * s_num_};
}

GammaInnerFn reduce_jointly(const GammaInnerFn& h, const Tolerance& tol) {
    Poly s = h.s_num(), p = h.p_num(), d = h.den();
    const std::vector<cplx> dr = flat_roots(d, tol);
    if (!dr.empty()) {
        const std::vector<cplx> sr = flat_roots(s, tol);
        const std::vector<cplx> pr = flat_roots(p, tol);
        std::vector<bool> su(sr.size(), false), pu(pr.size(), false);
        for (const auto& r : dr) {
            std::vector<bool> su_try = su, pu_try = pu;
            const size_t is = s.is_zero() ? 0 : take_nearest(sr, su_try, r, tol.root_cluster_tol);
            const size_t ip = p.is_zero() ? 0 : take_nearest(pr, pu_try, r, tol.root_cluster_tol);
            const bool s_ok = s.is_zero() || is < sr.size();
            const bool p_ok = p.is_zero() || ip < pr.size();
            if (!s_ok || !p_ok) continue;
            su = std::move(su_try);
            pu = std::move(pu_try);
            cplx at = r;
            int count = 1;
            if (!s.is_zero()) at += sr[is], ++count;
            if (!p.is_zero()) at += pr[ip], ++count;
            at /= double(count);
            if (!s.is_zero()) s = s.deflate(at);
            if (!p.is_zero()) p = p.deflate(at);
            d = d.deflate(at);
        }
    }
    return {s, p, d};
}

double coeff_distance(const GammaInnerFn& f, const GammaInnerFn& g) {
    return std::max({coeff_distance(f.s_num(), g.s_num()), coeff_distance(f.p_num(), g.p_num()),
                     coeff_distance(f.den(), g.den())});
}

std::optional<S0P0Candidate> S0P0Solution::at(cplx omega, double real_tol) const {
    omega /= std::abs(omega);
    const cplx u = omega * omega;
    switch (kind) {
        case S0P0Kind::NoSolution: return std::nullopt;
        case S0P0Kind::Unique:
            for (const auto& c : candidates)
                if (std::abs(c.p0 - u) <= 1e-9) return c;
            return std::nullopt;
        case S0P0Kind::Family: break;
    }
    double t = 0.0;
    if (!degenerate) {
        const cplx v = -(coef_u * u + coef_1) / coef_v;
        const cplx tc = v * std::conj(omega);
        if (std::abs(tc.imag()) > real_tol || std::abs(tc.real()) >= 1.0) return std::nullopt;
        t = tc.real();
    }
    const cplx s0 = 2.0 * t * omega;
    const double res = abcd_residual(abcd, s0, u);
    if (res > residual_tol) return std::nullopt;
    return S0P0Candidate{omega, t, s0, u, res};
}

std::vector<S0P0Candidate> S0P0Solution::members(int grid) const {
    if (kind != S0P0Kind::Family) return candidates;
    std::vector<S0P0Candidate> out;
    for (int j = 0; j < grid; ++j)
        if (auto c = at(std::polar(1.0, 2.0 * std::numbers::pi * j / grid))) out.push_back(*c);
    return out;
}

double s0p0_residual(const Parametrization& param, cplx s0, cplx p0) {
    return abcd_residual({param.a, param.b, param.c, param.d}, s0, p0);
}

S0P0Solution solve_s0_p0(const Parametrization& param, const BlaschkeData& data, const Tolerance& tol) {
    S0P0Solution out;
    out.abcd = {param.a, param.b, param.c, param.d};
    out.residual_tol = tol.residual_tol;

    const PickMatrix m = build_pick_matrix(data, tol);
    const KernelPolys k = kernel_polys(m, data, param.tau, tol);
    const Poly qc = k.yx;
    const Poly qg = k.xx + k.yy;
    const Poly qb = k.xy;

    const auto n = static_cast<Eigen::Index>(data.n());
    Eigen::MatrixXcd stacked(n, 3);
    for (Eigen::Index i = 0; i < n; ++i) {
        stacked(i, 0) = qc.coeff(int(i));
        stacked(i, 1) = qg.coeff(int(i));
        stacked(i, 2) = qb.coeff(int(i));
    }
    const Eigen::MatrixXcd a = stacked.leftCols(2);
    const Eigen::VectorXcd rhs = -stacked.col(2);

    Eigen::JacobiSVD<Eigen::MatrixXcd> full(stacked);
    for (Eigen::Index i = 0; i < full.singularValues().size(); ++i)
        out.singular_values.push_back(full.singularValues()(i));
    const double smax = out.singular_values.front();

    double abs_scale = 1.0;
    for (const auto& q : out.abcd) abs_scale = std::max(abs_scale, q.max_abs_coeff());
    if (smax <= tol.pd_tol * abs_scale) {
        out.kind = S0P0Kind::Family;
        out.degenerate = true;
        return out;
    }

    const double thr = tol.pd_tol * smax;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::VectorXd sv = svd.singularValues();
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > thr) ++out.rank;
        if (sv(i) > 0.01 * thr && sv(i) < 100.0 * thr) out.near_threshold = true;
    }
    for (double v : out.singular_values)
        if (v > 0.01 * thr && v < 100.0 * thr) out.near_threshold = true;

    auto emit = [&](cplx omega, cplx tc) {
        if (std::abs(tc.imag()) > tol.residual_tol || std::abs(tc.real()) >= 1.0) return;
        const cplx p0 = omega * omega;
        const cplx s0 = 2.0 * tc.real() * omega;
        const double res = abcd_residual(out.abcd, s0, p0);
        if (res > tol.residual_tol) return;
        out.candidates.push_back({omega, tc.real(), s0, p0, res});
    };

    if (out.rank == 0) {
        // Coefficients of u and v vanish but the constant column does not.
        out.residual = rhs.norm() / smax;
        return out;
    }

    if (out.rank == 2) {
        const Eigen::VectorXcd x = svd.solve(rhs);
        out.residual = (a * x - rhs).norm() / smax;
        if (out.residual > tol.residual_tol) return out;
        const cplx u = x(0), v = x(1);
        if (std::abs(std::abs(u) - 1.0) > tol.residual_tol) return out;
        // Both square roots give the same (s0, p0) since t changes sign with omega.
        const cplx omega = std::sqrt(u / std::abs(u));
        emit(omega, v * std::conj(omega));
        if (!out.candidates.empty()) out.kind = S0P0Kind::Unique;
        return out;
    }

    // Rank 1: a single scalar equation c u + g v + b = 0.
    const Eigen::VectorXcd u1 = svd.matrixU().col(0);
    const Eigen::VectorXcd w1 = svd.matrixV().col(0);
    const cplx b = u1.dot(rhs) * -1.0;
    out.residual = (rhs - u1 * u1.dot(rhs)).norm() / smax;
    if (out.residual > tol.residual_tol) return out;
    const cplx c = sv(0) * std::conj(w1(0));
    const cplx g = sv(0) * std::conj(w1(1));
    const double scale = std::max({std::abs(c), std::abs(g), std::abs(b)});

    if (std::abs(g) <= tol.residual_tol * scale) {
        // v drops out: p0 is pinned and t is free; report t = 0.
        const cplx u = -b / c;
        if (std::abs(std::abs(u) - 1.0) > tol.residual_tol) return out;
        emit(std::sqrt(u / std::abs(u)), 0.0);
        if (!out.candidates.empty()) out.kind = S0P0Kind::Unique;
        return out;
    }

    // t = -(c omega + b conj(omega)) / g is real iff A omega^2 = conj(A),
    // A = conj(g) c - g conj(b).
    const cplx big_a = std::conj(g) * c - g * std::conj(b);
    if (std::abs(big_a) <= tol.residual_tol * std::abs(g) * scale) {
        out.kind = S0P0Kind::Family;
        out.coef_u = c;
        out.coef_v = g;
        out.coef_1 = b;
        return out;
    }
    const cplx u = std::conj(big_a) / big_a;
    const cplx omega = std::sqrt(u / std::abs(u));
    emit(omega, -(c * omega + b * std::conj(omega)) / g);
    if (!out.candidates.empty()) out.kind = S0P0Kind::Unique;
    return out;
}

GammaInnerFn construct_h(const Parametrization& param, cplx s0, cplx p0, const Tolerance& tol) {
    const double eps = tol.residual_tol;
    if (std::abs(std::abs(p0) - 1.0) > eps || std::abs(s0 - std::conj(s0) * p0) > eps || std::abs(s0) >= 2.0)
        throw Error(ErrorKind::PreconditionViolated, "(s0, p0) is not in the distinguished boundary with |s0| < 2");
    if (s0p0_residual(param, s0, p0) > eps)
        throw Error(ErrorKind::PreconditionViolated, "(s0, p0) does not satisfy the parametrization identity");

    const Poly d0 = s0 * param.c - 2.0 * param.d;
    if (d0.is_zero()) throw Error(ErrorKind::PreconditionViolated, "denominator vanishes identically");
    const Poly sn = 2.0 * ((2.0 * p0) * param.c - s0 * param.d);
    const Poly pn = (-2.0 * p0) * param.a + s0 * param.b;
    GammaInnerFn h = reduce_jointly(GammaInnerFn(sn, pn, d0), tol);

    for (const auto& r : flat_roots(h.den(), tol))
        if (std::abs(r) <= 1.0)
            throw Error(ErrorKind::DenominatorZeroInDisc, "denominator has a zero in the closed unit disc");
    if (is_royal_range(h)) throw Error(ErrorKind::RoyalRange, "s^2 - 4p vanishes identically");
    return h;
}

RoyalData royal_nodes(const GammaInnerFn& h, const Tolerance& tol) {
    if (is_royal_range(h)) throw Error(ErrorKind::RoyalRange, "s^2 - 4p vanishes identically");
    const double band = 10.0 * tol.root_cluster_tol;

    struct Raw {
        cplx z;
        int order;
        bool boundary;
    };
    std::vector<Raw> raw;
    const Poly royal = h.royal_polynomial();
    for (const auto& r : poly_roots(royal, tol)) {
        const double mod = std::abs(r.value);
        if (mod > 1.0 + band) continue;
        const bool boundary = std::abs(mod - 1.0) <= band;
        const cplx z = boundary ? r.value / mod : r.value;
        bool merged = false;
        for (auto& e : raw) {
            if (e.boundary == boundary && std::abs(e.z - z) <= band) {
                e.order += r.multiplicity;
                merged = true;
                break;
            }
        }
        if (!merged) raw.push_back({z, r.multiplicity, boundary});
    }
    // A root of order m is a simple root of the (m-1)th derivative; Newton
    // there recovers the digits lost to splitting.
    for (auto& e : raw) {
        if (e.order < 2) continue;
        Poly d = royal;
        for (int i = 1; i < e.order; ++i) d = d.derivative();
        const Poly dd = d.derivative();
        cplx z = e.z;
        for (int it = 0; it < 8; ++it) {
            const cplx slope = dd(z);
            if (std::abs(slope) == 0.0) break;
            const cplx step = d(z) / slope;
            z -= step;
            if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(z))) break;
        }
        if (std::abs(z - e.z) <= band) e.z = e.boundary ? z / std::abs(z) : z;
    }
    std::stable_sort(raw.begin(), raw.end(), [](const Raw& x, const Raw& y) {
        if (x.boundary != y.boundary) return x.boundary;
        if (x.boundary) return angle_key(x.z) < angle_key(y.z);
        return false;
    });

    RoyalData out;
    out.degree = h.degree(tol);
    const RationalFn s = h.s();
    const RationalFn p = h.p();
    for (const auto& e : raw) {
        RoyalNode nd;
        nd.sigma = e.z;
        nd.order = e.order;
        nd.boundary = e.boundary;
        if (e.boundary) {
            if (e.order % 2 != 0) out.even_boundary_orders = false;
            nd.multiplicity = (e.order + 1) / 2;
        } else {
            nd.multiplicity = e.order;
        }
        nd.eta = -0.5 * s(e.z);
        nd.eta_residual = std::abs(p(e.z) - nd.eta * nd.eta);
        if (e.boundary) nd.rho = 0.5 * phasar_derivative(p, e.z, tol).value;
        out.n += nd.multiplicity;
        if (e.boundary) out.k += nd.multiplicity;
        out.nodes.push_back(nd);
    }
    out.degree_matches = out.n == out.degree;
    return out;
}

BlaschkeData extract_royal_data(const GammaInnerFn& h, const Tolerance& tol) {
    const RoyalData rd = royal_nodes(h, tol);
    std::vector<cplx> sigma, eta;
    std::vector<double> rho;
    for (const auto& nd : rd.nodes) {
        if (nd.multiplicity > 1)
            throw Error(ErrorKind::MultiplicityAboveOne, "royal node of multiplicity " + std::to_string(nd.multiplicity));
        sigma.push_back(nd.sigma);
        eta.push_back(nd.boundary ? nd.eta / std::abs(nd.eta) : nd.eta);
        if (nd.rho) rho.push_back(*nd.rho);
    }
    return BlaschkeData(std::move(sigma), std::move(eta), std::move(rho));
}

std::vector<cplx> check_omegas(const BlaschkeData& data, int count) {
    std::vector<cplx> out;
    for (int m = 1; static_cast<int>(out.size()) < count; ++m) {
        const cplx w = tau_candidate(m);
        bool clear = true;
        for (size_t j = 0; j < data.k(); ++j)
            if (std::abs(w + std::conj(data.eta()[j])) <= 1e-2) clear = false;
        if (clear) out.push_back(w);
    }
    return out;
}

VerificationReport verify_royal_solution(const GammaInnerFn& h, const std::optional<BlaschkeData>& data,
                                         const Tolerance& tol) {
    VerificationReport rep;
    auto put = [&rep](const std::string& key, double v) {
        auto [it, fresh] = rep.residuals.try_emplace(key, v);
        if (!fresh) it->second = std::max(it->second, v);
    };

    double inner = 0.0;
    for (const auto& z : circle_grid(256)) {
        const GammaPoint g = h(z);
        inner = std::max({inner, std::abs(std::abs(g.p) - 1.0), std::abs(g.s - std::conj(g.s) * g.p),
                          std::max(0.0, std::abs(g.s) - 2.0)});
    }
    put("gamma_inner", inner);

    double min_mod = std::numeric_limits<double>::infinity();
    for (const auto& r : flat_roots(h.den(), tol)) min_mod = std::min(min_mod, std::abs(r));
    put("denominator_in_disc", std::max(0.0, 1.0 - min_mod));
    if (min_mod <= 1.0) rep.flags.push_back(to_string(ErrorKind::DenominatorZeroInDisc));

    const bool royal = is_royal_range(h);
    if (royal) rep.flags.push_back(to_string(ErrorKind::RoyalRange));

    std::optional<BlaschkeData> d = data;
    if (!d && !royal) {
        try {
            d = extract_royal_data(h, tol);
        } catch (const Error& e) {
            rep.flags.push_back(to_string(e.kind()));
        }
    }

    if (d) {
        const RationalFn s = h.s();
        const RationalFn p = h.p();
        put("interpolation", 0.0);
        put("boundary_phasar", 0.0);
        for (size_t j = 0; j < d->n(); ++j) {
            const cplx sg = d->sigma()[j];
            const cplx et = d->eta()[j];
            put("interpolation", std::abs(s(sg) + 2.0 * et));
            put("interpolation", std::abs(p(sg) - et * et));
            if (j < d->k()) {
                try {
                    put("boundary_phasar", std::abs(phasar_derivative(p, sg, tol).value - 2.0 * d->rho()[j]));
                } catch (const Error& e) {
                    rep.flags.push_back(to_string(e.kind()));
                }
            }
        }
        put("degree", std::abs(h.degree(tol) - static_cast<int>(d->n())));

        if (!royal) {
            put("phi_interpolation", 0.0);
            put("phi_phasar", 0.0);
            put("phi_degree", 0.0);
            for (const auto& w : check_omegas(*d)) {
                try {
                    const RationalFn phi = rat_reduce(h.compose_phi(w), tol);
                    put("phi_degree", std::abs(phi.degree() - static_cast<int>(d->n())));
                    for (size_t j = 0; j < d->n(); ++j) {
                        const cplx sg = d->sigma()[j];
                        put("phi_interpolation", std::abs(phi(sg) - d->eta()[j]));
                        if (j < d->k())
                            put("phi_phasar", std::abs(phasar_derivative(phi, sg, tol).value - d->rho()[j]));
                    }
                } catch (const Error& e) {
                    rep.flags.push_back(to_string(e.kind()));
                }
            }
        }
    }

    std::sort(rep.flags.begin(), rep.flags.end());
    rep.flags.erase(std::unique(rep.flags.begin(), rep.flags.end()), rep.flags.end());
    rep.pass = rep.flags.empty() && d.has_value();
    for (const auto& [key, v] : rep.residuals)
        if (!(v <= tol.residual_tol)) rep.pass = false;
    return rep;
}

GammaInnerFn generate_h_nu(int nu, double r) {
    if (nu < 0 || !(r > 0.0 && r < 1.0)) throw Error(ErrorKind::InvalidData, "h_nu needs nu >= 0 and 0 < r < 1");
    const Poly s = Poly::monomial(nu + 1, 2.0 * (1.0 - r));
    const Poly p = Poly::monomial(2 * nu + 2) + Poly::monomial(1, r);
    const Poly d = Poly::constant(1.0) + Poly::monomial(2 * nu + 1, r);
    return {s, p, d};
}

}  // namespace royal
