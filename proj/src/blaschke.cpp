#include "royalgamma/blaschke.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace royal {

namespace {

// Sum of |q_j| |z|^j, the natural scale for judging |q(z)| against zero.
double eval_scale(const Poly& q, cplx z) {
    double acc = 0.0;
    const double r = std::abs(z);
    for (auto it = q.coeffs().rbegin(); it != q.coeffs().rend(); ++it) acc = acc * r + std::abs(*it);
    return acc;
}

bool vanishes(const Poly& q, cplx z, double rel) {
    if (q.is_zero()) return true;
    return std::abs(q(z)) <= rel * std::max(eval_scale(q, z), 1e-300);
}

}  // namespace

cplx BlaschkeProduct::operator()(cplx z) const {
    cplx v = constant;
    for (const auto& a : zeros) v *= (z - a) / (1.0 - std::conj(a) * z);
    return v;
}

RationalFn BlaschkeProduct::to_rational() const {
    Poly num = Poly::constant(constant);
    Poly den = Poly::constant(1.0);
    for (const auto& a : zeros) {
        num *= Poly({-a, 1.0});
        den *= Poly({1.0, -std::conj(a)});
    }
    return {num, den};
}

PhasarValue phasar_derivative(const RationalFn& f, cplx z, const Tolerance& tol) {
    if (vanishes(f.den(), z, tol.trim_tol))
        throw Error(ErrorKind::ZeroOrPoleAtPoint, "pole at the evaluation point");
    if (vanishes(f.num(), z, tol.trim_tol))
        throw Error(ErrorKind::ZeroOrPoleAtPoint, "zero at the evaluation point");
    const cplx q = f.log_derivative_times_z(z);
    return {q.real(), std::abs(q.imag())};
}

KernelPolys kernel_polys(const PickMatrix& m, const BlaschkeData& data, cplx tau, const Tolerance& tol) {
    const PickSolver solver(m, tol);
    const KernelVectors kv = kernel_vectors(data, tau);
    const Eigen::VectorXcd wx = solver.solve(kv.x);
    const Eigen::VectorXcd wy = solver.solve(kv.y);

    const size_t n = data.n();
    std::vector<Poly> factor(n);
    for (size_t j = 0; j < n; ++j) factor[j] = Poly({1.0, -std::conj(data.sigma()[j])});

    KernelPolys out;
    out.product = Poly::constant(1.0);
    for (const auto& f : factor) out.product *= f;
    out.product_at_tau = out.product(tau);

    for (size_t i = 0; i < n; ++i) {
        Poly others = Poly::constant(1.0);
        for (size_t j = 0; j < n; ++j)
            if (j != i) others *= factor[j];
        const auto ii = static_cast<Eigen::Index>(i);
        const cplx eb = std::conj(data.eta()[i]);
        out.xx += others * std::conj(wx(ii));
        out.xy += others * std::conj(wy(ii));
        out.yx += others * (eb * std::conj(wx(ii)));
        out.yy += others * (eb * std::conj(wy(ii)));
    }
    return out;
}

Parametrization build_parametrization(const PickMatrix& m, const BlaschkeData& data, cplx tau,
                                      const Tolerance& tol) {
    const ExceptionalSet z = exceptional_set(m, data, tau, tol);
    if (!z.finite()) throw Error(ErrorKind::UnsuitableTau, "exceptional set is the whole circle at this tau");

    const KernelPolys k = kernel_polys(m, data, tau, tol);
    const Poly line({1.0, -std::conj(tau)});
    const cplx g = k.product_at_tau;

    Parametrization p;
    p.a = (k.product - line * k.xx) / g;
    p.b = (line * k.xy) / g;
    p.c = -(line * k.yx) / g;
    p.d = (k.product + line * k.yy) / g;
    p.tau = tau;
    p.data_hash = data.digest();
    p.exceptional = z;
    p.n = static_cast<int>(data.n());
    return p;
}

std::vector<cplx> disc_grid(int points) {
    constexpr int angles = 16;
    const int rings = std::max(2, points / angles);
    std::vector<cplx> out;
    out.reserve(static_cast<size_t>(rings * angles));
    for (int r = 0; r < rings; ++r) {
        const double rad = static_cast<double>(r + 1) / rings;
        for (int a = 0; a < angles; ++a)
            out.push_back(std::polar(rad, 2.0 * std::numbers::pi * (a + 0.5 * (r % 2)) / angles));
    }
    out.front() = 0.0;
    return out;
}

std::vector<cplx> circle_grid(int points) {
    std::vector<cplx> out(static_cast<size_t>(points));
    for (int j = 0; j < points; ++j) out[j] = std::polar(1.0, 2.0 * std::numbers::pi * j / points);
    return out;
}

ParametrizationCheck check_parametrization(const Parametrization& param, const Tolerance& tol) {
    ParametrizationCheck r;
    const cplx t = param.tau;
    r.normalization = std::max({std::abs(param.a(t) - 1.0), std::abs(param.b(t)), std::abs(param.c(t)),
                                std::abs(param.d(t) - 1.0)});
    r.max_degree = std::max({param.a.degree(), param.b.degree(), param.c.degree(), param.d.degree()});

    std::vector<const Poly*> polys;
    for (const Poly* q : {&param.a, &param.b, &param.c, &param.d})
        if (!q->is_zero()) polys.push_back(q);
    const Poly* lowest = *std::min_element(polys.begin(), polys.end(),
                                           [](const Poly* x, const Poly* y) { return x->degree() < y->degree(); });
    if (lowest->degree() > 0) {
        for (const auto& root : poly_roots(*lowest, tol)) {
            bool all = true;
            for (const Poly* q : polys)
                if (!vanishes(*q, root.value, tol.root_cluster_tol)) all = false;
            if (all) r.common_root = true;
        }
    }

    r.cd_excess = -std::numeric_limits<double>::infinity();
    for (const auto& z : disc_grid(256))
        r.cd_excess = std::max(r.cd_excess, std::abs(param.c(z)) - std::abs(param.d(z)));

    r.ok = r.normalization <= tol.residual_tol && r.max_degree == param.n && !r.common_root &&
           r.cd_excess <= tol.residual_tol;
    return r;
}

RationalFn solve_blaschke(const Parametrization& param, cplx zeta, const Tolerance& tol) {
    if (param.exceptional.contains(zeta, kExceptionalBand))
        throw Error(ErrorKind::ExceptionalZeta, "zeta lies in the exceptional set");
    Poly num = param.a * zeta + param.b;
    Poly den = param.c * zeta + param.d;
    if (den.is_zero()) throw Error(ErrorKind::ExceptionalZeta, "denominator vanishes identically");
    return rat_reduce(RationalFn(std::move(num), std::move(den)), tol);
}

BlaschkeProduct to_blaschke_product(const RationalFn& f, const Tolerance& tol) {
    const RationalFn g = rat_reduce(f, tol);
    for (const auto& z : circle_grid(256)) {
        if (vanishes(g.den(), z, tol.trim_tol)) throw Error(ErrorKind::NotInner, "pole on the unit circle");
        if (std::abs(std::abs(g(z)) - 1.0) > tol.residual_tol)
            throw Error(ErrorKind::NotInner, "modulus differs from 1 on the unit circle");
    }
    BlaschkeProduct b;
    if (g.num().degree() > 0) b.zeros = flatten(poly_roots(g.num(), tol));
    for (const auto& a : b.zeros)
        if (std::abs(a) >= 1.0) throw Error(ErrorKind::NotInner, "zero outside the open unit disc");

    cplx anchor = 1.0;
    for (const auto& z : circle_grid(256)) {
        if (!vanishes(g.den(), z, 1e-6)) {
            anchor = z;
            break;
        }
    }
    const cplx c = g(anchor) / b(anchor);
    b.constant = c / std::abs(c);
    return b;
}

}  // namespace royal
