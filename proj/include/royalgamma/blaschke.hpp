#pragma once

#include <string>
#include <vector>

#include "royalgamma/pick.hpp"
#include "royalgamma/rational.hpp"

namespace royal {

/// c * prod (lambda - alpha_j) / (1 - conj(alpha_j) lambda)
struct BlaschkeProduct {
    cplx constant = 1.0;
    std::vector<cplx> zeros;

    cplx operator()(cplx z) const;
    RationalFn to_rational() const;
};

struct PhasarValue {
    double value;
    double imag_residual;  // |Im z f'(z)/f(z)|, small when f is inner
};

/// Re(z f'(z) / f(z)). Throws ZeroOrPoleAtPoint when f vanishes or has a
/// pole at z.
PhasarValue phasar_derivative(const RationalFn& f, cplx z, const Tolerance& tol = {});

/// Normalized linear-fractional parametrization (a, b, c, d) at base point
/// tau: every solution is (a zeta + b) / (c zeta + d) with zeta on T off
/// the exceptional set.
struct Parametrization {
    Poly a, b, c, d;
    cplx tau;
    std::string data_hash;
    ExceptionalSet exceptional;
    int n = 0;
};

/// Polynomial forms of the kernel inner products against M^{-1} x_tau and
/// M^{-1} y_tau, multiplied through by prod (1 - conj(sigma_j) lambda):
///   xx = P <x_l, M^-1 x_t>,  xy = P <x_l, M^-1 y_t>,
///   yx = P <y_l, M^-1 x_t>,  yy = P <y_l, M^-1 y_t>.
struct KernelPolys {
    Poly product;  // P = prod (1 - conj(sigma_j) lambda)
    Poly xx, xy, yx, yy;
    cplx product_at_tau;
};

KernelPolys kernel_polys(const PickMatrix& m, const BlaschkeData& data, cplx tau, const Tolerance& tol = {});

Parametrization build_parametrization(const PickMatrix& m, const BlaschkeData& data, cplx tau,
                                      const Tolerance& tol = {});

struct ParametrizationCheck {
    double normalization = 0.0;  // max deviation of (a,b,c,d)(tau) from (1,0,0,1)
    int max_degree = 0;
    bool common_root = false;
    double cd_excess = 0.0;  // max(|c| - |d|) over the disc grid
    bool ok = false;
};

/// `grid` points of the closed disc: concentric circles (including T and the
/// origin) times equispaced angles.
std::vector<cplx> disc_grid(int points = 256);
/// `points` equispaced points of T starting at 1.
std::vector<cplx> circle_grid(int points = 256);

ParametrizationCheck check_parametrization(const Parametrization& param, const Tolerance& tol = {});

/// phi = (a zeta + b) / (c zeta + d), reduced. Throws ExceptionalZeta when
/// zeta lies within kExceptionalBand of the exceptional set.
RationalFn solve_blaschke(const Parametrization& param, cplx zeta, const Tolerance& tol = {});

/// Factored form of an inner rational function. Throws NotInner when |f| is
/// not 1 on the circle grid or a zero lies outside the open disc.
BlaschkeProduct to_blaschke_product(const RationalFn& f, const Tolerance& tol = {});

}  // namespace royal
