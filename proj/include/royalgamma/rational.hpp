#pragma once

#include "royalgamma/poly.hpp"

namespace royal {

/// num / den with den != 0.
class RationalFn {
public:
    RationalFn(Poly num, Poly den);
    static RationalFn from_poly(Poly p) { return {std::move(p), Poly::constant(1.0)}; }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    /// max(deg num, deg den); 0 for the zero function.
    int degree() const;
    cplx operator()(cplx z) const { return num_(z) / den_(z); }

    /// z f'(z) / f(z), computed as z (N'/N - D'/D).
    cplx log_derivative_times_z(cplx z) const;

private:
    Poly num_;
    Poly den_;
};

/// Cancels numerator/denominator root pairs closer than root_cluster_tol
/// (multiplicities respected, each pair deflated at its midpoint) and scales
/// the result so the denominator is monic. The zero function reduces to 0/1.
RationalFn rat_reduce(const RationalFn& f, const Tolerance& tol = {});

/// Largest coefficient difference over numerator and denominator. Both
/// operands are expected to be reduced (monic denominators).
double coeff_distance(const RationalFn& f, const RationalFn& g);

}  // namespace royal
