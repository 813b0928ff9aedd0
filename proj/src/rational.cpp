#include "royalgamma/rational.hpp"

#include <algorithm>
#include <cmath>

namespace royal {

RationalFn::RationalFn(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw Error(ErrorKind::InvalidData, "rational function with zero denominator");
}

int RationalFn::degree() const { return std::max({num_.degree(), den_.degree(), 0}); }

cplx RationalFn::log_derivative_times_z(cplx z) const {
    return z * (num_.derivative()(z) / num_(z) - den_.derivative()(z) / den_(z));
}

RationalFn rat_reduce(const RationalFn& f, const Tolerance& tol) {
    if (f.num().is_zero()) return RationalFn(Poly{}, Poly::constant(1.0));

    Poly num = f.num();
    Poly den = f.den();
    if (num.degree() > 0 && den.degree() > 0) {
        std::vector<cplx> nr = flatten(poly_roots(num, tol));
        std::vector<cplx> dr = flatten(poly_roots(den, tol));
        std::vector<bool> used(nr.size(), false);
        for (const auto& d : dr) {
            size_t best = nr.size();
            double best_dist = tol.root_cluster_tol;
            for (size_t i = 0; i < nr.size(); ++i) {
                if (used[i]) continue;
                const double dist = std::abs(nr[i] - d);
                if (dist <= best_dist) {
                    best_dist = dist;
                    best = i;
                }
            }
            if (best == nr.size()) continue;
            used[best] = true;
            const cplx mid = 0.5 * (nr[best] + d);
            num = num.deflate(mid);
            den = den.deflate(mid);
        }
    }
    const cplx lead = den.leading();
    std::vector<cplx> monic = (den / lead).coeffs();
    monic.back() = 1.0;
    return RationalFn(num / lead, Poly(std::move(monic)));
}

double coeff_distance(const RationalFn& f, const RationalFn& g) {
    return std::max(coeff_distance(f.num(), g.num()), coeff_distance(f.den(), g.den()));
}

}  // namespace royal
