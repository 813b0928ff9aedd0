#pragma once

#include <initializer_list>
#include <span>
#include <vector>

#include "royalgamma/types.hpp"

namespace royal {

/// Dense complex polynomial, coefficient j multiplies lambda^j.
///
/// Coefficients are trimmed from the top at construction: anything whose
/// modulus is below `rel_trim * max|c_j|` is discarded, so the leading
/// coefficient of a nonzero Poly is always significant. The zero polynomial
/// has an empty coefficient vector and degree kZeroDegree.
class Poly {
public:
    static constexpr int kZeroDegree = -1;
    static constexpr double kDefaultTrim = 1e-12;

    Poly() = default;
    Poly(std::initializer_list<cplx> coeffs);
    explicit Poly(std::vector<cplx> coeffs, double rel_trim = kDefaultTrim);

    static Poly constant(cplx c);
    static Poly monomial(int power, cplx c = 1.0);
    /// lead * prod (lambda - r)
    static Poly from_roots(std::span<const cplx> roots, cplx lead = 1.0);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<cplx>& coeffs() const { return c_; }
    cplx coeff(int j) const;
    cplx leading() const;
    double max_abs_coeff() const;

    cplx operator()(cplx z) const;
    Poly derivative() const;

    /// Quotient of division by (lambda - root), remainder dropped. Uses
    /// forward synthetic division inside the unit disc and backward
    /// division outside it.
    Poly deflate(cplx root) const;

    Poly& operator+=(const Poly& rhs);
    Poly& operator-=(const Poly& rhs);
    Poly& operator*=(const Poly& rhs);
    Poly& operator*=(cplx s);

    friend Poly operator+(Poly lhs, const Poly& rhs) { return lhs += rhs; }
    friend Poly operator-(Poly lhs, const Poly& rhs) { return lhs -= rhs; }
    friend Poly operator*(Poly lhs, const Poly& rhs) { return lhs *= rhs; }
    friend Poly operator*(cplx s, Poly p) { return p *= s; }
    friend Poly operator*(Poly p, cplx s) { return p *= s; }
    friend Poly operator/(Poly p, cplx s) { return p *= (1.0 / s); }
    Poly operator-() const { return (*this) * cplx(-1.0); }

private:
    std::vector<cplx> c_;
};

/// Largest coefficient-wise difference, shorter operand padded with zeros.
double coeff_distance(const Poly& p, const Poly& q);

cplx poly_eval(const Poly& p, cplx z);
Poly poly_derivative(const Poly& p);

struct Root {
    cplx value;
    int multiplicity = 1;
    double residual = 0.0;  // |p(value)|
};

/// All roots of p with multiplicity. Companion-matrix eigenvalues (balanced),
/// one Newton step per root, then single-linkage clustering at
/// root_cluster_tol. A cluster of size m is reported once with
/// multiplicity m and its mean polished on the (m-1)th derivative.
/// Throws ZeroPolynomial for p == 0; a nonzero constant has no roots.
std::vector<Root> poly_roots(const Poly& p, const Tolerance& tol = {});

/// Roots expanded by multiplicity.
std::vector<cplx> flatten(const std::vector<Root>& roots);

}  // namespace royal
