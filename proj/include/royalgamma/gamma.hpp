#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "royalgamma/blaschke.hpp"

namespace royal {

struct GammaPoint {
    cplx s;
    cplx p;
};

enum class GammaClass { InteriorG, BoundaryGamma, DistinguishedBGamma, Outside };

const char* to_string(GammaClass c);

/// Membership in the symmetrized bidisc. Distinguished boundary when |p| = 1,
/// s = conj(s) p and |s| <= 2; interior when |s| < 2 and
/// |s - conj(s) p| < 1 - |p|^2, both with margin residual_tol.
GammaClass classify_point(GammaPoint pt, const Tolerance& tol = {});

/// (2 omega p - s) / (2 - omega s). Throws SingularPoint near 2 - omega s = 0.
cplx phi_omega(cplx omega, GammaPoint pt, const Tolerance& tol = {});

/// Pointwise (s, p) = (2(2 p0 c - s0 d), -2 p0 a + s0 b) / (s0 c - 2 d).
GammaPoint h_from_values(cplx a, cplx b, cplx c, cplx d, cplx s0, cplx p0);

/// h = (s, p) = (S / D, P / D) over a shared monic denominator.
class GammaInnerFn {
public:
    GammaInnerFn(Poly s_num, Poly p_num, Poly den);
    /// Brings s and p over the common denominator den_s * den_p and reduces.
    static GammaInnerFn from_rational(const RationalFn& s, const RationalFn& p, const Tolerance& tol = {});

    const Poly& s_num() const { return s_num_; }
    const Poly& p_num() const { return p_num_; }
    const Poly& den() const { return den_; }
    RationalFn s() const { return {s_num_, den_}; }
    RationalFn p() const { return {p_num_, den_}; }

    GammaPoint operator()(cplx z) const;
    /// Degree of p after reduction.
    int degree(const Tolerance& tol = {}) const;

    /// S^2 - 4 P D.
    Poly royal_polynomial() const;
    /// Phi_omega o h = (2 omega P - S) / (2 D - omega S), unreduced.
    RationalFn compose_phi(cplx omega) const;

private:
    Poly s_num_, p_num_, den_;
};

/// Cancels a denominator root only when it is also a root of both numerators
/// (a zero numerator counts as vanishing everywhere).
GammaInnerFn reduce_jointly(const GammaInnerFn& h, const Tolerance& tol = {});

/// Max coefficient distance over (S, P, D).
double coeff_distance(const GammaInnerFn& f, const GammaInnerFn& g);

struct S0P0Candidate {
    cplx omega;
    double t;
    cplx s0;
    cplx p0;
    double residual;  // relative coefficient residual of s0 a - 2 b + 2 p0 c - s0 d
};

enum class S0P0Kind { Unique, Family, NoSolution };

const char* to_string(S0P0Kind k);

/// Solutions (s0, p0) = (2 t omega, omega^2) of s0 a - 2 b + 2 p0 c - s0 d = 0
/// with omega on T and t real, |t| < 1.
struct S0P0Solution {
    S0P0Kind kind = S0P0Kind::NoSolution;
    std::vector<S0P0Candidate> candidates;  // Unique

    // Family: coef_u * omega^2 + coef_v * (t omega) + coef_1 = 0.
    cplx coef_u = 0.0, coef_v = 0.0, coef_1 = 0.0;
    bool degenerate = false;  // every (s0, p0) in the distinguished boundary works

    int rank = 0;
    std::vector<double> singular_values;  // of the stacked [Q_c | Q_g | Q_b]
    double residual = 0.0;                // least-squares residual, relative
    bool near_threshold = false;

    /// Family member at omega, or nullopt when t fails the realness filter
    /// (|Im t| <= real_tol) or |t| >= 1. For Unique, returns the candidate
    /// whose p0 equals omega^2, if any.
    std::optional<S0P0Candidate> at(cplx omega, double real_tol = 1e-8) const;

    /// Accepted members over `grid` equispaced omega (Family) or the
    /// candidates (Unique).
    std::vector<S0P0Candidate> members(int grid = 256) const;

    std::array<Poly, 4> abcd;
    double residual_tol = 1e-8;
};

S0P0Solution solve_s0_p0(const Parametrization& param, const BlaschkeData& data, const Tolerance& tol = {});

/// Relative coefficient residual of s0 a - 2 b + 2 p0 c - s0 d.
double s0p0_residual(const Parametrization& param, cplx s0, cplx p0);

/// h = (2(2 p0 c - s0 d), -2 p0 a + s0 b) / (s0 c - 2 d), jointly reduced.
/// Throws PreconditionViolated when (s0, p0) is not an admissible pair,
/// DenominatorZeroInDisc when the reduced denominator vanishes in the closed
/// disc, RoyalRange when s^2 - 4p vanishes identically.
GammaInnerFn construct_h(const Parametrization& param, cplx s0, cplx p0, const Tolerance& tol = {});

struct RoyalNode {
    cplx sigma;
    int multiplicity;
    int order;  // order as a zero of the royal polynomial
    bool boundary;
    cplx eta;
    double eta_residual;  // |p(sigma) - eta^2|
    std::optional<double> rho;
};

struct RoyalData {
    std::vector<RoyalNode> nodes;  // boundary first by angle, then interior
    int n = 0;                     // total multiplicity
    int k = 0;                     // boundary multiplicity
    int degree = 0;
    bool even_boundary_orders = true;
    bool degree_matches = true;
};

/// Royal nodes in the closed disc. Throws RoyalRange when s^2 - 4p == 0.
RoyalData royal_nodes(const GammaInnerFn& h, const Tolerance& tol = {});

/// Throws MultiplicityAboveOne or RoyalRange.
BlaschkeData extract_royal_data(const GammaInnerFn& h, const Tolerance& tol = {});

struct VerificationReport {
    std::map<std::string, double> residuals;
    std::vector<std::string> flags;
    bool pass = false;
};

/// Omega values used by the Phi_omega cross-check: the first `count` golden
/// sequence points at distance > 1e-2 from every -conj(eta_j), j < k.
std::vector<cplx> check_omegas(const BlaschkeData& data, int count = 8);

/// Without data, the royal data extracted from h itself is checked.
VerificationReport verify_royal_solution(const GammaInnerFn& h, const std::optional<BlaschkeData>& data,
                                         const Tolerance& tol = {});

/// s = 2(1-r) l^(nu+1) / (1 + r l^(2nu+1)), p = l (l^(2nu+1) + r) / (1 + r l^(2nu+1)).
GammaInnerFn generate_h_nu(int nu, double r);

}  // namespace royal
