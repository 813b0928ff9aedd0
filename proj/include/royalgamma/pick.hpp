#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "royalgamma/types.hpp"

namespace royal {

/// Interpolation data (sigma, eta, rho): n nodes, the first k on the unit
/// circle with unimodular targets and positive phasar-derivative bounds rho,
/// the remaining n - k strictly inside the disc.
class BlaschkeData {
public:
    /// Unit-circle membership is decided at this tolerance; accepted boundary
    /// points are then renormalized exactly onto the circle.
    static constexpr double kBoundaryTol = 1e-9;

    /// Validates and normalizes. Nodes must already be ordered boundary
    /// first; rho.size() is the number of boundary nodes.
    BlaschkeData(std::vector<cplx> sigma, std::vector<cplx> eta, std::vector<double> rho);

    struct Node {
        cplx sigma;
        cplx eta;
        std::optional<double> rho;
    };
    /// Accepts nodes in any order; boundary nodes (|sigma| = 1) must carry
    /// rho and interior ones must not. Boundary nodes are moved to the
    /// front, preserving relative order.
    static BlaschkeData from_nodes(const std::vector<Node>& nodes);

    size_t n() const { return sigma_.size(); }
    size_t k() const { return rho_.size(); }
    const std::vector<cplx>& sigma() const { return sigma_; }
    const std::vector<cplx>& eta() const { return eta_; }
    const std::vector<double>& rho() const { return rho_; }

    /// FNV-1a digest of the canonical numeric content, hex encoded.
    std::string digest() const;

private:
    std::vector<cplx> sigma_;
    std::vector<cplx> eta_;
    std::vector<double> rho_;
};

struct PickMatrix {
    Eigen::MatrixXcd entries;
};

enum class Definiteness { Definite, Semidefinite, Indefinite };

struct PdCheck {
    Definiteness kind;
    int rank;
    double min_eigenvalue;
};

/// Boundary diagonal carries rho, every other entry is
/// (1 - conj(eta_i) eta_j) / (1 - conj(sigma_i) sigma_j).
PickMatrix build_pick_matrix(const BlaschkeData& data, const Tolerance& tol = {});

/// Eigenvalues compared against pd_tol * max(1, |largest eigenvalue|).
PdCheck check_positive_definite(const PickMatrix& m, const Tolerance& tol = {});

/// <u, v> = sum_i u_i conj(v_i), linear in the first slot.
cplx inner(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v);

struct KernelVectors {
    Eigen::VectorXcd x;  // 1 / (1 - conj(sigma_i) lambda)
    Eigen::VectorXcd y;  // conj(eta_i) x_i
    cplx at;
};

KernelVectors kernel_vectors(const BlaschkeData& data, cplx lambda);

/// Cholesky-backed application of M^{-1}. Throws SingularPick when M is not
/// positive definite at pd_tol.
class PickSolver {
public:
    PickSolver(const PickMatrix& m, const Tolerance& tol = {});
    Eigen::VectorXcd solve(const Eigen::VectorXcd& rhs) const { return llt_.solve(rhs); }
    const PickMatrix& matrix() const { return m_; }

private:
    PickMatrix m_;
    Eigen::LLT<Eigen::MatrixXcd> llt_;
};

/// rho_{zeta,tau} = <M^{-1} u, u> with u = x_tau - zeta y_tau; the value that
/// makes the bordered matrix singular.
double augmented_rho(const PickMatrix& m, const BlaschkeData& data, cplx zeta, cplx tau,
                     const Tolerance& tol = {});

/// [[M, u], [u*, rho]] for the augmented problem.
Eigen::MatrixXcd bordered_matrix(const PickMatrix& m, const BlaschkeData& data, cplx zeta, cplx tau,
                                 double rho);

struct ExceptionalSet {
    bool all_of_circle = false;
    std::vector<cplx> points;

    bool finite() const { return !all_of_circle; }
    /// True when zeta is within `band` of a listed point (or the set is T).
    bool contains(cplx zeta, double band) const;
};

/// Parameters zeta on T for which (M^{-1} u_{zeta,tau})_j vanishes for some
/// boundary index j. Relative tolerance 1e-8 on the defining scalars.
ExceptionalSet exceptional_set(const PickMatrix& m, const BlaschkeData& data, cplx tau,
                               const Tolerance& tol = {});

inline constexpr double kExceptionalBand = 1e-8;
inline constexpr double kTauNodeClearance = 1e-3;
inline constexpr int kMaxTauCandidates = 1000;

/// The m-th point of the golden-ratio circle sequence exp(2 pi i frac(m phi)).
cplx tau_candidate(int m);

/// First candidate (starting at index `start`) that keeps kTauNodeClearance
/// from every boundary node and has a finite exceptional set.
cplx choose_tau(const PickMatrix& m, const BlaschkeData& data, const Tolerance& tol = {}, int start = 1);

}  // namespace royal
