#include "royalgamma/pick.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace royal {

namespace {

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

std::string node_label(size_t j) { return "node " + std::to_string(j); }

}  // namespace

BlaschkeData::BlaschkeData(std::vector<cplx> sigma, std::vector<cplx> eta, std::vector<double> rho)
    : sigma_(std::move(sigma)), eta_(std::move(eta)), rho_(std::move(rho)) {
    if (sigma_.empty()) throw Error(ErrorKind::InvalidData, "empty node list");
    if (eta_.size() != sigma_.size())
        throw Error(ErrorKind::InvalidData, "sigma and eta must have the same length");
    if (rho_.size() > sigma_.size()) throw Error(ErrorKind::InvalidData, "more rho values than nodes");

    for (size_t j = 0; j < sigma_.size(); ++j) {
        if (!finite(sigma_[j]) || !finite(eta_[j]))
            throw Error(ErrorKind::InvalidData, node_label(j) + ": non-finite value");
        const double ms = std::abs(sigma_[j]);
        const double me = std::abs(eta_[j]);
        if (j < rho_.size()) {
            if (std::abs(ms - 1.0) > kBoundaryTol)
                throw Error(ErrorKind::InvalidData, node_label(j) + ": boundary sigma is not on the unit circle");
            if (std::abs(me - 1.0) > kBoundaryTol)
                throw Error(ErrorKind::InvalidData, node_label(j) + ": boundary eta is not unimodular");
            if (!(rho_[j] > 0.0) || !std::isfinite(rho_[j]))
                throw Error(ErrorKind::InvalidData, node_label(j) + ": rho must be positive");
            sigma_[j] /= ms;
            eta_[j] /= me;
        } else {
            if (!(ms < 1.0 - kBoundaryTol))
                throw Error(ErrorKind::InvalidData, node_label(j) + ": interior sigma must lie inside the disc");
            if (!(me < 1.0))
                throw Error(ErrorKind::InvalidData, node_label(j) + ": interior eta must lie inside the disc");
        }
    }
}

BlaschkeData BlaschkeData::from_nodes(const std::vector<Node>& nodes) {
    std::vector<cplx> sigma, eta, isigma, ieta;
    std::vector<double> rho;
    for (size_t j = 0; j < nodes.size(); ++j) {
        const auto& nd = nodes[j];
        const bool boundary = std::abs(std::abs(nd.sigma) - 1.0) <= kBoundaryTol;
        if (boundary) {
            if (!nd.rho) throw Error(ErrorKind::InvalidData, node_label(j) + ": rho is required on the unit circle");
            sigma.push_back(nd.sigma);
            eta.push_back(nd.eta);
            rho.push_back(*nd.rho);
        } else {
            if (nd.rho) throw Error(ErrorKind::InvalidData, node_label(j) + ": rho is only allowed on the unit circle");
            isigma.push_back(nd.sigma);
            ieta.push_back(nd.eta);
        }
    }
    sigma.insert(sigma.end(), isigma.begin(), isigma.end());
    eta.insert(eta.end(), ieta.begin(), ieta.end());
    return BlaschkeData(std::move(sigma), std::move(eta), std::move(rho));
}

std::string BlaschkeData::digest() const {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](double v) {
        unsigned char bytes[sizeof(double)];
        std::memcpy(bytes, &v, sizeof(double));
        for (unsigned char b : bytes) {
            h ^= b;
            h *= 1099511628211ULL;
        }
    };
    mix(static_cast<double>(n()));
    mix(static_cast<double>(k()));
    for (size_t j = 0; j < n(); ++j) {
        mix(sigma_[j].real());
        mix(sigma_[j].imag());
        mix(eta_[j].real());
        mix(eta_[j].imag());
    }
    for (double r : rho_) mix(r);
    std::ostringstream os;
    os << std::hex;
    os.width(16);
    os.fill('0');
    os << h;
    return os.str();
}

PickMatrix build_pick_matrix(const BlaschkeData& data, const Tolerance& tol) {
    const auto n = static_cast<Eigen::Index>(data.n());
    const auto k = static_cast<Eigen::Index>(data.k());
    const auto& s = data.sigma();
    const auto& e = data.eta();
    PickMatrix m{Eigen::MatrixXcd(n, n)};
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            if (i == j && i < k) {
                m.entries(i, j) = data.rho()[i];
                continue;
            }
            const cplx den = 1.0 - std::conj(s[i]) * s[j];
            if (i != j && (std::abs(den) < tol.trim_tol || std::abs(s[i] - s[j]) < tol.trim_tol))
                throw Error(ErrorKind::DegenerateData, "coincident nodes " + std::to_string(i) + " and " +
                                                           std::to_string(j));
            m.entries(i, j) = (1.0 - std::conj(e[i]) * e[j]) / den;
        }
    }
    // Exactly Hermitian with a real diagonal.
    const Eigen::MatrixXcd sym = 0.5 * (m.entries + m.entries.adjoint());
    m.entries = sym;
    return m;
}

PdCheck check_positive_definite(const PickMatrix& m, const Tolerance& tol) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m.entries, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd ev = es.eigenvalues();
    const double top = std::max(1.0, ev.cwiseAbs().maxCoeff());
    const double thr = tol.pd_tol * top;
    const double lo = ev.minCoeff();
    int rank = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i)
        if (ev(i) > thr) ++rank;
    if (lo < -thr) return {Definiteness::Indefinite, rank, lo};
    if (lo <= thr) return {Definiteness::Semidefinite, rank, lo};
    return {Definiteness::Definite, rank, lo};
}

cplx inner(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) {
    // Eigen's dot conjugates its left operand.
    return v.dot(u);
}

KernelVectors kernel_vectors(const BlaschkeData& data, cplx lambda) {
    const auto n = static_cast<Eigen::Index>(data.n());
    KernelVectors kv{Eigen::VectorXcd(n), Eigen::VectorXcd(n), lambda};
    for (Eigen::Index i = 0; i < n; ++i) {
        const cplx den = 1.0 - std::conj(data.sigma()[i]) * lambda;
        if (std::abs(den) < Tolerance{}.trim_tol)
            throw Error(ErrorKind::PoleAtNode, "kernel evaluated at the pole of node " + std::to_string(i));
        kv.x(i) = 1.0 / den;
        kv.y(i) = std::conj(data.eta()[i]) * kv.x(i);
    }
    return kv;
}

PickSolver::PickSolver(const PickMatrix& m, const Tolerance& tol) : m_(m), llt_(m.entries) {
    if (llt_.info() != Eigen::Success)
        throw Error(ErrorKind::SingularPick, "Cholesky factorization of the Pick matrix failed");
    const Eigen::MatrixXcd l = llt_.matrixL();
    const double scale = std::max(1.0, m.entries.diagonal().real().cwiseAbs().maxCoeff());
    for (Eigen::Index i = 0; i < l.rows(); ++i) {
        if (std::norm(l(i, i)) <= tol.pd_tol * scale)
            throw Error(ErrorKind::SingularPick, "Pick matrix is not positive definite at pd_tol");
    }
}

double augmented_rho(const PickMatrix& m, const BlaschkeData& data, cplx zeta, cplx tau, const Tolerance& tol) {
    const PickSolver solver(m, tol);
    const KernelVectors kv = kernel_vectors(data, tau);
    const Eigen::VectorXcd u = kv.x - zeta * kv.y;
    return inner(solver.solve(u), u).real();
}

Eigen::MatrixXcd bordered_matrix(const PickMatrix& m, const BlaschkeData& data, cplx zeta, cplx tau, double rho) {
    const Eigen::Index n = m.entries.rows();
    const KernelVectors kv = kernel_vectors(data, tau);
    const Eigen::VectorXcd u = kv.x - zeta * kv.y;
    Eigen::MatrixXcd b(n + 1, n + 1);
    b.topLeftCorner(n, n) = m.entries;
    b.topRightCorner(n, 1) = u;
    b.bottomLeftCorner(1, n) = u.adjoint();
    b(n, n) = rho;
    return b;
}

bool ExceptionalSet::contains(cplx zeta, double band) const {
    if (all_of_circle) return true;
    for (const auto& z : points)
        if (std::abs(z - zeta) <= band) return true;
    return false;
}

ExceptionalSet exceptional_set(const PickMatrix& m, const BlaschkeData& data, cplx tau, const Tolerance& tol) {
    ExceptionalSet out;
    if (data.k() == 0) return out;
    const PickSolver solver(m, tol);
    const KernelVectors kv = kernel_vectors(data, tau);
    const Eigen::VectorXcd wx = solver.solve(kv.x);
    const Eigen::VectorXcd wy = solver.solve(kv.y);
    const double scale = std::max(wx.cwiseAbs().maxCoeff(), wy.cwiseAbs().maxCoeff());
    const double zero = kExceptionalBand * scale;
    for (size_t j = 0; j < data.k(); ++j) {
        const cplx alpha = wx(static_cast<Eigen::Index>(j));
        const cplx beta = wy(static_cast<Eigen::Index>(j));
        if (std::abs(beta) <= zero) {
            if (std::abs(alpha) <= zero) {
                out.all_of_circle = true;
                out.points.clear();
                return out;
            }
            continue;
        }
        const cplx zeta = alpha / beta;
        if (std::abs(std::abs(zeta) - 1.0) <= kExceptionalBand) out.points.push_back(zeta / std::abs(zeta));
    }
    return out;
}

cplx tau_candidate(int m) {
    const double frac = std::fmod(static_cast<double>(m) * std::numbers::phi, 1.0);
    return std::polar(1.0, 2.0 * std::numbers::pi * frac);
}

cplx choose_tau(const PickMatrix& m, const BlaschkeData& data, const Tolerance& tol, int start) {
    for (int i = 0; i < kMaxTauCandidates; ++i) {
        const cplx tau = tau_candidate(start + i);
        bool clear = true;
        for (size_t j = 0; j < data.k(); ++j)
            if (std::abs(tau - data.sigma()[j]) <= kTauNodeClearance) clear = false;
        if (!clear) continue;
        if (exceptional_set(m, data, tau, tol).finite()) return tau;
    }
    throw Error(ErrorKind::NoSuitableTau, "no suitable base point among the candidate sequence");
}

}  // namespace royal
