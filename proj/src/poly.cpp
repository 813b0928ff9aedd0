#include "royalgamma/poly.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace royal {

namespace {

void trim(std::vector<cplx>& c, double rel_trim) {
    double biggest = 0.0;
    for (const auto& v : c) biggest = std::max(biggest, std::abs(v));
    if (biggest == 0.0) {
        c.clear();
        return;
    }
    const double cut = rel_trim * biggest;
    while (!c.empty() && std::abs(c.back()) <= cut) c.pop_back();
}

// Parlett-Reinsch balancing with radix 2; similarity transform only.
void balance(Eigen::MatrixXcd& a) {
    const Eigen::Index n = a.rows();
    constexpr double radix = 2.0;
    bool converged = false;
    while (!converged) {
        converged = true;
        for (Eigen::Index i = 0; i < n; ++i) {
            double r = 0.0, c = 0.0;
            for (Eigen::Index j = 0; j < n; ++j) {
                if (j == i) continue;
                c += std::abs(a(j, i));
                r += std::abs(a(i, j));
            }
            if (c == 0.0 || r == 0.0) continue;
            double g = r / radix;
            double f = 1.0;
            const double s = c + r;
            while (c < g) {
                f *= radix;
                c *= radix * radix;
            }
            g = r * radix;
            while (c > g) {
                f /= radix;
                c /= radix * radix;
            }
            if ((c + r) / f < 0.95 * s) {
                converged = false;
                a.row(i) /= f;
                a.col(i) *= f;
            }
        }
    }
}

cplx newton_step(const Poly& p, const Poly& dp, cplx z) {
    const cplx d = dp(z);
    if (d == cplx(0.0)) return z;
    const cplx z1 = z - p(z) / d;
    return std::abs(p(z1)) < std::abs(p(z)) ? z1 : z;
}

}  // namespace

Poly::Poly(std::initializer_list<cplx> coeffs) : c_(coeffs) { trim(c_, kDefaultTrim); }

Poly::Poly(std::vector<cplx> coeffs, double rel_trim) : c_(std::move(coeffs)) {
    trim(c_, rel_trim);
}

Poly Poly::constant(cplx c) { return Poly({c}); }

Poly Poly::monomial(int power, cplx c) {
    std::vector<cplx> v(static_cast<size_t>(power) + 1, 0.0);
    v.back() = c;
    return Poly(std::move(v));
}

Poly Poly::from_roots(std::span<const cplx> roots, cplx lead) {
    Poly out = Poly::constant(lead);
    for (const auto& r : roots) out *= Poly({-r, 1.0});
    return out;
}

cplx Poly::coeff(int j) const {
    if (j < 0 || j >= static_cast<int>(c_.size())) return 0.0;
    return c_[static_cast<size_t>(j)];
}

cplx Poly::leading() const { return c_.empty() ? cplx(0.0) : c_.back(); }

double Poly::max_abs_coeff() const {
    double m = 0.0;
    for (const auto& v : c_) m = std::max(m, std::abs(v));
    return m;
}

cplx Poly::operator()(cplx z) const {
    cplx acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
    return acc;
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<cplx> d(c_.size() - 1);
    for (size_t j = 1; j < c_.size(); ++j) d[j - 1] = static_cast<double>(j) * c_[j];
    return Poly(std::move(d));
}

Poly Poly::deflate(cplx root) const {
    const int n = degree();
    if (n <= 0) return {};
    std::vector<cplx> q(static_cast<size_t>(n));
    if (std::abs(root) <= 1.0) {
        q[n - 1] = c_[n];
        for (int j = n - 1; j >= 1; --j) q[j - 1] = c_[j] + root * q[j];
    } else {
        q[0] = -c_[0] / root;
        for (int j = 1; j < n; ++j) q[j] = (q[j - 1] - c_[j]) / root;
    }
    return Poly(std::move(q));
}

Poly& Poly::operator+=(const Poly& rhs) {
    if (rhs.c_.size() > c_.size()) c_.resize(rhs.c_.size(), 0.0);
    for (size_t j = 0; j < rhs.c_.size(); ++j) c_[j] += rhs.c_[j];
    trim(c_, kDefaultTrim);
    return *this;
}

Poly& Poly::operator-=(const Poly& rhs) {
    if (rhs.c_.size() > c_.size()) c_.resize(rhs.c_.size(), 0.0);
    for (size_t j = 0; j < rhs.c_.size(); ++j) c_[j] -= rhs.c_[j];
    trim(c_, kDefaultTrim);
    return *this;
}

Poly& Poly::operator*=(const Poly& rhs) {
    if (c_.empty() || rhs.c_.empty()) {
        c_.clear();
        return *this;
    }
    std::vector<cplx> out(c_.size() + rhs.c_.size() - 1, 0.0);
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < rhs.c_.size(); ++j) out[i + j] += c_[i] * rhs.c_[j];
    c_ = std::move(out);
    trim(c_, kDefaultTrim);
    return *this;
}

Poly& Poly::operator*=(cplx s) {
    for (auto& v : c_) v *= s;
    trim(c_, kDefaultTrim);
    return *this;
}

double coeff_distance(const Poly& p, const Poly& q) {
    const int n = std::max(p.degree(), q.degree());
    double d = 0.0;
    for (int j = 0; j <= n; ++j) d = std::max(d, std::abs(p.coeff(j) - q.coeff(j)));
    return d;
}

cplx poly_eval(const Poly& p, cplx z) { return p(z); }

Poly poly_derivative(const Poly& p) { return p.derivative(); }

std::vector<Root> poly_roots(const Poly& p, const Tolerance& tol) {
    if (p.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "roots of the zero polynomial are undefined");
    const int n = p.degree();
    if (n == 0) return {};

    // Exact zero roots are split off before the eigenvalue solve.
    int zeros = 0;
    while (p.coeff(zeros) == cplx(0.0)) ++zeros;
    std::vector<cplx> raw(static_cast<size_t>(zeros), 0.0);

    const int m = n - zeros;
    if (m > 0) {
        Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(m, m);
        const cplx lead = p.leading();
        for (int j = 0; j < m; ++j) comp(0, j) = -p.coeff(n - 1 - j) / lead;
        for (int i = 1; i < m; ++i) comp(i, i - 1) = 1.0;
        balance(comp);
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
        const Poly dp = p.derivative();
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
            raw.push_back(newton_step(p, dp, es.eigenvalues()(i)));
    }

    // Single-linkage clustering.
    std::vector<int> label(raw.size());
    std::iota(label.begin(), label.end(), 0);
    auto find = [&](int i) {
        while (label[i] != i) i = label[i] = label[label[i]];
        return i;
    };
    for (size_t i = 0; i < raw.size(); ++i)
        for (size_t j = i + 1; j < raw.size(); ++j)
            if (std::abs(raw[i] - raw[j]) <= tol.root_cluster_tol) label[find(int(j))] = find(int(i));

    std::vector<Root> out;
    std::vector<int> seen;
    for (size_t i = 0; i < raw.size(); ++i) {
        const int head = find(int(i));
        if (std::find(seen.begin(), seen.end(), head) != seen.end()) continue;
        seen.push_back(head);
        cplx sum = 0.0;
        int count = 0;
        for (size_t j = 0; j < raw.size(); ++j)
            if (find(int(j)) == head) {
                sum += raw[j];
                ++count;
            }
        cplx z = sum / double(count);
        if (count > 1) {
            // A root of multiplicity m is a simple root of p^(m-1).
            Poly dk = p;
            for (int k = 1; k < count; ++k) dk = dk.derivative();
            const Poly dk1 = dk.derivative();
            for (int it = 0; it < 3; ++it) z = newton_step(dk, dk1, z);
        }
        out.push_back({z, count, std::abs(p(z))});
    }
    std::sort(out.begin(), out.end(), [](const Root& a, const Root& b) {
        return std::pair(a.value.real(), a.value.imag()) < std::pair(b.value.real(), b.value.imag());
    });
    return out;
}

std::vector<cplx> flatten(const std::vector<Root>& roots) {
    std::vector<cplx> out;
    for (const auto& r : roots)
        for (int k = 0; k < r.multiplicity; ++k) out.push_back(r.value);
    return out;
}

}  // namespace royal
