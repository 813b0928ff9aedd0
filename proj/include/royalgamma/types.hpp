#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace royal {

using cplx = std::complex<double>;

/// Numerical tolerances shared by every stage of the pipeline.
///
/// `trim_tol` is relative: a coefficient is dropped from the top of a
/// polynomial when its modulus is below trim_tol times the largest
/// coefficient modulus.
struct Tolerance {
    double trim_tol = 1e-12;
    double root_cluster_tol = 1e-7;
    double residual_tol = 1e-8;
    double pd_tol = 1e-10;

    void validate() const;
};

enum class ErrorKind {
    ZeroPolynomial,
    InvalidData,
    DegenerateData,
    PoleAtNode,
    SingularPick,
    NoSuitableTau,
    UnsuitableTau,
    ZeroOrPoleAtPoint,
    ExceptionalZeta,
    NotInner,
    SingularPoint,
    PreconditionViolated,
    DenominatorZeroInDisc,
    RoyalRange,
    MultiplicityAboveOne,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what);
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace royal
