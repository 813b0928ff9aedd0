#include "royalgamma/types.hpp"

namespace royal {

void Tolerance::validate() const {
    if (!(trim_tol > 0 && root_cluster_tol > 0 && residual_tol > 0 && pd_tol > 0)) {
        throw Error(ErrorKind::InvalidData, "all tolerances must be strictly positive");
    }
}

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
        case ErrorKind::InvalidData: return "InvalidData";
        case ErrorKind::DegenerateData: return "DegenerateData";
        case ErrorKind::PoleAtNode: return "PoleAtNode";
        case ErrorKind::SingularPick: return "SingularPick";
        case ErrorKind::NoSuitableTau: return "NoSuitableTau";
        case ErrorKind::UnsuitableTau: return "UnsuitableTau";
        case ErrorKind::ZeroOrPoleAtPoint: return "ZeroOrPoleAtPoint";
        case ErrorKind::ExceptionalZeta: return "ExceptionalZeta";
        case ErrorKind::NotInner: return "NotInner";
        case ErrorKind::SingularPoint: return "SingularPoint";
        case ErrorKind::PreconditionViolated: return "PreconditionViolated";
        case ErrorKind::DenominatorZeroInDisc: return "DenominatorZeroInDisc";
        case ErrorKind::RoyalRange: return "RoyalRange";
        case ErrorKind::MultiplicityAboveOne: return "MultiplicityAboveOne";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

}  // namespace royal
