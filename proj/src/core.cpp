#include "batchps/core.hpp"

#include <sstream>

namespace bps {

QueueParams validate_params(double rho, double q) {
    std::ostringstream msg;
    if (!(std::isfinite(rho) && std::isfinite(q))) {
        msg << "parameters must be finite (rho=" << rho << ", q=" << q << ")";
        throw InstabilityError(msg.str());
    }
    if (!(rho > 0.0)) {
        msg << "rho must be positive, got " << rho;
        throw InstabilityError(msg.str());
    }
    if (!(q > 0.0 && q < 1.0)) {
        msg << "q must lie in (0,1), got " << q;
        throw InstabilityError(msg.str());
    }
    if (!(rho + q < 1.0)) {
        msg << "unstable: rho+q = " << rho + q << " >= 1";
        throw InstabilityError(msg.str());
    }
    return QueueParams(rho, q);
}

void EvalConfig::check() const {
    if (!(quad_rel_tol > 0 && quad_abs_tol > 0 && newton_tol > 0 && inner_tol_factor > 0 &&
          inner_tol_factor <= 1 && max_subdivisions > 0 && newton_max_iter > 0))
        throw DomainError("EvalConfig: tolerances must be positive and inner_tol_factor <= 1");
}

const char* method_name(Method m) {
    switch (m) {
        case Method::simulation: return "simulation";
        case Method::bromwich: return "bromwich";
        case Method::branchcut: return "branchcut";
        case Method::asymptotic: return "asymptotic";
    }
    return "?";
}

}  // namespace bps
