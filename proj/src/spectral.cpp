#include "batchps/spectral.hpp"

namespace bps {

CutInfo cut_info(const QueueParams& p) {
    double a = std::sqrt(1.0 - p.q()), r = std::sqrt(p.rho());
    return {-(a + r) * (a + r), -(a - r) * (a - r), -(p.rho() + p.q() * (1.0 - p.q())) / p.q()};
}

SpectralBundle roots_U(const QueueParams& p, cplx s, Side side) { return roots_U_t<double>(p.rho(), p.q(), s, side); }

double s_of_theta(const QueueParams& p, double theta) {
    return -1.0 + p.q() - p.rho() + 2.0 * std::sqrt(p.rho() * (1.0 - p.q())) * std::cos(theta);
}

cplx kernel_R(const SpectralBundle& b, cplx xi) { return kernel_R_t(b, xi); }

cplx kernel_frak_R(const SpectralBundle& b, cplx u, cplx v) {
    cplx ru = kernel_R_t(b, u);
    if (ru == cplx(0)) throw DomainError("kernel_frak_R: R(s;u) = 0");
    return kernel_R_t(b, v) / ru;
}

cplx map_X(const SpectralBundle& b, cplx v) { return map_X_t(b, v); }
cplx map_X_alt(const SpectralBundle& b, cplx v) { return map_X_alt_t(b, v); }
std::pair<cplx, cplx> polys_Q(const SpectralBundle& b, cplx v) { return polys_Q_t(b, v); }
std::pair<cplx, cplx> psi_maps(const SpectralBundle& b, cplx t) { return psi_maps_t(b.c_plus, t); }

cplx tree_T(const SpectralBundle& b, cplx w, const EvalConfig& cfg) {
    cplx L = tree_L_t<double>(w, b.c_plus, cfg.newton_tol, cfg.newton_max_iter);
    cplx T = std::exp(L), wt = w * std::exp((1.0 - b.c_plus) * L);
    double res = std::abs(1.0 - T + wt);
    double scale = 1.0 + std::abs(T) + std::abs(wt);
    if (!(res <= 1e3 * cfg.newton_tol * scale))
        throw SolverError("tree_T: residual " + std::to_string(res) + " above tolerance");
    return T;
}

cplx tree_T_series(const SpectralBundle& b, cplx w, int nterms) { return tree_series(w, 1.0 - b.c_plus, nterms); }

double tree_residual(const SpectralBundle& b, cplx w, cplx T) {
    return std::abs(1.0 - T + w * std::exp((1.0 - b.c_plus) * std::log(T)));
}

}  // namespace bps
