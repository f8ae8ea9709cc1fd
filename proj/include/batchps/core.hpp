#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace bps {

using cplx = std::complex<double>;

struct InstabilityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// all numerical failures derive from this one so the CLI can map them to exit 4
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DomainError : NumericalError {
    using NumericalError::NumericalError;
};
struct BranchCutError : NumericalError {
    using NumericalError::NumericalError;
};
struct SolverError : NumericalError {
    using NumericalError::NumericalError;
};
struct QuadratureError : NumericalError {
    using NumericalError::NumericalError;
};
struct AccuracyError : NumericalError {
    using NumericalError::NumericalError;
};
struct CapacityError : NumericalError {
    using NumericalError::NumericalError;
};
struct TruncationError : NumericalError {
    using NumericalError::NumericalError;
};

class QueueParams {
public:
    double rho() const { return rho_; }
    double q() const { return q_; }
    double load() const { return rho_ / (1.0 - q_); }

private:
    QueueParams(double r, double q) : rho_(r), q_(q) {}
    double rho_, q_;
    friend QueueParams validate_params(double, double);
};

// Throws InstabilityError naming the violated bound.
QueueParams validate_params(double rho, double q);

struct ComplexPoint {
    double re = 0.0;
    double im = 0.0;
    int branch_tag = 0;

    ComplexPoint() = default;
    ComplexPoint(double r, double i = 0.0, int tag = 0) : re(r), im(i), branch_tag(tag) {}
    ComplexPoint(cplx z) : re(z.real()), im(z.imag()) {}
    cplx value() const { return {re, im}; }
};

struct EvalConfig {
    double quad_rel_tol = 1e-9;
    double quad_abs_tol = 1e-14;
    double inner_tol_factor = 1e-2;
    int max_subdivisions = 2000;
    double newton_tol = 1e-13;
    int newton_max_iter = 100;

    void check() const;
};

enum class Method { simulation, bromwich, branchcut, asymptotic };
const char* method_name(Method m);

struct CcdfPoint {
    double x = 0.0;
    double value = 0.0;
    Method method = Method::simulation;
    double half_width = 0.0;
};

// Which boundary value to take when s sits on the real cut.
enum class Side { automatic, above_cut, below_cut };

// log(z) continued from a previous value: the imaginary part is shifted by
// 2*pi*k so that it lies within pi of prev.
template <class C>
C log_near(const C& z, const C& prev) {
    using R = typename C::value_type;
    const R two_pi = R(2) * R(3.14159265358979323846264338327950288L);
    C l = std::log(z);
    R k = std::round((prev.imag() - l.imag()) / two_pi);
    return C(l.real(), l.imag() + k * two_pi);
}

// z^a with an explicit winding counter; tag 0 is the principal branch.
inline cplx cpow_tagged(const ComplexPoint& z, cplx a) {
    const double two_pi = 2.0 * M_PI;
    cplx l(std::log(std::hypot(z.re, z.im)), std::atan2(z.im, z.re) + two_pi * z.branch_tag);
    return std::exp(a * l);
}

}  // namespace bps
