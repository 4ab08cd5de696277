#include "tsqkd/qcore.hpp"

#include <algorithm>
#include <cmath>

#include "tsqkd/errors.hpp"

namespace tsqkd {

Bit bit_from_int(int v) {
    if (v != 0 && v != 1) throw InvalidArgument("bit must be 0 or 1");
    return static_cast<Bit>(v);
}

ComplexMat2 ComplexMat2::adjoint() const {
    return {std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])};
}

bool ComplexMat2::is_finite() const {
    return std::all_of(m.begin(), m.end(),
                       [](const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

double ComplexMat2::max_abs_entry() const {
    double best = 0.0;
    for (const auto& z : m) best = std::max(best, std::abs(z));
    return best;
}

bool ComplexMat2::approx_equal(const ComplexMat2& other, double tol) const {
    return (*this - other).max_abs_entry() <= tol;
}

ComplexMat2 operator*(const ComplexMat2& a, const ComplexMat2& b) {
    return {a.m[0] * b.m[0] + a.m[1] * b.m[2], a.m[0] * b.m[1] + a.m[1] * b.m[3],
            a.m[2] * b.m[0] + a.m[3] * b.m[2], a.m[2] * b.m[1] + a.m[3] * b.m[3]};
}

ComplexMat2 operator+(const ComplexMat2& a, const ComplexMat2& b) {
    return {a.m[0] + b.m[0], a.m[1] + b.m[1], a.m[2] + b.m[2], a.m[3] + b.m[3]};
}

ComplexMat2 operator-(const ComplexMat2& a, const ComplexMat2& b) {
    return {a.m[0] - b.m[0], a.m[1] - b.m[1], a.m[2] - b.m[2], a.m[3] - b.m[3]};
}

ComplexMat2 operator*(Complex s, const ComplexMat2& a) {
    return {s * a.m[0], s * a.m[1], s * a.m[2], s * a.m[3]};
}

namespace pauli {
ComplexMat2 x() { return {0.0, 1.0, 1.0, 0.0}; }
ComplexMat2 y() { return {0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0}; }
ComplexMat2 z() { return {1.0, 0.0, 0.0, -1.0}; }
}  // namespace pauli

PureState::PureState(Complex alpha, Complex beta) {
    const double n2 = std::norm(alpha) + std::norm(beta);
    if (!std::isfinite(n2) || n2 <= 0.0) throw InvalidArgument("pure state amplitudes must be finite and non-zero");
    const double n = std::sqrt(n2);
    amp_ = {alpha / n, beta / n};
}

bool DensityMatrix::is_hermitian(double tol) const { return mat.approx_equal(mat.adjoint(), tol); }

bool DensityMatrix::has_unit_trace(double tol) const { return std::abs(mat.trace() - 1.0) <= tol; }

bool DensityMatrix::is_psd(double tol) const {
    // Eigenvalues of a Hermitian 2x2: t/2 +- sqrt((a-d)^2/4 + |b|^2).
    const double a = mat.m[0].real();
    const double d = mat.m[3].real();
    const double half_gap = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(mat.m[1]));
    return 0.5 * (a + d) - half_gap >= -tol;
}

double DensityMatrix::purity() const { return (mat * mat).trace().real(); }

bool Unitary::is_unitary(double tol) const {
    return (mat * mat.adjoint()).approx_equal(ComplexMat2::identity(), tol);
}

Unitary rotation(double theta) {
    if (!std::isfinite(theta)) throw InvalidArgument("rotation angle must be finite");
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return {{c, -s, s, c}};
}

ComplexMat2 commutator(const ComplexMat2& a, const ComplexMat2& b) { return a * b - b * a; }

std::array<Complex, 2> multiply(const ComplexMat2& a, const PureState& s) {
    return {a.m[0] * s.alpha() + a.m[1] * s.beta(), a.m[2] * s.alpha() + a.m[3] * s.beta()};
}

PureState apply_unitary(const PureState& s, const Unitary& u) {
    const auto v = multiply(u.mat, s);
    return {v[0], v[1]};
}

DensityMatrix density_from_pure(const PureState& s) {
    const Complex a = s.alpha();
    const Complex b = s.beta();
    return {{a * std::conj(a), a * std::conj(b), b * std::conj(a), b * std::conj(b)}};
}

DensityMatrix apply_unitary(const DensityMatrix& rho, const Unitary& u) {
    return {u.mat * rho.mat * u.mat.adjoint()};
}

double prob_one(const PureState& s) { return std::norm(s.beta()); }

double prob_one(const DensityMatrix& rho) { return rho.mat.m[3].real(); }

Bit measure_z(const PureState& s, RandomStream& rng) { return rng.uniform() < prob_one(s) ? Bit::One : Bit::Zero; }

}  // namespace tsqkd
