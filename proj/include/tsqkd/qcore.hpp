#pragma once

#include <array>
#include <complex>
#include <cstdint>

#include "tsqkd/random.hpp"

namespace tsqkd {

using Complex = std::complex<double>;

inline constexpr double kInvariantTol = 1e-10;
inline constexpr double kIdentityTol = 1e-12;

enum class Bit : std::uint8_t { Zero = 0, One = 1 };

constexpr int to_int(Bit b) noexcept { return static_cast<int>(b); }
// Throws InvalidArgument unless v is 0 or 1.
Bit bit_from_int(int v);

// 2x2 complex matrix, row-major (a11, a12, a21, a22). Unitaries, Kraus
// operators and density matrices all live in this type.
struct ComplexMat2 {
    std::array<Complex, 4> m{};

    constexpr ComplexMat2() = default;
    constexpr ComplexMat2(Complex a11, Complex a12, Complex a21, Complex a22) : m{a11, a12, a21, a22} {}

    static ComplexMat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static ComplexMat2 zero() { return {}; }
    static ComplexMat2 diag(Complex a, Complex d) { return {a, 0.0, 0.0, d}; }

    Complex& operator()(int r, int c) { return m[static_cast<std::size_t>(2 * r + c)]; }
    const Complex& operator()(int r, int c) const { return m[static_cast<std::size_t>(2 * r + c)]; }

    ComplexMat2 adjoint() const;
    Complex trace() const { return m[0] + m[3]; }
    bool is_finite() const;
    double max_abs_entry() const;
    bool approx_equal(const ComplexMat2& other, double tol) const;

    friend ComplexMat2 operator*(const ComplexMat2& a, const ComplexMat2& b);
    friend ComplexMat2 operator+(const ComplexMat2& a, const ComplexMat2& b);
    friend ComplexMat2 operator-(const ComplexMat2& a, const ComplexMat2& b);
    friend ComplexMat2 operator*(Complex s, const ComplexMat2& a);
};

namespace pauli {
ComplexMat2 x();
ComplexMat2 y();
ComplexMat2 z();
}  // namespace pauli

// Single-qubit pure state alpha|0> + beta|1>.
class PureState {
public:
    PureState() : amp_{1.0, 0.0} {}
    // Normalizes the given amplitudes; throws InvalidArgument on a zero or
    // non-finite vector.
    PureState(Complex alpha, Complex beta);

    static PureState zero() { return {}; }
    static PureState one() { return {0.0, 1.0}; }
    static PureState basis(Bit b) { return b == Bit::Zero ? zero() : one(); }

    Complex alpha() const { return amp_[0]; }
    Complex beta() const { return amp_[1]; }
    double norm_squared() const { return std::norm(amp_[0]) + std::norm(amp_[1]); }

private:
    std::array<Complex, 2> amp_;
};

struct DensityMatrix {
    ComplexMat2 mat;

    bool is_hermitian(double tol = kInvariantTol) const;
    bool has_unit_trace(double tol = kInvariantTol) const;
    bool is_psd(double tol = kInvariantTol) const;
    bool is_valid(double tol = kInvariantTol) const { return is_hermitian(tol) && has_unit_trace(tol) && is_psd(tol); }
    double purity() const;
};

struct Unitary {
    ComplexMat2 mat;

    bool is_unitary(double tol = kInvariantTol) const;
    Unitary adjoint() const { return {mat.adjoint()}; }
};

// Real rotation [[cos t, -sin t], [sin t, cos t]].
Unitary rotation(double theta);

ComplexMat2 commutator(const ComplexMat2& a, const ComplexMat2& b);

// Matrix-vector product without renormalization. The result may have any
// norm; callers decide what to do with it.
std::array<Complex, 2> multiply(const ComplexMat2& a, const PureState& s);

PureState apply_unitary(const PureState& s, const Unitary& u);
DensityMatrix density_from_pure(const PureState& s);
DensityMatrix apply_unitary(const DensityMatrix& rho, const Unitary& u);

double prob_one(const PureState& s);
double prob_one(const DensityMatrix& rho);

// Projective Z readout. Consumes exactly one uniform draw.
Bit measure_z(const PureState& s, RandomStream& rng);

}  // namespace tsqkd
