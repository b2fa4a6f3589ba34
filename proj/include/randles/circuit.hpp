#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "randles/error.hpp"

namespace randles {

/// Circuit parameter vector theta = (R_inf, R_1..R_n, C_1..C_n, C_w).
/// All entries strictly positive and finite; r and c have equal length n >= 0
/// (n = 0 means R_inf in series with C_w only).
struct CircuitParams {
    double r_inf = 0.0;
    std::vector<double> r;
    std::vector<double> c;
    double c_w = 0.0;

    int order() const { return static_cast<int>(r.size()); }
};

/// Modal reparametrisation: a_i = 1/(R_i C_i), b_i = 1/C_i, b_w = 1/C_w,
/// d = R_inf.
struct ModalParams {
    std::vector<double> a;
    std::vector<double> b;
    double b_w = 0.0;
    double d = 0.0;

    int order() const { return static_cast<int>(a.size()); }
};

/// Diagonal-A state-space realization (A, B, C, D); the last diagonal entry
/// is exactly 0 (integrator state) and C is all ones.
struct StateSpaceModel {
    std::vector<double> a_diag;
    std::vector<double> b_vec;
    std::vector<double> c_vec;
    double d_scalar = 0.0;
};

/// Monic rational transfer function. Coefficients are stored ascending in s;
/// the leading denominator coefficient 1 is implicit and never stored. For a
/// Randles circuit of order n both coefficient lists have n+2 and n+1 entries
/// (k1 = k2 = n+1). integrator_fixed asserts den[0] == 0.
struct RationalTF {
    std::vector<double> num;
    std::vector<double> den;
    bool integrator_fixed = false;
};

/// Throws Errc::InvalidParams unless every entry is strictly positive and
/// finite and r/c lengths match.
void validate(const CircuitParams& params);
void validate(const ModalParams& modal);

ModalParams to_modal(const CircuitParams& params);

/// Exact inverse of to_modal: R_inf = d, C_w = 1/b_w, R_i = b_i/a_i,
/// C_i = 1/b_i.
CircuitParams from_modal(const ModalParams& modal);

StateSpaceModel to_state_space(const ModalParams& modal);

/// True when min pairwise |a_i - a_j| / max(a) < 1e-9. to_tf warns (stderr)
/// on such inputs instead of rejecting them; the forward map stays defined.
bool near_duplicate_poles(const ModalParams& modal);

/// Expands sum_i b_i/(s + a_i) + b_w/s + d over the common denominator
/// s * prod(s + a_i) into the monic rational form; den[0] = 0 always.
RationalTF to_tf(const ModalParams& modal);

/// T(j*omega) = num(j*omega)/den(j*omega). Throws Errc::PoleOnAxis when
/// |den(j*omega)| < 1e-300 (omega = 0 with the integrator pole).
std::complex<double> eval_tf(const RationalTF& tf, double omega);

/// Multiplies an ascending-coefficient polynomial by (s + root) in place.
void multiply_monomial(std::vector<double>& poly, double root);

/// Evaluates an ascending-coefficient polynomial at s; if monic is set, an
/// implicit leading coefficient 1 of degree coeffs.size() is added.
std::complex<double> eval_poly(const std::vector<double>& coeffs, std::complex<double> s,
                               bool monic = false);

/// Roots of the monic polynomial s^m + coeffs[m-1] s^{m-1} + ... + coeffs[0]
/// via companion-matrix eigenvalues with Newton polishing.
std::vector<std::complex<double>> monic_roots(const std::vector<double>& coeffs);

}  // namespace randles
