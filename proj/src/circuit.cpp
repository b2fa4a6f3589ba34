#include "randles/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace randles {

namespace {

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

void validate(const CircuitParams& params) {
    if (!positive_finite(params.r_inf) || !positive_finite(params.c_w))
        fail(Errc::InvalidParams, "r_inf and c_w must be strictly positive and finite");
    if (params.r.size() != params.c.size())
        fail(Errc::InvalidParams, "r and c must have equal length");
    for (double x : params.r)
        if (!positive_finite(x)) fail(Errc::InvalidParams, "nonpositive resistance");
    for (double x : params.c)
        if (!positive_finite(x)) fail(Errc::InvalidParams, "nonpositive capacitance");
}

void validate(const ModalParams& modal) {
    if (!positive_finite(modal.b_w) || !positive_finite(modal.d))
        fail(Errc::InvalidParams, "b_w and d must be strictly positive and finite");
    if (modal.a.size() != modal.b.size())
        fail(Errc::InvalidParams, "a and b must have equal length");
    for (double x : modal.a)
        if (!positive_finite(x)) fail(Errc::InvalidParams, "nonpositive pole rate");
    for (double x : modal.b)
        if (!positive_finite(x)) fail(Errc::InvalidParams, "nonpositive residue");
}

ModalParams to_modal(const CircuitParams& params) {
    validate(params);
    ModalParams modal;
    int n = params.order();
    modal.a.resize(n);
    modal.b.resize(n);
    for (int i = 0; i < n; ++i) {
        modal.a[i] = 1.0 / (params.r[i] * params.c[i]);
        modal.b[i] = 1.0 / params.c[i];
    }
    modal.b_w = 1.0 / params.c_w;
    modal.d = params.r_inf;
    return modal;
}

CircuitParams from_modal(const ModalParams& modal) {
    validate(modal);
    CircuitParams params;
    int n = modal.order();
    params.r.resize(n);
    params.c.resize(n);
    for (int i = 0; i < n; ++i) {
        params.r[i] = modal.b[i] / modal.a[i];
        params.c[i] = 1.0 / modal.b[i];
    }
    params.c_w = 1.0 / modal.b_w;
    params.r_inf = modal.d;
    return params;
}

StateSpaceModel to_state_space(const ModalParams& modal) {
    validate(modal);
    StateSpaceModel ss;
    int n = modal.order();
    ss.a_diag.resize(n + 1);
    ss.b_vec.resize(n + 1);
    ss.c_vec.assign(n + 1, 1.0);
    for (int i = 0; i < n; ++i) {
        ss.a_diag[i] = -modal.a[i];
        ss.b_vec[i] = modal.b[i];
    }
    ss.a_diag[n] = 0.0;
    ss.b_vec[n] = modal.b_w;
    ss.d_scalar = modal.d;
    return ss;
}

bool near_duplicate_poles(const ModalParams& modal) {
    int n = modal.order();
    if (n < 2) return false;
    double a_max = *std::max_element(modal.a.begin(), modal.a.end());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(modal.a[i] - modal.a[j]) < 1e-9 * a_max) return true;
    return false;
}

void multiply_monomial(std::vector<double>& poly, double root) {
    // (c_0 + c_1 s + ...) * (s + root), ascending coefficients
    poly.push_back(0.0);
    for (std::size_t k = poly.size() - 1; k > 0; --k)
        poly[k] = poly[k - 1] + root * poly[k];
    poly[0] *= root;
}

std::complex<double> eval_poly(const std::vector<double>& coeffs, std::complex<double> s,
                               bool monic) {
    std::complex<double> value = monic ? 1.0 : 0.0;
    for (std::size_t k = coeffs.size(); k > 0; --k) value = value * s + coeffs[k - 1];
    return value;
}

RationalTF to_tf(const ModalParams& modal) {
    validate(modal);
    if (near_duplicate_poles(modal))
        std::cerr << "warning: near-coincident poles, coefficient map is ill-conditioned\n";
    int n = modal.order();

    // common denominator s * prod_i (s + a_i), stored without the monic lead
    RationalTF tf;
    tf.integrator_fixed = true;
    std::vector<double> prod_all{1.0};  // prod_i (s + a_i)
    for (int i = 0; i < n; ++i) multiply_monomial(prod_all, modal.a[i]);

    // den = s * prod_all: shift up by one, then drop the implicit lead
    tf.den.assign(n + 1, 0.0);
    for (int k = 0; k < n; ++k) tf.den[k + 1] = prod_all[k];

    // num = sum_i b_i s prod_{j != i}(s + a_j) + b_w prod_all + d s prod_all
    tf.num.assign(n + 2, 0.0);
    for (int i = 0; i < n; ++i) {
        std::vector<double> partial{1.0};
        for (int j = 0; j < n; ++j)
            if (j != i) multiply_monomial(partial, modal.a[j]);
        for (int k = 0; k < n; ++k) tf.num[k + 1] += modal.b[i] * partial[k];
    }
    for (int k = 0; k <= n; ++k) tf.num[k] += modal.b_w * prod_all[k];
    for (int k = 0; k <= n; ++k) tf.num[k + 1] += modal.d * prod_all[k];
    return tf;
}

std::vector<std::complex<double>> monic_roots(const std::vector<double>& coeffs) {
    int deg = static_cast<int>(coeffs.size());
    if (deg == 0) return {};
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(deg, deg);
    for (int i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < deg; ++i) companion(i, deg - 1) = -coeffs[i];
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion);

    std::vector<std::complex<double>> roots(deg);
    for (int i = 0; i < deg; ++i) {
        std::complex<double> root = solver.eigenvalues()[i];
        double best = std::abs(eval_poly(coeffs, root, true));
        for (int it = 0; it < 3 && best > 0.0; ++it) {
            std::complex<double> derivative = 0.0;
            std::complex<double> power = 1.0;
            for (int k = 1; k < deg; ++k) {
                derivative += static_cast<double>(k) * coeffs[k] * power;
                power *= root;
            }
            derivative += static_cast<double>(deg) * power;
            if (std::abs(derivative) < 1e-300) break;
            std::complex<double> candidate =
                root - eval_poly(coeffs, root, true) / derivative;
            double residual = std::abs(eval_poly(coeffs, candidate, true));
            // Near multiple roots the residual is rounding noise and the
            // step direction is garbage; keep the eigenvalue in that case.
            if (residual >= best) break;
            root = candidate;
            best = residual;
        }
        roots[i] = root;
    }
    return roots;
}

std::complex<double> eval_tf(const RationalTF& tf, double omega) {
    std::complex<double> s(0.0, omega);
    std::complex<double> den = eval_poly(tf.den, s, true);
    if (std::abs(den) < 1e-300) fail(Errc::PoleOnAxis, "denominator vanishes at j*omega");
    return eval_poly(tf.num, s, false) / den;
}

}  // namespace randles
