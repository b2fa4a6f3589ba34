#include "randles/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Dense>

#include "randles/rng.hpp"

namespace randles {

const char* reject_reason_name(RejectReason reason) {
    switch (reason) {
        case RejectReason::None: return "none";
        case RejectReason::NoConvergence: return "no_convergence";
        case RejectReason::ComplexPoles: return "complex_poles";
        case RejectReason::NegativePoles: return "negative_poles";
        case RejectReason::NonPhysical: return "non_physical";
        case RejectReason::CwBound: return "c_w_bound";
        case RejectReason::CiBound: return "c_i_bound";
        case RejectReason::SingularSystem: return "singular_system";
    }
    return "unknown";
}

namespace {

constexpr std::size_t kDftChunk = 4096;

void check_dft_inputs(const TimeSeries& x, const std::vector<double>& freqs) {
    if (x.values.empty()) fail(Errc::InvalidParams, "empty record");
    if (!(x.dt > 0.0)) fail(Errc::InvalidParams, "dt must be positive");
    if (freqs.empty()) fail(Errc::InvalidParams, "no probe frequencies");
    double omega_min = freqs.front();
    for (double w : freqs) {
        if (!(w > 0.0) || !std::isfinite(w))
            fail(Errc::InvalidParams, "probe frequencies must be positive");
        omega_min = std::min(omega_min, w);
    }
    double span = static_cast<double>(x.values.size()) * x.dt;
    if (span < 2.0 * (2.0 * std::numbers::pi / omega_min))
        fail(Errc::TooShortRecord, "record spans less than 2 periods of the slowest tone");
}

std::complex<double> dft_partial(const TimeSeries& x, double omega, std::size_t lo,
                                 std::size_t hi) {
    double re = 0.0, im = 0.0;
    for (std::size_t k = lo; k < hi; ++k) {
        double angle = omega * static_cast<double>(k) * x.dt;
        re += x.values[k] * std::cos(angle);
        im -= x.values[k] * std::sin(angle);
    }
    return {re, im};
}

}  // namespace

std::vector<std::complex<double>> dft_at_tones_serial(const TimeSeries& x,
                                                      const std::vector<double>& freqs) {
    check_dft_inputs(x, freqs);
    double scale = 2.0 / static_cast<double>(x.values.size());
    std::vector<std::complex<double>> phasors(freqs.size());
    for (std::size_t q = 0; q < freqs.size(); ++q)
        phasors[q] = scale * dft_partial(x, freqs[q], 0, x.values.size());
    return phasors;
}

std::vector<std::complex<double>> dft_at_tones(const TimeSeries& x,
                                               const std::vector<double>& freqs) {
    check_dft_inputs(x, freqs);
    std::size_t count = x.values.size();
    std::size_t n_chunks = (count + kDftChunk - 1) / kDftChunk;
    double scale = 2.0 / static_cast<double>(count);

    std::vector<std::complex<double>> phasors(freqs.size());
    std::vector<std::complex<double>> partials(n_chunks);
    for (std::size_t q = 0; q < freqs.size(); ++q) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t m = 0; m < static_cast<std::ptrdiff_t>(n_chunks); ++m) {
            std::size_t lo = static_cast<std::size_t>(m) * kDftChunk;
            std::size_t hi = std::min(lo + kDftChunk, count);
            partials[static_cast<std::size_t>(m)] = dft_partial(x, freqs[q], lo, hi);
        }
        std::complex<double> acc = 0.0;
        for (const auto& p : partials) acc += p;  // fixed chunk order
        phasors[q] = scale * acc;
    }
    return phasors;
}

namespace {

// The fit works on frequency-scaled coefficients: with x = s/w0,
//   T(s) = N(x)/D(x),  N(x) = sum alpha_k x^k,  D(x) = x^{n+1} + sum beta_k x^k,
// where alpha_k = c_k w0^{k-n-1} and beta_k = d_k w0^{k-n-1}. Parameter
// layout: theta = (alpha_0..alpha_{n+1}, beta_1..beta_n).
struct FitProblem {
    int n = 0;
    double w0 = 0.0;
    std::vector<std::complex<double>> x;  // j*omega_q/w0
    std::vector<std::complex<double>> h;  // empirical response
    std::vector<double> weight;           // 1/|h|
};

std::complex<double> eval_num(const Eigen::VectorXd& theta, int n, std::complex<double> x) {
    std::complex<double> value = 0.0;
    for (int k = n + 1; k >= 0; --k) value = value * x + theta[k];
    return value;
}

std::complex<double> eval_den(const Eigen::VectorXd& theta, int n, std::complex<double> x) {
    std::complex<double> value = 1.0;
    for (int k = n; k >= 1; --k) value = value * x + theta[n + 1 + k];
    return value * x;  // beta_0 pinned at 0
}

double cost_at(const FitProblem& p, const Eigen::VectorXd& theta) {
    double cost = 0.0;
    for (std::size_t q = 0; q < p.x.size(); ++q) {
        std::complex<double> t = eval_num(theta, p.n, p.x[q]) / eval_den(theta, p.n, p.x[q]);
        cost += std::norm((t - p.h[q]) * p.weight[q]);
    }
    return cost;
}

void fill_jacobian(const FitProblem& p, const Eigen::VectorXd& theta, Eigen::MatrixXd& jac,
                   Eigen::VectorXd& res) {
    int n = p.n;
    for (std::size_t q = 0; q < p.x.size(); ++q) {
        std::complex<double> x = p.x[q];
        std::complex<double> num = eval_num(theta, n, x);
        std::complex<double> den = eval_den(theta, n, x);
        std::complex<double> t = num / den;
        double w = p.weight[q];
        std::complex<double> e = (t - p.h[q]) * w;
        auto row_re = static_cast<Eigen::Index>(2 * q);
        res[row_re] = e.real();
        res[row_re + 1] = e.imag();

        std::complex<double> x_pow = 1.0;
        for (int k = 0; k <= n + 1; ++k) {
            std::complex<double> dt_dalpha = x_pow / den * w;
            jac(row_re, k) = dt_dalpha.real();
            jac(row_re + 1, k) = dt_dalpha.imag();
            x_pow *= x;
        }
        x_pow = x;
        for (int k = 1; k <= n; ++k) {
            std::complex<double> dt_dbeta = -num * x_pow / (den * den) * w;
            jac(row_re, n + 1 + k) = dt_dbeta.real();
            jac(row_re + 1, n + 1 + k) = dt_dbeta.imag();
            x_pow *= x;
        }
    }
}

RationalTF random_init_tf(const FitConfig& cfg) {
    Rng rng(cfg.init_seed);
    ModalParams modal;
    modal.a.resize(cfg.order_n);
    modal.b.resize(cfg.order_n);
    for (double& a : modal.a)
        a = rng.log_uniform(cfg.init_log_range.first, cfg.init_log_range.second);
    for (double& b : modal.b)
        b = rng.log_uniform(cfg.init_residue_log_range.first, cfg.init_residue_log_range.second);
    modal.b_w = rng.log_uniform(cfg.init_residue_log_range.first, cfg.init_residue_log_range.second);
    modal.d = rng.log_uniform(cfg.init_residue_log_range.first, cfg.init_residue_log_range.second);
    return to_tf(modal);
}

void check_fit_config(const FitConfig& cfg) {
    if (cfg.order_n < 1) fail(Errc::ConfigError, "fit order must be at least 1");
    if (cfg.max_iter < 1) fail(Errc::ConfigError, "max_iter must be at least 1");
    if (!(cfg.init_log_range.first < cfg.init_log_range.second) ||
        !(cfg.init_residue_log_range.first < cfg.init_residue_log_range.second))
        fail(Errc::ConfigError, "init ranges need lower < upper");
    if (!(cfg.convergence_tol > 0.0)) fail(Errc::ConfigError, "convergence_tol must be positive");
    if (cfg.freqs.empty()) fail(Errc::ConfigError, "fit frequencies are required");
    if (2 * static_cast<int>(cfg.freqs.size()) < 2 * cfg.order_n + 3)
        fail(Errc::RankDeficient, "tone count below the required excitation order");
}

}  // namespace

TrialResult fit_tf(const TimeSeries& u, const TimeSeries& y, const FitConfig& cfg) {
    check_fit_config(cfg);
    if (u.values.size() != y.values.size() || u.dt != y.dt)
        fail(Errc::InvalidParams, "input and output records must share one grid");
    int n = cfg.order_n;

    std::vector<std::complex<double>> big_u = dft_at_tones(u, cfg.freqs);
    std::vector<std::complex<double>> big_y = dft_at_tones(y, cfg.freqs);

    FitProblem problem;
    problem.n = n;
    double log_sum = 0.0;
    for (double w : cfg.freqs) log_sum += std::log(w);
    problem.w0 = std::exp(log_sum / static_cast<double>(cfg.freqs.size()));
    problem.x.resize(cfg.freqs.size());
    problem.h.resize(cfg.freqs.size());
    problem.weight.resize(cfg.freqs.size());
    for (std::size_t q = 0; q < cfg.freqs.size(); ++q) {
        if (std::abs(big_u[q]) == 0.0) fail(Errc::ZeroSignal, "no input energy at a fit tone");
        problem.x[q] = std::complex<double>(0.0, cfg.freqs[q] / problem.w0);
        problem.h[q] = big_y[q] / big_u[q];
        double mag = std::abs(problem.h[q]);
        if (mag == 0.0) fail(Errc::ZeroSignal, "zero response at a fit tone");
        problem.weight[q] = 1.0 / mag;
    }

    TrialResult result;
    result.seed = cfg.init_seed;
    if (cfg.init_tf) {
        const RationalTF& init = *cfg.init_tf;
        if (static_cast<int>(init.num.size()) != n + 2 ||
            static_cast<int>(init.den.size()) != n + 1 || init.den[0] != 0.0)
            fail(Errc::InvalidParams, "init_tf orders do not match the fit order");
        result.init = init;
    } else {
        result.init = random_init_tf(cfg);
    }

    int n_par = 2 * n + 2;
    Eigen::VectorXd theta(n_par);
    for (int k = 0; k <= n + 1; ++k)
        theta[k] = result.init.num[k] * std::pow(problem.w0, k - n - 1);
    for (int k = 1; k <= n; ++k)
        theta[n + 1 + k] = result.init.den[k] * std::pow(problem.w0, k - n - 1);

    auto rows = static_cast<Eigen::Index>(2 * cfg.freqs.size());
    Eigen::MatrixXd jac(rows, n_par);
    Eigen::VectorXd res(rows);

    double cost = cost_at(problem, theta);
    double lambda = 1e-3;
    bool converged = false;
    constexpr double kCostFloor = 1e-25;

    for (int iter = 0; iter < cfg.max_iter && !converged; ++iter) {
        if (cost < kCostFloor) {
            converged = true;
            break;
        }
        fill_jacobian(problem, theta, jac, res);
        Eigen::MatrixXd hessian = jac.transpose() * jac;
        Eigen::VectorXd gradient = jac.transpose() * res;
        Eigen::VectorXd damping = hessian.diagonal();
        double diag_max = damping.maxCoeff();
        if (!(diag_max > 0.0) || !std::isfinite(diag_max)) break;
        for (int k = 0; k < n_par; ++k) damping[k] = std::max(damping[k], 1e-12 * diag_max);

        bool improved = false;
        for (int tries = 0; tries < 50; ++tries) {
            Eigen::MatrixXd lhs = hessian;
            lhs.diagonal() += lambda * damping;
            Eigen::VectorXd step = lhs.ldlt().solve(-gradient);
            Eigen::VectorXd trial = theta + step;
            double trial_cost = cost_at(problem, trial);
            if (std::isfinite(trial_cost) && trial_cost < cost) {
                double drop = (cost - trial_cost) / std::max(cost, 1e-300);
                theta = trial;
                cost = trial_cost;
                lambda = std::max(lambda / 3.0, 1e-14);
                if (drop < cfg.convergence_tol || cost < kCostFloor) converged = true;
                improved = true;
                break;
            }
            // A rejected step that cannot move the cost by more than the
            // tolerance means the iterate sits at a numerical minimum (a
            // nonzero gradient always yields a descent step once lambda is
            // large enough), so report convergence rather than a stall.
            if (std::isfinite(trial_cost) &&
                trial_cost - cost <= cfg.convergence_tol * cost) {
                converged = true;
                break;
            }
            lambda = std::min(lambda * 3.0, 1e15);
        }
        if (!improved) break;  // stalled or converged in place
    }
    if (cost < kCostFloor) converged = true;

    result.tf.integrator_fixed = true;
    result.tf.num.resize(n + 2);
    result.tf.den.assign(n + 1, 0.0);
    for (int k = 0; k <= n + 1; ++k)
        result.tf.num[k] = theta[k] * std::pow(problem.w0, n + 1 - k);
    for (int k = 1; k <= n; ++k)
        result.tf.den[k] = theta[n + 1 + k] * std::pow(problem.w0, n + 1 - k);
    result.residual = cost;
    result.reject = converged ? RejectReason::None : RejectReason::NoConvergence;
    result.accepted = false;
    return result;
}

namespace {

struct PoleSplit {
    std::vector<double> a;  // decay rates, sorted descending when ok
    RejectReason reject = RejectReason::None;
};

PoleSplit split_poles(const RationalTF& tf, int n, bool require_real_positive) {
    PoleSplit split;
    std::vector<double> reduced(tf.den.begin() + 1, tf.den.end());  // den / s
    std::vector<std::complex<double>> roots = monic_roots(reduced);
    split.a.reserve(roots.size());
    for (const auto& root : roots) {
        if (std::abs(root.imag()) / (1.0 + std::abs(root.real())) >= 1e-7) {
            if (require_real_positive) {
                split.reject = RejectReason::ComplexPoles;
                return split;
            }
        }
        split.a.push_back(-root.real());
    }
    if (require_real_positive)
        for (double a : split.a)
            if (a <= 0.0) {
                split.reject = RejectReason::NegativePoles;
                return split;
            }
    std::sort(split.a.begin(), split.a.end(), std::greater<>());

    double a_max = 0.0;
    for (double a : split.a) a_max = std::max(a_max, std::abs(a));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(split.a[i] - split.a[j]) < 1e-9 * a_max)
                fail(Errc::SingularSystem, "coincident denominator roots");
    return split;
}

// Solves the (n+1)x(n+1) system matching the coefficients of
//   num - d*den = sum_i b_i s prod_{j!=i}(s+a_j) + b_w prod_j(s+a_j)
// for (b_1..b_n, b_w).
Eigen::VectorXd solve_residues(const RationalTF& tf, const std::vector<double>& a, double d) {
    int n = static_cast<int>(a.size());
    Eigen::MatrixXd mat = Eigen::MatrixXd::Zero(n + 1, n + 1);
    for (int i = 0; i < n; ++i) {
        std::vector<double> partial{1.0};
        for (int j = 0; j < n; ++j)
            if (j != i) multiply_monomial(partial, a[j]);
        for (int k = 0; k < n; ++k) mat(k + 1, i) = partial[k];
    }
    std::vector<double> prod_all{1.0};
    for (int i = 0; i < n; ++i) multiply_monomial(prod_all, a[i]);
    for (int k = 0; k <= n; ++k) mat(k, n) = prod_all[k];

    Eigen::VectorXd rhs(n + 1);
    for (int k = 0; k <= n; ++k) rhs[k] = tf.num[k] - d * tf.den[k];
    return mat.partialPivLu().solve(rhs);
}

}  // namespace

TrialResult recover_params(const RationalTF& tf, int n, const OutlierPolicy& policy) {
    if (n < 1) fail(Errc::InvalidParams, "order must be at least 1");
    if (!(policy.c_w_max > 0.0) || !(policy.c_i_max > 0.0))
        fail(Errc::InvalidParams, "outlier bounds must be positive");
    if (static_cast<int>(tf.num.size()) != n + 2 || static_cast<int>(tf.den.size()) != n + 1)
        fail(Errc::InvalidParams, "coefficient counts do not match the order");
    if (std::abs(tf.den[0]) > 1e-12 * (1.0 + std::abs(tf.den[1])))
        fail(Errc::InvalidParams, "d_0 must vanish (integrator pole pinned at s = 0)");

    TrialResult result;
    result.tf = tf;

    PoleSplit split = split_poles(tf, n, policy.require_real_positive_poles);
    if (split.reject != RejectReason::None) {
        result.reject = split.reject;
        return result;
    }

    double d = tf.num[n + 1];
    Eigen::VectorXd residues = solve_residues(tf, split.a, d);

    ModalParams modal;
    modal.a = split.a;
    modal.b.assign(residues.data(), residues.data() + n);
    modal.b_w = residues[n];
    modal.d = d;

    bool physical = std::isfinite(modal.d) && modal.d > 0.0 && std::isfinite(modal.b_w) &&
                    modal.b_w > 0.0;
    for (int i = 0; i < n; ++i)
        physical = physical && std::isfinite(modal.b[i]) && modal.b[i] > 0.0 &&
                   std::isfinite(modal.b[i] / modal.a[i]);
    if (!physical || !std::isfinite(1.0 / modal.b_w)) {
        result.reject = RejectReason::NonPhysical;
        return result;
    }
    if (1.0 / modal.b_w > policy.c_w_max) {
        result.reject = RejectReason::CwBound;
        return result;
    }
    for (int i = 0; i < n; ++i)
        if (1.0 / modal.b[i] > policy.c_i_max) {
            result.reject = RejectReason::CiBound;
            return result;
        }

    result.params = from_modal(modal);
    result.accepted = true;
    return result;
}

namespace {

void require_shape(const RationalTF& tf, std::size_t num_size, std::size_t den_size,
                   bool pinned) {
    if (tf.num.size() != num_size || tf.den.size() != den_size)
        fail(Errc::InvalidParams, "coefficient counts do not match the topology");
    if (pinned && tf.den[0] != 0.0)
        fail(Errc::InvalidParams, "topology expects the integrator pole pinned at s = 0");
}

void require_physical(bool ok) {
    if (!ok) fail(Errc::NotInImage, "recovered parameters are not strictly positive");
}

}  // namespace

CircuitParams recover_params_topology(const RationalTF& tf, Topology topology) {
    CircuitParams params;
    switch (topology) {
        case Topology::R_RC: {
            require_shape(tf, 2, 1, false);
            double a1 = tf.den[0];
            double d = tf.num[1];
            double b1 = tf.num[0] - a1 * d;
            require_physical(a1 > 0.0 && d > 0.0 && b1 > 0.0);
            params.r_inf = d;
            params.r = {b1 / a1};
            params.c = {1.0 / b1};
            params.c_w = std::numeric_limits<double>::infinity();
            return params;
        }
        case Topology::R_RC_C: {
            require_shape(tf, 3, 2, true);
            double a1 = tf.den[1];
            double d = tf.num[2];
            require_physical(a1 > 0.0 && d > 0.0);
            double b_w = tf.num[0] / a1;
            double b1 = tf.num[1] - d * a1 - b_w;
            require_physical(b_w > 0.0 && b1 > 0.0);
            params.r_inf = d;
            params.r = {b1 / a1};
            params.c = {1.0 / b1};
            params.c_w = 1.0 / b_w;
            return params;
        }
        case Topology::R_RC_RC: {
            require_shape(tf, 3, 2, false);
            double g0 = tf.den[0], g1 = tf.den[1];
            double d = tf.num[2];
            double disc = g1 * g1 - 4.0 * g0;
            if (disc < 0.0) fail(Errc::NotInImage, "complex denominator roots");
            double a1 = (g1 + std::sqrt(disc)) / 2.0;
            double a2 = (g1 - std::sqrt(disc)) / 2.0;
            if (a1 - a2 < 1e-9 * std::abs(a1))
                fail(Errc::SingularSystem, "coincident denominator roots");
            require_physical(a2 > 0.0 && d > 0.0);
            double sum = tf.num[1] - d * g1;        // b1 + b2
            double cross = tf.num[0] - d * g0;      // b1 a2 + b2 a1
            double b2 = (cross - a2 * sum) / (a1 - a2);
            double b1 = sum - b2;
            require_physical(b1 > 0.0 && b2 > 0.0);
            params.r_inf = d;
            params.r = {b1 / a1, b2 / a2};
            params.c = {1.0 / b1, 1.0 / b2};
            params.c_w = std::numeric_limits<double>::infinity();
            return params;
        }
        case Topology::R_RC_RC_C: {
            require_shape(tf, 4, 3, true);
            OutlierPolicy open_bounds;
            open_bounds.c_w_max = std::numeric_limits<double>::infinity();
            open_bounds.c_i_max = std::numeric_limits<double>::infinity();
            TrialResult result = recover_params(tf, 2, open_bounds);
            if (!result.accepted)
                fail(Errc::NotInImage, std::string("recovery rejected: ") +
                                           reject_reason_name(result.reject));
            return *result.params;
        }
    }
    fail(Errc::InvalidParams, "unknown topology");
}

}  // namespace randles
