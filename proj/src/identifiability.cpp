#include "randles/identifiability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace randles {

namespace {

double relative_gap(const std::vector<double>& values) {
    double max_abs = 0.0;
    for (double v : values) max_abs = std::max(max_abs, std::abs(v));
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < values.size(); ++i)
        for (std::size_t j = i + 1; j < values.size(); ++j)
            gap = std::min(gap, std::abs(values[i] - values[j]));
    return max_abs > 0.0 ? gap / max_abs : gap;
}

}  // namespace

CoefficientVector coefficient_map(const ModalParams& modal) {
    RationalTF tf = to_tf(modal);
    CoefficientVector vec;
    vec.k1 = static_cast<int>(tf.num.size()) - 1;
    vec.k2 = static_cast<int>(tf.den.size());
    vec.values = tf.num;
    vec.values.insert(vec.values.end(), tf.den.begin(), tf.den.end());
    return vec;
}

std::vector<ModalParams> enumerate_solutions(const CoefficientVector& target, int n) {
    if (n < 1) fail(Errc::InvalidParams, "order must be at least 1");
    if (n > 6) fail(Errc::EnumerationCap, "enumeration is capped at n = 6");
    int k1 = n + 1;
    if (static_cast<int>(target.values.size()) != (k1 + 1) + (n + 1))
        fail(Errc::InvalidParams, "coefficient vector length does not match order");

    std::vector<double> num(target.values.begin(), target.values.begin() + k1 + 1);
    std::vector<double> den(target.values.begin() + k1 + 1, target.values.end());
    if (std::abs(den[0]) > 1e-12 * (1.0 + std::abs(den[1])))
        fail(Errc::NotInImage, "d_0 must vanish (integrator pole pinned at s = 0)");

    // factor out the zero root: q(s) = den/s, monic of degree n
    std::vector<double> reduced(den.begin() + 1, den.end());
    std::vector<std::complex<double>> roots = monic_roots(reduced);

    std::vector<double> a(n);
    for (int i = 0; i < n; ++i) {
        const auto& root = roots[i];
        if (std::abs(root.imag()) / (1.0 + std::abs(root.real())) >= 1e-7)
            fail(Errc::NotInImage, "complex denominator root");
        if (root.real() >= 0.0) fail(Errc::NotInImage, "nonnegative denominator root");
        a[i] = -root.real();
    }
    if (relative_gap(a) < 1e-9) fail(Errc::DuplicateRoots, "coincident poles");

    // residues: b_i = num(-a_i)/den'(-a_i), b_w = num(0)/den'(0), d = lead
    ModalParams base;
    base.a = a;
    base.b.resize(n);
    base.d = num[k1];
    auto den_derivative = [&](std::complex<double> s) {
        std::complex<double> value = 0.0;
        std::complex<double> power = 1.0;
        for (int k = 1; k <= n; ++k) {
            value += static_cast<double>(k) * den[k] * power;
            power *= s;
        }
        value += static_cast<double>(n + 1) * power;
        return value;
    };
    for (int i = 0; i < n; ++i) {
        std::complex<double> s(-a[i], 0.0);
        base.b[i] = (eval_poly(num, s) / den_derivative(s)).real();
    }
    base.b_w = num[0] / den[1];
    if (base.b_w <= 0.0 || base.d <= 0.0) fail(Errc::NotInImage, "nonpositive b_w or d");
    for (double b : base.b)
        if (b <= 0.0) fail(Errc::NotInImage, "nonpositive residue");

    // verify the re-map before emitting permutations
    CoefficientVector check = coefficient_map(base);
    double err = 0.0, scale = 0.0;
    for (std::size_t k = 0; k < check.values.size(); ++k) {
        err = std::max(err, std::abs(check.values[k] - target.values[k]));
        scale = std::max(scale, std::abs(target.values[k]));
    }
    if (err > 1e-8 * scale) fail(Errc::NotInImage, "re-mapping residual exceeds 1e-8");

    std::vector<int> index(n);
    std::iota(index.begin(), index.end(), 0);
    std::sort(index.begin(), index.end(), [&](int i, int j) { return a[i] > a[j]; });

    std::vector<ModalParams> solutions;
    do {
        ModalParams sol = base;
        for (int i = 0; i < n; ++i) {
            sol.a[i] = base.a[index[i]];
            sol.b[i] = base.b[index[i]];
        }
        solutions.push_back(std::move(sol));
    } while (std::next_permutation(index.begin(), index.end(),
                                   [&](int i, int j) { return a[i] > a[j]; }));
    return solutions;
}

IdentifiabilityVerdict classify(int n, bool ordered) {
    if (n < 1) fail(Errc::InvalidParams, "order must be at least 1");
    IdentifiabilityVerdict verdict;
    if (n == 1 || ordered) {
        verdict.classification = Classification::GloballyIdentifiable;
        verdict.solution_count = 1;
    } else {
        verdict.classification = Classification::LocallyIdentifiable;
        verdict.solution_count = 1;
        for (int k = 2; k <= n; ++k) verdict.solution_count *= static_cast<std::uint64_t>(k);
    }
    return verdict;
}

ModalParams canonical_ordering(const ModalParams& modal) {
    int n = modal.order();
    if (n > 1 && relative_gap(modal.a) < 1e-9) fail(Errc::DuplicateRoots, "coincident poles");
    std::vector<int> index(n);
    std::iota(index.begin(), index.end(), 0);
    std::sort(index.begin(), index.end(), [&](int i, int j) { return modal.a[i] > modal.a[j]; });
    ModalParams sorted = modal;
    for (int i = 0; i < n; ++i) {
        sorted.a[i] = modal.a[index[i]];
        sorted.b[i] = modal.b[index[i]];
    }
    return sorted;
}

bool is_canonical(const ModalParams& modal) {
    for (std::size_t i = 1; i < modal.a.size(); ++i)
        if (modal.a[i - 1] <= modal.a[i]) return false;
    return true;
}

}  // namespace randles
