#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "randles/circuit.hpp"

using namespace randles;
using std::complex;

namespace {

// Reference order-2 circuit used across the suites.
CircuitParams reference_circuit() {
    CircuitParams p;
    p.r_inf = 0.05;
    p.r = {0.2, 0.4};
    p.c = {0.3, 0.6};
    p.c_w = 300.0;
    return p;
}

bool throws_code(Errc code, const CircuitParams& p) {
    try {
        validate(p);
    } catch (const Error& e) {
        return e.code() == code;
    }
    return false;
}

}  // namespace

TEST_CASE("validate accepts positive parameter sets") {
    CHECK_NOTHROW(validate(reference_circuit()));

    CircuitParams series_only;
    series_only.r_inf = 1.0;
    series_only.c_w = 2.0;
    CHECK_NOTHROW(validate(series_only));
}

TEST_CASE("validate rejects nonpositive and malformed sets") {
    CircuitParams p = reference_circuit();
    p.r_inf = 0.0;
    CHECK(throws_code(Errc::InvalidParams, p));

    p = reference_circuit();
    p.c_w = -1.0;
    CHECK(throws_code(Errc::InvalidParams, p));

    p = reference_circuit();
    p.r.pop_back();
    CHECK(throws_code(Errc::InvalidParams, p));

    p = reference_circuit();
    p.c[1] = 0.0;
    CHECK(throws_code(Errc::InvalidParams, p));

    p = reference_circuit();
    p.r[0] = std::nan("");
    CHECK(throws_code(Errc::InvalidParams, p));
}

TEST_CASE("validate rejects bad modal sets") {
    ModalParams m;
    m.a = {1.0, 2.0};
    m.b = {1.0};
    m.b_w = 1.0;
    m.d = 1.0;
    CHECK_THROWS_AS(validate(m), Error);

    m.b = {1.0, -2.0};
    CHECK_THROWS_AS(validate(m), Error);
}

TEST_CASE("to_modal maps the reference circuit") {
    ModalParams m = to_modal(reference_circuit());
    REQUIRE(m.order() == 2);
    CHECK(m.a[0] == 16.666666666666668);
    CHECK(m.a[1] == 4.166666666666667);
    CHECK(m.b[0] == 3.3333333333333335);
    CHECK(m.b[1] == 1.6666666666666667);
    CHECK(m.b_w == 0.0033333333333333335);
    CHECK(m.d == 0.05);
}

TEST_CASE("from_modal inverts to_modal") {
    CircuitParams p = reference_circuit();
    CircuitParams back = from_modal(to_modal(p));
    CHECK(back.r_inf == doctest::Approx(p.r_inf).epsilon(1e-14));
    CHECK(back.c_w == doctest::Approx(p.c_w).epsilon(1e-14));
    for (int i = 0; i < 2; ++i) {
        CHECK(back.r[i] == doctest::Approx(p.r[i]).epsilon(1e-14));
        CHECK(back.c[i] == doctest::Approx(p.c[i]).epsilon(1e-14));
    }
}

TEST_CASE("to_state_space lays out the diagonal realization") {
    ModalParams m = to_modal(reference_circuit());
    StateSpaceModel ss = to_state_space(m);
    REQUIRE(ss.a_diag.size() == 3);
    REQUIRE(ss.b_vec.size() == 3);
    REQUIRE(ss.c_vec.size() == 3);
    CHECK(ss.a_diag[0] == -m.a[0]);
    CHECK(ss.a_diag[1] == -m.a[1]);
    CHECK(ss.a_diag[2] == 0.0);
    CHECK(ss.b_vec[0] == m.b[0]);
    CHECK(ss.b_vec[1] == m.b[1]);
    CHECK(ss.b_vec[2] == m.b_w);
    CHECK(ss.c_vec[0] == 1.0);
    CHECK(ss.c_vec[1] == 1.0);
    CHECK(ss.c_vec[2] == 1.0);
    CHECK(ss.d_scalar == m.d);
}

TEST_CASE("multiply_monomial expands products of monomials") {
    std::vector<double> poly = {1.0};
    multiply_monomial(poly, 2.0);
    REQUIRE(poly.size() == 2);
    CHECK(poly[0] == 2.0);
    CHECK(poly[1] == 1.0);

    multiply_monomial(poly, 1.0);
    REQUIRE(poly.size() == 3);
    CHECK(poly[0] == 2.0);
    CHECK(poly[1] == 3.0);
    CHECK(poly[2] == 1.0);
}

TEST_CASE("eval_poly handles explicit and monic forms") {
    std::vector<double> poly = {2.0, 3.0, 1.0};
    CHECK(eval_poly(poly, {2.0, 0.0}).real() == 12.0);
    CHECK(eval_poly(poly, {2.0, 0.0}).imag() == 0.0);

    std::vector<double> monic_tail = {2.0, 3.0};
    complex<double> v = eval_poly(monic_tail, {0.0, 1.0}, true);
    CHECK(v.real() == doctest::Approx(1.0));
    CHECK(v.imag() == doctest::Approx(3.0));
}

TEST_CASE("to_tf expands the reference circuit") {
    RationalTF tf = to_tf(to_modal(reference_circuit()));
    REQUIRE(tf.num.size() == 4);
    REQUIRE(tf.den.size() == 3);
    CHECK(tf.integrator_fixed);
    CHECK(tf.den[0] == 0.0);
    CHECK(tf.num[0] == doctest::Approx(0.23148148148148154).epsilon(1e-14));
    CHECK(tf.num[1] == doctest::Approx(45.208333333333336).epsilon(1e-14));
    CHECK(tf.num[2] == doctest::Approx(6.045).epsilon(1e-14));
    CHECK(tf.num[3] == doctest::Approx(0.05).epsilon(1e-14));
    CHECK(tf.den[1] == doctest::Approx(69.444444444444457).epsilon(1e-14));
    CHECK(tf.den[2] == doctest::Approx(20.833333333333336).epsilon(1e-14));
}

TEST_CASE("to_tf order-1 all-ones circuit") {
    ModalParams m;
    m.a = {1.0};
    m.b = {1.0};
    m.b_w = 1.0;
    m.d = 1.0;
    RationalTF tf = to_tf(m);
    REQUIRE(tf.num.size() == 3);
    REQUIRE(tf.den.size() == 2);
    CHECK(tf.num[0] == 1.0);
    CHECK(tf.num[1] == 3.0);
    CHECK(tf.num[2] == 1.0);
    CHECK(tf.den[0] == 0.0);
    CHECK(tf.den[1] == 1.0);
}

TEST_CASE("to_tf order-0 series branch") {
    ModalParams m;
    m.b_w = 0.25;
    m.d = 2.0;
    RationalTF tf = to_tf(m);
    REQUIRE(tf.num.size() == 2);
    REQUIRE(tf.den.size() == 1);
    CHECK(tf.num[0] == 0.25);
    CHECK(tf.num[1] == 2.0);
    CHECK(tf.den[0] == 0.0);
}

TEST_CASE("to_tf stays defined on near-duplicate poles") {
    ModalParams m;
    m.a = {1.0, 1.0};
    m.b = {1.0, 1.0};
    m.b_w = 1.0;
    m.d = 1.0;
    CHECK(near_duplicate_poles(m));
    CHECK_NOTHROW(to_tf(m));
}

TEST_CASE("near_duplicate_poles thresholds at 1e-9 relative") {
    ModalParams m;
    m.a = {1.0, 1.0 + 1e-10};
    m.b = {1.0, 1.0};
    m.b_w = 1.0;
    m.d = 1.0;
    CHECK(near_duplicate_poles(m));
    m.a[1] = 2.0;
    CHECK_FALSE(near_duplicate_poles(m));
}

TEST_CASE("eval_tf matches the modal partial-fraction sum") {
    ModalParams m = to_modal(reference_circuit());
    RationalTF tf = to_tf(m);
    for (double omega : {0.1, 1.0, 10.0, 100.0}) {
        complex<double> s(0.0, omega);
        complex<double> direct = m.d + m.b_w / s;
        for (int i = 0; i < m.order(); ++i) direct += m.b[i] / (s + m.a[i]);
        complex<double> rational = eval_tf(tf, omega);
        CHECK(std::abs(rational - direct) <= 1e-12 * std::abs(direct));
    }
}

TEST_CASE("eval_tf pure integrator") {
    RationalTF tf;
    tf.num = {1.0};
    tf.den = {0.0};
    tf.integrator_fixed = true;
    complex<double> v = eval_tf(tf, 1.0);
    CHECK(v.real() == 0.0);
    CHECK(v.imag() == -1.0);
    CHECK_THROWS_AS(eval_tf(tf, 0.0), Error);
    try {
        eval_tf(tf, 0.0);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::PoleOnAxis);
    }
}

TEST_CASE("monic_roots recovers simple real roots") {
    // (s - 1)(s - 2)(s - 3) = s^3 - 6 s^2 + 11 s - 6
    std::vector<double> coeffs = {-6.0, 11.0, -6.0};
    auto roots = monic_roots(coeffs);
    REQUIRE(roots.size() == 3);
    std::vector<double> re;
    for (auto r : roots) {
        CHECK(std::abs(r.imag()) <= 1e-10);
        re.push_back(r.real());
    }
    std::sort(re.begin(), re.end());
    CHECK(re[0] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(re[1] == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(re[2] == doctest::Approx(3.0).epsilon(1e-10));
}

TEST_CASE("monic_roots degree edge cases") {
    CHECK(monic_roots({}).empty());
    auto roots = monic_roots({5.0});
    REQUIRE(roots.size() == 1);
    CHECK(roots[0].real() == doctest::Approx(-5.0).epsilon(1e-14));
    CHECK(roots[0].imag() == 0.0);
}
