#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>

#include "qdev/quantum.hpp"
#include "qdev/rng.hpp"

using namespace qdev;

TEST_CASE("validate_density accepts the maximally mixed qubit") {
    Mat m = 0.5 * Mat::Identity(2, 2);
    CHECK_NOTHROW(validate_density(m, 1e-10));
}

TEST_CASE("validate_density rejects diag(1.5,-0.5) as not PSD") {
    Mat m = Mat::Zero(2, 2);
    m(0, 0) = 1.5;
    m(1, 1) = -0.5;
    // trace is 1, so the failure is positivity, not trace
    CHECK_THROWS_AS(validate_density(m, 1e-10), NotPsd);
    try {
        validate_density(m, 1e-10);
    } catch (const NotPsd& e) {
        CHECK(e.min_eigenvalue == doctest::Approx(-0.5).epsilon(1e-9));
    }
}

TEST_CASE("validate_density rejects non-Hermitian and bad-trace inputs") {
    Mat m(2, 2);
    m << Cplx(0.5, 0.0), Cplx(0.1, 0.2), Cplx(0.3, 0.1), Cplx(0.5, 0.0);
    CHECK_THROWS_AS(validate_density(m, 1e-10), NotHermitian);
    CHECK_THROWS_AS(validate_density(Mat::Identity(2, 2), 1e-10), BadTrace);
}

TEST_CASE("bloch_qubit basics") {
    CHECK((bloch_qubit(0, 0, 0).matrix - 0.5 * Mat::Identity(2, 2)).norm() ==
          doctest::Approx(0.0));

    auto rho = bloch_qubit(1, 0, 0);
    Eigen::SelfAdjointEigenSolver<Mat> es(rho.matrix);
    CHECK(es.eigenvalues()(0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(es.eigenvalues()(1) == doctest::Approx(1.0).epsilon(1e-12));
    const Vec plus = (Vec(2) << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)).finished();
    CHECK(std::abs((plus.adjoint() * rho.matrix * plus)(0, 0).real() - 1.0) < 1e-12);

    const double phi = 2.0 * M_PI / 3.0;
    auto rho2 = bloch_qubit(std::cos(phi), std::sin(phi), 0.0);
    Mat expected(2, 2);
    expected << 0.5, 0.5 * Cplx(std::cos(phi), -std::sin(phi)),
        0.5 * Cplx(std::cos(phi), std::sin(phi)), 0.5;
    CHECK((rho2.matrix - expected).cwiseAbs().maxCoeff() < 1e-14);

    CHECK_THROWS_AS(bloch_qubit(1.1, 0, 0), BlochVectorTooLong);
}

TEST_CASE("trine geometry") {
    auto trine = trine_states();
    REQUIRE(trine.n() == 3);
    Mat sum = Mat::Zero(2, 2);
    for (int i = 0; i < 3; ++i) {
        CHECK((trine.states[i].matrix * trine.states[i].matrix).trace().real() ==
              doctest::Approx(1.0).epsilon(1e-12));
        sum += trine.states[i].matrix;
        for (int j = i + 1; j < 3; ++j)
            CHECK((trine.states[i].matrix * trine.states[j].matrix).trace().real() ==
                  doctest::Approx(0.25).epsilon(1e-12));
    }
    CHECK((sum - 1.5 * Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("tetrahedron geometry") {
    auto tetra = tetrahedron_states();
    REQUIRE(tetra.n() == 4);
    Mat sum = Mat::Zero(2, 2);
    for (int i = 0; i < 4; ++i) {
        sum += tetra.states[i].matrix;
        for (int j = i + 1; j < 4; ++j)
            CHECK((tetra.states[i].matrix * tetra.states[j].matrix).trace().real() ==
                  doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    }
    CHECK((sum - 2.0 * Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("haar_random_pure is pure, deterministic and uniform on average") {
    for (int d : {2, 3}) {
        auto rho = haar_random_pure(d, 42);
        CHECK((rho.matrix * rho.matrix).trace().real() == doctest::Approx(1.0).epsilon(1e-10));
        CHECK_NOTHROW(validate_density(rho.matrix, 1e-10));
        auto again = haar_random_pure(d, 42);
        CHECK((rho.matrix - again.matrix).cwiseAbs().maxCoeff() == 0.0);
    }

    const int d = 2, samples = 10000;
    Mat mean = Mat::Zero(d, d);
    for (int s = 0; s < samples; ++s) mean += haar_random_pure(d, derive_seed(7, s)).matrix;
    mean /= samples;
    // entries are bounded by 1, so 3 standard errors is well under 0.02
    CHECK((mean - Mat::Identity(d, d) / d).cwiseAbs().maxCoeff() < 0.02);
}

TEST_CASE("hs_random_mixed is a full-rank density operator with Haar mean") {
    for (int d : {2, 3}) {
        auto rho = hs_random_mixed(d, 5);
        CHECK_NOTHROW(validate_density(rho.matrix, 1e-10));
        CHECK(min_eigenvalue(rho.matrix) > 0.0);
    }
    const int d = 3, samples = 10000;
    Mat mean = Mat::Zero(d, d);
    for (int s = 0; s < samples; ++s) mean += hs_random_mixed(d, derive_seed(11, s)).matrix;
    mean /= samples;
    CHECK((mean - Mat::Identity(d, d) / d).cwiseAbs().maxCoeff() < 0.02);
}

TEST_CASE("trace_norm") {
    CHECK(trace_norm(Mat::Zero(3, 3)) == doctest::Approx(0.0));
    Mat m = Mat::Zero(2, 2);
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
    CHECK(trace_norm(m) == doctest::Approx(2.0));

    auto trine = trine_states();
    CHECK(trace_norm(trine.states[0].matrix - trine.states[1].matrix) ==
          doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));

    Mat nh(2, 2);
    nh << 0.0, 1.0, 0.0, 0.0;
    CHECK_THROWS_AS(trace_norm(nh), NotHermitian);
}

TEST_CASE("trace_norm is unitarily invariant") {
    auto eng = make_engine(99);
    std::normal_distribution<double> gauss;
    for (int trial = 0; trial < 20; ++trial) {
        const int d = 2 + trial % 3;
        Mat g(d, d), h(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                g(i, j) = Cplx(gauss(eng), gauss(eng));
                h(i, j) = Cplx(gauss(eng), gauss(eng));
            }
        h = Mat(0.5 * (h + h.adjoint().eval()));
        Eigen::HouseholderQR<Mat> qr(g);
        Mat u = qr.householderQ();
        CHECK(trace_norm(u * h * u.adjoint(), 1e-8) ==
              doctest::Approx(trace_norm(h)).epsilon(1e-9));
    }
}

TEST_CASE("helstrom_pair closed form") {
    auto trine = trine_states();
    CHECK(helstrom_pair(trine.states[0], trine.states[0]) == doctest::Approx(0.5));
    CHECK(helstrom_pair(trine.states[0], trine.states[1]) ==
          doctest::Approx((2.0 + std::sqrt(3.0)) / 4.0).epsilon(1e-12));

    auto up = bloch_qubit(0, 0, 1);
    auto down = bloch_qubit(0, 0, -1);
    CHECK(helstrom_pair(up, down) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("helstrom_pair is symmetric and in [1/2, 1]; its POVM attains it") {
    for (int trial = 0; trial < 30; ++trial) {
        const int d = 2 + trial % 2;
        auto a = hs_random_mixed(d, derive_seed(21, trial));
        auto b = haar_random_pure(d, derive_seed(22, trial));
        const double v = helstrom_pair(a, b);
        CHECK(v == doctest::Approx(helstrom_pair(b, a)).epsilon(1e-12));
        CHECK(v >= 0.5 - 1e-12);
        CHECK(v <= 1.0 + 1e-12);
        auto povm = helstrom_povm(a, b);
        validate_povm(povm, 1e-8);
        const double attained = 0.5 * ((a.matrix * povm.elements[0]).trace().real() +
                                       (b.matrix * povm.elements[1]).trace().real());
        CHECK(attained == doctest::Approx(v).epsilon(1e-10));
    }
}
