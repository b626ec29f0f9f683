#include "qdev/quantum.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "qdev/rng.hpp"

namespace qdev {

double hermiticity_residual(const Mat& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double min_eigenvalue(const Mat& hermitian) {
    Eigen::SelfAdjointEigenSolver<Mat> es(hermitian, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

DensityOperator validate_density(const Mat& m, double tol) {
    if (m.rows() != m.cols()) throw DimMismatch("density operator must be square");
    if (hermiticity_residual(m) > tol) throw NotHermitian("density operator is not Hermitian");
    const double tr = m.trace().real();
    if (std::abs(tr - 1.0) > tol) throw BadTrace(tr);
    const double min_eig = min_eigenvalue(m);
    if (min_eig < -tol) throw NotPsd(min_eig);
    return DensityOperator{m};
}

void validate_povm(const Povm& povm, double tol) {
    if (povm.elements.empty()) throw SizeMismatch("POVM has no elements");
    const int d = povm.dim();
    Mat sum = Mat::Zero(d, d);
    for (const Mat& e : povm.elements) {
        if (e.rows() != d || e.cols() != d) throw DimMismatch("POVM element dimension mismatch");
        if (hermiticity_residual(e) > tol) throw NotHermitian("POVM element is not Hermitian");
        if (min_eigenvalue(e) < -tol) throw NotPsd(min_eigenvalue(e));
        sum += e;
    }
    if ((sum - Mat::Identity(d, d)).cwiseAbs().maxCoeff() > tol)
        throw Error("POVM does not sum to identity");
}

DensityOperator bloch_qubit(double nx, double ny, double nz) {
    const double len = std::sqrt(nx * nx + ny * ny + nz * nz);
    if (len > 1.0 + 1e-12) throw BlochVectorTooLong("Bloch vector has length > 1");
    Mat rho(2, 2);
    rho(0, 0) = 0.5 * (1.0 + nz);
    rho(0, 1) = 0.5 * Cplx(nx, -ny);
    rho(1, 0) = 0.5 * Cplx(nx, ny);
    rho(1, 1) = 0.5 * (1.0 - nz);
    return DensityOperator{rho};
}

PreparationSet trine_states() {
    PreparationSet p;
    for (int x = 0; x < 3; ++x) {
        const double phi = 2.0 * M_PI * x / 3.0;
        p.states.push_back(bloch_qubit(std::cos(phi), std::sin(phi), 0.0));
    }
    return p;
}

PreparationSet tetrahedron_states() {
    static const double v[4][3] = {
        {1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
    const double s = 1.0 / std::sqrt(3.0);
    PreparationSet p;
    for (const auto& n : v) p.states.push_back(bloch_qubit(s * n[0], s * n[1], s * n[2]));
    return p;
}

namespace {

Vec gaussian_vector(int d, std::mt19937_64& eng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vec v(d);
    for (int i = 0; i < d; ++i) {
        const double re = gauss(eng);
        const double im = gauss(eng);
        v(i) = Cplx(re, im);
    }
    return v;
}

}  // namespace

DensityOperator haar_random_pure(int d, std::uint64_t seed) {
    if (d < 2) throw DimMismatch("dimension must be >= 2");
    auto eng = make_engine(seed);
    Vec psi = gaussian_vector(d, eng);
    psi /= psi.norm();
    return DensityOperator{psi * psi.adjoint()};
}

DensityOperator hs_random_mixed(int d, std::uint64_t seed) {
    if (d < 2) throw DimMismatch("dimension must be >= 2");
    auto eng = make_engine(seed);
    Mat g(d, d);
    for (int j = 0; j < d; ++j) g.col(j) = gaussian_vector(d, eng);
    Mat rho = g * g.adjoint();
    rho /= rho.trace().real();
    return DensityOperator{rho};
}

double trace_norm(const Mat& hermitian, double herm_tol) {
    if (hermiticity_residual(hermitian) > herm_tol)
        throw NotHermitian("trace_norm requires a Hermitian matrix");
    Eigen::SelfAdjointEigenSolver<Mat> es(hermitian, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().sum();
}

double helstrom_pair(const DensityOperator& rho1, const DensityOperator& rho2) {
    if (rho1.dim() != rho2.dim()) throw DimMismatch("helstrom_pair dimension mismatch");
    return 0.5 + 0.25 * trace_norm(rho1.matrix - rho2.matrix);
}

Povm helstrom_povm(const DensityOperator& rho1, const DensityOperator& rho2) {
    if (rho1.dim() != rho2.dim()) throw DimMismatch("helstrom_povm dimension mismatch");
    const int d = rho1.dim();
    Eigen::SelfAdjointEigenSolver<Mat> es(rho1.matrix - rho2.matrix);
    Mat m1 = Mat::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        if (es.eigenvalues()(i) >= 0.0)
            m1 += es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
    }
    Povm povm;
    povm.elements = {m1, Mat::Identity(d, d) - m1};
    povm.outcome_labels = {"1", "2"};
    return povm;
}

}  // namespace qdev
