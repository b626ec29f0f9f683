#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "qdev/errors.hpp"

namespace qdev {

using Cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

/// A d x d density operator (Hermitian, PSD, unit trace).
struct DensityOperator {
    Mat matrix;
    int dim() const { return static_cast<int>(matrix.rows()); }
};

/// A finite POVM: PSD elements summing to the identity.
struct Povm {
    std::vector<Mat> elements;
    std::vector<std::string> outcome_labels;
    int dim() const { return elements.empty() ? 0 : static_cast<int>(elements[0].rows()); }
    int outcomes() const { return static_cast<int>(elements.size()); }
};

/// An ordered set of n >= 2 density operators of a common dimension.
struct PreparationSet {
    std::vector<DensityOperator> states;
    int n() const { return static_cast<int>(states.size()); }
    int dim() const { return states.empty() ? 0 : states[0].dim(); }
};

// hermiticity / positivity checks -------------------------------------------

double hermiticity_residual(const Mat& m);
double min_eigenvalue(const Mat& hermitian);

// Checks Hermiticity, unit trace and positivity within tol; throws
// NotHermitian / BadTrace / NotPsd otherwise. The matrix is returned unchanged.
DensityOperator validate_density(const Mat& m, double tol = 1e-10);

void validate_povm(const Povm& povm, double tol = 1e-8);

// constructors --------------------------------------------------------------

// (I + n.sigma)/2 for a Bloch vector with |n| <= 1.
DensityOperator bloch_qubit(double nx, double ny, double nz);

// Three pure qubit states forming an equilateral triangle in the x-y plane.
PreparationSet trine_states();

// Four pure qubit states on the even-parity vertices (+-1,+-1,+-1)/sqrt(3).
PreparationSet tetrahedron_states();

// sampling ------------------------------------------------------------------

// Rank-1 projector onto a Haar-random pure state. Deterministic in the seed.
DensityOperator haar_random_pure(int d, std::uint64_t seed);

// Hilbert-Schmidt random mixed state, rho = G G^dag / tr(G G^dag) with G Ginibre.
DensityOperator hs_random_mixed(int d, std::uint64_t seed);

// spectral helpers ----------------------------------------------------------

// Sum of absolute eigenvalues of a Hermitian matrix.
double trace_norm(const Mat& hermitian, double herm_tol = 1e-10);

// Helstrom value 1/2 + trace_norm(rho1 - rho2)/4 for a uniformly chosen pair.
double helstrom_pair(const DensityOperator& rho1, const DensityOperator& rho2);

// Two-outcome POVM attaining helstrom_pair: projector onto the non-negative
// eigenspace of rho1 - rho2, and its complement.
Povm helstrom_povm(const DensityOperator& rho1, const DensityOperator& rho2);

}  // namespace qdev
