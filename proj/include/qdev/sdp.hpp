#pragma once

#include <string>
#include <vector>

#include "qdev/quantum.hpp"

namespace qdev {

/// Real coefficients c[k][x] defining an operational property / communication
/// game with K outcomes over n preparations.
struct CoefficientTable {
    int n = 0;
    std::vector<std::string> outcome_labels;        // K labels
    std::vector<std::vector<double>> c;             // K x n
    int outcomes() const { return static_cast<int>(c.size()); }
};

/// Measurement-optimization SDP: maximize sum_k tr(R_k M_k) over POVMs {M_k},
/// with R_k = sum_x c[k][x] rho_x.
struct MeasurementSdp {
    int dim = 0;
    std::vector<Mat> reduced_operators;
    std::vector<std::string> outcome_labels;
};

enum class SolverStatus { Optimal, MaxIterations, NumericalTrouble };

struct SolverResult {
    double value = 0.0;
    Povm povm;
    Mat dual_operator;     // Y with Y >= R_k for all k; tr(Y) upper-bounds value
    double gap = 0.0;      // tr(Y) - value
    SolverStatus status = SolverStatus::NumericalTrouble;
    int iterations = 0;
};

struct CertificateReport {
    double dual_feasibility_min_eig = 0.0;   // min_k min-eig(Y - R_k)
    double completeness_residual = 0.0;      // max-entry |sum_k M_k - I|
    double povm_min_eig = 0.0;               // min over k of min-eig(M_k)
    double trace_gap = 0.0;                  // |tr(Y) - value|
    bool certified = false;
};

MeasurementSdp build_measurement_sdp(const PreparationSet& preps, const CoefficientTable& coeffs);

// Dense primal-dual interior-point solve (Mehrotra predictor-corrector, HKM
// direction) over the complex Hermitian blocks. The dual iterate Y stays
// feasible throughout, so tr(Y) is always a valid upper bound.
SolverResult solve_measurement_sdp(const MeasurementSdp& sdp, double tol = 1e-9,
                                   int max_iters = 200);

// Independent recheck of a solver result against the SDP data.
CertificateReport verify_certificate(const SolverResult& res, const MeasurementSdp& sdp,
                                     double tol);

/// General block-diagonal SDP in primal standard form:
///   maximize sum_b tr(C_b X_b)
///   s.t.     sum_b tr(A_{i,b} X_b) = rhs_i for each constraint i, X_b >= 0.
/// Blocks are complex Hermitian; every A must be Hermitian.
struct BlockSdp {
    std::vector<int> block_dims;
    std::vector<Mat> objective;  // one C_b per block
    struct Constraint {
        std::vector<std::pair<int, Mat>> terms;  // (block index, A)
        double rhs = 0.0;
    };
    std::vector<Constraint> constraints;
};

struct BlockSdpResult {
    double value = 0.0;
    std::vector<Mat> blocks;
    std::vector<double> dual;  // one multiplier per constraint
    double gap = 0.0;          // dual objective minus primal objective
    SolverStatus status = SolverStatus::NumericalTrouble;
    int iterations = 0;
};

// Infeasible-start primal-dual interior-point solve of the general form, same
// Mehrotra/HKM scheme as the measurement solver but with explicit equality
// constraints and a dense Schur complement over the multipliers.
BlockSdpResult solve_block_sdp(const BlockSdp& sdp, double tol = 1e-9, int max_iters = 200);

const char* to_string(SolverStatus status);

}  // namespace qdev
