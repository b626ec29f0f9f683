#include "qdev/sdp.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>

namespace qdev {

const char* to_string(SolverStatus status) {
    switch (status) {
        case SolverStatus::Optimal: return "Optimal";
        case SolverStatus::MaxIterations: return "MaxIterations";
        case SolverStatus::NumericalTrouble: return "NumericalTrouble";
    }
    return "Unknown";
}

MeasurementSdp build_measurement_sdp(const PreparationSet& preps, const CoefficientTable& coeffs) {
    if (coeffs.n != preps.n()) throw SizeMismatch("coefficient table n does not match preparation set");
    const int d = preps.dim();
    MeasurementSdp sdp;
    sdp.dim = d;
    sdp.outcome_labels = coeffs.outcome_labels;
    for (int k = 0; k < coeffs.outcomes(); ++k) {
        Mat r = Mat::Zero(d, d);
        for (int x = 0; x < coeffs.n; ++x) r += coeffs.c[k][x] * preps.states[x].matrix;
        sdp.reduced_operators.push_back(0.5 * (r + r.adjoint()));
    }
    return sdp;
}

namespace {

Mat hermitize(const Mat& m) { return 0.5 * (m + m.adjoint()); }

// Coordinates of a Hermitian d x d matrix in an orthonormal real basis of the
// Hermitian space (d^2 real dimensions).
Eigen::VectorXd hvec(const Mat& m) {
    const int d = static_cast<int>(m.rows());
    Eigen::VectorXd v(d * d);
    int idx = 0;
    const double s = std::sqrt(2.0);
    for (int i = 0; i < d; ++i) v(idx++) = m(i, i).real();
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            v(idx++) = s * m(i, j).real();
            v(idx++) = s * m(i, j).imag();
        }
    return v;
}

Mat hunvec(const Eigen::VectorXd& v, int d) {
    Mat m = Mat::Zero(d, d);
    int idx = 0;
    const double s = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < d; ++i) m(i, i) = v(idx++);
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            const double re = v(idx++) * s;
            const double im = v(idx++) * s;
            m(i, j) = Cplx(re, im);
            m(j, i) = Cplx(re, -im);
        }
    return m;
}

// Largest step alpha such that X + alpha*D stays PSD, given X = L L^dag.
double max_step(const Eigen::LLT<Mat>& llt, const Mat& d_mat) {
    const Mat a1 = llt.matrixL().solve(d_mat);
    Mat w = llt.matrixL().solve(a1.adjoint()).adjoint();
    w = hermitize(w);
    Eigen::SelfAdjointEigenSolver<Mat> es(w, Eigen::EigenvaluesOnly);
    const double lam_min = es.eigenvalues().minCoeff();
    if (lam_min >= -1e-14) return std::numeric_limits<double>::infinity();
    return -1.0 / lam_min;
}

}  // namespace

SolverResult solve_measurement_sdp(const MeasurementSdp& sdp, double tol, int max_iters) {
    const int d = sdp.dim;
    const int big_k = static_cast<int>(sdp.reduced_operators.size());
    const Mat identity = Mat::Identity(d, d);

    // Strictly feasible start: X_k = I/K, Y = (max_k lambda_max(C_k) + 1) I.
    std::vector<Mat> x(big_k, identity / static_cast<double>(big_k));
    double max_lam = 0.0;
    for (const Mat& c : sdp.reduced_operators) {
        Eigen::SelfAdjointEigenSolver<Mat> es(c, Eigen::EigenvaluesOnly);
        max_lam = std::max(max_lam, es.eigenvalues().maxCoeff());
    }
    Mat y = (max_lam + 1.0) * identity;

    SolverResult res;
    res.status = SolverStatus::MaxIterations;
    double prev_comp = std::numeric_limits<double>::infinity();
    int stall_count = 0;
    int iter = 0;

    const int nh = d * d;
    std::vector<Mat> s(big_k), s_inv(big_k);
    std::vector<Eigen::LLT<Mat>> x_llt(big_k), s_llt(big_k);

    for (; iter < max_iters; ++iter) {
        bool factor_ok = true;
        double comp = 0.0;
        for (int k = 0; k < big_k; ++k) {
            s[k] = hermitize(y - sdp.reduced_operators[k]);
            x[k] = hermitize(x[k]);
            x_llt[k].compute(x[k]);
            s_llt[k].compute(s[k]);
            if (x_llt[k].info() != Eigen::Success || s_llt[k].info() != Eigen::Success) {
                factor_ok = false;
                break;
            }
            s_inv[k] = s_llt[k].solve(identity);
            comp += (x[k] * s[k]).trace().real();
        }
        if (!factor_ok) {
            res.status = SolverStatus::NumericalTrouble;
            break;
        }

        double value = 0.0;
        for (int k = 0; k < big_k; ++k)
            value += (sdp.reduced_operators[k] * x[k]).trace().real();
        Mat r_p = identity;
        for (const Mat& xk : x) r_p -= xk;
        const double primal_res = r_p.cwiseAbs().maxCoeff();
        const double gap = y.trace().real() - value;

        if (primal_res <= tol && std::abs(gap) <= tol) {
            res.status = SolverStatus::Optimal;
            break;
        }
        if (comp >= prev_comp * (1.0 - 1e-12)) {
            if (++stall_count >= 3) {
                res.status = SolverStatus::NumericalTrouble;
                break;
            }
        } else {
            stall_count = 0;
        }
        prev_comp = comp;

        const double mu = comp / (big_k * d);

        // Schur operator A(E) = sum_k H(X_k E S_k^{-1}), materialized in the
        // orthonormal Hermitian basis (d^2 x d^2 real system).
        Eigen::MatrixXd a_mat(nh, nh);
        for (int col = 0; col < nh; ++col) {
            Eigen::VectorXd e = Eigen::VectorXd::Zero(nh);
            e(col) = 1.0;
            const Mat basis_el = hunvec(e, d);
            Mat img = Mat::Zero(d, d);
            for (int k = 0; k < big_k; ++k) img += hermitize(x[k] * basis_el * s_inv[k]);
            a_mat.col(col) = hvec(img);
        }
        Eigen::PartialPivLU<Eigen::MatrixXd> a_lu(a_mat);

        // Predictor (affine scaling): the feasibility algebra collapses the
        // right-hand side to -I.
        const Eigen::VectorXd dy_aff_v = a_lu.solve(hvec(-identity));
        const Mat dy_aff = hunvec(dy_aff_v, d);
        std::vector<Mat> dx_aff(big_k);
        double alpha_p_aff = 1.0, alpha_d_aff = 1.0;
        for (int k = 0; k < big_k; ++k) {
            dx_aff[k] = -x[k] - hermitize(x[k] * dy_aff * s_inv[k]);
            alpha_p_aff = std::min(alpha_p_aff, max_step(x_llt[k], dx_aff[k]));
            alpha_d_aff = std::min(alpha_d_aff, max_step(s_llt[k], dy_aff));
        }

        double mu_aff = 0.0;
        for (int k = 0; k < big_k; ++k)
            mu_aff += ((x[k] + alpha_p_aff * dx_aff[k]) * (s[k] + alpha_d_aff * dy_aff))
                          .trace()
                          .real();
        mu_aff = std::max(mu_aff / (big_k * d), 0.0);
        const double sigma = std::clamp(std::pow(mu_aff / mu, 3.0), 0.0, 1.0);

        // Corrector.
        Mat b = -r_p;
        std::vector<Mat> corr(big_k);
        for (int k = 0; k < big_k; ++k) {
            corr[k] = hermitize(dx_aff[k] * dy_aff * s_inv[k]);
            b += sigma * mu * s_inv[k] - x[k] - corr[k];
        }
        const Eigen::VectorXd dy_v = a_lu.solve(hvec(b));
        const Mat dy = hunvec(dy_v, d);

        double alpha_p = 1.0, alpha_d = 1.0;
        std::vector<Mat> dx(big_k);
        for (int k = 0; k < big_k; ++k) {
            dx[k] = sigma * mu * s_inv[k] - x[k] - hermitize(x[k] * dy * s_inv[k]) - corr[k];
            alpha_p = std::min(alpha_p, 0.98 * max_step(x_llt[k], dx[k]));
            alpha_d = std::min(alpha_d, 0.98 * max_step(s_llt[k], dy));
        }
        alpha_p = std::min(alpha_p, 1.0);
        alpha_d = std::min(alpha_d, 1.0);

        for (int k = 0; k < big_k; ++k) x[k] += alpha_p * dx[k];
        y += alpha_d * dy;
    }

    res.iterations = iter;

    // Extract the POVM: re-Hermitize and fold the completeness residual into
    // the last element when it is small enough.
    Povm povm;
    for (int k = 0; k < big_k; ++k) povm.elements.push_back(hermitize(x[k]));
    povm.outcome_labels = sdp.outcome_labels;
    if (povm.outcome_labels.size() != povm.elements.size()) {
        povm.outcome_labels.clear();
        for (int k = 0; k < big_k; ++k) povm.outcome_labels.push_back(std::to_string(k + 1));
    }
    Mat residual = identity;
    for (const Mat& m : povm.elements) residual -= m;
    if (residual.cwiseAbs().maxCoeff() <= 1e-8) {
        povm.elements.back() += residual;
    } else if (res.status == SolverStatus::Optimal) {
        res.status = SolverStatus::NumericalTrouble;
    }

    double value = 0.0;
    for (int k = 0; k < big_k; ++k)
        value += (sdp.reduced_operators[k] * povm.elements[k]).trace().real();

    res.value = value;
    res.povm = std::move(povm);
    res.dual_operator = hermitize(y);
    res.gap = y.trace().real() - value;
    return res;
}

BlockSdpResult solve_block_sdp(const BlockSdp& sdp, double tol, int max_iters) {
    const int nb = static_cast<int>(sdp.block_dims.size());
    const int m = static_cast<int>(sdp.constraints.size());
    if (static_cast<int>(sdp.objective.size()) != nb)
        throw SizeMismatch("block SDP objective count does not match block count");

    // constraints touching each block, for the Schur assembly
    std::vector<std::vector<std::pair<int, const Mat*>>> touch(nb);
    for (int i = 0; i < m; ++i)
        for (const auto& [b, a] : sdp.constraints[i].terms) {
            if (b < 0 || b >= nb) throw SizeMismatch("block SDP constraint references a bad block");
            touch[b].emplace_back(i, &a);
        }

    double scale = 1.0;
    for (const auto& con : sdp.constraints) scale = std::max(scale, std::abs(con.rhs));
    for (const Mat& c : sdp.objective)
        if (c.size() > 0) scale = std::max(scale, c.cwiseAbs().maxCoeff());
    const double eta = 10.0 * scale;

    int total_dim = 0;
    std::vector<Mat> x(nb), s(nb), s_inv(nb);
    std::vector<Eigen::LLT<Mat>> x_llt(nb), s_llt(nb);
    for (int b = 0; b < nb; ++b) {
        const int d = sdp.block_dims[b];
        total_dim += d;
        x[b] = eta * Mat::Identity(d, d);
        s[b] = eta * Mat::Identity(d, d);
    }
    Eigen::VectorXd y = Eigen::VectorXd::Zero(m);

    BlockSdpResult res;
    res.status = SolverStatus::MaxIterations;
    double prev_comp = std::numeric_limits<double>::infinity();
    int stall_count = 0;
    int iter = 0;

    std::vector<Mat> r_d(nb), dx_aff(nb), ds_aff(nb), dx(nb), ds(nb), corr(nb);
    for (; iter < max_iters; ++iter) {
        bool factor_ok = true;
        double comp = 0.0;
        for (int b = 0; b < nb; ++b) {
            x[b] = hermitize(x[b]);
            s[b] = hermitize(s[b]);
            x_llt[b].compute(x[b]);
            s_llt[b].compute(s[b]);
            if (x_llt[b].info() != Eigen::Success || s_llt[b].info() != Eigen::Success) {
                factor_ok = false;
                break;
            }
            s_inv[b] = s_llt[b].solve(Mat::Identity(sdp.block_dims[b], sdp.block_dims[b]));
            comp += (x[b] * s[b]).trace().real();
        }
        if (!factor_ok) {
            res.status = SolverStatus::NumericalTrouble;
            break;
        }
        const double mu = comp / total_dim;

        // residuals: rp_i = rhs_i - <A_i, X>, Rd_b = C_b + S_b - sum_i y_i A_{i,b}
        Eigen::VectorXd r_p(m);
        for (int i = 0; i < m; ++i) {
            double v = sdp.constraints[i].rhs;
            for (const auto& [b, a] : sdp.constraints[i].terms)
                v -= (a.conjugate().cwiseProduct(x[b])).sum().real();
            r_p(i) = v;
        }
        double dual_res = 0.0;
        for (int b = 0; b < nb; ++b) {
            r_d[b] = sdp.objective[b] + s[b];
            for (const auto& [i, a] : touch[b]) r_d[b] -= y(i) * (*a);
            dual_res = std::max(dual_res, r_d[b].cwiseAbs().maxCoeff());
        }
        const double primal_res = m > 0 ? r_p.cwiseAbs().maxCoeff() : 0.0;

        if (mu <= tol && primal_res <= tol * (1.0 + scale) && dual_res <= tol * (1.0 + scale)) {
            res.status = SolverStatus::Optimal;
            break;
        }
        if (comp >= prev_comp * (1.0 - 1e-12)) {
            if (++stall_count >= 5) {
                res.status = SolverStatus::NumericalTrouble;
                break;
            }
        } else {
            stall_count = 0;
        }
        prev_comp = comp;

        // Schur complement M_ij = sum_b Re tr(A_i X_b A_j S_b^{-1})
        Eigen::MatrixXd schur = Eigen::MatrixXd::Zero(m, m);
        for (int b = 0; b < nb; ++b) {
            const auto& list = touch[b];
            std::vector<Mat> u(list.size());
            for (size_t j = 0; j < list.size(); ++j)
                u[j] = x[b] * (*list[j].second) * s_inv[b];
            for (size_t i = 0; i < list.size(); ++i)
                for (size_t j = 0; j < list.size(); ++j)
                    schur(list[i].first, list[j].first) +=
                        (list[i].second->conjugate().cwiseProduct(u[j])).sum().real();
        }
        schur = 0.5 * (schur + schur.transpose()).eval();
        Eigen::LDLT<Eigen::MatrixXd> schur_ldlt(schur);
        if (schur_ldlt.info() != Eigen::Success) {
            res.status = SolverStatus::NumericalTrouble;
            break;
        }

        // direction for a given centering target and second-order correction:
        //   dS_b = sum_i dy_i A_{i,b} - Rd_b
        //   dX_b = tau S^{-1} - X - H(X dS S^{-1}) - corr_b
        const auto solve_direction = [&](double tau, const std::vector<Mat>* second_order,
                                         Eigen::VectorXd& dy, std::vector<Mat>& dxo,
                                         std::vector<Mat>& dso) {
            Eigen::VectorXd q = -r_p;
            for (int b = 0; b < nb; ++b) {
                Mat base = tau * s_inv[b] - x[b] + hermitize(x[b] * r_d[b] * s_inv[b]);
                if (second_order) base -= hermitize((*second_order)[b] * s_inv[b]);
                for (const auto& [i, a] : touch[b])
                    q(i) += (a->conjugate().cwiseProduct(base)).sum().real();
            }
            dy = schur_ldlt.solve(q);
            for (int b = 0; b < nb; ++b) {
                dso[b] = -r_d[b];
                for (const auto& [i, a] : touch[b]) dso[b] += dy(i) * (*a);
                dxo[b] = tau * s_inv[b] - x[b] - hermitize(x[b] * dso[b] * s_inv[b]);
                if (second_order) dxo[b] -= hermitize((*second_order)[b] * s_inv[b]);
            }
        };

        Eigen::VectorXd dy_aff(m);
        solve_direction(0.0, nullptr, dy_aff, dx_aff, ds_aff);
        double alpha_p_aff = 1.0, alpha_d_aff = 1.0;
        for (int b = 0; b < nb; ++b) {
            alpha_p_aff = std::min(alpha_p_aff, max_step(x_llt[b], dx_aff[b]));
            alpha_d_aff = std::min(alpha_d_aff, max_step(s_llt[b], ds_aff[b]));
        }

        double mu_aff = 0.0;
        for (int b = 0; b < nb; ++b)
            mu_aff += ((x[b] + alpha_p_aff * dx_aff[b]) * (s[b] + alpha_d_aff * ds_aff[b]))
                          .trace()
                          .real();
        mu_aff = std::max(mu_aff / total_dim, 0.0);
        const double sigma = std::clamp(std::pow(mu_aff / mu, 3.0), 0.0, 1.0);

        for (int b = 0; b < nb; ++b) corr[b] = dx_aff[b] * ds_aff[b];
        Eigen::VectorXd dy(m);
        solve_direction(sigma * mu, &corr, dy, dx, ds);

        double alpha_p = 1.0, alpha_d = 1.0;
        for (int b = 0; b < nb; ++b) {
            alpha_p = std::min(alpha_p, 0.98 * max_step(x_llt[b], dx[b]));
            alpha_d = std::min(alpha_d, 0.98 * max_step(s_llt[b], ds[b]));
        }
        alpha_p = std::min(alpha_p, 1.0);
        alpha_d = std::min(alpha_d, 1.0);

        for (int b = 0; b < nb; ++b) {
            x[b] += alpha_p * dx[b];
            s[b] += alpha_d * ds[b];
        }
        y += alpha_d * dy;
    }

    res.iterations = iter;
    double value = 0.0;
    for (int b = 0; b < nb; ++b) {
        res.blocks.push_back(hermitize(x[b]));
        value += (sdp.objective[b].conjugate().cwiseProduct(res.blocks.back())).sum().real();
    }
    res.value = value;
    res.dual.assign(y.data(), y.data() + m);
    double dual_value = 0.0;
    for (int i = 0; i < m; ++i) dual_value += sdp.constraints[i].rhs * y(i);
    res.gap = dual_value - value;
    return res;
}

CertificateReport verify_certificate(const SolverResult& res, const MeasurementSdp& sdp,
                                     double tol) {
    const int d = sdp.dim;
    CertificateReport rep;
    rep.dual_feasibility_min_eig = std::numeric_limits<double>::infinity();
    for (const Mat& c : sdp.reduced_operators)
        rep.dual_feasibility_min_eig =
            std::min(rep.dual_feasibility_min_eig, min_eigenvalue(res.dual_operator - c));

    Mat sum = Mat::Zero(d, d);
    rep.povm_min_eig = std::numeric_limits<double>::infinity();
    for (const Mat& m : res.povm.elements) {
        rep.povm_min_eig = std::min(rep.povm_min_eig, min_eigenvalue(m));
        sum += m;
    }
    rep.completeness_residual = (sum - Mat::Identity(d, d)).cwiseAbs().maxCoeff();
    rep.trace_gap = std::abs(res.dual_operator.trace().real() - res.value);
    rep.certified = rep.dual_feasibility_min_eig >= -tol && rep.completeness_residual <= tol &&
                    rep.povm_min_eig >= -tol && rep.trace_gap <= 10.0 * tol;
    return rep;
}

}  // namespace qdev
