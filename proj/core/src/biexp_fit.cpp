#include <Eigen/Dense>
#include <unsupported/Eigen/NonLinearOptimization>
#include <algorithm>
#include <cmath>
#include <limits>

#include "qednp/errors.hpp"
#include "qednp/quantum_dot.hpp"

namespace qednp {

namespace {

struct Params {
    ExcitonRates r;
    double scale;
};

// Log-parameters are clamped so trial steps cannot overflow; a rate pinned
// at the lower clamp is reported as at its bound.
constexpr double kLogMin = -30.0;
constexpr double kLogMax = 30.0;

double from_log(double q, double hi = kLogMax) { return std::exp(std::clamp(q, kLogMin, hi)); }

Params unpack(const Eigen::VectorXd& q) {
    Params p;
    p.r.gamma_rad_b = from_log(q[0]);
    p.r.gamma_nrad = from_log(q[1]);
    p.r.gamma_db = from_log(q[2]);
    p.scale = from_log(q[3], 80.0);
    return p;
}

double model(const Params& p, double rho_b0, double rho_d0, double t) {
    return p.scale * biexp_decay(p.r, rho_b0, rho_d0, t);
}

struct Residuals {
    using Scalar = double;
    enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };
    using InputType = Eigen::VectorXd;
    using ValueType = Eigen::VectorXd;
    using JacobianType = Eigen::MatrixXd;

    const DecayCurve* curve;
    const std::vector<double>* inv_sigma;
    double rho_b0, rho_d0;
    int evaluations = 0;

    int inputs() const { return 4; }
    int values() const { return static_cast<int>(curve->t.size()); }

    int operator()(const Eigen::VectorXd& q, Eigen::VectorXd& f) {
        ++evaluations;
        const Params p = unpack(q);
        for (std::size_t i = 0; i < curve->t.size(); ++i)
            f[static_cast<Eigen::Index>(i)] =
                (model(p, rho_b0, rho_d0, curve->t[i]) - curve->counts[i]) * (*inv_sigma)[i];
        return 0;
    }

    // Central differences in log space.
    int df(const Eigen::VectorXd& q, Eigen::MatrixXd& jac) {
        const double h = 1e-6;
        Eigen::VectorXd fp(values()), fm(values());
        for (int j = 0; j < 4; ++j) {
            Eigen::VectorXd qp = q, qm = q;
            qp[j] += h;
            qm[j] -= h;
            (*this)(qp, fp);
            (*this)(qm, fm);
            jac.col(j) = (fp - fm) / (2.0 * h);
        }
        return 0;
    }
};

}  // namespace

FitResult fit_biexp(const DecayCurve& curve, const ExcitonRates& init, const FitOptions& opt,
                    double scale_guess) {
    validate(curve);
    if (curve.t.size() < 50) throw DomainError("biexponential fit needs at least 50 points");
    for (double v : {init.gamma_rad_b, init.gamma_nrad, init.gamma_db})
        if (!(v > 0.0)) throw DomainError("initial rate guesses must be positive");

    if (!(scale_guess > 0.0)) {
        const double a0 = biexp_decay(init, opt.rho_b0, opt.rho_d0, curve.t.front());
        scale_guess = std::max(curve.counts.front(), 1.0) / std::max(a0, 1e-300);
    }

    Eigen::VectorXd q(4);
    q << std::log(init.gamma_rad_b), std::log(init.gamma_nrad), std::log(init.gamma_db),
        std::log(scale_guess);

    const std::size_t n = curve.t.size();
    std::vector<double> inv_sigma(n);
    for (std::size_t i = 0; i < n; ++i) inv_sigma[i] = 1.0 / std::sqrt(std::max(curve.counts[i], 1.0));

    Residuals fn{&curve, &inv_sigma, opt.rho_b0, opt.rho_d0};
    const int passes = opt.weighting == FitWeighting::Model ? 1 + std::max(opt.reweight_passes, 0) : 1;
    Eigen::LevenbergMarquardtSpace::Status status{};
    double best_norm = std::numeric_limits<double>::infinity();
    for (int pass = 0; pass < passes; ++pass) {
        if (pass > 0) {
            const Params p = unpack(q);
            for (std::size_t i = 0; i < n; ++i)
                inv_sigma[i] = 1.0 / std::sqrt(std::max(model(p, opt.rho_b0, opt.rho_d0, curve.t[i]), 1.0));
        }
        Eigen::LevenbergMarquardt<Residuals> lm(fn);
        lm.parameters.ftol = 1e-15;
        lm.parameters.xtol = 1e-15;
        lm.parameters.gtol = 0.0;
        lm.parameters.maxfev = opt.max_evaluations;
        status = lm.minimize(q);
        best_norm = lm.fnorm;
        if (status == Eigen::LevenbergMarquardtSpace::TooManyFunctionEvaluation ||
            status == Eigen::LevenbergMarquardtSpace::ImproperInputParameters || !q.allFinite())
            throw FitError("biexponential fit did not converge", best_norm * best_norm);
    }

    const Params p = unpack(q);
    FitResult res;
    res.rates = p.r;
    res.rates.gamma_dp = init.gamma_dp;
    res.scale = p.scale;
    res.chi2 = best_norm * best_norm;
    res.evaluations = fn.evaluations;

    // Covariance from the Jacobian in the linear parameters, by central
    // differences so that rates near zero keep a meaningful column.
    const double theta[4] = {p.r.gamma_rad_b, p.r.gamma_nrad, p.r.gamma_db, p.scale};
    const double ref = std::max(p.r.gamma_rad_b, p.r.gamma_nrad);
    Eigen::MatrixXd jac(static_cast<Eigen::Index>(n), 4);
    for (int j = 0; j < 4; ++j) {
        const double h = 1e-6 * (j == 3 ? theta[3] : std::max(theta[j], 1e-3 * ref));
        double tp[4], tm[4];
        std::copy(theta, theta + 4, tp);
        std::copy(theta, theta + 4, tm);
        tp[j] += h;
        tm[j] = std::max(tm[j] - h, 0.0);
        const Params pp{{tp[0], tp[1], tp[2], 0.0}, tp[3]};
        const Params pm{{tm[0], tm[1], tm[2], 0.0}, tm[3]};
        for (std::size_t i = 0; i < n; ++i)
            jac(static_cast<Eigen::Index>(i), j) =
                (model(pp, opt.rho_b0, opt.rho_d0, curve.t[i]) -
                 model(pm, opt.rho_b0, opt.rho_d0, curve.t[i])) *
                inv_sigma[i] / (tp[j] - tm[j]);
    }
    const Eigen::MatrixXd info = jac.transpose() * jac;
    const Eigen::MatrixXd cov = info.completeOrthogonalDecomposition().pseudoInverse();
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) res.covariance[i][j] = cov(i, j);
        res.stderr_[i] = std::sqrt(std::max(cov(i, i), 0.0));
    }
    // A log-parameter driven far below the others has effectively hit zero.
    res.at_bound = {p.r.gamma_rad_b < 1e-9 * ref, p.r.gamma_nrad < 1e-9 * ref,
                    p.r.gamma_db < 1e-9 * ref, false};
    const auto comp = biexp_components(p.r, opt.rho_b0, opt.rho_d0);
    res.span_too_short = comp.gamma_s > 0.0 && (curve.t.back() - curve.t.front()) < 3.0 / comp.gamma_s;
    return res;
}

}  // namespace qednp
