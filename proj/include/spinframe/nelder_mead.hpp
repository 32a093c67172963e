#pragma once

#include <Eigen/Dense>
#include <functional>

namespace spinframe {

struct NelderMeadOptions {
    int max_iters = 2000;
    double diameter_tol = 1e-9;
    double initial_step = 0.5;
};

struct NelderMeadResult {
    Eigen::VectorXd x;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Adaptive Nelder-Mead simplex search; converges when the simplex diameter
// drops below diameter_tol or the iteration budget runs out.
NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                             const Eigen::VectorXd& start,
                             const NelderMeadOptions& opts = {});

}  // namespace spinframe
