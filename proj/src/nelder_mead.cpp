#include "spinframe/nelder_mead.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace spinframe {

NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                             const Eigen::VectorXd& start, const NelderMeadOptions& opts) {
    const int n = static_cast<int>(start.size());
    // Adaptive coefficients (Gao & Han) help in higher dimensions.
    const double alpha = 1.0;
    const double gamma = 1.0 + 2.0 / n;
    const double rho = 0.75 - 0.5 / n;
    const double sigma = 1.0 - 1.0 / n;

    std::vector<Eigen::VectorXd> verts(n + 1, start);
    for (int i = 0; i < n; ++i) {
        double step = opts.initial_step;
        if (start[i] == 0.0) step = std::max(step, 0.05);
        verts[i + 1][i] += step;
    }
    std::vector<double> vals(n + 1);
    for (int i = 0; i <= n; ++i) vals[i] = f(verts[i]);

    std::vector<int> order(n + 1);
    int iters = 0;
    bool converged = false;

    for (; iters < opts.max_iters; ++iters) {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) { return vals[a] < vals[b]; });

        double diameter = 0.0;
        for (int i = 1; i <= n; ++i) {
            diameter = std::max(diameter, (verts[order[i]] - verts[order[0]]).norm());
        }
        if (diameter < opts.diameter_tol) {
            converged = true;
            break;
        }

        const int best = order[0];
        const int worst = order[n];
        const int second_worst = order[n - 1];

        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
        for (int i = 0; i <= n; ++i) {
            if (i != worst) centroid += verts[i];
        }
        centroid /= n;

        Eigen::VectorXd reflected = centroid + alpha * (centroid - verts[worst]);
        double f_reflected = f(reflected);

        if (f_reflected < vals[best]) {
            Eigen::VectorXd expanded = centroid + gamma * (reflected - centroid);
            double f_expanded = f(expanded);
            if (f_expanded < f_reflected) {
                verts[worst] = expanded;
                vals[worst] = f_expanded;
            } else {
                verts[worst] = reflected;
                vals[worst] = f_reflected;
            }
        } else if (f_reflected < vals[second_worst]) {
            verts[worst] = reflected;
            vals[worst] = f_reflected;
        } else {
            Eigen::VectorXd contracted;
            double f_contracted;
            if (f_reflected < vals[worst]) {
                contracted = centroid + rho * (reflected - centroid);
            } else {
                contracted = centroid - rho * (centroid - verts[worst]);
            }
            f_contracted = f(contracted);
            if (f_contracted < std::min(f_reflected, vals[worst])) {
                verts[worst] = contracted;
                vals[worst] = f_contracted;
            } else {
                for (int i = 0; i <= n; ++i) {
                    if (i == best) continue;
                    verts[i] = verts[best] + sigma * (verts[i] - verts[best]);
                    vals[i] = f(verts[i]);
                }
            }
        }
    }

    int best = 0;
    for (int i = 1; i <= n; ++i) {
        if (vals[i] < vals[best]) best = i;
    }
    return NelderMeadResult{verts[best], vals[best], iters, converged};
}

}  // namespace spinframe
