#include "hawkes/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hawkes {

namespace {

double clamp(double v, double lo, double hi) { return std::min(std::max(v, lo), hi); }

class Bfgs {
public:
    explicit Bfgs(std::size_t p) : p_(p), h_(p * p, 0.0) { reset(); }

    void reset() {
        std::fill(h_.begin(), h_.end(), 0.0);
        for (std::size_t i = 0; i < p_; ++i) h_[i * p_ + i] = 1.0;
    }

    // d = -H g
    void direction(const std::vector<double>& g, std::vector<double>& d) const {
        for (std::size_t i = 0; i < p_; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < p_; ++j) acc += h_[i * p_ + j] * g[j];
            d[i] = -acc;
        }
    }

    // Inverse-Hessian BFGS update with curvature pair (s, y).
    void update(const std::vector<double>& s, const std::vector<double>& y) {
        double sy = 0.0;
        double ss = 0.0, yy = 0.0;
        for (std::size_t i = 0; i < p_; ++i) {
            sy += s[i] * y[i];
            ss += s[i] * s[i];
            yy += y[i] * y[i];
        }
        if (!(sy > 1e-12 * std::sqrt(ss * yy)) || sy == 0.0) {
            return; // curvature condition failed; keep the previous estimate
        }
        const double rho = 1.0 / sy;
        std::vector<double> hy(p_, 0.0);
        for (std::size_t i = 0; i < p_; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < p_; ++j) acc += h_[i * p_ + j] * y[j];
            hy[i] = acc;
        }
        double yhy = 0.0;
        for (std::size_t i = 0; i < p_; ++i) yhy += y[i] * hy[i];
        for (std::size_t i = 0; i < p_; ++i) {
            for (std::size_t j = 0; j < p_; ++j) {
                h_[i * p_ + j] += (1.0 + rho * yhy) * rho * s[i] * s[j] -
                                  rho * (s[i] * hy[j] + hy[i] * s[j]);
            }
        }
    }

private:
    std::size_t p_;
    std::vector<double> h_;
};

} // namespace

BoxMinResult minimize_box(const std::function<double(std::span<const double>)>& f,
                          std::vector<double> x0,
                          std::span<const double> lo, std::span<const double> hi,
                          const MinimizeOptions& opt) {
    const std::size_t p = x0.size();
    if (lo.size() != p || hi.size() != p) {
        throw std::invalid_argument("minimize_box: bound sizes disagree with x0");
    }
    for (std::size_t j = 0; j < p; ++j) {
        if (!(lo[j] < hi[j])) {
            throw std::invalid_argument("minimize_box: requires lo < hi");
        }
        x0[j] = clamp(x0[j], lo[j], hi[j]);
    }

    BoxMinResult res;
    res.x = std::move(x0);
    long evals = 0;
    const auto eval = [&](const std::vector<double>& x) {
        ++evals;
        return f(std::span<const double>(x));
    };
    res.f = eval(res.x);

    std::vector<double> g(p), gnew(p), d(p), xtrial(p), s(p), y(p);
    std::vector<double> xp(p), xm(p);
    const auto gradient = [&](const std::vector<double>& x, std::vector<double>& out) {
        for (std::size_t j = 0; j < p; ++j) {
            const double h = opt.fd_step_rel * std::max(1.0, std::abs(x[j]));
            xp = x;
            xm = x;
            xp[j] = std::min(x[j] + h, hi[j]);
            xm[j] = std::max(x[j] - h, lo[j]);
            const double denom = xp[j] - xm[j];
            out[j] = denom > 0.0 ? (eval(xp) - eval(xm)) / denom : 0.0;
        }
    };

    Bfgs bfgs(p);
    gradient(res.x, g);

    int small_improvements = 0;
    bool converged = false;
    int iter = 0;
    for (; iter < opt.max_iterations; ++iter) {
        // Projected-gradient stationarity test.
        double pg = 0.0;
        for (std::size_t j = 0; j < p; ++j) {
            pg = std::max(pg, std::abs(clamp(res.x[j] - g[j], lo[j], hi[j]) - res.x[j]));
        }
        if (pg <= opt.grad_tol * (1.0 + std::abs(res.f))) {
            converged = true;
            break;
        }

        // Mask gradient components pushing against active bounds.
        const double btol = 1e-12;
        std::vector<double> gm = g;
        for (std::size_t j = 0; j < p; ++j) {
            const bool at_lo = res.x[j] <= lo[j] + btol * std::max(1.0, std::abs(lo[j]));
            const bool at_hi = res.x[j] >= hi[j] - btol * std::max(1.0, std::abs(hi[j]));
            if ((at_lo && gm[j] > 0.0) || (at_hi && gm[j] < 0.0)) gm[j] = 0.0;
        }
        bfgs.direction(gm, d);
        for (std::size_t j = 0; j < p; ++j) {
            const bool at_lo = res.x[j] <= lo[j] + btol * std::max(1.0, std::abs(lo[j]));
            const bool at_hi = res.x[j] >= hi[j] - btol * std::max(1.0, std::abs(hi[j]));
            if ((at_lo && d[j] < 0.0) || (at_hi && d[j] > 0.0)) d[j] = 0.0;
        }
        double gd = 0.0;
        for (std::size_t j = 0; j < p; ++j) gd += gm[j] * d[j];
        if (!(gd < 0.0)) {
            bfgs.reset();
            for (std::size_t j = 0; j < p; ++j) d[j] = -gm[j];
            gd = 0.0;
            for (std::size_t j = 0; j < p; ++j) gd += gm[j] * d[j];
            if (!(gd < 0.0)) {
                converged = true; // masked gradient vanished
                break;
            }
        }

        // Backtracking along the projected path.
        const auto line_search = [&](double& fnew) {
            double step = 1.0;
            for (int ls = 0; ls < opt.max_line_search; ++ls) {
                double directional = 0.0;
                for (std::size_t j = 0; j < p; ++j) {
                    xtrial[j] = clamp(res.x[j] + step * d[j], lo[j], hi[j]);
                    directional += g[j] * (xtrial[j] - res.x[j]);
                }
                fnew = eval(xtrial);
                if (fnew <= res.f + opt.armijo_c1 * directional && fnew < res.f) {
                    return true;
                }
                step *= 0.5;
            }
            return false;
        };
        double fnew = res.f;
        bool accepted = line_search(fnew);
        if (!accepted) {
            // The quasi-Newton direction can point into an infeasibility
            // wall; retry once along the masked steepest descent before
            // declaring the point stationary.
            bfgs.reset();
            for (std::size_t j = 0; j < p; ++j) d[j] = -gm[j];
            accepted = line_search(fnew);
            if (!accepted) {
                converged = true;
                break;
            }
        }

        gradient(xtrial, gnew);
        for (std::size_t j = 0; j < p; ++j) {
            s[j] = xtrial[j] - res.x[j];
            y[j] = gnew[j] - g[j];
        }
        bfgs.update(s, y);

        const double improvement = res.f - fnew;
        res.x = xtrial;
        res.f = fnew;
        g = gnew;

        if (improvement <= opt.f_tol * (1.0 + std::abs(res.f))) {
            if (++small_improvements >= 2) {
                converged = true;
                ++iter;
                break;
            }
        } else {
            small_improvements = 0;
        }
    }

    res.iterations = iter;
    res.evals = evals;
    res.converged = converged;
    return res;
}

} // namespace hawkes
