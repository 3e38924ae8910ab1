#include "numerics.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace chainmap::detail {
namespace {

GLRule make_gauss_legendre(int k) {
    GLRule r;
    r.nodes.resize(k);
    r.weights.resize(k);
    const int m = (k + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (k + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < k; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            dp = k * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) {
                // one more polish step, then done
                p0 = 1.0;
                p1 = 0.0;
                for (int j = 0; j < k; ++j) {
                    const double p2 = p1;
                    p1 = p0;
                    p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
                }
                dp = k * (x * p0 - p1) / (x * x - 1.0);
                x -= p0 / dp;
                break;
            }
        }
        r.nodes[i] = -x;
        r.nodes[k - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r.weights[i] = w;
        r.weights[k - 1 - i] = w;
    }
    if (k % 2 == 1) r.nodes[k / 2] = 0.0;
    return r;
}

double adapt_rec(const std::function<double(double)>& f, double a, double b,
                 double whole, double tol, int depth) {
    const double mid = 0.5 * (a + b);
    const double left = integrate_panel(f, a, mid, 20);
    const double right = integrate_panel(f, mid, b, 20);
    const double split = left + right;
    if (depth <= 0 || std::fabs(split - whole) <= tol)
        return split;
    return adapt_rec(f, a, mid, left, 0.5 * tol, depth - 1) +
           adapt_rec(f, mid, b, right, 0.5 * tol, depth - 1);
}

} // namespace

const GLRule& gauss_legendre(int k) {
    if (k < 1) throw std::invalid_argument("gauss_legendre: k < 1");
    static std::map<int, GLRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(k);
    if (it == cache.end())
        it = cache.emplace(k, make_gauss_legendre(k)).first;
    return it->second;
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol, int max_depth) {
    const double whole = integrate_panel(f, a, b, 20);
    const double scale = std::max(std::fabs(whole), 1e-300);
    return adapt_rec(f, a, b, whole, rel_tol * scale, max_depth);
}

} // namespace chainmap::detail
