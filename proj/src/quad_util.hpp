#pragma once

#include <cmath>
#include <vector>

namespace qbench::detail {

struct Node {
    double x;
    double w;
};

inline std::vector<Node> gauss_legendre(int n, double a, double b) {
    std::vector<Node> nodes(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) {
                break;
            }
        }
        double xm = 0.5 * (b + a);
        double xl = 0.5 * (b - a);
        nodes[static_cast<size_t>(i)] = {xm - xl * x, 2.0 * xl / ((1.0 - x * x) * pp * pp)};
    }
    return nodes;
}

inline std::vector<Node> composite_gl(double a, double b, int panels, int nodes_per_panel) {
    std::vector<Node> out;
    out.reserve(static_cast<size_t>(panels * nodes_per_panel));
    double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        auto part = gauss_legendre(nodes_per_panel, a + p * h, a + (p + 1) * h);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

// Panels shrinking geometrically toward b, where weights like cos^{2 beta + 1}
// vanish with a fractional power for non-integer prior widths.
inline std::vector<Node> composite_gl_graded_right(double a, double b, int nodes_per_panel) {
    std::vector<Node> out;
    const int graded_panels = 16;
    const double ratio = 0.25;
    double width = 0.5 * (b - a);
    auto body = composite_gl(a, b - width, 2, nodes_per_panel);
    out.insert(out.end(), body.begin(), body.end());
    double lo = b - width;
    for (int k = 1; k <= graded_panels; ++k) {
        double hi = (k == graded_panels) ? b : b - width * std::pow(ratio, k);
        auto part = gauss_legendre(nodes_per_panel, lo, hi);
        out.insert(out.end(), part.begin(), part.end());
        lo = hi;
    }
    return out;
}

inline std::vector<Node> periodic_nodes(int n) {
    std::vector<Node> out(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        out[static_cast<size_t>(i)] = {2.0 * M_PI * (i + 0.5) / n, 2.0 * M_PI / n};
    }
    return out;
}

}  // namespace qbench::detail
