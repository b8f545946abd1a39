// rootfind.hpp — real-zero location for entire characteristic functions.
//
// Sign-change scanning plus bracket refinement catches odd-multiplicity
// zeros; even-multiplicity zeros and unresolvably close pairs are caught by
// derivative sign changes (complex-step) and argument-principle winding
// counts on small contours. A box-subdivision fallback reconciles the shell
// count against the winding number of the enclosing rectangle.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "starsl/common.hpp"

namespace starsl {

using RealFn = std::function<double(double)>;
using ComplexFn = std::function<complex(complex)>;

struct RootMult {
    double x;
    int mult;
};

namespace detail {

inline constexpr double cs_step = 1e-30;  // complex-step size; error is O(h^2), below eps

// f and f' of a real-analytic function from one complex evaluation.
inline std::pair<double, double> value_and_derivative(const ComplexFn& f, double x) {
    const complex v = f(complex(x, cs_step));
    return {v.real(), v.imag() / cs_step};
}

inline double refine_bracket(const RealFn& f, double a, double b, double fa, double fb,
                             double tol) {
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    for (int it = 0; it < 200 && (b - a) > tol; ++it) {
        double x;
        if (it % 2 == 0 && fb != fa) {
            x = (std::abs(fb) < std::abs(fa)) ? b - fb * (b - a) / (fb - fa)
                                              : a - fa * (b - a) / (fb - fa);
            const double guard = 0.01 * (b - a);
            if (!(x > a + guard && x < b - guard)) x = 0.5 * (a + b);
        } else {
            x = 0.5 * (a + b);
        }
        const double fx = f(x);
        if (fx == 0.0) return x;
        if ((fa < 0.0) != (fx < 0.0)) {
            b = x;
            fb = fx;
        } else {
            a = x;
            fa = fx;
        }
    }
    return 0.5 * (a + b);
}

// Newton with complex-step derivative, clamped to [lo, hi].
inline double newton_polish(const ComplexFn& f, double x0, double lo, double hi,
                            double tol = 1e-13) {
    double x = x0;
    for (int it = 0; it < 40; ++it) {
        auto [v, d] = value_and_derivative(f, x);
        if (d == 0.0) break;
        double dx = -v / d;
        const double cap = 0.25 * (hi - lo);
        dx = std::clamp(dx, -cap, cap);
        x = std::clamp(x + dx, lo, hi);
        if (std::abs(dx) < tol) break;
    }
    return x;
}

}  // namespace detail

// Winding number of f along the closed polyline through `corners`
// (last vertex joined back to the first), by adaptive argument tracking.
inline int winding_number(const ComplexFn& f, const std::vector<complex>& corners,
                          int init_per_unit = 64, int max_evals = 60000) {
    if (corners.size() < 3) throw invalid_input_error("winding_number: degenerate path");
    int evals = 0;
    auto eval = [&](complex z) {
        if (++evals > max_evals) throw numerical_error("winding_number: evaluation budget exceeded");
        const complex v = f(z);
        if (std::abs(v) == 0.0) throw numerical_error("winding_number: zero on contour");
        return v;
    };

    double total = 0.0;
    // recursive segment handling with an explicit stack
    struct Seg {
        complex z0, z1;
        complex f0, f1;
        int depth;
    };
    std::vector<Seg> stack;
    const std::size_t nc = corners.size();
    complex zprev = corners[0];
    complex fprev = eval(zprev);
    const complex ffirst = fprev;
    for (std::size_t ci = 1; ci <= nc; ++ci) {
        const complex z1 = (ci == nc) ? corners[0] : corners[ci];
        const complex f1 = (ci == nc) ? ffirst : eval(z1);
        const double len = std::abs(z1 - zprev);
        const int pieces = std::max(1, static_cast<int>(std::ceil(len * init_per_unit)));
        complex za = zprev, fa = fprev;
        for (int p = 1; p <= pieces; ++p) {
            const complex zb = (p == pieces) ? z1 : zprev + (z1 - zprev) * (double(p) / pieces);
            const complex fb = (p == pieces) ? f1 : eval(zb);
            stack.push_back({za, zb, fa, fb, 0});
            za = zb;
            fa = fb;
        }
        while (!stack.empty()) {
            Seg s = stack.back();
            stack.pop_back();
            const double dphi = std::arg(s.f1 / s.f0);
            if (std::abs(dphi) <= 1.3 && s.depth >= 1) {
                total += dphi;
                continue;
            }
            if (std::abs(dphi) <= 0.5 && s.depth == 0) {
                total += dphi;
                continue;
            }
            if (s.depth > 46) throw numerical_error("winding_number: subdivision limit");
            const complex zm = 0.5 * (s.z0 + s.z1);
            const complex fm = eval(zm);
            stack.push_back({s.z0, zm, s.f0, fm, s.depth + 1});
            stack.push_back({zm, s.z1, fm, s.f1, s.depth + 1});
        }
        zprev = z1;
        fprev = f1;
    }
    const double w = total / (2.0 * pi);
    const double r = std::round(w);
    if (std::abs(w - r) > 0.05) throw numerical_error("winding_number: non-integer winding");
    return static_cast<int>(r);
}

inline std::vector<complex> rectangle_path(double re_lo, double re_hi, double im_lo, double im_hi) {
    return {complex(re_lo, im_lo), complex(re_hi, im_lo), complex(re_hi, im_hi),
            complex(re_lo, im_hi)};
}

inline std::vector<complex> circle_path(complex center, double r, int n = 16) {
    std::vector<complex> pts(n);
    for (int i = 0; i < n; ++i) {
        const double t = 2.0 * pi * i / n;
        pts[i] = center + r * complex(std::cos(t), std::sin(t));
    }
    return pts;
}

// Winding count with outward edge nudges if a zero sits (numerically) on the box.
inline int box_winding(const ComplexFn& f, double lo, double hi, double half_height,
                       int per_unit = 48) {
    const double span = hi - lo;
    for (int attempt = 0; attempt < 4; ++attempt) {
        const double d = attempt * 0.011 * span;
        try {
            return winding_number(f, rectangle_path(lo - d, hi + d, -half_height, half_height),
                                  per_unit);
        } catch (const numerical_error&) {
            if (attempt == 3) throw;
        }
    }
    return 0;  // unreachable
}

struct ZeroSearchOptions {
    double scan_step = 1.0 / 24.0;
    double refine_tol = 1e-12;
    double box_half_height = 0.5;
    bool verify_winding = true;
    double zero_rel_tol = 1e-7;  // |D| below this x window scale counts as "at a zero"
};

// All real zeros of D (with multiplicity) in the window (lo, hi]. D must be
// real-analytic; Dc is its complex evaluator. `expected` < 0 disables the
// count reconciliation (returns whatever was found plus winding fixups).
inline std::vector<RootMult> real_zeros_in_window(const RealFn& D, const ComplexFn& Dc, double lo,
                                                  double hi, int expected,
                                                  const ZeroSearchOptions& opt) {
    std::vector<RootMult> roots;
    const int n_scan = std::max(8, static_cast<int>(std::ceil((hi - lo) / opt.scan_step)));
    std::vector<double> xs(n_scan + 1), fs(n_scan + 1);
    double scale = 0.0;
    for (int i = 0; i <= n_scan; ++i) {
        xs[i] = lo + (hi - lo) * i / n_scan;
        fs[i] = D(xs[i]);
        scale = std::max(scale, std::abs(fs[i]));
    }
    if (scale == 0.0) throw numerical_error("real_zeros_in_window: function vanishes on scan grid");
    // magnitude reference near x (the global envelope can vary by many orders)
    auto local_scale = [&](double x) {
        const int ic = static_cast<int>(std::round((x - lo) / (hi - lo) * n_scan));
        double s = 0.0;
        for (int i = std::max(0, ic - 8); i <= std::min(n_scan, ic + 8); ++i)
            s = std::max(s, std::abs(fs[i]));
        return s > 0.0 ? s : scale;
    };

    // 1. sign-change brackets
    for (int i = 0; i < n_scan; ++i) {
        if (fs[i] == 0.0) {
            if (i == 0 || fs[i - 1] != 0.0) roots.push_back({xs[i], 1});
            continue;
        }
        if (fs[i + 1] == 0.0) continue;
        if ((fs[i] < 0.0) != (fs[i + 1] < 0.0))
            roots.push_back({detail::refine_bracket(D, xs[i], xs[i + 1], fs[i], fs[i + 1],
                                                    opt.refine_tol),
                             1});
    }
    if (fs[n_scan] == 0.0) roots.push_back({xs[n_scan], 1});

    auto count = [&] {
        int c = 0;
        for (const auto& r : roots) c += r.mult;
        return c;
    };
    auto sortroots = [&] {
        std::sort(roots.begin(), roots.end(), [](const RootMult& a, const RootMult& b) {
            return a.x < b.x;
        });
    };
    sortroots();

    // 2. extremum-based recovery of even-multiplicity zeros / close pairs
    for (int round = 0; round < 3 && (expected < 0 ? round == 0 : count() < expected); ++round) {
        std::vector<double> cuts{lo};
        for (const auto& r : roots) cuts.push_back(r.x);
        cuts.push_back(hi);
        bool progress = false;
        for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
            const double a = cuts[c] + 1e-7, b = cuts[c + 1] - 1e-7;
            if (b - a < 1e-6) continue;
            const int pts = std::max(6, static_cast<int>(std::ceil((b - a) / opt.scan_step)) * 2);
            double px = a;
            auto [pv, pd] = detail::value_and_derivative(Dc, a);
            for (int i = 1; i <= pts; ++i) {
                const double x = a + (b - a) * i / pts;
                auto [v, d] = detail::value_and_derivative(Dc, x);
                if ((pd < 0.0) != (d < 0.0) && pd != 0.0) {
                    // extremum of D in [px, x]
                    double e_lo = px, e_hi = x, ed_lo = pd;
                    while (e_hi - e_lo > 1e-12) {
                        const double mid = 0.5 * (e_lo + e_hi);
                        const double dm = detail::value_and_derivative(Dc, mid).second;
                        if ((ed_lo < 0.0) != (dm < 0.0)) {
                            e_hi = mid;
                        } else {
                            e_lo = mid;
                            ed_lo = dm;
                        }
                    }
                    const double xhat = 0.5 * (e_lo + e_hi);
                    const double vhat = D(xhat);
                    bool added = false;
                    auto near_known = [&](double x) {
                        for (const auto& r : roots)
                            if (std::abs(x - r.x) < 1e-8) return true;
                        return false;
                    };
                    if (near_known(xhat)) {
                        px = x;
                        pv = v;
                        pd = d;
                        continue;
                    }
                    if (std::abs(vhat) <= opt.zero_rel_tol * local_scale(xhat)) {
                        // at (numerically) a multiple zero: multiplicity by winding
                        double r0 = std::min({xhat - cuts[c], cuts[c + 1] - xhat, 5e-3});
                        r0 = std::max(r0 * 0.5, 1e-6);
                        int w = 0;
                        for (int attempt = 0; attempt < 3 && w == 0; ++attempt) {
                            try {
                                w = winding_number(Dc, circle_path(complex(xhat), r0, 24), 256);
                            } catch (const numerical_error&) {
                                r0 *= 0.6;
                            }
                        }
                        if (w >= 1) {
                            roots.push_back({xhat, w});
                            added = true;
                        }
                    } else if (std::abs(vhat) <= 1e-3 * local_scale(xhat)) {
                        // close to a zero: try splitting a near-double pair
                        // with the local quadratic model D ~ vhat + D''/2 (x-xhat)^2
                        const double dstep = std::max(1e-5, 1e-5 * std::abs(xhat));
                        const double ddd =
                            (D(xhat + dstep) - 2.0 * vhat + D(xhat - dstep)) / (dstep * dstep);
                        const double disc = -2.0 * vhat / ddd;
                        if (ddd != 0.0 && disc > 0.0) {
                            const double s = std::sqrt(disc);
                            if (s > 1e-11 && s < (b - a)) {
                                const double r1 = detail::newton_polish(Dc, xhat - s, a, xhat);
                                const double r2 = detail::newton_polish(Dc, xhat + s, xhat, b);
                                if (std::abs(D(r1)) <= 1e-8 * local_scale(r1) &&
                                    std::abs(D(r2)) <= 1e-8 * local_scale(r2) && r2 - r1 > 1e-12 &&
                                    r1 > a + 1e-6 && r2 < b - 1e-6 && !near_known(r1) &&
                                    !near_known(r2)) {
                                    roots.push_back({r1, 1});
                                    roots.push_back({r2, 1});
                                    added = true;
                                }
                            }
                        }
                        if (!added) {
                            // possibly an unresolved pair straddling the extremum
                            const double rr = std::max(
                                1e-4, std::min({xhat - cuts[c], cuts[c + 1] - xhat, 5e-3}) * 0.5);
                            try {
                                const int w =
                                    winding_number(Dc, circle_path(complex(xhat), rr, 24), 256);
                                if (w >= 2) {
                                    roots.push_back({xhat, w});
                                    added = true;
                                }
                            } catch (const numerical_error&) {
                            }
                        }
                    }
                    if (added) {
                        progress = true;
                        break;  // re-cut the interval list
                    }
                }
                px = x;
                pv = v;
                pd = d;
                (void)pv;
            }
            if (progress) break;
        }
        sortroots();
        if (!progress) break;
    }

    // 3. reconciliation against the window winding count
    if (opt.verify_winding || (expected >= 0 && count() != expected)) {
        const int w = box_winding(Dc, lo, hi, opt.box_half_height, 48);
        if (w != count()) {
            // subdivision fallback: isolate zeros purely by winding counts
            roots.clear();
            struct Box {
                double a, b;
                int w;
            };
            std::vector<Box> queue{{lo, hi, w}};
            int guard = 0;
            while (!queue.empty()) {
                if (++guard > 600) throw numerical_error("zero subdivision: too many boxes");
                Box bx = queue.back();
                queue.pop_back();
                if (bx.w == 0) continue;
                if (bx.b - bx.a < 5e-11) {
                    roots.push_back({0.5 * (bx.a + bx.b), bx.w});
                    continue;
                }
                double mid = 0.5 * (bx.a + bx.b);
                if (std::abs(D(mid)) < 1e-12 * local_scale(mid)) mid = bx.a + 0.5371 * (bx.b - bx.a);
                const double hh = std::min(opt.box_half_height, (bx.b - bx.a));
                const int wl = box_winding(Dc, bx.a, mid, hh, 64);
                queue.push_back({bx.a, mid, wl});
                queue.push_back({mid, bx.b, bx.w - wl});
            }
            sortroots();
            // polish
            for (auto& r : roots) {
                if (r.mult % 2 == 1) {
                    const double d = 1e-7;
                    const double fa = D(r.x - d), fb = D(r.x + d);
                    if ((fa < 0.0) != (fb < 0.0))
                        r.x = detail::refine_bracket(D, r.x - d, r.x + d, fa, fb, opt.refine_tol);
                }
            }
        }
    }
    sortroots();
    return roots;
}

}  // namespace starsl
