// spectrum.hpp — eigenvalue location and (n, k) indexing for L and the
// modified problems L_j.
//
// Zeros of rho^{m-1} Delta(rho^2) (resp. rho^{m-2} Delta_j(rho^2)) are found
// shell by shell in rho-windows around the asymptotes of eqs. (5)-(6) and the
// three-branch table of the auxiliary spectra, with winding-count
// verification. Negative eigenvalues are caught by a direct sweep of the
// characteristic function below the first window and flagged.
#pragma once

#include <cmath>
#include <vector>

#include "starsl/char_fn.hpp"
#include "starsl/rootfind.hpp"

namespace starsl {

struct IndexedEigenvalue {
    int n = 0;
    int k = 0;
    double lambda = 0.0;
    double rho = 0.0;  // sqrt(lambda); for lambda < 0 the magnitude of Im sqrt, flagged
    int multiplicity = 1;
    double kappa = 0.0;  // n*pi*(rho - asymptote); xi for auxiliary spectra
    bool negative = false;
};

struct Spectrum {
    int m = 0;
    int N = 0;
    std::vector<IndexedEigenvalue> entries;  // (n, k) ascending, N*m of them

    const IndexedEigenvalue& at(int n, int k) const { return entries.at((n - 1) * m + (k - 1)); }
};

struct AuxSpectrum {
    int j = 0;  // modified vertex, 1..m-1
    int m = 0;
    int N = 0;
    std::vector<IndexedEigenvalue> entries;  // theta_{nkj} in the rho/kappa fields

    const IndexedEigenvalue& at(int n, int k) const { return entries.at((n - 1) * m + (k - 1)); }
};

struct SpectrumOptions {
    double lambda_max = default_lambda_max;
    bool verify_winding = true;
    double refine_tol = 1e-12;
    double negative_floor = -30.0;  // lower end of the lambda sweep
    bool force_negative_sweep = false;
};

namespace detail {

inline void require_mean_zero(const PotentialVector& v) {
    for (const auto& q : v.edges)
        if (std::abs(trapezoid(q.samples())) > 1e-8 * pi * (1.0 + q.l2_norm()))
            throw invalid_input_error(
                "locate_spectrum: potentials must be mean-zero (apply normalize_mean_zero)");
}

inline void require_reach(const GraphSolver& g, int N) {
    const double need = sqr(N + 0.8);
    if (g.lambda_max() < need)
        throw lambda_range_error(
            "locate: N = " + std::to_string(N) + " needs |lambda| up to " + std::to_string(need) +
            " but the guard is " + std::to_string(g.lambda_max()) +
            " (raise the grid resolution / lambda_max)");
}

// Eigenvalues below the first rho-window, searched directly in lambda via the
// unscaled characteristic function (which has no artificial zero at the
// origin). Returns (lambda, multiplicity) clusters.
inline std::vector<RootMult> sweep_negative(const RealFn& g, const ComplexFn& gc, double floor,
                                            double cut, int expected,
                                            const SpectrumOptions& opt) {
    ZeroSearchOptions zopt;
    zopt.scan_step = 0.025;
    zopt.refine_tol = 1e-13;
    zopt.verify_winding = opt.verify_winding;
    zopt.box_half_height = 0.5;
    return real_zeros_in_window(g, gc, floor, cut, expected, zopt);
}

struct ShellSlots {
    double lo, hi;                // rho window (lo, hi]
    std::vector<double> asym;     // asymptote of branch k at index k-1
    std::vector<int> slot_order;  // branch indices (1-based) in assignment priority
};

// expand (root, mult) clusters into eigenvalue copies, assign branches by
// nearest asymptote, and compute remainders
inline std::vector<IndexedEigenvalue> assign_shell(const std::vector<RootMult>& roots,
                                                   const std::vector<RootMult>& negatives, int n,
                                                   int m, const ShellSlots& slots) {
    struct Copy {
        double rho;
        int mult;
        double lambda;
        bool negative;
    };
    std::vector<Copy> copies;
    for (const auto& r : negatives)
        for (int c = 0; c < r.mult; ++c) copies.push_back({0.0, r.mult, r.x, true});
    for (const auto& r : roots)
        for (int c = 0; c < r.mult; ++c) copies.push_back({r.x, r.mult, r.x * r.x, false});
    if (static_cast<int>(copies.size()) != m)
        throw indexing_error("shell " + std::to_string(n) + ": found " +
                                 std::to_string(copies.size()) + " eigenvalues, expected " +
                                 std::to_string(m),
                             n, static_cast<int>(copies.size()), m);

    std::vector<IndexedEigenvalue> out(m);
    std::vector<bool> used(m, false);
    std::vector<bool> filled(m, false);

    auto place = [&](int k, int ci) {
        IndexedEigenvalue e;
        e.n = n;
        e.k = k;
        e.lambda = copies[ci].lambda;
        e.negative = copies[ci].negative;
        e.rho = copies[ci].negative ? std::sqrt(-copies[ci].lambda) : copies[ci].rho;
        e.multiplicity = copies[ci].mult;
        const double rho_eff = copies[ci].negative ? 0.0 : copies[ci].rho;
        e.kappa = n * pi * (rho_eff - slots.asym[k - 1]);
        out[k - 1] = e;
        used[ci] = true;
        filled[k - 1] = true;
    };

    // negatives take the lowest-asymptote slots first (nearest in lambda)
    {
        std::vector<int> order(slots.slot_order);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            return slots.asym[a - 1] < slots.asym[b - 1];
        });
        std::size_t oi = 0;
        for (int ci = 0; ci < m; ++ci)
            if (copies[ci].negative && oi < order.size()) place(order[oi++], ci);
    }
    // singleton slots in priority order, nearest remaining copy
    for (int k : slots.slot_order) {
        if (filled[k - 1]) continue;
        int best = -1;
        double bd = 0.0;
        for (int ci = 0; ci < m; ++ci) {
            if (used[ci]) continue;
            const double d = std::abs(copies[ci].rho - slots.asym[k - 1]);
            if (best < 0 || d < bd) {
                best = ci;
                bd = d;
            }
        }
        place(k, best);
    }
    // remaining copies ascending onto remaining branches ascending
    std::vector<int> rem_k;
    for (int k = 1; k <= m; ++k)
        if (!filled[k - 1]) rem_k.push_back(k);
    std::vector<int> rem_c;
    for (int ci = 0; ci < m; ++ci)
        if (!used[ci]) rem_c.push_back(ci);
    std::sort(rem_c.begin(), rem_c.end(), [&](int a, int b) {
        return copies[a].lambda < copies[b].lambda;
    });
    for (std::size_t i = 0; i < rem_k.size(); ++i) place(rem_k[i], rem_c[i]);
    return out;
}

// Shared shell loop over a scaled characteristic function.
template <class ShellFn>
std::vector<IndexedEigenvalue> locate_indexed(const RealFn& D, const ComplexFn& Dc,
                                              const RealFn& char_of_lambda,
                                              const ComplexFn& char_of_lambda_c, int N, int m,
                                              ShellFn shell_of, const SpectrumOptions& opt) {
    std::vector<IndexedEigenvalue> all;
    ZeroSearchOptions zopt;
    zopt.scan_step = 1.0 / (8.0 * m);
    zopt.refine_tol = opt.refine_tol;
    zopt.verify_winding = opt.verify_winding;

    for (int n = 1; n <= N; ++n) {
        const ShellSlots s = shell_of(n);
        auto roots = real_zeros_in_window(D, Dc, s.lo, s.hi, m, zopt);
        int found = 0;
        for (const auto& r : roots) found += r.mult;
        std::vector<RootMult> negatives;
        if (n == 1 && (found < m || opt.force_negative_sweep))
            negatives = sweep_negative(char_of_lambda, char_of_lambda_c, opt.negative_floor,
                                       sqr(s.lo), m - found, opt);
        auto shell = assign_shell(roots, negatives, n, m, s);
        all.insert(all.end(), shell.begin(), shell.end());
    }
    return all;
}

}  // namespace detail

inline Spectrum locate_spectrum(const PotentialVector& v, int N,
                                const SpectrumOptions& opt = {}) {
    if (N < 1) throw invalid_input_error("locate_spectrum: N >= 1");
    detail::require_mean_zero(v);
    GraphSolver g(v, opt.lambda_max);
    detail::require_reach(g, N);
    const int m = g.edge_count();

    RealFn D = [&](double rho) { return g.scaled_delta(complex(rho)).real(); };
    ComplexFn Dc = [&](complex rho) { return g.scaled_delta(rho); };
    RealFn charL = [&](double lambda) { return g.delta(complex(lambda)).real(); };
    ComplexFn charLc = [&](complex lambda) { return g.delta(lambda); };

    auto shell_of = [&](int n) {
        detail::ShellSlots s;
        s.lo = n - 0.75;
        s.hi = n + 0.25;
        s.asym.assign(m, double(n));
        s.asym[m - 1] = n - 0.5;
        s.slot_order = {m};  // k = m is the singleton branch; the rest fill ascending
        return s;
    };

    Spectrum sp;
    sp.m = m;
    sp.N = N;
    sp.entries = detail::locate_indexed(D, Dc, charL, charLc, N, m, shell_of, opt);
    return sp;
}

// arccos(1/sqrt(m)) / pi, the auxiliary-branch offset.
inline double aux_branch_offset(int m) { return std::acos(1.0 / std::sqrt(double(m))) / pi; }

inline AuxSpectrum locate_aux_spectrum(const PotentialVector& v, int j, int N,
                                       const SpectrumOptions& opt = {}) {
    if (N < 1) throw invalid_input_error("locate_aux_spectrum: N >= 1");
    detail::require_mean_zero(v);
    GraphSolver g(v, opt.lambda_max);
    detail::require_reach(g, N);
    const int m = g.edge_count();
    if (j < 1 || j > m - 1)
        throw invalid_input_error("locate_aux_spectrum: j must be in 1..m-1");
    const double A = aux_branch_offset(m);

    RealFn D = [&](double rho) { return g.scaled_delta_j(j, complex(rho)).real(); };
    ComplexFn Dc = [&](complex rho) { return g.scaled_delta_j(j, rho); };
    RealFn charL = [&](double lambda) { return g.char_values(complex(lambda)).delta_j[j - 1].real(); };
    ComplexFn charLc = [&](complex lambda) { return g.char_values(lambda).delta_j[j - 1]; };

    auto shell_of = [&](int n) {
        detail::ShellSlots s;
        s.lo = n - 1 + 0.5 * A;
        s.hi = n + 0.5 * A;
        s.asym.assign(m, double(n));
        s.asym[m - 2] = n - 1 + A;  // k = m-1
        s.asym[m - 1] = n - A;      // k = m
        s.slot_order = {m - 1, m};
        return s;
    };

    AuxSpectrum sp;
    sp.j = j;
    sp.m = m;
    sp.N = N;
    sp.entries = detail::locate_indexed(D, Dc, charL, charLc, N, m, shell_of, opt);
    return sp;
}

inline std::vector<AuxSpectrum> locate_aux_spectra(const PotentialVector& v, int N,
                                                   const SpectrumOptions& opt = {}) {
    std::vector<AuxSpectrum> all;
    const int m = v.edge_count();
    all.reserve(m - 1);
    for (int j = 1; j <= m - 1; ++j) all.push_back(locate_aux_spectrum(v, j, N, opt));
    return all;
}

}  // namespace starsl
