#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "eigenflow/norms.hpp"
#include "eigenflow/operators.hpp"

namespace eigenflow {

struct InfimumResult {
    enum class Method { closed_form_l2, closed_form_hbeta, ternary_search_lq };
    double lambda0 = 0.0;  // minimizing spectral shift, units 1/time
    double value = 0.0;    // minimum of ||(-Lap - lambda) u|| in the chosen norm
    Method method = Method::closed_form_l2;
    int iterations = 0;    // search only

    static const char* method_name(Method m) {
        switch (m) {
            case Method::closed_form_l2: return "closed_form_l2";
            case Method::closed_form_hbeta: return "closed_form_hbeta";
            case Method::ternary_search_lq: return "ternary_search_lq";
        }
        return "?";
    }
};

struct DeficitReport {
    double alpha = 0.0;
    double ratio = 0.0;      // ||u||_{H^{a-1}}^4 / (||u||_{H^{a-2}}^2 ||u||_{H^a}^2), clamped to [0,1]
    double deficit = 0.0;    // 1 - ratio
    double hs_alpha = 0.0;   // ||u||_{H^alpha}
    double ratio_raw = 0.0;  // unclamped quotient, for the record
};

struct BandReport {
    double r1 = 0.0;  // inner support radius, |k|/L units
    double r2 = 0.0;  // outer support radius
    double threshold = 0.0;
    double band_deficit_bound = 0.0;  // 1 - (r1/r2)^4
};

namespace detail {

// Quadratic data of f(lambda) = ||(-Lap - lambda) u||^2 in a weighted-L^2
// norm with per-mode weight w^(2*beta):
//   f(lambda) = C - 2 B lambda + A lambda^2,
//   A = ||u||^2_{beta},  B = ||u||^2_{beta+1},  C = ||u||^2_{beta+2}.
// The Cauchy-Schwarz gap A*C - B^2 is evaluated with the Lagrange identity
//   A*C - B^2 = 1/2 sum_{ij} a_i a_j (w_i^2 - w_j^2)^2
// over shells, which is exactly zero when the spectrum sits on one shell and
// never goes negative, avoiding the cancellation in the naive difference.
struct ShiftQuadratic {
    double a = 0.0;    // coefficient of lambda^2
    double b = 0.0;    // half the negative linear coefficient
    double c = 0.0;    // constant term
    double gap = 0.0;  // a*c - b^2 >= 0 via the Lagrange identity
};

inline ShiftQuadratic shift_quadratic(const ShellSpectrum& s, double beta) {
    const double w2scale = s.frequency_scale * s.frequency_scale;
    const std::size_t m = s.shells.size();
    std::vector<double> weight(m);
    ShiftQuadratic q;
    for (std::size_t i = 0; i < m; ++i) {
        const auto& [ks, e] = s.shells[i];
        if (ks == 0) {
            weight[i] = 0.0;  // mean-free; keeps pow(0,0) out of the sums
            continue;
        }
        weight[i] = (beta == 0.0) ? e : std::pow(w2scale * ks, beta) * e;
        const double w2 = w2scale * ks;
        q.a += weight[i];
        q.b += weight[i] * w2;
        q.c += weight[i] * w2 * w2;
    }
    const double w4 = w2scale * w2scale;
    for (std::size_t i = 0; i < m; ++i) {
        if (weight[i] == 0.0) continue;
        for (std::size_t j = i + 1; j < m; ++j) {
            if (weight[j] == 0.0) continue;
            const double dm = static_cast<double>(s.shells[i].first - s.shells[j].first);
            q.gap += weight[i] * weight[j] * dm * dm * w4;
        }
    }
    return q;
}

}  // namespace detail

// Closed-form infimum of ||(-Lap - lambda) u||_{H^beta} over real lambda:
//   min value^2 = ||u||^2_{beta+2} (1 - ||u||^4_{beta+1}/(||u||^2_beta ||u||^2_{beta+2})),
//   argmin lambda0 = ||u||^2_{beta+1} / ||u||^2_beta.
inline InfimumResult inf_lambda_hbeta(const SpectralVectorField& u, double beta) {
    if (!(beta >= 0.0) || !(beta < 1.5))
        throw OutOfRangeError("inf_lambda_hbeta: beta must lie in [0, 3/2)");
    const ShellSpectrum s = shell_energies(u);
    const auto q = detail::shift_quadratic(s, beta);
    if (q.a <= 0.0) throw ZeroFieldError();
    InfimumResult r;
    r.method = beta == 0.0 ? InfimumResult::Method::closed_form_l2
                           : InfimumResult::Method::closed_form_hbeta;
    r.lambda0 = q.b / q.a;
    r.value = std::sqrt(q.gap / q.a);
    return r;
}

inline InfimumResult inf_lambda_l2(const SpectralVectorField& u) {
    InfimumResult r = inf_lambda_hbeta(u, 0.0);
    r.method = InfimumResult::Method::closed_form_l2;
    return r;
}

// Objectives matching the infima above, for minimizer certificates and
// brute-force cross-checks.
inline double shift_objective_hbeta(const SpectralVectorField& u, double beta, double lambda) {
    const ShellSpectrum s = shell_energies(u);
    const double w2scale = s.frequency_scale * s.frequency_scale;
    double sum = 0.0;
    for (const auto& [m, e] : s.shells) {
        if (m == 0) continue;
        const double w2 = w2scale * m;
        const double wgt = (beta == 0.0) ? e : std::pow(w2, beta) * e;
        sum += wgt * (w2 - lambda) * (w2 - lambda);
    }
    return std::sqrt(sum);
}

inline double shift_objective_l2(const SpectralVectorField& u, double lambda) {
    return shift_objective_hbeta(u, 0.0, lambda);
}

// Precomputed collocation samples of -Lap u and u so the L^q objective
// ||(-Lap - lambda) u||_{L^q} = ||A - lambda B||_{L^q} is one pass per lambda.
class LqShiftObjective {
  public:
    explicit LqShiftObjective(const SpectralVectorField& u, double q)
        : q_(q),
          cell_(std::pow(u.grid().spacing(), 3)),
          neg_lap_(to_physical(neg_laplacian(u))),
          base_(to_physical(u)) {
        if (!(q > 1.0) || !std::isfinite(q))
            throw OutOfRangeError("LqShiftObjective: q must be in (1,inf)");
    }

    double operator()(double lambda) const {
        double sum = 0.0;
        const std::size_t nn = base_.comp[0].size();
        for (std::size_t i = 0; i < nn; ++i) {
            const double x = neg_lap_.comp[0][i] - lambda * base_.comp[0][i];
            const double y = neg_lap_.comp[1][i] - lambda * base_.comp[1][i];
            const double z = neg_lap_.comp[2][i] - lambda * base_.comp[2][i];
            const double s2 = x * x + y * y + z * z;
            if (q_ == 2.0)
                sum += s2;
            else if (q_ == 3.0)
                sum += s2 * std::sqrt(s2);
            else
                sum += std::pow(s2, 0.5 * q_);
        }
        return std::pow(sum * cell_, 1.0 / q_);
    }

  private:
    double q_;
    double cell_;
    PhysicalVectorField neg_lap_;
    PhysicalVectorField base_;
};

inline double shift_objective_lq(const SpectralVectorField& u, double q, double lambda) {
    return LqShiftObjective(u, q)(lambda);
}

// Golden-section minimization of the convex map lambda -> ||(-Lap-lambda)u||_{L^q}.
// The bracket starts at [lambda0 - W, lambda0 + W] around the L^2 minimizer
// with W = 4*(2*pi*k_max/L)^2 and doubles until an interior minimum is
// certified; more than 60 doublings signals non-finite data.
inline InfimumResult inf_lambda_lq(const SpectralVectorField& u, double q) {
    if (!(q > 1.2) || !(q <= 3.0))
        throw OutOfRangeError("inf_lambda_lq: q must lie in (6/5, 3]");
    const InfimumResult seed = inf_lambda_l2(u);  // throws ZeroField on zero input
    const LqShiftObjective objective(u, q);

    const Grid& g = u.grid();
    const double kmax = std::sqrt(static_cast<double>(g.max_ksq()));
    double width = 4.0 * std::pow(g.frequency_scale() * kmax, 2);

    double lo = seed.lambda0 - width;
    double hi = seed.lambda0 + width;
    double flo = objective(lo);
    double fmid = objective(seed.lambda0);
    double fhi = objective(hi);
    int doublings = 0;
    while (!(flo >= fmid && fhi >= fmid)) {
        if (++doublings > 60)
            throw BracketFailureError("inf_lambda_lq: bracket expansion failed");
        width *= 2.0;
        lo = seed.lambda0 - width;
        hi = seed.lambda0 + width;
        flo = objective(lo);
        fhi = objective(hi);
        if (!std::isfinite(flo) || !std::isfinite(fhi))
            throw BracketFailureError("inf_lambda_lq: non-finite objective");
    }

    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    const double tol = 1e-11 * std::max(1.0, std::abs(seed.lambda0));
    double x1 = hi - invphi * (hi - lo);
    double x2 = lo + invphi * (hi - lo);
    double f1 = objective(x1);
    double f2 = objective(x2);
    int iters = 0;
    while (hi - lo > tol) {
        ++iters;
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - invphi * (hi - lo);
            f1 = objective(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + invphi * (hi - lo);
            f2 = objective(x2);
        }
    }

    InfimumResult r;
    r.method = InfimumResult::Method::ternary_search_lq;
    r.iterations = iters;
    if (f1 <= f2) {
        r.lambda0 = x1;
        r.value = f1;
    } else {
        r.lambda0 = x2;
        r.value = f2;
    }
    return r;
}

// Interpolation-deficit factor for H^{a-2} cap H^a -> H^{a-1}:
//   ratio = ||u||^4_{a-1} / (||u||^2_{a-2} ||u||^2_a), deficit = 1 - ratio.
// deficit comes from the Lagrange-identity gap, so single-shell spectra give
// exactly zero; the raw quotient is kept alongside the clamped ratio.
inline DeficitReport deficit_factor(const SpectralVectorField& u, double alpha) {
    if (!(alpha >= 2.0) || !(alpha <= 2.5))
        throw OutOfRangeError("deficit_factor: alpha must lie in [2, 5/2]");
    const ShellSpectrum s = shell_energies(u);
    const auto q = detail::shift_quadratic(s, alpha - 2.0);
    if (q.a <= 0.0) throw ZeroFieldError();
    DeficitReport rep;
    rep.alpha = alpha;
    rep.hs_alpha = std::sqrt(q.c);
    rep.ratio_raw = (q.b * q.b) / (q.a * q.c);
    rep.deficit = std::clamp(q.gap / (q.a * q.c), 0.0, 1.0);
    rep.ratio = 1.0 - rep.deficit;
    return rep;
}

// Numerical Fourier support radii: modes with |u_hat(k)| above the relative
// threshold define the band R1 <= |k|/L <= R2 and the induced deficit bound
// 1 - (R1/R2)^4.
inline BandReport band_radii(const SpectralVectorField& u, double threshold = 1e-13) {
    if (!(threshold >= 0.0) || !(threshold < 1.0))
        throw OutOfRangeError("band_radii: threshold must lie in [0, 1)");
    const Grid& g = u.grid();
    const std::size_t nn = g.size();
    double peak = 0.0;
    std::vector<double> mag(nn);
    for (std::size_t i = 0; i < nn; ++i) {
        mag[i] = std::sqrt(std::norm(u.at(0, i)) + std::norm(u.at(1, i)) + std::norm(u.at(2, i)));
        peak = std::max(peak, mag[i]);
    }
    if (peak == 0.0) throw ZeroFieldError();
    const double cut = threshold * peak;
    int mmin = -1, mmax = 0;
    for (std::size_t i = 0; i < nn; ++i) {
        if (mag[i] <= cut) continue;
        const int m = Grid::ksq(g.wavenumber(i));
        if (mmin < 0 || m < mmin) mmin = m;
        mmax = std::max(mmax, m);
    }
    BandReport rep;
    rep.threshold = threshold;
    rep.r1 = std::sqrt(static_cast<double>(mmin)) / g.box_length;
    rep.r2 = std::sqrt(static_cast<double>(mmax)) / g.box_length;
    const double rr = mmax > 0 ? static_cast<double>(mmin) / static_cast<double>(mmax) : 1.0;
    rep.band_deficit_bound = 1.0 - rr * rr;
    return rep;
}

}  // namespace eigenflow
