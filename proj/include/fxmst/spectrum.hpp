#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "fxmst/correlation.hpp"
#include "fxmst/errors.hpp"

namespace fxmst {

/// Coupling regime of a base currency, read off the maximal eigenvalue
/// relative to N. Bases whose fluctuations drift independently of the
/// market push lambda_max high; bases the market is pegged to leave almost
/// no collective mode and push it low.
enum class Regime { IndependentDrift, Typical, UsdTied };

inline std::string_view to_string(Regime r) {
    switch (r) {
    case Regime::IndependentDrift: return "INDEPENDENT_DRIFT";
    case Regime::Typical: return "TYPICAL";
    case Regime::UsdTied: return "USD_TIED";
    }
    return "?";
}

/// Fractions of N bounding the typical band [low_frac * N, high_frac * N].
struct RegimeThresholds {
    double low_frac = 0.4;
    double high_frac = 0.65;

    void validate() const {
        if (!(0.0 < low_frac && low_frac < high_frac && high_frac < 1.0)) {
            throw ValidationError("regime thresholds must satisfy 0 < low < high < 1");
        }
    }
};

inline Regime classify_regime(double lambda_max, std::size_t n, RegimeThresholds thresholds = {}) {
    thresholds.validate();
    if (n < 2) throw InsufficientDataError("regime classification needs N >= 2");
    const double scale = static_cast<double>(n);
    if (lambda_max > thresholds.high_frac * scale) return Regime::IndependentDrift;
    if (lambda_max >= thresholds.low_frac * scale) return Regime::Typical;
    return Regime::UsdTied;
}

struct JacobiOptions {
    /// Converged when the largest off-diagonal magnitude is <= tol_scale * N.
    double tol_scale = 1e-12;
    int max_sweeps = 100;
};

/// Eigenvalues of a dense symmetric matrix by cyclic Jacobi rotations,
/// returned ascending. `matrix` is row-major n x n and is consumed.
///
/// Sweeps visit every upper-triangle pair in a fixed order and zero it
/// with a two-sided rotation; off-diagonal mass decays quadratically once
/// small. Throws NumericalError (carrying the final off-diagonal maximum)
/// if the tolerance is not reached within max_sweeps.
inline std::vector<double> jacobi_eigenvalues(std::vector<double> matrix,
                                              std::size_t n,
                                              const JacobiOptions& options = {}) {
    if (matrix.size() != n * n) throw ValidationError("matrix size does not match n x n");
    if (n == 0) throw ValidationError("matrix must be non-empty");
    auto at = [&](std::size_t r, std::size_t c) -> double& { return matrix[r * n + c]; };

    const double tolerance = options.tol_scale * static_cast<double>(n);
    double max_off = 0.0;
    for (int sweep = 0; sweep < options.max_sweeps; ++sweep) {
        max_off = 0.0;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                max_off = std::max(max_off, std::fabs(at(p, q)));
            }
        }
        if (max_off <= tolerance) {
            std::vector<double> eigenvalues(n);
            for (std::size_t i = 0; i < n; ++i) eigenvalues[i] = at(i, i);
            std::sort(eigenvalues.begin(), eigenvalues.end());
            return eigenvalues;
        }

        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = at(p, q);
                if (apq == 0.0) continue;
                const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                at(p, p) -= t * apq;
                at(q, q) += t * apq;
                at(p, q) = 0.0;
                at(q, p) = 0.0;
                for (std::size_t r = 0; r < n; ++r) {
                    if (r == p || r == q) continue;
                    const double arp = at(r, p);
                    const double arq = at(r, q);
                    at(r, p) = c * arp - s * arq;
                    at(p, r) = at(r, p);
                    at(r, q) = s * arp + c * arq;
                    at(q, r) = at(r, q);
                }
            }
        }
    }
    throw NumericalError("Jacobi eigensolver did not converge in " +
                             std::to_string(options.max_sweeps) + " sweeps",
                         max_off);
}

/// Full spectrum of a correlation matrix with the regime classification.
class SpectrumReport {
public:
    SpectrumReport(std::vector<double> eigenvalues_ascending, Regime regime,
                   RegimeThresholds thresholds)
        : eigenvalues_(std::move(eigenvalues_ascending)),
          regime_(regime),
          thresholds_(thresholds) {
        if (eigenvalues_.size() < 2) {
            throw ValidationError("spectrum needs at least 2 eigenvalues");
        }
    }

    /// Ascending: lambda_1 <= ... <= lambda_N.
    const std::vector<double>& eigenvalues() const noexcept { return eigenvalues_; }
    std::size_t size() const noexcept { return eigenvalues_.size(); }
    double lambda_max() const { return eigenvalues_.back(); }
    double lambda_second() const { return eigenvalues_[eigenvalues_.size() - 2]; }
    Regime regime() const noexcept { return regime_; }
    RegimeThresholds thresholds() const noexcept { return thresholds_; }

private:
    std::vector<double> eigenvalues_;
    Regime regime_;
    RegimeThresholds thresholds_;
};

/// Solves the correlation matrix with the Jacobi solver and classifies the
/// base currency. Eigenvalues in [-1e-8, 0) are floating-point noise on a
/// Gram matrix and are clamped to 0; anything more negative is an error.
inline SpectrumReport spectrum(const CorrelationMatrix& matrix,
                               RegimeThresholds thresholds = {},
                               const JacobiOptions& options = {}) {
    thresholds.validate();
    auto eigenvalues = jacobi_eigenvalues(matrix.entries(), matrix.size(), options);
    for (double& value : eigenvalues) {
        if (value < 0.0) {
            if (value < -1e-8) {
                throw NumericalError("correlation matrix is not positive semidefinite "
                                     "(eigenvalue " +
                                         std::to_string(value) + ")",
                                     value);
            }
            value = 0.0;
        }
    }
    const Regime regime = classify_regime(eigenvalues.back(), matrix.size(), thresholds);
    return SpectrumReport(std::move(eigenvalues), regime, thresholds);
}

/// Separation score of the second largest eigenvalue,
/// (lambda_{N-1} - lambda_{N-2}) / (lambda_{N-2} - lambda_1 + eps).
/// Unitless; 0 for a fully degenerate spectrum. The epsilon guards
/// spectra where all but the top eigenvalue coincide.
inline double second_eigenvalue_separation(const SpectrumReport& report) {
    if (report.size() < 3) {
        throw InsufficientDataError("second-eigenvalue separation needs N >= 3");
    }
    const auto& ev = report.eigenvalues();
    const std::size_t n = ev.size();
    constexpr double eps = 1e-12;
    return (ev[n - 2] - ev[n - 3]) / (ev[n - 3] - ev[0] + eps);
}

} // namespace fxmst
