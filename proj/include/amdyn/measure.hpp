// Stationary measure computation: exact transfer-operator action on
// piecewise-constant densities, Cesàro / direct iteration, empirical
// histograms from long orbits, and comparison / diagnostic utilities.

#ifndef AMDYN_MEASURE_HPP
#define AMDYN_MEASURE_HPP

#include <cstdint>
#include <vector>

#include "amdyn/am_system.hpp"

namespace amdyn {

// Density that is constant between consecutive breakpoints.  breaks is
// sorted, starts at 0 and ends at 1; values[i] is the density on
// (breaks[i], breaks[i+1]).  Total mass is kept at 1 up to accumulation
// error; nothing ever renormalizes, so mass conservation is a testable
// invariant rather than an enforced one.
struct PiecewiseDensity {
	std::vector<double> breaks;
	std::vector<double> values;

	std::size_t pieces() const { return values.size(); }
	double mass() const;            // compensated sum of value * width
	double cdf(double x) const;     // exact piecewise-linear CDF
	double mass_in(double lo, double hi) const;
	void validate() const;          // throws ParameterOutOfRange on bad shape
};

PiecewiseDensity uniform_density();

// Histogram over `bin_count` equal bins of [0,1]; masses sum to 1.
struct EmpiricalMeasure {
	std::size_t bin_count = 0;
	std::vector<double> masses;

	double cdf(double x) const;     // linear interpolation inside bins
	double mass_in(double lo, double hi) const;
};

// Interprets the histogram as a piecewise-constant density.
PiecewiseDensity to_density(const EmpiricalMeasure& m);

// One application of the transfer operator of the Bernoulli(p_minus) mixture:
//   (T g)(y) = p_minus * g(f_minus^{-1} y) * (f_minus^{-1})'(y)
//            + p_plus  * g(f_plus^{-1}  y) * (f_plus^{-1})'(y).
// Piecewise-constant densities are closed under T: the new breakpoints are
// the forward images of the old ones plus the two kink images.  Breakpoints
// closer than 1e-12 and neighbouring values closer than 1e-14 are merged
// mass-preservingly; above 2^20 pieces the density is aggregated onto a
// uniform 2^20-cell grid (again mass-preservingly).
PiecewiseDensity transfer_step(const AmSystem& sys, double p_minus,
                               const PiecewiseDensity& g);

enum class IterationMode { direct, cesaro };

struct StationaryResult {
	PiecewiseDensity density;
	std::size_t iterations = 0;   // transfer steps actually taken
	double last_distance = 0;     // Kolmogorov distance used by the stop rule
	bool converged = false;
};

// Iterates T from `init` until the Kolmogorov distance between successive
// results (direct: iterates; cesaro: running Cesàro averages) drops below
// tol, or max_iter steps elapse.  Never throws on nonconvergence — the
// result reports it, and callers decide (the CLI maps it to exit code 3).
StationaryResult iterate_to_stationary(const AmSystem& sys, double p_minus,
                                       const PiecewiseDensity& init,
                                       std::size_t max_iter, double tol,
                                       IterationMode mode);

// Histogram of a single long orbit started at 0.5 after burn_in steps.
EmpiricalMeasure empirical_stationary(const AmSystem& sys, double p_minus,
                                      std::size_t burn_in, std::size_t samples,
                                      std::size_t bins, std::uint64_t seed);

// Sup-distance of CDFs.  For two piecewise densities this is exact: both
// CDFs are piecewise linear, so the sup is attained at a breakpoint of the
// union.  Mixed overloads convert the histogram to its density first.
double kolmogorov_distance(const PiecewiseDensity& a, const PiecewiseDensity& b);
double kolmogorov_distance(const PiecewiseDensity& a, const EmpiricalMeasure& b);
double kolmogorov_distance(const EmpiricalMeasure& a, const EmpiricalMeasure& b);

// The stationary measure is Lebesgue exactly when the system is border type
// and p_minus/a_minus + p_plus/b_plus = 1 (then the mirrored identity
// p_minus/b_minus + p_plus/a_plus = 1 holds automatically).  Both residuals
// are reported; the verdict requires border type and |residual1| < 1e-10.
struct LebesgueVerdict {
	bool lebesgue = false;
	double residual1 = 0;   // p_minus/a_minus + p_plus/b_plus - 1
	double residual2 = 0;   // p_minus/b_minus + p_plus/a_plus - 1
	SystemClass type = SystemClass::Disjoint;
};

LebesgueVerdict lebesgue_check(const AmSystem& sys, double p_minus);

// Average log-mass-vs-log-radius slope of balls centred at sample_points
// draws from the measure itself.  Ball masses come from the interpolated
// histogram CDF; a zero-mass ball throws InsufficientMass.
double local_dimension_estimate(const EmpiricalMeasure& m,
                                const std::vector<double>& radii,
                                std::size_t sample_points, std::uint64_t seed);

// Same estimate at explicit centres (exposed for testing the fit itself).
double local_dimension_at(const EmpiricalMeasure& m,
                          const std::vector<double>& radii,
                          const std::vector<double>& centers);

} // namespace amdyn

#endif
