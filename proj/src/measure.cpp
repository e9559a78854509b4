#include "amdyn/measure.hpp"
#include "amdyn/errors.hpp"
#include "amdyn/rng.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>

namespace amdyn {

namespace {

constexpr double kBreakCoalesce = 1e-12;  // breakpoints closer than this merge
constexpr double kValueMerge = 1e-14;     // neighbouring values closer than this merge
constexpr std::size_t kPieceCap = std::size_t(1) << 20;

double neumaier_sum(const std::vector<double>& terms) {
	double sum = 0.0, comp = 0.0;
	for (double t : terms) {
		const double s = sum + t;
		comp += std::fabs(sum) >= std::fabs(t) ? (sum - s) + t : (t - s) + sum;
		sum = s;
	}
	return sum + comp;
}

// Rebuilds (breaks, vals) dropping interior breakpoints that are closer than
// kBreakCoalesce to the previously kept one or that separate pieces whose
// values differ by less than kValueMerge.  Merged pieces get the
// width-weighted average value, so total mass is preserved to rounding.
PiecewiseDensity compress(const std::vector<double>& breaks,
                          const std::vector<double>& vals) {
	PiecewiseDensity out;
	out.breaks.push_back(breaks.front());
	double grp_lo = breaks.front();
	double grp_mass = 0.0;
	for (std::size_t i = 0; i < vals.size(); ++i) {
		grp_mass += vals[i] * (breaks[i + 1] - breaks[i]);
		const bool last = (i + 1 == vals.size());
		bool close_boundary = !last && (breaks[i + 1] - grp_lo) < kBreakCoalesce;
		bool same_value = !last && std::fabs(vals[i + 1] - vals[i]) < kValueMerge;
		if (last || (!close_boundary && !same_value)) {
			const double width = breaks[i + 1] - grp_lo;
			out.values.push_back(grp_mass / width);
			out.breaks.push_back(breaks[i + 1]);
			grp_lo = breaks[i + 1];
			grp_mass = 0.0;
		}
	}
	return out;
}

// Mass-preserving aggregation onto a uniform n-cell grid.
PiecewiseDensity to_grid(const PiecewiseDensity& g, std::size_t n) {
	std::vector<double> cell_mass(n, 0.0);
	for (std::size_t i = 0; i < g.values.size(); ++i) {
		const double lo = g.breaks[i], hi = g.breaks[i + 1];
		const double v = g.values[i];
		std::size_t c0 = std::min<std::size_t>(n - 1, std::size_t(lo * n));
		std::size_t c1 = std::min<std::size_t>(n - 1, std::size_t(hi * n));
		for (std::size_t c = c0; c <= c1; ++c) {
			const double clo = std::max(lo, double(c) / n);
			const double chi = std::min(hi, double(c + 1) / n);
			if (chi > clo) cell_mass[c] += v * (chi - clo);
		}
	}
	std::vector<double> breaks(n + 1), vals(n);
	for (std::size_t c = 0; c <= n; ++c) breaks[c] = double(c) / n;
	for (std::size_t c = 0; c < n; ++c) vals[c] = cell_mass[c] * n;
	return compress(breaks, vals);
}

} // namespace

void PiecewiseDensity::validate() const {
	if (breaks.size() < 2 || values.size() + 1 != breaks.size())
		throw ParameterOutOfRange("density: breakpoint/value count mismatch");
	if (breaks.front() != 0.0 || breaks.back() != 1.0)
		throw ParameterOutOfRange("density: breakpoints must span [0,1]");
	for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
		if (!(breaks[i] < breaks[i + 1]))
			throw ParameterOutOfRange("density: breakpoints not strictly increasing");
	for (double v : values)
		if (!(v >= 0.0) || !std::isfinite(v))
			throw ParameterOutOfRange("density: negative or non-finite value");
}

double PiecewiseDensity::mass() const {
	std::vector<double> terms(values.size());
	for (std::size_t i = 0; i < values.size(); ++i)
		terms[i] = values[i] * (breaks[i + 1] - breaks[i]);
	return neumaier_sum(terms);
}

double PiecewiseDensity::cdf(double x) const {
	if (x <= breaks.front()) return 0.0;
	double acc = 0.0;
	for (std::size_t i = 0; i < values.size(); ++i) {
		if (x >= breaks[i + 1]) {
			acc += values[i] * (breaks[i + 1] - breaks[i]);
		} else {
			acc += values[i] * (x - breaks[i]);
			break;
		}
	}
	return acc;
}

double PiecewiseDensity::mass_in(double lo, double hi) const {
	return cdf(hi) - cdf(lo);
}

PiecewiseDensity uniform_density() {
	PiecewiseDensity g;
	g.breaks = {0.0, 1.0};
	g.values = {1.0};
	return g;
}

double EmpiricalMeasure::cdf(double x) const {
	if (bin_count == 0) return 0.0;
	if (x <= 0.0) return 0.0;
	if (x >= 1.0) return std::accumulate(masses.begin(), masses.end(), 0.0);
	const double pos = x * double(bin_count);
	const std::size_t bin = std::min<std::size_t>(bin_count - 1, std::size_t(pos));
	double acc = 0.0;
	for (std::size_t i = 0; i < bin; ++i) acc += masses[i];
	return acc + masses[bin] * (pos - double(bin));
}

double EmpiricalMeasure::mass_in(double lo, double hi) const {
	return cdf(hi) - cdf(lo);
}

PiecewiseDensity to_density(const EmpiricalMeasure& m) {
	if (m.bin_count == 0 || m.masses.size() != m.bin_count)
		throw ParameterOutOfRange("empirical measure: bad bin count");
	std::vector<double> breaks(m.bin_count + 1), vals(m.bin_count);
	for (std::size_t i = 0; i <= m.bin_count; ++i)
		breaks[i] = double(i) / double(m.bin_count);
	for (std::size_t i = 0; i < m.bin_count; ++i)
		vals[i] = m.masses[i] * double(m.bin_count);
	return compress(breaks, vals);
}

PiecewiseDensity transfer_step(const AmSystem& sys, double p_minus,
                               const PiecewiseDensity& g) {
	if (!(p_minus >= 0.0 && p_minus <= 1.0))
		throw ParameterOutOfRange("transfer_step: p_minus must lie in [0,1]");
	g.validate();
	const double p_plus = 1.0 - p_minus;

	// New breakpoints: forward images of the old ones under each branch
	// (each image list is sorted because the maps are increasing), plus the
	// two kink images where the inverse slopes switch.
	std::vector<double> imgm(g.breaks.size()), imgp(g.breaks.size());
	for (std::size_t i = 0; i < g.breaks.size(); ++i) {
		imgm[i] = apply(sys, Sign::minus, g.breaks[i]);
		imgp[i] = apply(sys, Sign::plus, g.breaks[i]);
	}
	std::vector<double> nb;
	nb.reserve(imgm.size() + imgp.size() + 2);
	{
		const double kinks[2] = {std::min(sys.fm_xm, sys.fp_xp),
		                         std::max(sys.fm_xm, sys.fp_xp)};
		std::size_t im = 0, ip = 0, ik = 0;
		while (im < imgm.size() || ip < imgp.size() || ik < 2) {
			double best = 2.0;
			if (im < imgm.size()) best = std::min(best, imgm[im]);
			if (ip < imgp.size()) best = std::min(best, imgp[ip]);
			if (ik < 2) best = std::min(best, kinks[ik]);
			while (im < imgm.size() && imgm[im] == best) ++im;
			while (ip < imgp.size() && imgp[ip] == best) ++ip;
			while (ik < 2 && kinks[ik] == best) ++ik;
			if (nb.empty() || best > nb.back()) nb.push_back(best);
		}
	}

	// Density of the image on each new piece, evaluated at the midpoint:
	// inside one piece each inverse branch stays within a single old piece,
	// so the midpoint value is the exact piece value.  Preimages of the
	// increasing midpoints are increasing, so two cursors over the old
	// pieces make this pass linear.
	std::vector<double> vals(nb.size() - 1);
	std::size_t cm = 0, cp = 0;
	auto piece_value = [&g](std::size_t& cursor, double x) {
		while (cursor + 1 < g.values.size() && x > g.breaks[cursor + 1]) ++cursor;
		return g.values[cursor];
	};
	for (std::size_t i = 0; i + 1 < nb.size(); ++i) {
		const double y = 0.5 * (nb[i] + nb[i + 1]);
		const double xm = apply_inverse(sys, Sign::minus, y);
		const double xp = apply_inverse(sys, Sign::plus, y);
		const double sm = (y <= sys.fm_xm) ? 1.0 / sys.a_minus : 1.0 / sys.b_minus;
		const double sp = (y <= sys.fp_xp) ? 1.0 / sys.b_plus : 1.0 / sys.a_plus;
		vals[i] = p_minus * piece_value(cm, xm) * sm + p_plus * piece_value(cp, xp) * sp;
	}

	PiecewiseDensity out = compress(nb, vals);
	if (out.pieces() > kPieceCap) out = to_grid(out, kPieceCap);
	return out;
}

namespace {

// w1 * a + w2 * b on the union of the two breakpoint sets.
PiecewiseDensity blend(const PiecewiseDensity& a, double w1,
                       const PiecewiseDensity& b, double w2) {
	std::vector<double> nb, vals;
	nb.reserve(a.breaks.size() + b.breaks.size());
	std::size_t ia = 0, ib = 0;
	while (ia < a.breaks.size() || ib < b.breaks.size()) {
		double x;
		if (ib == b.breaks.size()) x = a.breaks[ia++];
		else if (ia == a.breaks.size()) x = b.breaks[ib++];
		else if (a.breaks[ia] <= b.breaks[ib]) { x = a.breaks[ia++]; if (ib < b.breaks.size() && b.breaks[ib] == x) ++ib; }
		else x = b.breaks[ib++];
		if (nb.empty() || x > nb.back()) nb.push_back(x);
	}
	vals.resize(nb.size() - 1);
	std::size_t ca = 0, cb = 0;
	for (std::size_t i = 0; i + 1 < nb.size(); ++i) {
		const double y = 0.5 * (nb[i] + nb[i + 1]);
		while (ca + 1 < a.values.size() && y > a.breaks[ca + 1]) ++ca;
		while (cb + 1 < b.values.size() && y > b.breaks[cb + 1]) ++cb;
		vals[i] = w1 * a.values[ca] + w2 * b.values[cb];
	}
	PiecewiseDensity out = compress(nb, vals);
	if (out.pieces() > kPieceCap) out = to_grid(out, kPieceCap);
	return out;
}

} // namespace

StationaryResult iterate_to_stationary(const AmSystem& sys, double p_minus,
                                       const PiecewiseDensity& init,
                                       std::size_t max_iter, double tol,
                                       IterationMode mode) {
	init.validate();
	if (!(tol > 0.0)) throw ParameterOutOfRange("iterate_to_stationary: tol must be positive");
	StationaryResult res;
	PiecewiseDensity cur = init;
	PiecewiseDensity avg = init;  // cesaro only
	double dist = 0.0;
	for (std::size_t n = 1; n <= max_iter; ++n) {
		PiecewiseDensity nxt = transfer_step(sys, p_minus, cur);
		if (mode == IterationMode::direct) {
			dist = kolmogorov_distance(cur, nxt);
			cur = std::move(nxt);
			res.density = cur;
		} else {
			// avg_n = (n*avg_{n-1} + T^n init) / (n+1): init itself counts as term 0.
			PiecewiseDensity navg = blend(avg, double(n) / double(n + 1),
			                              nxt, 1.0 / double(n + 1));
			dist = kolmogorov_distance(avg, navg);
			cur = std::move(nxt);
			avg = std::move(navg);
			res.density = avg;
		}
		res.iterations = n;
		res.last_distance = dist;
		if (dist < tol) {
			res.converged = true;
			break;
		}
	}
	return res;
}

EmpiricalMeasure empirical_stationary(const AmSystem& sys, double p_minus,
                                      std::size_t burn_in, std::size_t samples,
                                      std::size_t bins, std::uint64_t seed) {
	if (bins < 1) throw ParameterOutOfRange("empirical_stationary: need at least one bin");
	if (samples < 1) throw ParameterOutOfRange("empirical_stationary: need at least one sample");
	if (!(p_minus >= 0.0 && p_minus <= 1.0))
		throw ParameterOutOfRange("empirical_stationary: p_minus must lie in [0,1]");
	SplitMix64 rng(seed);
	double x = 0.5;
	auto step = [&]() {
		const Sign s = rng.uniform01() < p_minus ? Sign::minus : Sign::plus;
		x = apply(sys, s, x);
	};
	for (std::size_t i = 0; i < burn_in; ++i) step();
	std::vector<std::size_t> counts(bins, 0);
	for (std::size_t i = 0; i < samples; ++i) {
		step();
		const std::size_t b = std::min<std::size_t>(bins - 1, std::size_t(x * double(bins)));
		++counts[b];
	}
	EmpiricalMeasure m;
	m.bin_count = bins;
	m.masses.resize(bins);
	for (std::size_t i = 0; i < bins; ++i)
		m.masses[i] = double(counts[i]) / double(samples);
	return m;
}

double kolmogorov_distance(const PiecewiseDensity& a, const PiecewiseDensity& b) {
	// Both CDFs are piecewise linear, so |Fa - Fb| attains its sup at a
	// breakpoint of the union; walk the union once with running prefixes.
	double best = 0.0, fa = 0.0, fb = 0.0;
	std::size_t ia = 0, ib = 0;  // piece indices
	double xa = 0.0, xb = 0.0;   // positions up to which fa, fb accumulated
	auto advance = [](const PiecewiseDensity& d, std::size_t& i, double& f,
	                  double& xprev, double xto) {
		while (i < d.values.size() && d.breaks[i + 1] <= xto) {
			f += d.values[i] * (d.breaks[i + 1] - xprev);
			xprev = d.breaks[i + 1];
			++i;
		}
		if (i < d.values.size() && xto > xprev) {
			f += d.values[i] * (xto - xprev);
			xprev = xto;
		}
	};
	// Union breakpoint walk
	std::size_t ja = 0, jb = 0;
	while (ja < a.breaks.size() || jb < b.breaks.size()) {
		double x;
		if (jb == b.breaks.size()) x = a.breaks[ja++];
		else if (ja == a.breaks.size()) x = b.breaks[jb++];
		else if (a.breaks[ja] <= b.breaks[jb]) { x = a.breaks[ja++]; if (jb < b.breaks.size() && b.breaks[jb] == x) ++jb; }
		else x = b.breaks[jb++];
		advance(a, ia, fa, xa, x);
		advance(b, ib, fb, xb, x);
		best = std::max(best, std::fabs(fa - fb));
	}
	return best;
}

double kolmogorov_distance(const PiecewiseDensity& a, const EmpiricalMeasure& b) {
	return kolmogorov_distance(a, to_density(b));
}

double kolmogorov_distance(const EmpiricalMeasure& a, const EmpiricalMeasure& b) {
	return kolmogorov_distance(to_density(a), to_density(b));
}

LebesgueVerdict lebesgue_check(const AmSystem& sys, double p_minus) {
	if (!(p_minus >= 0.0 && p_minus <= 1.0))
		throw ParameterOutOfRange("lebesgue_check: p_minus must lie in [0,1]");
	const double p_plus = 1.0 - p_minus;
	LebesgueVerdict v;
	v.residual1 = p_minus / sys.a_minus + p_plus / sys.b_plus - 1.0;
	v.residual2 = p_minus / sys.b_minus + p_plus / sys.a_plus - 1.0;
	v.type = classify_type(sys);
	v.lebesgue = (v.type == SystemClass::Border) && std::fabs(v.residual1) < 1e-10;
	return v;
}

double local_dimension_at(const EmpiricalMeasure& m,
                          const std::vector<double>& radii,
                          const std::vector<double>& centers) {
	if (m.bin_count == 0 || m.masses.size() != m.bin_count)
		throw ParameterOutOfRange("local dimension: bad measure");
	if (radii.size() < 2)
		throw ParameterOutOfRange("local dimension: need at least two radii");
	for (double r : radii)
		if (!(r > 0.0 && r < 1.0))
			throw ParameterOutOfRange("local dimension: radii must lie in (0,1)");
	if (centers.empty())
		throw ParameterOutOfRange("local dimension: need at least one centre");

	std::vector<double> prefix(m.bin_count + 1, 0.0);
	for (std::size_t i = 0; i < m.bin_count; ++i)
		prefix[i + 1] = prefix[i] + m.masses[i];
	auto cdf = [&](double x) {
		if (x <= 0.0) return 0.0;
		if (x >= 1.0) return prefix.back();
		const double pos = x * double(m.bin_count);
		const std::size_t bin = std::min<std::size_t>(m.bin_count - 1, std::size_t(pos));
		return prefix[bin] + m.masses[bin] * (pos - double(bin));
	};

	double slope_sum = 0.0;
	for (double c : centers) {
		// least-squares slope of log(mass) against log(radius)
		double sx = 0, sy = 0, sxx = 0, sxy = 0;
		for (double r : radii) {
			const double ball = cdf(c + r) - cdf(c - r);
			if (!(ball > 0.0))
				throw InsufficientMass("zero-mass ball at centre " + std::to_string(c) +
				                       " radius " + std::to_string(r));
			const double lx = std::log(r), ly = std::log(ball);
			sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
		}
		const double n = double(radii.size());
		slope_sum += (n * sxy - sx * sy) / (n * sxx - sx * sx);
	}
	return slope_sum / double(centers.size());
}

double local_dimension_estimate(const EmpiricalMeasure& m,
                                const std::vector<double>& radii,
                                std::size_t sample_points, std::uint64_t seed) {
	if (sample_points == 0)
		throw ParameterOutOfRange("local dimension: need at least one sample point");
	std::vector<double> prefix(m.bin_count + 1, 0.0);
	for (std::size_t i = 0; i < m.bin_count; ++i)
		prefix[i + 1] = prefix[i] + m.masses[i];
	const double total = prefix.back();
	if (!(total > 0.0)) throw ParameterOutOfRange("local dimension: empty measure");

	// Draw centres from the measure itself by inverting the histogram CDF.
	SplitMix64 rng(seed);
	std::vector<double> centers(sample_points);
	for (std::size_t i = 0; i < sample_points; ++i) {
		const double u = rng.uniform01() * total;
		const auto it = std::upper_bound(prefix.begin(), prefix.end(), u);
		std::size_t bin = std::min<std::size_t>(m.bin_count - 1,
		                                        std::size_t(it - prefix.begin()) - 1);
		const double inside = (m.masses[bin] > 0.0) ? (u - prefix[bin]) / m.masses[bin] : 0.5;
		centers[i] = (double(bin) + inside) / double(m.bin_count);
	}
	return local_dimension_at(m, radii, centers);
}

} // namespace amdyn
