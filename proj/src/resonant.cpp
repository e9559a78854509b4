#include "amdyn/resonant.hpp"
#include "amdyn/am_system.hpp"
#include "amdyn/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>

namespace amdyn {

namespace {

void validate_kl(int k, int l) {
	if (!(l >= 1 && k > l))
		throw ParameterOutOfRange("need k > l >= 1, got k=" + std::to_string(k) +
		                          " l=" + std::to_string(l));
	if (std::gcd(k, l) != 1)
		throw ParameterOutOfRange("k and l must be coprime");
}

// Critical-ratio equation; its root in (1/2, 1) makes the copy hierarchy
// tile without gaps.
double eta_poly(int k, int l, double x) {
	return std::pow(x, k + l) - 2.0 * std::pow(x, k + 1) + 2.0 * x - 1.0;
}

// Plain bisection; callers guarantee a sign change between lo and hi.
double bisect(const std::function<double(double)>& f, double lo, double hi) {
	double flo = f(lo);
	double fhi = f(hi);
	if (flo == 0.0) return lo;
	if (fhi == 0.0) return hi;
	if ((flo > 0.0) == (fhi > 0.0))
		throw NoRootBracketed("bisection endpoints have equal signs");
	for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
		const double mid = 0.5 * (lo + hi);
		const double fm = f(mid);
		if (fm == 0.0) return mid;
		if ((fm > 0.0) == (flo > 0.0)) {
			lo = mid;
			flo = fm;
		} else {
			hi = mid;
		}
	}
	return 0.5 * (lo + hi);
}

} // namespace

double solve_eta(int k, int l) {
	validate_kl(k, l);
	// Signs at the bracket ends: at 1/2 the polynomial is
	// 2^-(k+l) - 2^-k < 0; near 1 it behaves like (k - l)(1 - x) > 0.
	const double root = bisect([&](double x) { return eta_poly(k, l, x); },
	                           0.5, 1.0 - 1e-12);
	if (std::fabs(eta_poly(k, l, root)) > 1e-12)
		throw NoRootBracketed("critical-ratio residual too large");
	return root;
}

SupportDimension support_dimension(double rho, int k, int l) {
	if (!(rho > 0.0 && rho < 1.0))
		throw ParameterOutOfRange("support_dimension: rho must lie in (0,1)");
	const double eta = solve_eta(k, l);
	if (rho > eta + 1e-13)
		throw InvalidRegime("rho exceeds the critical ratio; copies overlap");
	if (std::fabs(rho - eta) <= 1e-13) return {1.0, true};
	return {std::log(eta) / std::log(rho), false};
}

std::pair<double, double> solve_eta_pm(int k, double p_minus) {
	if (k < 2) throw ParameterOutOfRange("solve_eta_pm: need k >= 2");
	if (!(p_minus > 0.0 && p_minus < 1.0))
		throw ParameterOutOfRange("solve_eta_pm: p_minus must lie in (0,1)");
	const double p_plus = 1.0 - p_minus;
	// q(x) = w*x^{k+1} - x + (1-w) has q(0) > 0 and q(1) = 0; by convexity
	// an interior root exists iff q'(1) = (k+1)w - 1 > 0, and then it is the
	// unique sign change in (0,1).  Without it the component degenerates to 1.
	auto interior_root = [&](double w) {
		if ((k + 1) * w - 1.0 <= 0.0) return 1.0;
		return bisect([&](double x) { return w * std::pow(x, k + 1) - x + (1.0 - w); },
		              0.0, 1.0 - 1e-13);
	};
	return {interior_root(p_plus), interior_root(p_minus)};
}

SymbolicWeights symbolic_weights(int k, double p_minus) {
	const auto window = positivity_window(k, 1);
	if (!(p_minus > window.first && p_minus < window.second))
		throw ParameterOutOfRange("symbolic_weights: p_minus outside the open window (" +
		                          std::to_string(window.first) + "," +
		                          std::to_string(window.second) + ")");
	SymbolicWeights w;
	w.k = k;
	w.p_minus = p_minus;
	const double p_plus = 1.0 - p_minus;
	std::tie(w.eta_minus, w.eta_plus) = solve_eta_pm(k, p_minus);
	// Inside the open window both interior roots exist, so eta_pm < 1 here.
	const double denom = p_plus * w.eta_minus / (1.0 - w.eta_minus) +
	                     p_minus * w.eta_plus / (1.0 - w.eta_plus);
	w.c_minus = p_plus / denom;
	w.c_plus = p_minus / denom;
	w.beta_minus.resize(k);
	w.beta_plus.resize(k);
	for (int r = 1; r <= k; ++r) {
		w.beta_minus[r - 1] = (p_minus / p_plus) * std::pow(w.eta_plus, r);
		w.beta_plus[r - 1] = (p_plus / p_minus) * std::pow(w.eta_minus, r);
	}
	return w;
}

double cylinder_mass(const SymbolicWeights& w, int j,
                     const std::vector<int>& r_sequence) {
	if (j == 0) throw ParameterOutOfRange("cylinder_mass: base index must be nonzero");
	for (int r : r_sequence)
		if (r < 1 || r > w.k)
			throw ParameterOutOfRange("cylinder_mass: refinement symbol outside 1..k");
	double mass = (j < 0) ? w.c_minus * std::pow(w.eta_minus, -j)
	                      : w.c_plus * std::pow(w.eta_plus, j);
	// Refinement factors alternate family, starting with the family of the
	// base side: minus-side cylinders refine by beta_minus first.
	bool minus_family = (j < 0);
	for (int r : r_sequence) {
		mass *= minus_family ? w.beta_minus[r - 1] : w.beta_plus[r - 1];
		minus_family = !minus_family;
	}
	return mass;
}

double measure_dimension(int k, double p_minus, double rho) {
	if (!(rho > 0.0 && rho < 1.0))
		throw ParameterOutOfRange("measure_dimension: rho must lie in (0,1)");
	const double eta = solve_eta(k, 1);
	if (rho > eta + 1e-13)
		throw InvalidRegime("measure_dimension: rho exceeds the critical ratio");
	const SymbolicWeights w = symbolic_weights(k, p_minus);
	// Entropy over contraction exponent of the refinement step: each symbol r
	// occurs with the beta weight of its family and contracts by rho^r.
	double entropy = 0.0, mean_exp = 0.0;
	for (int r = 1; r <= k; ++r) {
		const double bm = w.beta_minus[r - 1];
		const double bp = w.beta_plus[r - 1];
		entropy -= bm * std::log(bm) + bp * std::log(bp);
		mean_exp += double(r) * (bm + bp);
	}
	// Both families were summed, so entropy and exponent are per two steps;
	// the factor cancels in the quotient.
	return entropy / (mean_exp * (-std::log(rho)));
}

// --- Addressed interval hierarchy -------------------------------------------

std::string IntervalCode::str() const {
	std::ostringstream os;
	os << "j=" << j << ";s=";
	for (std::size_t i = 0; i < suffix.size(); ++i) {
		if (i) os << ",";
		os << suffix[i];
	}
	os << ";c=";
	for (std::size_t i = 0; i < cylinder.size(); ++i) {
		if (i) os << ",";
		os << cylinder[i].r;
		for (int t : cylinder[i].tail) os << "." << t;
	}
	return os.str();
}

namespace {

// Absolute endpoints of the J or I copy under the affine chart
// x = off + scale * t (scale may be negative for mirrored copies).
void copy_bounds(const ResGeometry& g, bool is_I, double off, double scale,
                 double& lo, double& hi) {
	const double a = off + scale * (is_I ? g.i_lo : g.j_lo);
	const double b = off + scale * (is_I ? g.i_hi : g.j_hi);
	lo = std::min(a, b);
	hi = std::max(a, b);
}

struct TreeEmitter {
	const ResGeometry& g;
	int depth;                      // requested cylinder depth
	double floor_len;               // refinement stops below this length; 0 = off
	std::vector<std::vector<AddressedInterval>>* levels;
	double tail_length = 0;
	double resolution_len = 0;
	std::vector<ChildSlot> j_children, i_children;

	TreeEmitter(const ResGeometry& geom, int d, double floor_l,
	            std::vector<std::vector<AddressedInterval>>* out)
		: g(geom), depth(d), floor_len(floor_l), levels(out),
		  j_children(child_slots(geom, false)), i_children(child_slots(geom, true)) {}

	// State threaded through the walk; `pending` is the open phi chain (the
	// suffix under construction before the first I entry, or the composite
	// symbol under construction after it).
	struct State {
		int j;
		std::vector<int> suffix;
		std::vector<RSymbol> cylinder;
		std::vector<int> pending;
		bool suffix_phase;
	};

	IntervalCode freeze_code(const State& st) const {
		IntervalCode c;
		c.j = st.j;
		if (st.suffix_phase) {
			c.suffix = st.pending;  // partial suffix identifies the J copy
			c.cylinder = st.cylinder;
		} else {
			c.suffix = st.suffix;
			c.cylinder = st.cylinder;
			if (!st.pending.empty()) {
				RSymbol part;
				part.r = st.pending.front();
				part.tail.assign(st.pending.begin() + 1, st.pending.end());
				c.cylinder.push_back(part);  // partial symbol of the frozen copy
			}
		}
		return c;
	}

	void walk_J(double off, double scale, State st, double parent_len) {
		double lo, hi;
		copy_bounds(g, false, off, scale, lo, hi);
		const double len = hi - lo;
		if (floor_len > 0.0 && len < floor_len) {
			// Frozen cover piece: its refinement would first contribute at
			// cylinder depth t; it stays part of every deeper cover.
			const int t = st.suffix_phase ? 0 : int(st.cylinder.size()) + 1;
			if (t <= depth)
				(*levels)[t].push_back({freeze_code(st), lo, hi, false, parent_len});
			tail_length += len;
			resolution_len = std::max(resolution_len, len);
			return;
		}
		for (const ChildSlot& slot : j_children) {
			if (slot.child_is_I) {
				State next = st;
				if (st.suffix_phase) {
					next.suffix = st.pending;
					next.suffix_phase = false;
				} else if (!st.pending.empty()) {
					RSymbol sym;
					sym.r = st.pending.front();
					sym.tail.assign(st.pending.begin() + 1, st.pending.end());
					next.cylinder.push_back(sym);
				}
				next.pending.clear();
				walk_I(off, scale, std::move(next), parent_len);
			} else {
				State next = st;
				next.pending.push_back(slot.phi_index);
				walk_J(off + scale * g.rho,
				       -scale * std::pow(g.rho, slot.phi_index),
				       std::move(next), parent_len);
			}
		}
	}

	void walk_I(double off, double scale, State st, double parent_len) {
		double lo, hi;
		copy_bounds(g, true, off, scale, lo, hi);
		const double len = hi - lo;
		const int d = int(st.cylinder.size());
		(*levels)[d].push_back({ {st.j, st.suffix, st.cylinder}, lo, hi, true, parent_len});
		if (d == depth) {
			resolution_len = std::max(resolution_len, len);
			return;
		}
		if (floor_len > 0.0 && len < floor_len) {
			(*levels)[d + 1].push_back({ {st.j, st.suffix, st.cylinder}, lo, hi, false, len});
			tail_length += len;
			resolution_len = std::max(resolution_len, len);
			return;
		}
		for (const ChildSlot& slot : i_children) {
			if (slot.child_is_I) {
				State next = st;
				next.cylinder.push_back({g.k, {}});
				walk_I(off + scale * g.rho,
				       -scale * std::pow(g.rho, g.k),
				       std::move(next), len);
			} else {
				State next = st;
				next.pending.assign(1, slot.phi_index);
				walk_J(off + scale * g.rho,
				       -scale * std::pow(g.rho, slot.phi_index),
				       std::move(next), len);
			}
		}
	}

	void walk_root(int j) {
		State st;
		st.j = j;
		st.suffix_phase = true;
		const double off = (j < 0) ? 0.0 : 1.0;
		const double scale = (j < 0) ? std::pow(g.rho, -j - 1)
		                             : -std::pow(g.rho, j - 1);
		double lo, hi;
		copy_bounds(g, false, off, scale, lo, hi);
		walk_J(off, scale, std::move(st), hi - lo);
	}
};

} // namespace

std::vector<AddressedInterval> build_intervals(double rho, int k, int l,
                                               int j_range, int suffix_depth) {
	if (j_range < 1) throw ParameterOutOfRange("build_intervals: j_range must be >= 1");
	if (suffix_depth < 0) throw ParameterOutOfRange("build_intervals: suffix_depth negative");
	const ResGeometry g = resonant_geometry(rho, k, l);

	std::vector<AddressedInterval> out;
	// Walk the suffix chains of each base copy, emitting the I copy reached
	// after each chain; chain letters come from 1..l-1, so for l == 1 only
	// the empty suffix exists and the output is exactly the I_j.
	std::function<void(double, double, int, std::vector<int>&, double)> rec =
		[&](double off, double scale, int j, std::vector<int>& chain, double jlen) {
			double ilo, ihi;
			copy_bounds(g, true, off, scale, ilo, ihi);
			out.push_back({ {j, chain, {}}, ilo, ihi, true, jlen});
			if (int(chain.size()) >= suffix_depth) return;
			for (int r = 1; r <= l - 1; ++r) {
				chain.push_back(r);
				rec(off + scale * g.rho, -scale * std::pow(g.rho, r), j, chain, jlen);
				chain.pop_back();
			}
		};
	for (int a = 1; a <= j_range; ++a) {
		for (int j : {-a, a}) {
			const double off = (j < 0) ? 0.0 : 1.0;
			const double scale = (j < 0) ? std::pow(rho, -j - 1) : -std::pow(rho, j - 1);
			double jlo, jhi;
			copy_bounds(g, false, off, scale, jlo, jhi);
			std::vector<int> chain;
			rec(off, scale, j, chain, jhi - jlo);
		}
	}
	std::sort(out.begin(), out.end(),
	          [](const AddressedInterval& a, const AddressedInterval& b) {
		          return a.lo < b.lo;
	          });
	return out;
}

double ifs_apply(double rho, int k, int l, const RSymbol& sym, double x) {
	const ResGeometry g = resonant_geometry(rho, k, l);
	if (sym.r < 1 || sym.r > k)
		throw ParameterOutOfRange("ifs_apply: phi index outside 1..k");
	if (sym.r == k && !sym.tail.empty())
		throw ParameterOutOfRange("ifs_apply: top symbol admits no tail");
	for (int t : sym.tail)
		if (t < 1 || t > l - 1)
			throw ParameterOutOfRange("ifs_apply: tail letter outside 1..l-1");
	if (x < g.j_lo - 1e-12 || x > g.j_hi + 1e-12)
		throw DomainError("ifs_apply: point outside the canonical copy");
	double t = x;
	for (auto it = sym.tail.rbegin(); it != sym.tail.rend(); ++it)
		t = g.phi(*it, t);
	return g.phi(sym.r, t);
}

std::vector<AddressedInterval> CantorApprox::cover(int level) const {
	if (level < 0 || level > depth)
		throw ParameterOutOfRange("cover: level outside the refined range");
	std::vector<AddressedInterval> out;
	for (const auto& iv : levels[level])
		if (iv.resolved) out.push_back(iv);
	// Frozen pieces are never refined, so each stays part of every cover from
	// its first contributing level on.
	for (int d = 0; d <= level; ++d)
		for (const auto& iv : levels[d])
			if (!iv.resolved) out.push_back(iv);
	std::sort(out.begin(), out.end(),
	          [](const AddressedInterval& x, const AddressedInterval& y) {
		          return x.lo < y.lo;
	          });
	return out;
}

CantorApprox cantor_approx(double rho, int k, int l, int depth, int j_range,
                           double length_floor) {
	if (depth < 0) throw ParameterOutOfRange("cantor_approx: depth negative");
	if (j_range < 1) throw ParameterOutOfRange("cantor_approx: j_range must be >= 1");
	const ResGeometry g = resonant_geometry(rho, k, l);

	CantorApprox ap;
	ap.rho = rho;
	ap.k = k;
	ap.l = l;
	ap.depth = depth;
	ap.j_range = j_range;
	ap.base_len = g.j_hi - g.j_lo;
	ap.levels.resize(depth + 1);

	double floor_len = length_floor;
	if (floor_len <= 0.0) {
		if (l == 1) {
			// The cylinder tree is finite: k^depth intervals per copy.
			const double count = 2.0 * j_range * std::pow(double(k), depth);
			if (count > 3e7)
				throw ParameterOutOfRange("cantor_approx: refinement too large; pass a length floor");
			floor_len = 0.0;
		} else {
			// Resolve about 14 contraction decades below the copy scale; the
			// frozen remainder is reported, and stays an exact cover.
			floor_len = ap.base_len * std::pow(rho, std::min(l * depth, 14) + 1);
		}
	}

	TreeEmitter em(g, depth, floor_len, &ap.levels);
	for (int a = 1; a <= j_range; ++a) {
		em.walk_root(-a);
		em.walk_root(a);
	}
	ap.tail_length_bound = em.tail_length;
	ap.resolution_len = em.resolution_len;
	for (auto& level : ap.levels)
		std::sort(level.begin(), level.end(),
		          [](const AddressedInterval& x, const AddressedInterval& y) {
			          return x.lo < y.lo;
		          });
	return ap;
}

namespace {

// Walks the length tree of one base copy and counts the crossing layer at
// scale thresh: the maximal nodes whose length has dropped to <= thresh.
// Each branch is counted exactly once (descent stops at the first node at or
// below the scale), which is the delta-cover count of the copy.
struct CrossingCounter {
	double rho;
	int k, l;
	double q;        // |I| / |J|, the embedding contraction (1 when l == 1)
	double thresh;
	long long count = 0;

	void walk_J(double len, double parent) {
		if (len <= thresh) {
			if (parent > thresh) ++count;
			return;
		}
		for (int r = 1; r <= l - 1; ++r) walk_J(len * std::pow(rho, r), len);
		walk_I(len * q, len);
	}
	void walk_I(double len, double parent) {
		if (len <= thresh) {
			if (parent > thresh) ++count;
			return;
		}
		for (int r = l; r <= k - 1; ++r) walk_J(len * std::pow(rho, r) / q, len);
		walk_I(len * std::pow(rho, k), len);
	}
};

} // namespace

double box_dimension_estimate(const CantorApprox& approx) {
	// Counting statistic: at scale delta, the number of branches whose
	// interval length first drops to <= delta.  This grows like delta^{-dim}.
	// The count is re-walked over the pure length tree (the stored cover only
	// pins the resolved scale range): stopping each branch at its first
	// crossing is what makes the counted set an antichain, and the stored
	// intervals keep only the copy nodes, not the chain nodes between them.
	const ResGeometry g = resonant_geometry(approx.rho, approx.k, approx.l);
	CrossingCounter cc;
	cc.rho = approx.rho;
	cc.k = approx.k;
	cc.l = approx.l;
	cc.q = (g.i_hi - g.i_lo) / (g.j_hi - g.j_lo);

	std::vector<double> lx, ly;
	for (int m = 1;; ++m) {
		const double delta = approx.base_len * std::pow(approx.rho, m);
		// When rho is a power of a round number every interval length lands
		// exactly on some delta, so the comparisons must resolve roundoff
		// ties one fixed way: a length within relative 1e-9 of delta counts
		// as "already at delta".
		cc.thresh = delta * (1.0 + 1e-9);
		if (cc.thresh <= approx.resolution_len) break;  // below the refinement frontier
		cc.count = 0;
		cc.walk_J(approx.base_len, 2.0 * approx.base_len);
		if (cc.count == 0) continue;
		lx.push_back(-std::log(delta));
		ly.push_back(std::log(double(cc.count)));
	}
	if (lx.empty()) return 0.0;
	if (lx.size() == 1)
		throw InsufficientDepth("box dimension: only one usable scale; deepen the cover");

	double sx = 0, sy = 0, sxx = 0, sxy = 0;
	for (std::size_t i = 0; i < lx.size(); ++i) {
		sx += lx[i]; sy += ly[i]; sxx += lx[i] * lx[i]; sxy += lx[i] * ly[i];
	}
	const double n = double(lx.size());
	return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// --- Pressure ----------------------------------------------------------------

double pressure_domain_start(double rho, int k, int l) {
	if (!(rho > 0.0 && rho < 1.0))
		throw ParameterOutOfRange("pressure: rho must lie in (0,1)");
	validate_kl(k, l);
	if (l <= 2) return 0.0;  // 1 - 2u + u^l stays positive for u = rho^t < 1
	// Root in u of the denominator 1 - 2u + u^l: it is positive at 0,
	// negative at the interior minimum u_dip, and returns to 0 at u = 1.
	const double u_dip = std::pow(2.0 / double(l), 1.0 / double(l - 1));
	const double u0 = bisect([&](double u) { return 1.0 - 2.0 * u + std::pow(u, l); },
	                         1e-12, u_dip);
	return std::log(u0) / std::log(rho);
}

double pressure(double rho, int k, int l, double t) {
	const double t0 = pressure_domain_start(rho, k, l);
	if (!(t > t0))
		throw OutsideDomain("pressure diverges at t0=" + std::to_string(t0) +
		                    "; got t=" + std::to_string(t));
	const double num = std::pow(rho, l * t) - 2.0 * std::pow(rho, (k + 1) * t) +
	                   std::pow(rho, (k + l) * t);
	const double den = 1.0 - 2.0 * std::pow(rho, t) + std::pow(rho, l * t);
	return std::log(num / den);
}

double solve_pressure_zero(double rho, int k, int l) {
	const double t0 = pressure_domain_start(rho, k, l);
	const double p1 = pressure(rho, k, l, 1.0);
	if (p1 > 1e-12)
		throw InvalidRegime("pressure still positive at t=1: ratio at or past critical");
	if (p1 > -1e-12) return 1.0;  // critical ratio: dimension one
	// The pressure blows up (l >= 2) or tends to log k (l == 1) as t -> t0+,
	// so walking toward t0 finds a positive value to bracket with t = 1.
	double t_lo = t0 + 0.5 * (1.0 - t0);
	double f_lo = pressure(rho, k, l, t_lo);
	for (int i = 0; i < 80 && f_lo <= 0.0; ++i) {
		t_lo = t0 + (t_lo - t0) * 0.5;
		f_lo = pressure(rho, k, l, t_lo);
	}
	if (f_lo <= 0.0)
		throw NoRootBracketed("pressure zero: no positive value found above t0");
	return bisect([&](double t) { return pressure(rho, k, l, t); }, t_lo, 1.0);
}

// --- Critical-case recurrence ------------------------------------------------

std::vector<double> recurrence_residuals(const std::vector<double>& masses,
                                         int k, int l) {
	validate_kl(k, l);
	const int J = int(masses.size());
	if (J < k + l + 2)
		throw InsufficientData("recurrence: need masses m_1..m_J with J >= " +
		                       std::to_string(k + l + 2));
	std::vector<double> out;
	for (int j = l + 1; j + k <= J; ++j)
		out.push_back(masses[j + k - 1] - 2.0 * masses[j - 1] + masses[j - l - 1]);
	return out;
}

namespace {

std::vector<long long> poly_mul(const std::vector<long long>& a,
                                const std::vector<long long>& b) {
	std::vector<long long> out(a.size() + b.size() - 1, 0);
	for (std::size_t i = 0; i < a.size(); ++i)
		for (std::size_t j = 0; j < b.size(); ++j)
			out[i + j] += a[i] * b[j];
	return out;
}

} // namespace

ResFullReport res_full_analysis() {
	ResFullReport rep;
	rep.rho_star = solve_eta(5, 2);
	rep.rho_residual = std::fabs(eta_poly(5, 2, rep.rho_star));

	// Characteristic polynomial of m_{j+5} = 2 m_j - m_{j-2}, descending
	// powers x^7..x^0, and its claimed integer factorization.
	rep.char_coeffs = {1, 0, 0, 0, 0, -2, 0, 1};
	const auto prod = poly_mul(poly_mul({1, -1}, {1, 1, 0, -1}), {1, 0, 1, 1});
	std::copy(prod.begin(), prod.end(), rep.product_coeffs.begin());
	rep.factorization_exact = std::equal(prod.begin(), prod.end(),
	                                     rep.char_coeffs.begin());

	auto septic = [](double x) {
		return std::pow(x, 7) - 2.0 * x * x + 1.0;
	};
	rep.alpha = bisect([](double x) { return x * x * x + x * x - 1.0; }, 0.0, 1.0);
	rep.beta = bisect([](double x) { return x * x * x + x + 1.0; }, -1.0, 0.0);
	rep.alpha_residual = std::fabs(septic(rep.alpha));
	rep.beta_residual = std::fabs(septic(rep.beta));
	return rep;
}

} // namespace amdyn
