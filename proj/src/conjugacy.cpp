#include "amdyn/conjugacy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <utility>
#include <vector>

#include "amdyn/errors.hpp"
#include "amdyn/interval_tree.hpp"
#include "amdyn/rng.hpp"

namespace amdyn {

namespace {

// Margin below the critical ratio demanded before descending: at the critical
// value the gaps close and addresses stop being unique.
constexpr double kSubcriticalMargin = 1e-13;

// Hard bound on tree-edge steps inside evaluate_h.  Every step either shrinks
// the tracked bracket by a factor <= max(rho, |I|/|J|) < 1 or is immediately
// followed by one that does, so for any tol >= 1e-15 the walk stops long
// before this.
constexpr int kStepCap = 4096;

void require_subcritical(const ResonantSystem& sys, const char* who) {
	double eta = solve_eta(sys.k, sys.l);
	if (!(sys.rho < eta - kSubcriticalMargin)) {
		char buf[160];
		std::snprintf(buf, sizeof buf,
		              "%s: rho=%.17g is not strictly below the critical ratio %.17g "
		              "for (k=%d, l=%d)",
		              who, sys.rho, eta, sys.k, sys.l);
		throw InvalidRegime(buf);
	}
}

// One point of the address hierarchy, tracked in the node's canonical
// coordinates plus the affine chart (off, scale) mapping canonical values to
// absolute position in [0,1].  The same machinery serves a second system by
// mirroring slot choices with the chart alone.
struct Walker {
	const ResGeometry* g;
	std::vector<ChildSlot> jslots, islots;

	// address state
	int top_j = 0;
	std::vector<int> suffix;
	std::vector<RSymbol> cylinder;
	std::vector<int> pending;  // open suffix (before first I) or open symbol tail
	bool suffix_phase = true;
	bool is_I = false;

	double t = 0;              // canonical coordinate inside the current node
	double off = 0, scale = 1; // absolute = off + scale * canonical

	explicit Walker(const ResGeometry& geom)
	    : g(&geom),
	      jslots(child_slots(geom, false)),
	      islots(child_slots(geom, true)) {}

	const std::vector<ChildSlot>& slots() const { return is_I ? islots : jslots; }
	double node_lo() const { return is_I ? g->i_lo : g->j_lo; }
	double node_hi() const { return is_I ? g->i_hi : g->j_hi; }

	struct Step {
		bool into_child = false;
		int idx = 0;            // child slot, or count of children below the gap
		double lo_c = 0, hi_c = 0;  // canonical bounds of the child / gap
	};

	// Both node types tile from their own lower endpoint, so a gap can only
	// open strictly between consecutive children (or, by rounding, never).
	Step classify() const {
		const auto& sl = slots();
		double prev = node_lo();
		for (std::size_t i = 0; i < sl.size(); ++i) {
			if (t < sl[i].lo) return {false, static_cast<int>(i), prev, sl[i].lo};
			if (t <= sl[i].hi) return {true, static_cast<int>(i), sl[i].lo, sl[i].hi};
			prev = sl[i].hi;
		}
		// t == node_hi up to rounding: clamp into the topmost child.
		int last = static_cast<int>(sl.size()) - 1;
		return {true, last, sl[last].lo, sl[last].hi};
	}

	// Descends into slot idx, updating address, chart and (if track_t) the
	// canonical coordinate.
	void take(int idx, bool track_t) {
		const ChildSlot& s = slots()[idx];
		if (s.phi_index == 0) {
			// embedded copy: same span at the top, no contraction
			if (suffix_phase) {
				suffix = pending;
				pending.clear();
				suffix_phase = false;
			} else {
				RSymbol sym;
				sym.r = pending.front();
				sym.tail.assign(pending.begin() + 1, pending.end());
				cylinder.push_back(std::move(sym));
				pending.clear();
			}
			is_I = true;
			if (track_t) t = std::clamp(t, g->i_lo, g->i_hi);
			return;
		}
		int r = s.phi_index;
		if (is_I && s.child_is_I) {
			// the r = k child closes a one-letter symbol at once
			cylinder.push_back({r, {}});
		} else {
			// opens a composite symbol (from I) or extends suffix/tail (from J)
			pending.push_back(r);
			is_I = false;
		}
		if (track_t) {
			t = g->descend(r, t);
			t = std::clamp(t, node_lo(), node_hi());
		}
		double rp = std::pow(g->rho, r);
		off += scale * g->rho;
		scale *= -rp;
	}

	// Address as completed so far; a partially built suffix or symbol is
	// included verbatim.
	IntervalCode address() const {
		IntervalCode c;
		c.j = top_j;
		c.suffix = suffix;
		c.cylinder = cylinder;
		if (suffix_phase) {
			c.suffix = pending;
		} else if (!pending.empty()) {
			RSymbol sym;
			sym.r = pending.front();
			sym.tail.assign(pending.begin() + 1, pending.end());
			c.cylinder.push_back(std::move(sym));
		}
		return c;
	}

	double abs_lo() const {
		double a = off + scale * node_lo(), b = off + scale * node_hi();
		return std::min(a, b);
	}
	double abs_hi() const {
		double a = off + scale * node_lo(), b = off + scale * node_hi();
		return std::max(a, b);
	}
};

struct TopHit {
	bool in_gap = false;
	int m = 0;       // scale exponent: copy or gap lives in rho^m * [base scale]
	double y = 0;    // canonical coordinate when inside the copy
};

// Peels scales of rho off y until it lands in the base copy [j_lo, j_hi] or
// in the gap (rho * j_hi, j_lo) just below it.
TopHit top_level(const ResGeometry& g, double y) {
	TopHit hit;
	while (true) {
		if (y >= g.j_lo) {
			hit.y = y;
			return hit;
		}
		if (y > g.rho * g.j_hi) {
			hit.in_gap = true;
			return hit;
		}
		y /= g.rho;
		++hit.m;
		if (hit.m > 2000) throw DomainError("locate: point is denormally close to an endpoint");
	}
}

} // namespace

std::string GapId::str() const {
	char buf[64];
	if (top_level) {
		std::snprintf(buf, sizeof buf, "U;j=%d", j);
		return buf;
	}
	std::snprintf(buf, sizeof buf, ";slot=%d", slot);
	return "U;parent=" + parent.str() + buf;
}

PointCode locate(const ResonantSystem& sys, double x, int max_depth) {
	ResGeometry g = resonant_geometry(sys.rho, sys.k, sys.l);
	require_subcritical(sys, "locate");
	if (!(x > 0.0 && x < 1.0)) {
		char buf[96];
		std::snprintf(buf, sizeof buf, "locate: x=%.17g outside the open interval (0,1)", x);
		throw DomainError(buf);
	}
	if (max_depth < 0) throw ParameterOutOfRange("locate: max_depth must be >= 0");

	PointCode pc;

	// central gap between the two mirror families
	if (x > g.j_hi && x < 1.0 - g.j_hi) {
		pc.kind = PointCode::Kind::InGap;
		pc.gap.top_level = true;
		pc.gap.j = 0;
		pc.lo = g.j_hi;
		pc.hi = 1.0 - g.j_hi;
		pc.offset = (x - pc.lo) / (pc.hi - pc.lo);
		return pc;
	}

	bool mir = x > 0.5;
	double y = mir ? 1.0 - x : x;
	TopHit hit = top_level(g, y);
	double sc = std::pow(g.rho, hit.m);

	if (hit.in_gap) {
		double a = sc * (g.rho * g.j_hi), b = sc * g.j_lo;
		pc.kind = PointCode::Kind::InGap;
		pc.gap.top_level = true;
		pc.gap.j = mir ? hit.m + 1 : -(hit.m + 1);
		pc.lo = mir ? 1.0 - b : a;
		pc.hi = mir ? 1.0 - a : b;
		pc.offset = (x - pc.lo) / (pc.hi - pc.lo);
		return pc;
	}

	Walker w(g);
	w.top_j = mir ? hit.m + 1 : -(hit.m + 1);
	w.t = hit.y;
	w.off = mir ? 1.0 : 0.0;
	w.scale = mir ? -sc : sc;

	for (int step = 0; step < max_depth; ++step) {
		Walker::Step st = w.classify();
		if (!st.into_child) {
			double a = w.off + w.scale * st.lo_c, b = w.off + w.scale * st.hi_c;
			pc.kind = PointCode::Kind::InGap;
			pc.gap.top_level = false;
			pc.gap.parent = w.address();
			pc.gap.slot = st.idx;
			pc.lo = std::min(a, b);
			pc.hi = std::max(a, b);
			pc.offset = (x - pc.lo) / (pc.hi - pc.lo);
			return pc;
		}
		w.take(st.idx, true);
	}

	pc.kind = PointCode::Kind::InLambda;
	pc.code = w.address();
	pc.lo = w.abs_lo();
	pc.hi = w.abs_hi();
	return pc;
}

double evaluate_h(const ResonantSystem& F, const ResonantSystem& G,
                  double x, double tol) {
	if (F.k != G.k || F.l != G.l) {
		char buf[96];
		std::snprintf(buf, sizeof buf,
		              "evaluate_h: exponent pairs differ, (%d,%d) vs (%d,%d)",
		              F.k, F.l, G.k, G.l);
		throw MismatchedResonance(buf);
	}
	ResGeometry gF = resonant_geometry(F.rho, F.k, F.l);
	ResGeometry gG = resonant_geometry(G.rho, G.k, G.l);
	require_subcritical(F, "evaluate_h");
	require_subcritical(G, "evaluate_h");
	if (!(tol > 0.0)) throw ParameterOutOfRange("evaluate_h: tol must be positive");
	if (!(x >= 0.0 && x <= 1.0)) {
		char buf[96];
		std::snprintf(buf, sizeof buf, "evaluate_h: x=%.17g outside [0,1]", x);
		throw DomainError(buf);
	}

	if (x == 0.0) return 0.0;
	if (x == 1.0) return 1.0;
	if (x == 0.5) return 0.5;  // both hierarchies are mirror symmetric

	// central gap maps to central gap
	if (x > gF.j_hi && x < 1.0 - gF.j_hi) {
		double u = (x - gF.j_hi) / (1.0 - 2.0 * gF.j_hi);
		return gG.j_hi + u * (1.0 - 2.0 * gG.j_hi);
	}

	bool mir = x > 0.5;
	double y = mir ? 1.0 - x : x;
	TopHit hit = top_level(gF, y);
	double scG = std::pow(gG.rho, hit.m);

	if (hit.in_gap) {
		double loF = gF.rho * gF.j_hi, hiF = gF.j_lo;
		double loG = gG.rho * gG.j_hi, hiG = gG.j_lo;
		double yc = y / std::pow(gF.rho, hit.m);
		double u = (yc - loF) / (hiF - loF);
		double v = scG * (loG + u * (hiG - loG));
		return mir ? 1.0 - v : v;
	}

	Walker wF(gF), wG(gG);
	wF.t = hit.y;
	wG.off = mir ? 1.0 : 0.0;
	wG.scale = mir ? -scG : scG;

	for (int step = 0; step < kStepCap; ++step) {
		double widthG = std::fabs(wG.scale) * (wG.node_hi() - wG.node_lo());
		if (widthG < tol) break;
		Walker::Step st = wF.classify();
		if (!st.into_child) {
			// same-rank gap in G: between child idx-1 and child idx
			const auto& slG = wG.slots();
			double gapG_lo = st.idx == 0 ? wG.node_lo() : slG[st.idx - 1].hi;
			double gapG_hi = slG[st.idx].lo;
			double u = (wF.t - st.lo_c) / (st.hi_c - st.lo_c);
			u = std::clamp(u, 0.0, 1.0);
			return wG.off + wG.scale * (gapG_lo + u * (gapG_hi - gapG_lo));
		}
		wF.take(st.idx, true);
		wG.take(st.idx, false);
	}

	double u = (wF.t - wF.node_lo()) / (wF.node_hi() - wF.node_lo());
	u = std::clamp(u, 0.0, 1.0);
	return wG.off + wG.scale * (wG.node_lo() + u * (wG.node_hi() - wG.node_lo()));
}

ConjugacyReport verify_conjugacy(const ResonantSystem& F, const ResonantSystem& G,
                                 std::size_t n_samples, double tol,
                                 std::uint64_t seed) {
	if (n_samples == 0) throw ParameterOutOfRange("verify_conjugacy: n_samples must be positive");
	AmSystem sysF = from_resonance(F);
	AmSystem sysG = from_resonance(G);

	SplitMix64 rng(seed);
	std::vector<std::pair<double, double>> pts;
	pts.reserve(n_samples);
	ConjugacyReport rep;
	rep.samples = n_samples;
	rep.tol = tol;

	for (std::size_t i = 0; i < n_samples; ++i) {
		double x = rng.uniform01();
		if (x == 0.0) x = 0.5;
		double hx = evaluate_h(F, G, x, tol);
		for (Sign s : {Sign::minus, Sign::plus}) {
			double lhs = evaluate_h(F, G, apply(sysF, s, x), tol);
			double rhs = apply(sysG, s, hx);
			rep.max_residual = std::max(rep.max_residual, std::fabs(lhs - rhs));
		}
		pts.emplace_back(x, hx);
	}

	std::sort(pts.begin(), pts.end());
	rep.monotone = true;
	for (std::size_t i = 1; i < pts.size(); ++i) {
		// below the resolution of h the ordering of values is not meaningful
		if (pts[i].first - pts[i - 1].first <= 2.0 * tol) continue;
		if (!(pts[i].second > pts[i - 1].second)) rep.monotone = false;
	}
	return rep;
}

} // namespace amdyn
