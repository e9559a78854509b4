// Self-similar skeleton of the attractor of a resonant system with
// contraction ratio rho and exponent pair (k, l).
//
// Everything is generated from two canonical intervals,
//
//   J = [ rho*(1 - rho*x_minus),   rho*x_minus ]      (l > 1)
//   I = [ rho*(1 - rho^l*x_minus), rho*x_minus ]  ⊂  J
//
// where x_minus = (1 - rho^k)/(1 - rho^{k+l}), together with the
// orientation-reversing contractions  phi_r(t) = rho - rho^r * t.
// A J-type copy decomposes (low to high) into phi_1(J), ..., phi_{l-1}(J)
// and the embedded I-copy at its top; an I-type copy decomposes into
// phi_l(J), ..., phi_{k-1}(J) and phi_k(I), which shares its supremum.
// Flattening the paths of this two-symbol recursion reproduces exactly the
// labelled interval families of the attractor; for l == 1 the two copies
// coincide and the recursion degenerates to a plain k-ary cylinder tree.
//
// All child geometry lives in the parent copy's canonical coordinate, so
// descending a slot is the scalar update t' = (rho - t) / rho^r and no
// orientation bookkeeping is ever needed for membership questions.

#ifndef AMDYN_INTERVAL_TREE_HPP
#define AMDYN_INTERVAL_TREE_HPP

#include <vector>

namespace amdyn {

struct ResGeometry {
	double rho = 0;
	int k = 0, l = 0;
	double x_minus = 0;
	double j_lo = 0, j_hi = 0;  // canonical J copy
	double i_lo = 0, i_hi = 0;  // canonical I copy; equals J when l == 1

	double phi(int r, double t) const;          // rho - rho^r * t
	double descend(int r, double t) const;      // (rho - t) / rho^r
};

ResGeometry resonant_geometry(double rho, int k, int l);

// One child slot of a copy, in the parent's canonical coordinate.
// phi_index == 0 marks the embedded I-copy of a J-node (no contraction).
struct ChildSlot {
	int phi_index = 0;
	bool child_is_I = false;
	double lo = 0, hi = 0;
};

// Children of a J-type (node_is_I == false) or I-type copy, ordered low to
// high; consecutive slots have nonnegative gaps whenever rho is at or below
// the critical ratio, and the top slot always touches the parent's supremum.
std::vector<ChildSlot> child_slots(const ResGeometry& g, bool node_is_I);

} // namespace amdyn

#endif
