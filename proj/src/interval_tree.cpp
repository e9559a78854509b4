#include "amdyn/interval_tree.hpp"
#include "amdyn/errors.hpp"

#include <cmath>
#include <numeric>

namespace amdyn {

double ResGeometry::phi(int r, double t) const {
	return rho - std::pow(rho, r) * t;
}

double ResGeometry::descend(int r, double t) const {
	return (rho - t) / std::pow(rho, r);
}

ResGeometry resonant_geometry(double rho, int k, int l) {
	if (!(rho > 0.0 && rho < 1.0))
		throw ParameterOutOfRange("geometry: rho must lie in (0,1)");
	if (!(l >= 1 && k > l))
		throw ParameterOutOfRange("geometry: need k > l >= 1");
	if (std::gcd(k, l) != 1)
		throw ParameterOutOfRange("geometry: k and l must be coprime");
	ResGeometry g;
	g.rho = rho;
	g.k = k;
	g.l = l;
	g.x_minus = (1.0 - std::pow(rho, k)) / (1.0 - std::pow(rho, k + l));
	g.j_hi = rho * g.x_minus;
	g.j_lo = rho * (1.0 - g.j_hi);
	g.i_hi = g.j_hi;
	g.i_lo = rho * (1.0 - std::pow(rho, l) * g.x_minus);
	return g;
}

std::vector<ChildSlot> child_slots(const ResGeometry& g, bool node_is_I) {
	std::vector<ChildSlot> out;
	if (!node_is_I) {
		// J copy: phi_1(J), ..., phi_{l-1}(J), then the embedded I copy,
		// which shares the supremum of J.  Empty phi range when l == 1.
		for (int r = 1; r <= g.l - 1; ++r)
			out.push_back({r, false, g.phi(r, g.j_hi), g.phi(r, g.j_lo)});
		out.push_back({0, true, g.i_lo, g.i_hi});
	} else {
		// I copy: phi_l(J), ..., phi_{k-1}(J), then phi_k(I) on top.
		for (int r = g.l; r <= g.k - 1; ++r)
			out.push_back({r, false, g.phi(r, g.j_hi), g.phi(r, g.j_lo)});
		out.push_back({g.k, true, g.phi(g.k, g.i_hi), g.phi(g.k, g.i_lo)});
	}
	return out;
}

} // namespace amdyn
