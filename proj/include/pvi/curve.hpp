#pragma once

// Exact curve invariants of tower presentations: genus via the ramified place
// count of the (Z/2)^k cover of the projective line, and the degree of a
// rational map to P^1 through its minimal polynomial.

#include <pvi/tower.hpp>

#include <stdexcept>

namespace pvi {

enum class HyperellipticFlag { Yes, Unknown };

struct CurveInvariants {
    int genus = 0;
    int ramified_place_count = 0;
    HyperellipticFlag hyperelliptic = HyperellipticFlag::Unknown;
};

// Genus of the tower's smooth model.
//  depth 0: the line itself.
//  depth 1: double cover branched at the roots of the radicand, plus infinity
//           when the degree is odd.
//  depth 2: g = R - 3 where R counts base points at which at least one
//           radicand has odd order (each contributes two points of index 2 on
//           the four-fold cover, so Riemann-Hurwitz gives 2g-2 = -8 + 2R).
inline CurveInvariants genus(const TowerPtr &tw) {
    CurveInvariants inv;
    switch (tw->depth()) {
        case 0:
            inv.genus = 0;
            inv.ramified_place_count = 0;
            inv.hyperelliptic = HyperellipticFlag::Yes;
            break;
        case 1: {
            int d = tw->radicand(0).degree();
            inv.ramified_place_count = d + (d % 2);
            inv.genus = (d - 1) / 2;
            inv.hyperelliptic = HyperellipticFlag::Yes;
            break;
        }
        default: {
            const UniPoly &f = tw->radicand(0);
            const UniPoly &g = tw->radicand(1);
            int shared = poly_gcd(f, g).degree();
            int R = f.degree() + g.degree() - shared;
            if ((f.degree() % 2) || (g.degree() % 2)) R += 1;
            inv.ramified_place_count = R;
            inv.genus = R - 3;
            inv.hyperelliptic = HyperellipticFlag::Unknown;
            break;
        }
    }
    return inv;
}

// Degree of t as a branched cover of the projective line:
// (basis_size / deg m) * deg_s P, where m is the minimal polynomial of t over
// Q(s) and P its primitive integral form.
inline int degree_of_map(const FieldElement &t) {
    if (t.is_constant()) throw std::domain_error("degree_of_map: constant map");
    TPoly m = minimal_polynomial(t);
    int d = static_cast<int>(m.size()) - 1;
    BiPoly prim = tpoly_primitive_bivariate(m, t.tower()->var(), "T");
    int degs = prim.degree_x();
    return static_cast<int>(t.tower()->basis_size()) / d * degs;
}

}  // namespace pvi
