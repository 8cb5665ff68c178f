"""Pullback H*(Sp(k)/U(k)) -> H*(Sp(k)/T) in the Schubert basis.

c_i maps to e_i(x) with x_i the weight e_i; products of weights are
evaluated by the Chevalley rule.  The map is injective, so it certifies
identities in the Lag ring independently of the rewrite rules.
"""

from flagzero.polyring import IntPoly, elementary_polynomials, x_names
from flagzero.rootsys import build_root_system
from flagzero.schubert_basis import monomial_class


def lag_pullback(p, k):
    """Image in the Schubert basis of Sp(k)/T of a polynomial {exps: coeff} in c1..ck."""
    rs = build_root_system("C", k)
    es = elementary_polynomials(k)
    xs = [rs.weight_from_ambient(tuple(int(i == j) for j in range(k))) for i in range(k)]
    total = {}
    for e, c in p.items():
        f = IntPoly.const(x_names(k), c)
        for i, a in enumerate(e):
            f = f * es[i] ** a
        for m, d in f.terms.items():
            ws = [xs[i] for i, a in enumerate(m) for _ in range(a)]
            for w, v in monomial_class(rs, ws).items():
                total[w.rho_image] = total.get(w.rho_image, 0) + d * v
    return {w: v for w, v in total.items() if v}


def lag_terms(elem):
    k = elem.k
    return {tuple(int(i in s) for i in range(1, k + 1)): c for s, c in elem.coeffs.items()}
