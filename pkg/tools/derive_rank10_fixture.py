"""Rebuild fixtures/quartic_rank10.json from the lines on a quartic surface.

The surface x^3y + x^3z + y^3z + yz^3 + z^4 + xw^3 = 0 has Picard number 10
and its 13 lines generate the Picard group.  This script finds the lines
(Groebner bases in sympy), builds their incidence Gram matrix (-2 on the
diagonal, 1 for meeting lines), passes to a basis of the lattice they
generate and solves h.l = 1 for the hyperplane class.

Needs sympy and numpy, which the package itself does not use.

    python tools/derive_rank10_fixture.py [--output PATH]
"""

import argparse
import itertools
import json
import os

import numpy as np
import sympy as sp

from hodgescan import exactlin as el
from hodgescan.curves import lattice_from_generators
from hodgescan.formats import dump_json

x, y, z, w, s, t, a, b, c, d = sp.symbols("x y z w s t a b c d")
SURFACE = x**3 * y + x**3 * z + y**3 * z + y * z**3 + z**4 + x * w**3
TOL = 1e-8


def find_lines(f):
    """Lines as pairs of spanning points, one chart per pair of free coordinates."""
    V = [x, y, z, w]
    lines = []
    for i, j in itertools.combinations(range(4), 2):
        k, l = [q for q in range(4) if q not in (i, j)]
        sub = {V[i]: s, V[j]: t, V[k]: a * s + b * t, V[l]: c * s + d * t}
        g = sp.Poly(sp.expand(f.subs(sub, simultaneous=True)), s, t)
        eqs = [g.coeff_monomial(s**e * t**(4 - e)) for e in range(5)]
        G = sp.groebner(eqs, a, b, c, d, order="lex")
        if G.exprs == [1]:
            continue
        for sol in sp.solve(G.exprs, [a, b, c, d], dict=True):
            vals = {q: complex(sp.N(sol.get(q, q), 40)) for q in (a, b, c, d)}
            p1, p2 = [0] * 4, [0] * 4
            p1[i], p1[k], p1[l] = 1, vals[a], vals[c]
            p2[j], p2[k], p2[l] = 1, vals[b], vals[d]
            lines.append((p1, p2))
    # the same line shows up in several charts
    uniq = []
    for L in lines:
        if all(np.linalg.matrix_rank(np.array(L + Q, dtype=complex), tol=TOL) > 2 for Q in uniq):
            uniq.append(L)
    return uniq


def incidence_gram(lines):
    n = len(lines)
    G = [[0] * n for _ in range(n)]
    for p in range(n):
        for q in range(n):
            if p == q:
                G[p][q] = -2
            else:
                M = np.array(lines[p] + lines[q], dtype=complex)
                G[p][q] = 1 if abs(np.linalg.det(M)) < TOL else 0
    return G


def main():
    ap = argparse.ArgumentParser()
    here = os.path.dirname(os.path.abspath(__file__))
    ap.add_argument("--output", default=os.path.join(here, "..", "src", "hodgescan", "fixtures",
                                                     "quartic_rank10.json"))
    args = ap.parse_args()
    lines = find_lines(SURFACE)
    line_gram = incidence_gram(lines)
    gram, coords = lattice_from_generators(line_gram)
    # h.l_i = 1 for every line: solve on the images of the lines
    G_lines = el.matmul(coords, gram)
    sol = el.solve(G_lines, [1] * len(lines))
    if sol is None or any(q.denominator != 1 for q in sol):
        raise SystemExit("no integral polarization with h.l = 1 for all lines")
    h = [int(q) for q in sol]
    assert el.bilinear(h, gram, h) == 4
    data = {
        "name": "quartic_rank10",
        "description": "Picard lattice of x^3y + x^3z + y^3z + yz^3 + z^4 + xw^3 = 0, "
                       "generated by its 13 lines",
        "degree": 4,
        "gram": gram,
        "h": h,
        "line_gram": line_gram,
        "line_coords": coords,
    }
    with open(args.output, "w", encoding="utf-8") as fh:
        fh.write(dump_json(data))
    print(f"{len(lines)} lines, rank {len(gram)}, det {el.det(gram)}, wrote {args.output}")


if __name__ == "__main__":
    main()
