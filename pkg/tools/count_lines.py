"""Count the lines on a quartic surface given as a polynomial in x, y, z, w.

Independent check on curve counts at degree 1, e.g.

    python tools/count_lines.py "3*x**3*z - 2*x**2*y**2 + x*z**3 - 8*y**4 - 8*w**4"
"""

import sys

import sympy as sp

from derive_rank10_fixture import find_lines, incidence_gram

if __name__ == "__main__":
    f = sp.sympify(sys.argv[1], locals={q: sp.Symbol(q) for q in "xyzw"})
    lines = find_lines(f)
    print(len(lines), "lines")
    for row in incidence_gram(lines):
        print(" ".join(f"{v:2d}" for v in row))
