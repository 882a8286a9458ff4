"""Writes the level-7, weight-8 theta LP fixtures.

Every form used here is a theta series of an even lattice of level 7 in
dimension 16, built as an orthogonal sum of E8, sqrt(7)E8 and the binary
form Q = x^2 + xy + 2y^2 (det 7). For such a lattice M of determinant 7^j,
theta_M | W_7 = 7^(4 - j/2) theta_{sqrt(7) M*}, so the Atkin-Lehner images
are again theta series and all data stays rational.

The genus of E8 + sqrt(7)E8 (det 7^8) has constant 7^4 * 7^-4 = 1, so the
stored W-side data needs no normalization.

Exponents count norm/2. Usage: python3 tools/level7_theta.py [out-dir]
"""

import json
import sys
from fractions import Fraction
from pathlib import Path

import sympy

N = 100


def mul(a, b):
    out = [0] * (N + 1)
    for i, x in enumerate(a):
        if x:
            for j in range(N + 1 - i):
                out[i + j] += x * b[j]
    return out


def power(a, k):
    out = [1] + [0] * N
    for _ in range(k):
        out = mul(out, a)
    return out


def dilate(a, d):
    out = [0] * (N + 1)
    for i in range(0, N // d + 1):
        out[i * d] = a[i]
    return out


def e8():
    return [1] + [240 * sum(d**3 for d in range(1, n + 1) if n % d == 0) for n in range(1, N + 1)]


def binary():
    out = [0] * (N + 1)
    r = 20
    for x in range(-r, r + 1):
        for y in range(-r, r + 1):
            v = x * x + x * y + 2 * y * y
            if v <= N:
                out[v] += 1
    return out


E, E7, Q = e8(), dilate(e8(), 7), binary()
Q4 = power(Q, 4)

# name -> (theta, det exponent j, name of sqrt(7) M*)
LATTICES = {
    "Q^8": (power(Q, 8), 8, "Q^8"),
    "Q^4+E8": (mul(Q4, E), 4, "Q^4+r7E8"),
    "Q^4+r7E8": (mul(Q4, E7), 12, "Q^4+E8"),
    "E8+E8": (mul(E, E), 0, "r7E8+r7E8"),
    "E8+r7E8": (mul(E, E7), 8, "E8+r7E8"),
    "r7E8+r7E8": (mul(E7, E7), 16, "E8+E8"),
}


def image(name):
    _, j, img = LATTICES[name]
    c = Fraction(7) ** (4 - Fraction(j, 2))
    assert c.denominator == 1 or c.numerator == 1
    return [c * x for x in LATTICES[img][0]]


def main():
    out = Path(sys.argv[1] if len(sys.argv) > 1 else "crates/cli/fixtures")
    names = list(LATTICES)
    F = sympy.Matrix([LATTICES[n][0] for n in names])
    G = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in image(n)] for n in names])
    assert F.rank() == 5, "six theta series should span the 5-dimensional M_8(Gamma0(7))"
    # the W-action must respect every linear relation among the theta series
    for rel in F.T.nullspace():
        assert (rel.T * G).is_zero_matrix
    # combinations vanishing at both cusps
    cons = sympy.Matrix([[F[i, 0] for i in range(6)], [G[i, 0] for i in range(6)]])
    combos = [v.T for v in cons.nullspace()]
    S = sympy.Matrix.vstack(*[c * F for c in combos])
    SW = sympy.Matrix.vstack(*[c * G for c in combos])
    # echelon form on the q-side, carried along on the W-side
    both = sympy.Matrix.hstack(S, SW).rref()[0]
    rows = [both.row(i) for i in range(both.rows) if any(both.row(i)[: N + 1])]
    assert len(rows) == 3, "S_8(Gamma0(7)) has dimension 3"
    basis = [[r[j] for j in range(N + 1)] for r in rows]
    basis_w = [[r[N + 1 + j] for j in range(N + 1)] for r in rows]
    assert all(b[0] == 0 for b in basis + basis_w)

    s = lambda v: [str(x) for x in v]
    theta_l = LATTICES["E8+r7E8"][0]
    common = dict(
        level=7,
        weight=8,
        precision=N,
        eis=s(theta_l),
        cusp_basis=[s(b) for b in basis],
        eis_w=s(theta_l),
        cusp_basis_w=[s(b) for b in basis_w],
    )
    note = (
        "base form: theta series of E8 + sqrt(7)E8 (same genus, differences are cusp forms); "
        "cusp basis of S_8(Gamma0(7)) from theta series of level-7 lattices built from E8, sqrt(7)E8 "
        "and x^2+xy+2y^2; W_7 images via theta_M|W_7 = 7^(4-j/2) theta_{sqrt(7)M*}; "
        "generated by tools/level7_theta.py"
    )
    systems = {
        "theta_level7_882.json": dict(m_prime=4, m=4, s=882 * 2, s_prime=882 * 2),
        "theta_level7_q8.json": dict(m_prime=1, m=1, s=LATTICES["Q^8"][0][1] // 2, s_prime=LATTICES["Q^8"][0][1] // 2),
    }
    for file, head in systems.items():
        body = dict(level=7, weight=8, precision=N, **head)
        body.update(common)
        body["provenance"] = note + ("; prescribed data of a hypothetical lattice with s = s' = 1764 at q^4"
                                     if "882" in file else "; prescribed data of the lattice Q^8 (min 2, s = 8)")
        (out / file).write_text(json.dumps(body, indent=1) + "\n")
        print("wrote", out / file)


if __name__ == "__main__":
    main()
