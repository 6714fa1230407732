"""Symbolic reference values for the Schwarzschild frame at rs=1, r=2, theta=pi/2.

Run with `python3 schwarzschild.py`; the printed numbers are frozen in
tests/acceptance.rs and tests/geometry.rs.
"""

import sympy as sp

t, r, th, ph = sp.symbols("t r theta phi", real=True)
X = [t, r, th, ph]
rs = sp.Integer(1)
eta = sp.diag(1, -1, -1, -1)

g = sp.diag(1 - rs / r, -1 / (1 - rs / r), -(r**2), -(r**2) * sp.sin(th) ** 2)
e = sp.diag(sp.sqrt(1 - rs / r), 1 / sp.sqrt(1 - rs / r), r, r * sp.sin(th))
assert sp.simplify(e.T * eta * e - g) == sp.zeros(4)
einv = e.inv()  # einv[mu, a] = e_a^mu
ginv = g.inv()
R = range(4)


def omega(m, n, l):
    return sp.Rational(1, 2) * sum(
        einv[l, a] * sp.diff(e[a, n], X[m]) - einv[l, a] * sp.diff(e[a, m], X[n]) for a in R
    )


def christoffel(l, m, n):
    return sp.Rational(1, 2) * sum(
        ginv[l, k] * (sp.diff(g[k, m], X[n]) + sp.diff(g[k, n], X[m]) - sp.diff(g[m, n], X[k])) for k in R
    )


# spin connection through the tetrad postulate: Gamma_mu^a_b = e^a_nu (d_mu e_b^nu + Gamma^nu_{mu l} e_b^l)
def spin(m, a, b):
    mixed = sum(
        e[a, n] * (sp.diff(einv[n, c], X[m]) + sum(christoffel(n, m, l) * einv[l, c] for l in R)) * eta[c, b]
        for n in R
        for c in R
    )
    return mixed


at = {r: 2, th: sp.pi / 2, t: 0, ph: 0}


def show(name, expr):
    v = sp.nsimplify(sp.simplify(expr.subs(at)))
    print(f"{name} = {v} = {sp.N(v, 17)}")


show("e^0_t", e[0, 0])
show("e^1_r", e[1, 1])
show("e^2_theta", e[2, 2])
show("e^3_phi", e[3, 3])
show("Omega_tr^t", omega(0, 1, 0))
show("Omega_rt^t", omega(1, 0, 0))
show("Gamma^r_tt", christoffel(1, 0, 0))
show("Gamma^t_tr", christoffel(0, 0, 1))
show("Gamma^r_rr", christoffel(1, 1, 1))
show("Gamma^r_thth", christoffel(1, 2, 2))
show("Gamma^th_rth", christoffel(2, 1, 2))
show("Gamma_t^{01}", spin(0, 0, 1))
show("Gamma_th^{12}", spin(2, 1, 2))
show("Gamma_ph^{13}", spin(3, 1, 3))
