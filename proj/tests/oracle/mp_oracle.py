#!/usr/bin/env python3
"""Arbitrary-precision reference values for the unit and acceptance tests.

Everything here is transcribed directly from the formulas with mpmath at
50 digits and sympy for gradients. It shares no code with the C++ library.
Regenerate with:

    python3 tests/oracle/mp_oracle.py > tests/oracle/oracle_values.hpp
"""
import sympy as sp
from mpmath import mp, mpf, sin, cos, asin, sqrt

mp.dps = 50

EPS = mpf("0.01")
H = mpf("0.01")

q1s = sp.symbols("q11 q12 q13")
q2s = sp.symbols("q21 q22 q23")
q11, q12, q13 = q1s
q21, q22, q23 = q2s

omega_sym = 1 + sp.sin(q11) ** 2
U_sym = sp.Rational(1, 4) * ((q11 - q21) ** 4
                             + (q12 - q13 - q11 - q21) ** 4
                             + (q13 - q21 - q12 - q22) ** 4
                             + (q13 + q23) ** 4)
allq = list(q1s) + list(q2s)


def ev(expr, q):
    subs = {s: sp.Float(str(v), 60) for s, v in zip(allq, q)}
    return mpf(str(sp.N(expr.subs(subs), 60)))


def omega(q):
    return ev(omega_sym, q)


def U(q):
    return ev(U_sym, q)


grad_omega_sym = [sp.diff(omega_sym, s) for s in q1s]
grad_U_sym = [sp.diff(U_sym, s) for s in allq]


def sinc(x):
    return mpf(1) if x == 0 else sin(x) / x


def norm2(v):
    return sum(x * x for x in v)


def shifted_force(q, eps, omega0):
    w = omega(q)
    gw = [ev(e, q) for e in grad_omega_sym]
    gu = [ev(e, q) for e in grad_U_sym]
    q2 = q[3:]
    n2 = norm2(q2)
    g1 = [-(w * n2 / eps**2) * gw[i] - gu[i] for i in range(3)]
    g2 = [-((w**2 - omega0**2) / eps**2) * q2[i] - gu[3 + i] for i in range(3)]
    return g1 + g2


def full_force(q, eps):
    return shifted_force(q, eps, mpf(0))


def initial(eps):
    w0 = 1 + sin(mpf(1)) ** 2
    q = [mpf(1), mpf(0), mpf(0), eps / w0, mpf(0), mpf(0)]
    p = [mpf(1), mpf(0), mpf(0), mpf(1), mpf(0), mpf(0)]
    return q, p


def energy(q, p, eps):
    w = omega(q)
    return (norm2(p) + w**2 / eps**2 * norm2(q[3:])) / 2 + U(q)


def action(q, p, eps):
    w = omega(q)
    return norm2(p[3:]) / (2 * w) + w / (2 * eps**2) * norm2(q[3:])


def erkn_step(q, p, h, eps, omega0):
    ups = omega0 / eps
    x = h * ups
    # per-component frequency: 0 on the slow block, ups on the fast block
    freqs = [mpf(0)] * 3 + [ups] * 3
    Q = []
    for i in range(6):
        xi = h * freqs[i]
        Q.append(cos(xi / 2) * q[i] + h / 2 * sinc(xi / 2) * p[i])
    g = shifted_force(Q, eps, omega0)
    qn, pn = [], []
    for i in range(6):
        xi = h * freqs[i]
        bbar = sinc(xi / 2) ** 2 / 2
        b = cos(xi / 2) * sinc(xi / 2)
        qn.append(cos(xi) * q[i] + h * sinc(xi) * p[i] + h**2 * bbar * g[i])
        pn.append(-h * freqs[i] ** 2 * sinc(xi) * q[i] + cos(xi) * p[i] + h * b * g[i])
    return qn, pn


def rkn_step(q, p, h, eps):
    Q = [q[i] + h / 2 * p[i] for i in range(6)]
    f = full_force(Q, eps)
    return ([q[i] + h * p[i] + h**2 / 2 * f[i] for i in range(6)],
            [p[i] + h * f[i] for i in range(6)])


def sv_step(q, p, h, eps):
    f = full_force(q, eps)
    ph = [p[i] + h / 2 * f[i] for i in range(6)]
    qn = [q[i] + h * ph[i] for i in range(6)]
    f = full_force(qn, eps)
    return qn, [ph[i] + h / 2 * f[i] for i in range(6)]


def omega_h(q, h, eps, omega0):
    ups = omega0 / eps
    w = omega(q)
    return w * sqrt(1 - h**2 / (4 * eps**2) * sinc(h * ups / 2) ** 2 * w**2)


def psi(q, h, eps, omega0):
    ups = omega0 / eps
    x = h * ups
    bbar = sinc(x / 2) ** 2 / 2
    b = cos(x / 2) * sinc(x / 2)
    wh = omega_h(q, h, eps, omega0)
    return cos(x / 2) / bbar + h**2 * ups**2 / 2 * sinc(x / 2) / b * (
        sinc(x / 2) ** 2 / sinc(x) ** 2 * wh**2 / omega0**2)


def mod_action(q, p, h, eps, omega0):
    x = h * omega0 / eps
    wh = omega_h(q, h, eps, omega0)
    ps = psi(q, h, eps, omega0)
    return (ps * sinc(x) ** 2 / (2 * sinc(x / 2)) * norm2(p[3:]) / (2 * wh)
            + ps * sinc(x / 2) / 2 * wh / (2 * eps**2) * norm2(q[3:]))


def arcsin_freq(q, h, eps, omega0):
    x = h * omega0 / eps
    return 2 * eps / h * asin(h / (2 * eps) * sinc(x / 2) * omega(q))


def mod_energy(q, p, h, eps, omega0):
    x = h * omega0 / eps
    bbar = sinc(x / 2) ** 2 / 2
    w = omega(q)
    return (norm2(p[:3]) / 2 + arcsin_freq(q, h, eps, omega0) * mod_action(q, p, h, eps, omega0)
            + U(q) + (1 - psi(q, h, eps, omega0) * bbar) * (w**2 - omega0**2) / eps**2 * norm2(q[3:]))


def hat_action(q, p, h, eps):
    w = omega(q)
    wh = w * sqrt(1 - h**2 * w**2 / (4 * eps**2))
    return norm2(p[3:]) / (2 * wh) + wh / (2 * eps**2) * norm2(q[3:])


def hat_energy(q, p, h, eps):
    w = omega(q)
    return norm2(p[:3]) / 2 + 2 * eps / h * asin(h * w / (2 * eps)) * hat_action(q, p, h, eps) + U(q)


def lit(x):
    return mp.nstr(x, 30, min_fixed=-1, max_fixed=-1) if x != 0 else "0.0"


def arr(name, vals):
    return "inline constexpr double %s[] = {\n    %s};\n" % (name, ",\n    ".join(lit(v) for v in vals))


def scalar(name, v):
    return "inline constexpr double %s = %s;\n" % (name, lit(v))


def main():
    out = []
    out.append("// Generated by tests/oracle/mp_oracle.py (mpmath, 50 digits). Do not edit.\n")
    out.append("#pragma once\n\nnamespace oracle {\n\n")

    q0, p0 = initial(EPS)
    w0 = omega(q0)
    ups = w0 / EPS
    x = H * ups

    out.append("// Varying-frequency FPU, eps = 0.01.\n")
    out.append(scalar("kOmega0", w0))
    out.append(scalar("kUpsilon", ups))
    out.append(scalar("kInitialQ21", q0[3]))
    out.append(scalar("kInitialEnergy", energy(q0, p0, EPS)))
    out.append(scalar("kInitialAction", action(q0, p0, EPS)))
    out.append(scalar("kSincTiny", sin(mpf("1e-9")) / mpf("1e-9")))
    out.append("\n// Filter values at h = 0.01.\n")
    out.append(scalar("kCosHalf", cos(x / 2)))
    out.append(scalar("kSincHalf", sinc(x / 2)))
    out.append(scalar("kCosFull", cos(x)))
    out.append(scalar("kSincFull", sinc(x)))
    out.append(scalar("kBbarFast", sinc(x / 2) ** 2 / 2))
    out.append(scalar("kBFast", cos(x / 2) * sinc(x / 2)))

    out.append("\n// One step of size h = 0.01 from the initial state; layout q11..q23, p11..p23.\n")
    qe, pe = erkn_step(q0, p0, H, EPS, w0)
    out.append(arr("kErknStep", qe + pe))
    qr, pr = rkn_step(q0, p0, H, EPS)
    out.append(arr("kRknStep", qr + pr))
    qs, ps = sv_step(q0, p0, H, EPS)
    out.append(arr("kSvStep", qs + ps))

    out.append("\n// Forces at a perturbed point (symbolic gradients).\n")
    qpert = [mpf("0.7"), mpf("-0.3"), mpf("0.25"), mpf("0.004"), mpf("-0.002"), mpf("0.003")]
    out.append(arr("kPerturbedQ", qpert))
    out.append(arr("kShiftedForce", shifted_force(qpert, EPS, w0)))
    out.append(arr("kFullForce", full_force(qpert, EPS)))
    out.append(scalar("kPerturbedPotential", U(qpert)))

    out.append("\n// Diagnostics at the initial state, h = eps.\n")
    out.append(scalar("kOmegaH", omega_h(q0, H, EPS, w0)))
    out.append(scalar("kPsi", psi(q0, H, EPS, w0)))
    out.append(scalar("kModifiedAction", mod_action(q0, p0, H, EPS, w0)))
    out.append(scalar("kArcsinFrequency", arcsin_freq(q0, H, EPS, w0)))
    out.append(scalar("kModifiedEnergy", mod_energy(q0, p0, H, EPS, w0)))
    out.append(scalar("kHatAction", hat_action(q0, p0, H, EPS)))
    out.append(scalar("kHatEnergy", hat_energy(q0, p0, H, EPS)))
    out.append(scalar("kAdmissibleLhs", H / EPS * sinc(x / 2) * w0))
    out.append(scalar("kPsiMinus2AtH1e4", psi(q0, mpf("1e-4"), EPS, w0) - 2))
    out.append(scalar("kPsiMinus2AtH1e5", psi(q0, mpf("1e-5"), EPS, w0) - 2))

    out.append("\n// Total energy of the initial state for eps in {0.1, 0.01, 0.001}.\n")
    out.append(arr("kEnergyByEps", [energy(*initial(mpf(e)), mpf(e)) for e in ("0.1", "0.01", "0.001")]))

    out.append("\n}  // namespace oracle\n")
    print("".join(out), end="")


if __name__ == "__main__":
    main()
