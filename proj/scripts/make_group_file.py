#!/usr/bin/env python3
"""Generate the example group file data/genus2_octagon.json.

Builds a free rank-4 lattice whose Dirichlet region centered at i is an ideal
octagon with opposite sides paired (genus-2 surface with one cusp).  Side
pairings are reconstructed from the prescribed isometric circles, so the
polygon axioms hold by construction; Newton iteration tunes the three free
arc widths until the vertex cycle is parabolic and two generator traces hit
5/2 and 3.  A trace of 5/2 is not an algebraic integer, so the group is not
arithmetic.

Usage: python3 scripts/make_group_file.py [out.json]
"""
import json
import sys
from mpmath import mp, mpf, mpc, cos, sin, pi, sqrt, exp, arg, fabs, conj, re, im, matrix, mnorm

mp.prec = 360

N_SIDES = 8


def vertex_angles(gaps):
    """Vertex t-coordinates (point = e^{-it}), vertex 1 at t=0."""
    ts = [mpf(0)]
    for g in gaps[:-1]:
        ts.append(ts[-1] + g)
    return ts


def ortho_center(p, q):
    """Center of the circle through boundary points p, q orthogonal to the unit circle."""
    denom = 1 + re(p * conj(q))
    return (p + q) / denom


def pair_map(om_src, om_dst, rho):
    """SU(1,1) element F with I_F = circle(om_src, rho), I_{F^-1} = circle(om_dst, rho)."""
    babs = 1 / rho
    chi = arg(-om_src / conj(om_dst))
    beta = babs * exp(mpc(0, -chi / 2))
    alpha = om_dst * beta
    return alpha, beta


def apply_disc(F, z):
    alpha, beta = F
    return (alpha * z + conj(beta)) / (beta * z + conj(alpha))


def inv_disc(F):
    alpha, beta = F
    return conj(alpha), -beta


def to_halfplane(F):
    """Real SL(2) matrix of the conjugated map phi^-1 . F . phi."""
    alpha, beta = F
    a = re(alpha) + re(beta)
    d = re(alpha) - re(beta)
    b = im(alpha) + im(beta)
    c = im(beta) - im(alpha)
    return matrix([[a, b], [c, d]])


def build(gaps):
    """gaps: 8 arc widths (opposite equal). Returns per-arc data and pairing maps."""
    ts = vertex_angles(gaps)
    # vertex i at t_i; arc k spans [t_k, t_k + g_k); endpoints xi^L = e^{-i t_k}, xi^R = e^{-i t_{k+1}}
    xs = [exp(mpc(0, -t)) for t in ts]
    xi_L = xs
    xi_R = [xs[(k + 1) % N_SIDES] for k in range(N_SIDES)]
    centers = [ortho_center(xi_L[k], xi_R[k]) for k in range(N_SIDES)]
    rhos = [sqrt(abs(centers[k]) ** 2 - 1) for k in range(N_SIDES)]
    # F for arc k: the generator owning letter k, with I_{F_khat} = circle of side s_k.
    # sigma(k) = k+4. F_k := M mapping complement-of-arc(k+4) onto arc(k):
    # I_{F_k} = circle(s_{k+4}), I_{F_k^-1} = circle(s_k).
    F = []
    for k in range(N_SIDES):
        kk = (k + 4) % N_SIDES
        F.append(pair_map(centers[kk], centers[k], rhos[kk]))
    return ts, xi_L, xi_R, centers, rhos, F


def cycle_matrix(F):
    """Vertex-cycle transformation at vertex 1 (fixed point should be e^{0} = disc 1)."""
    # walk rule: at vertex v = xi^L of arc i, apply F owning source-arc i ...
    # M_{i,sigma(i)} maps xi^L_i -> xi^R_{sigma(i)}; that map is F_{sigma(i)} here
    # (source arc i, target arc sigma(i)).  Next arc index: sigma(i)+1.
    prod = (mpc(1), mpc(0))  # identity in SU(1,1): alpha=1, beta=0
    i = 0  # start at vertex v_1 = xi^L of arc 1 (index 0)
    for _ in range(N_SIDES):
        tgt = (i + 4) % N_SIDES
        M = F[tgt]  # maps arc i's xi^L to arc tgt's xi^R
        a1, b1 = M
        a0, b0 = prod
        prod = (a1 * a0 + conj(b1) * b0, b1 * a0 + conj(a1) * b0)
        i = (tgt + 1) % N_SIDES
    if i != 0:
        raise RuntimeError("vertex cycle does not close combinatorially")
    return prod


def gaps_of(g1):
    h = (pi - g1) / 3
    return [g1, h, h, h] * 2


def trace_residual(g1):
    """|tr F_a| - 5/2 as a function of the first arc width.  The vertex-cycle
    parabolicity holds identically along the gap family (checked separately), and
    the trace of each pairing depends only on its own arc width."""
    ts, xi_L, xi_R, centers, rhos, F = build(gaps_of(g1))
    tr1 = to_halfplane(F[0])
    return fabs(tr1[0, 0] + tr1[1, 1]) - mpf(5) / 2


def solve_g1(lo=mpf(1), hi=mpf("2.6"), tol=None):
    tol = tol or mpf(2) ** (-330)
    rlo, rhi = trace_residual(lo), trace_residual(hi)
    if rlo * rhi > 0:
        raise SystemExit("bisection bracket invalid: %s %s" % (rlo, rhi))
    for _ in range(500):
        mid = (lo + hi) / 2
        rm = trace_residual(mid)
        if fabs(rm) < tol:
            return mid
        if rm * rlo < 0:
            hi = mid
        else:
            lo, rlo = mid, rm
    return (lo + hi) / 2


def fmt(v, digits=90):
    return mp.nstr(v, digits, strip_zeros=False)


def main():
    out = sys.argv[1] if len(sys.argv) > 1 else "data/genus2_octagon.json"
    g1 = solve_g1()
    gaps = gaps_of(g1)
    ts, xi_L, xi_R, centers, rhos, F = build(gaps)

    # checks
    for k in range(N_SIDES):
        kk = (k + 4) % N_SIDES
        # F_k maps s_{khat} = side of arc k+4 onto s_k: xi^L_{k+4} -> xi^R_k etc.
        img1 = apply_disc(F[k], xi_L[kk])
        img2 = apply_disc(F[k], xi_R[kk])
        assert fabs(img1 - xi_R[k]) < mpf(2) ** (-250), (k, "L->R", fabs(img1 - xi_R[k]))
        assert fabs(img2 - xi_L[k]) < mpf(2) ** (-250), (k, "R->L")
        al, be = F[k]
        assert fabs(abs(al) ** 2 - abs(be) ** 2 - 1) < mpf(2) ** (-250)
    cyc = cycle_matrix(F)
    trc = 2 * re(cyc[0])
    assert fabs(fabs(trc) - 2) < mpf(2) ** (-250)

    # cusp: vertex 1 is disc point 1 <-> halfplane infinity; cycle map fixes it,
    # halfplane form is z -> z + mu (up to sign)
    ch = to_halfplane(cyc)
    assert fabs(ch[1, 0]) < mpf(2) ** (-200), "cycle not parabolic at infinity"
    mu = fabs(ch[0, 1] / ch[0, 0])

    labels = ["a", "b", "c", "d", "A", "B", "C", "D"]
    letters = []
    for k in range(N_SIDES):
        H = to_halfplane(F[k])
        letters.append(
            {
                "label": labels[k],
                "inverse": labels[(k + 4) % N_SIDES],
                "generator_halfplane": [fmt(H[0, 0]), fmt(H[0, 1]), fmt(H[1, 0]), fmt(H[1, 1])],
            }
        )
    doc = {
        "name": "genus2-octagon (non-arithmetic: tr a = 5/2)",
        "d": 4,
        "letters": letters,
        "cusps": [{"A": ["1", "0", "0", "1"], "mu": fmt(mu)}],
        "precision_bits": 256,
    }
    with open(out, "w") as f:
        json.dump(doc, f, indent=1)
    print("gaps:", [mp.nstr(g, 20) for g in gaps[:4]])
    print("mu:", mp.nstr(mu, 30))
    print("traces:", [mp.nstr(to_halfplane(F[k])[0, 0] + to_halfplane(F[k])[1, 1], 10) for k in range(4)])
    print("wrote", out)


if __name__ == "__main__":
    main()
