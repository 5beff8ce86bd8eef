"""Bruhat and KKS Poisson matrices in moment coordinates, and the pencil.

Coordinates are F_a(m) = <m, X_a> over the orthonormal algebra basis.  The
KKS (Lie-Poisson) matrix is PK = s_K <m, [X_a, X_b]>; the Bruhat matrix is

    P0[a,b] = -s_0 Im Tr( g-part(Ad_{g^-1} C_+(xi_a)) . b_+-part(Ad_{g^-1} C_+(xi_b)) )

with xi_a = [m, X_a] (the right-translated differential of F_a).  The signs
(s_K, s_0) are fixed once by the discrete calibration in `verify`; the
calibrated global convention is (+1, -1).

The Nijenhuis operator acts on tangent coefficient vectors as P0 . PK^+,
and independently in closed form as N v = [-J(v), m] + v.
"""

from dataclasses import dataclass, field

import numpy as np

from . import spectrum as _spectrum
from .errors import ConventionError, NumericalError
from .numkernel import DEFAULT_FD_STEP, expm_antihermitian

CALIBRATED_SIGNS = (1, -1)      # (s_K, s_0); see verify.calibrate


def kks_raw(case, m):
    """K_ab = <m, [X_a, X_b]>, the unsigned Lie-Poisson matrix."""
    basis = case.alg.basis
    mx = np.einsum("ij,ajk->aik", m, basis)
    p = np.einsum("aij,bji->ab", mx, basis)
    return (p.T - p).real


def kks_matrix(case, m, s_k=CALIBRATED_SIGNS[0]):
    return s_k * kks_raw(case, m)


def bruhat_matrix(case, g, s_0=CALIBRATED_SIGNS[1]):
    """The Bruhat-Poisson matrix at the coset of g (vectorized build)."""
    alg = case.alg
    basis = alg.basis
    m = g @ case.rho @ g.conj().T
    xi = (np.einsum("ij,ajk->aik", m, basis)
          - np.einsum("aij,jk->aik", basis, m))
    coef = -np.einsum("aij,bji->ab", xi, basis).real
    c_xi = 1j * xi + alg.j_apply_stack(coef)
    z = np.einsum("ji,ajk,kl->ail", g.conj(), c_xi, g)
    anti = (z - np.conj(np.swapaxes(z, 1, 2))) / 2
    herm = (z + np.conj(np.swapaxes(z, 1, 2))) / 2j
    coef_b = -np.einsum("aij,bji->ab", herm, basis).real
    g_part = anti - alg.j_apply_stack(coef_b)
    b_part = z - g_part
    return -s_0 * np.einsum("aij,bji->ab", g_part, b_part).imag


@dataclass
class BracketPair:
    """Both Poisson matrices at one orbit point, with tangent data."""

    point: object                   # hermsym.OrbitPoint
    p0: np.ndarray
    pk: np.ndarray
    k_raw: np.ndarray = field(repr=False)
    tangent: np.ndarray = field(repr=False)   # (dim, 2 n_eig) orthonormal
    signs: tuple = CALIBRATED_SIGNS
    k_pinv: np.ndarray = field(default=None, repr=False)

    @property
    def case(self):
        return self.point.case

    def __post_init__(self):
        if self.k_pinv is None:
            self.k_pinv = np.linalg.pinv(self.k_raw, rcond=1e-9)

    def pk_pinv(self):
        return self.signs[0] * self.k_pinv

    def coefficient_vector(self, v):
        return self.case.alg.coefficients(v).real


def build_pair(case, g, signs=CALIBRATED_SIGNS, validate=True):
    from .hermsym import OrbitPoint
    m = g @ case.rho @ g.conj().T
    k = kks_raw(case, m)
    p0 = bruhat_matrix(case, g, signs[1])
    u, s, _ = np.linalg.svd(k)
    rank = int((s > 1e-9 * s[0]).sum())
    if rank != case.dim_m:
        raise NumericalError(f"KKS rank {rank} != dim M = {case.dim_m}")
    tangent = u[:, :rank]
    pair = BracketPair(OrbitPoint(case, g, m), p0, signs[0] * k, k, tangent, signs)
    if validate:
        asym = np.abs(p0 + p0.T).max()
        if asym > 1e-11 * max(1.0, np.abs(p0).max()):
            raise ConventionError(f"Bruhat matrix antisymmetry residual {asym:.3e}")
        proj = p0 - tangent @ (tangent.T @ p0)
        if np.abs(proj).max() > 1e-9 * max(1.0, np.abs(p0).max()):
            raise ConventionError("range(P0) not contained in range(PK)")
    return pair


# ---------------------------------------------------------------------------
# Nijenhuis operator, two routes
# ---------------------------------------------------------------------------

def tangent_residual(pair, v):
    t = pair.coefficient_vector(v)
    return np.linalg.norm(t - pair.tangent @ (pair.tangent.T @ t))


def nijenhuis_apply(pair, v, check=True, tol=1e-9):
    """Pencil route: N v with t(Nv) = P0 PK^+ t(v); v must be tangent."""
    t = pair.coefficient_vector(v)
    if check:
        res = np.linalg.norm(t - pair.tangent @ (pair.tangent.T @ t))
        if res > tol * max(1.0, np.linalg.norm(t)):
            raise ConventionError(f"vector is not tangent: residual {res:.3e}")
    return pair.case.alg.from_coefficients(pair.p0 @ (pair.pk_pinv() @ t))


def nijenhuis_formula(case, m, v):
    """Closed-form route: N v = [-J(v), m] + v."""
    jv = case.alg.j_apply(v)
    return -(jv @ m - m @ jv) + v


def nijenhuis_restricted(pair):
    """Matrix of N on the tangent basis (2 n_eig square)."""
    b = pair.tangent
    pk_t = b.T @ pair.pk @ b
    p0_t = b.T @ pair.p0 @ b
    return p0_t @ np.linalg.inv(pk_t)


def pencil_eigenvalues(pair, imag_tol=1e-8):
    """All 2 n_eig eigenvalues of the tangent-restricted N, sorted real parts."""
    nt = nijenhuis_restricted(pair)
    ev = np.linalg.eigvals(nt)
    scale = max(1.0, np.abs(ev).max())
    im = np.abs(ev.imag).max()
    if im > imag_tol * scale:
        raise NumericalError(f"pencil eigenvalues not real: max imag {im:.3e}")
    return np.sort(ev.real), im


def pencil_spectrum(pair, pair_tol=1e-8, imag_tol=1e-8):
    """De-doubled pencil eigenvalues, ascending (length n_eig)."""
    ev, _ = pencil_eigenvalues(pair, imag_tol)
    gap = np.abs(ev[0::2] - ev[1::2]).max()
    if gap > pair_tol:
        raise NumericalError(f"eigenvalue pairing failed: gap {gap:.3e}")
    return (ev[0::2] + ev[1::2]) / 2


# ---------------------------------------------------------------------------
# finite differences along orbit flows
# ---------------------------------------------------------------------------

def flow_points(case, g, h=DEFAULT_FD_STEP):
    """Perturbed group elements exp(+-h X_a) g for every basis direction."""
    steps = expm_antihermitian(h * case.alg.basis)
    back = np.conj(np.swapaxes(steps, 1, 2))
    return np.einsum("aij,jk->aik", steps, g), np.einsum("aij,jk->aik", back, g)


def directional_derivatives(case, g, funcs, h=DEFAULT_FD_STEP):
    """fd derivatives of point functions along every fundamental flow.

    funcs maps (g, m) -> scalar or vector; returns an array of shape
    (dim, *value_shape).
    """
    fwd, bwd = flow_points(case, g, h)
    rows = []
    for gp, gm in zip(fwd, bwd):
        fp = np.asarray(funcs(gp, gp @ case.rho @ gp.conj().T))
        fm = np.asarray(funcs(gm, gm @ case.rho @ gm.conj().T))
        rows.append((fp - fm) / (2 * h))
    out = np.stack(rows)
    if not np.all(np.isfinite(out)):
        raise NumericalError("non-finite fd derivative")
    return out


def coefficients_of_differential(pair, dvec):
    """Solve df = sum_a c_a dF_a from the flow derivatives dvec.

    Flow derivatives satisfy dvec = K^T c = -K c, so c = -K^+ dvec (any
    kernel component is annihilated by both brackets).
    """
    return -pair.k_pinv @ dvec


def bracket_matrix(pair, which):
    if which == "kks":
        return pair.pk
    if which == "bruhat":
        return pair.p0
    if isinstance(which, tuple) and which[0] == "pencil":
        return pair.p0 + which[1] * pair.pk
    raise ConventionError(f"unknown bracket selector {which!r}")


def bracket_of_functions(pair, f1, f2, which="kks", h=DEFAULT_FD_STEP):
    """{f1, f2} under the chosen bracket, via fd gradients."""
    case = pair.case
    d = directional_derivatives(case, pair.point.g,
                                lambda g, m: np.array([f1(g, m), f2(g, m)]), h)
    c1 = coefficients_of_differential(pair, d[:, 0])
    c2 = coefficients_of_differential(pair, d[:, 1])
    return float(c1 @ bracket_matrix(pair, which) @ c2)


def gradient_bracket(pair, dvecs, which):
    """Pairwise brackets of functions given their flow-derivative vectors."""
    c = -pair.k_pinv @ np.asarray(dvecs).T          # (dim, nfuncs)
    p = bracket_matrix(pair, which)
    return c.T @ p @ c


def jacobi_residual(case, g, t, triples, signs=CALIBRATED_SIGNS,
                    h=DEFAULT_FD_STEP):
    """max |{{F_a,F_b},F_c} + cyclic| under pi_t over coordinate triples.

    t = 'kks' checks the pure Lie-Poisson bracket (the t -> infinity limit
    of the pencil).
    """
    pair = build_pair(case, g, signs)
    needed = sorted({i for tr in triples for i in tr})

    def entries(gg, mm):
        if t == "kks":
            pt = kks_matrix(case, mm, signs[0])
        else:
            pt = (bruhat_matrix(case, gg, signs[1])
                  + t * kks_matrix(case, mm, signs[0]))
        return pt[np.ix_(needed, needed)].ravel()

    dvec = directional_derivatives(case, g, entries, h)      # (dim, k*k)
    k = len(needed)
    dvec = dvec.reshape(len(dvec), k, k)
    pos = {i: j for j, i in enumerate(needed)}
    pt0 = bracket_matrix(pair, "kks" if t == "kks" else ("pencil", t))
    worst = 0.0
    for (a, b, c) in triples:
        total = 0.0
        for (x, y, z) in ((a, b, c), (b, c, a), (c, a, b)):
            ch = coefficients_of_differential(pair, dvec[:, pos[x], pos[y]])
            total += float(ch @ pt0[:, z])
        worst = max(worst, abs(total))
    return worst


# ---------------------------------------------------------------------------
# Lenard recursion and eigenvalue equation
# ---------------------------------------------------------------------------

def _nstar_coefficient_matrix(pair):
    """B with (N^* df)(flows) = B^T Df for flow-derivative vectors Df."""
    k = pair.k_raw
    return pair.k_pinv @ (pair.p0 @ (pair.pk_pinv() @ k))


def traces_of_powers(case, g, k_max, signs=CALIBRATED_SIGNS):
    """I_k = (1/k) Tr N^k for k = 1..k_max at the point g."""
    pair = build_pair(case, g, signs, validate=False)
    nt = nijenhuis_restricted(pair)
    out = []
    acc = np.eye(nt.shape[0])
    for k in range(1, k_max + 1):
        acc = acc @ nt
        out.append(np.trace(acc).real / k)
    return np.array(out)


def lenard_check(case, g, k_max, signs=CALIBRATED_SIGNS, h=DEFAULT_FD_STEP):
    """Residuals of dI_{k+1} = N^* dI_k, plus the trace identity gap.

    Returns dict with per-step residuals (relative to the gradient scale)
    and |Tr N - 2 sum(lambda)|.
    """
    pair = build_pair(case, g, signs)
    dvec = directional_derivatives(
        case, g, lambda gg, mm: traces_of_powers(case, gg, k_max, signs), h)
    bmat = _nstar_coefficient_matrix(pair)
    res = []
    for k in range(k_max - 1):
        lhs = dvec[:, k + 1]
        rhs = bmat.T @ dvec[:, k]
        res.append(float(np.linalg.norm(lhs - rhs)
                         / max(1.0, np.linalg.norm(lhs))))
    lam = pencil_spectrum(pair)
    trace_gap = abs(np.trace(nijenhuis_restricted(pair)).real - 2 * lam.sum())
    return {"steps": res, "max": max(res) if res else 0.0, "trace_gap": trace_gap}


def nstar_eigen_residual(case, g, signs=CALIBRATED_SIGNS, h=DEFAULT_FD_STEP):
    """max_i |N^* d(lambda_i) - lambda_i d(lambda_i)| over free eigenvalues."""
    pair = build_pair(case, g, signs)
    m = pair.point.m
    lam = _spectrum.chain_free_vector(case, m)
    dvec = directional_derivatives(
        case, g, lambda gg, mm: _spectrum.chain_free_vector(case, mm), h)
    bmat = _nstar_coefficient_matrix(pair)
    worst = 0.0
    for i, li in enumerate(lam):
        resid = bmat.T @ dvec[:, i] - li * dvec[:, i]
        worst = max(worst, float(np.linalg.norm(resid)
                                 / max(1.0, np.linalg.norm(dvec[:, i]))))
    return worst


# ---------------------------------------------------------------------------
# contravariant connection (both displays)
# ---------------------------------------------------------------------------

def connection_check(case, g, v):
    """Residual between the full connection formula (-J(v) + [m, v]) g and
    the eigenbundle block form -/+ C_pm(v) sigma_pm.

    bdi lacks the block form; the check degenerates there and is flagged.
    """
    alg = case.alg
    m = g @ case.rho @ g.conj().T
    jv = alg.j_apply(v)
    full = (-jv + (m @ v - v @ m)) @ g
    if case.tag == "bdi":
        return 0.0, False
    cp = 1j * v + jv
    cm = 1j * v - jv
    sp = g @ case.w_plus
    sm = g @ case.w_minus
    res = max(np.abs(full @ case.w_plus + cp @ sp).max(),
              np.abs(full @ case.w_minus - cm @ sm).max())
    return float(res), True
