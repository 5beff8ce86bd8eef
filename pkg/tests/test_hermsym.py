"""Case construction, orbit sampling, moment map and idempotents."""

import numpy as np
import pytest

from pnorbit import UsageError, build_case, idempotents, moment, parse_case
from pnorbit.hermsym import (batch_points, check_group_element,
                             identity_point, random_point, sample_rng,
                             stabilizer_element, torus_fixed_points)


def test_rho_matches_case_matrices(gr24, sp2, bdi5):
    # Gr(2,4): rho = (i/2) diag(1,1,-1,-1)
    assert np.abs(gr24.rho - 0.5j * np.diag([1, 1, -1, -1])).max() == 0.0
    # Sp(n)/U(n): rho = diag((i/2) 1_n, -(i/2) 1_n)
    n = sp2.params["n"]
    expect = np.diag([0.5j] * n + [-0.5j] * n)
    assert np.abs(sp2.rho - expect).max() == 0.0
    # SO(m)/SO(m-2)xSO(2): rho = diag(0, sigma)
    m = bdi5.params["m"]
    expect = np.zeros((m, m))
    expect[m - 2, m - 1], expect[m - 1, m - 2] = 1.0, -1.0
    assert np.abs(bdi5.rho - expect).max() == 0.0


def test_kphi_closed_forms(gr24, sp2, so6u3, bdi5):
    n, k = 4, 2
    expect = np.exp(1j * np.pi * (1 - k / n)) * np.diag([1, 1, -1, -1])
    assert np.abs(gr24.kphi - expect).max() <= 1e-12
    assert np.abs(sp2.kphi - np.diag([1j, 1j, -1j, -1j])).max() <= 1e-12
    nn = so6u3.params["n"]
    kd = np.zeros((2 * nn, 2 * nn))
    kd[:nn, nn:], kd[nn:, :nn] = np.eye(nn), -np.eye(nn)
    assert np.abs(so6u3.kphi - kd).max() <= 1e-12
    assert np.abs(bdi5.kphi - np.diag([1, 1, 1, -1, -1])).max() <= 1e-12


def test_kphi_is_exp_pi_rho_and_involution(all_cases):
    from pnorbit.numkernel import matrix_exp
    for case in all_cases:
        assert np.abs(case.kphi - matrix_exp(np.pi * case.rho)).max() <= 1e-12
        # Ad_K^2 = id on the algebra basis
        k2 = case.kphi @ case.kphi
        for x in case.alg.basis[::5]:
            ad2 = k2 @ x @ np.linalg.inv(k2)
            assert np.abs(ad2 - x).max() <= 1e-11


def test_dimension_counts(all_cases):
    expect = {"Gr(1,2)": 2, "Gr(2,4)": 8, "Sp(2)/U(2)": 6,
              "SO(6)/U(3)": 6, "SO(5)/SO(3)xSO(2)": 6, "SO(6)/SO(4)xSO(2)": 8}
    for case in all_cases:
        assert case.dim_m == expect[case.name]
        assert case.n_eig == case.dim_m // 2


def test_remark_dimension_checks():
    assert build_case("diii", n=4).dim_m == 12   # dim SO(8)/U(4) = 28 - 16
    assert build_case("diii", n=5).dim_m == 20   # dim SO(10)/U(5) = 45 - 25


def test_r_constants(all_cases):
    for case in all_cases:
        assert abs(case.r_plus - case.r_minus - 1j) <= 1e-15
        if case.tag == "aiii":
            k, n = case.params["k"], case.params["n"]
            assert abs(case.r_plus - 1j * (n - k) / n) <= 1e-15
        else:
            assert abs(case.r_plus - 0.5j) <= 1e-15


def test_rho_acts_as_r_on_eigenbundles(gr24, sp2, so6u3):
    for case in (gr24, sp2, so6u3):
        assert np.abs(case.rho @ case.w_plus - case.r_plus * case.w_plus).max() <= 1e-12
        assert np.abs(case.rho @ case.w_minus - case.r_minus * case.w_minus).max() <= 1e-12


def test_j_restricted_to_h_perp_is_ad_rho(all_cases, rng):
    for case in all_cases:
        for _ in range(4):
            x = case.alg.from_coefficients(rng.standard_normal(case.alg.dim))
            ad = lambda y: case.rho @ y - y @ case.rho
            xp = -ad(ad(x))          # projection onto h_perp
            assert np.abs(case.alg.j_apply(xp) - ad(xp)).max() <= 1e-10


def test_random_point_determinism_and_orbit(sp2):
    p1 = random_point(sp2, 11)
    p2 = random_point(sp2, 11)
    assert np.array_equal(p1.g, p2.g)
    assert np.abs(p1.g.conj().T @ p1.g - np.eye(4)).max() <= 1e-11
    s1 = np.linalg.eigvalsh(-1j * p1.m)
    s0 = np.linalg.eigvalsh(-1j * sp2.rho)
    assert np.abs(s1 - s0).max() <= 1e-10


def test_batch_points_chunk_independent(so6u3):
    g, _ = batch_points(so6u3, 5, 0, 8)
    ga, _ = batch_points(so6u3, 5, 0, 3)
    gb, _ = batch_points(so6u3, 5, 3, 5)
    assert np.array_equal(g, np.concatenate([ga, gb]))
    assert np.array_equal(g[2], random_point(so6u3, sample_rng(5, 2)).g)


def test_moment_identity_and_examples(gr24, bdi5):
    assert np.abs(moment(gr24, np.eye(4, dtype=complex)) - gr24.rho).max() == 0
    # AIII: m = i e_+ - i (k/n)
    p = random_point(gr24, 3)
    ep, em = idempotents(gr24, p.g)
    k, n = gr24.params["k"], gr24.params["n"]
    assert np.abs(p.m - (1j * ep - 1j * k / n * np.eye(n))).max() <= 1e-11
    # BDI: m^2 = e_-  (with the sign of rho^2 = -e_- on the 2-plane)
    q = random_point(bdi5, 3)
    _, em = idempotents(bdi5, q.g)
    assert np.abs(q.m @ q.m + em).max() <= 1e-11


def test_idempotents(all_cases, rng):
    for case in all_cases:
        p = random_point(case, 7)
        ep, em = idempotents(case, p.g)
        n = case.alg.size
        assert np.abs(ep @ ep - ep).max() <= 1e-11
        assert np.abs(em @ em - em).max() <= 1e-11
        assert np.abs(ep + em - np.eye(n)).max() <= 1e-11
        assert abs(np.trace(ep).real - case.w_plus.shape[1]) <= 1e-11
        assert abs(np.trace(em).real - case.w_minus.shape[1]) <= 1e-11
        # reconstruction mu = sigma_+ R_+(rho) sigma_+^dag + sigma_- R_-(rho) sigma_-^dag
        sp = p.g @ case.w_plus
        sm = p.g @ case.w_minus
        rp = case.w_plus.conj().T @ case.rho @ case.w_plus
        rm = case.w_minus.conj().T @ case.rho @ case.w_minus
        rebuilt = sp @ rp @ sp.conj().T + sm @ rm @ sm.conj().T
        assert np.abs(rebuilt - p.m).max() <= 1e-11


def test_moment_coset_invariance(all_cases):
    for case in all_cases:
        p = random_point(case, 13)
        for j in range(20):
            h = stabilizer_element(case, sample_rng(99, j))
            gh = p.g @ h
            check_group_element(case, gh, tol=1e-10)
            assert np.abs(moment(case, gh) - p.m).max() <= 1e-10


def test_stabilizer_dimension(all_cases):
    # dim h = dim g - dim M, and every stabilizer basis element commutes with rho
    for case in all_cases:
        assert len(case.stabilizer) == case.alg.dim - case.dim_m
        for s in case.stabilizer:
            assert np.abs(case.rho @ s - s @ case.rho).max() <= 1e-12


def test_torus_fixed_points_are_on_orbit(all_cases):
    for case in all_cases:
        s0 = np.linalg.eigvalsh(-1j * case.rho)
        pts = torus_fixed_points(case)
        assert pts
        for g in pts:
            check_group_element(case, g, tol=1e-12)
            m = moment(case, g)
            assert np.abs(np.linalg.eigvalsh(-1j * m) - s0).max() <= 1e-12


def test_parse_case_roundtrip_and_errors():
    case = parse_case("aiii:k=2,n=4")
    assert case.name == "Gr(2,4)"
    assert parse_case("bdi:m=6").alg.family == "D"
    assert parse_case("bdi:m=7").alg.family == "B"
    for bad in ("aiii:k=9,n=3", "nope:n=2", "ci:n=zero", "diii:n=1", "ci"):
        with pytest.raises(UsageError):
            parse_case(bad)


def test_identity_point(gr12):
    p = identity_point(gr12)
    assert np.abs(p.m - gr12.rho).max() == 0.0


# --- closed-form block parametrizations (optional sanity checks) ----------

def test_ci_compression_block_form(sp2):
    # with g = [[A, B], [-conj(B), conj(A)]], the u(n) block of m is
    # i (A A^dag - 1/2)
    p = random_point(sp2, 19)
    n = sp2.params["n"]
    a = p.g[:n, :n]
    assert np.abs(p.g[n:, n:] - a.conj()).max() <= 1e-12
    assert np.abs(p.g[n:, :n] + p.g[:n, n:].conj()).max() <= 1e-12
    expect = 1j * (a @ a.conj().T - 0.5 * np.eye(n))
    assert np.abs(p.m[:n, :n] - expect).max() <= 1e-12


def test_diii_compression_is_half_block_combination(so6u3):
    p = random_point(so6u3, 19)
    n = so6u3.params["n"]
    x11, x12 = p.m[:n, :n], p.m[:n, n:]
    x21, x22 = p.m[n:, :n], p.m[n:, n:]
    b0 = so6u3.w_plus.conj().T @ p.m @ so6u3.w_plus
    assert np.abs(b0 - (x11 + x22 + 1j * (x12 - x21)) / 2).max() <= 1e-12


def test_bdi_b1_is_corner_determinant(bdi5):
    # the so(2) hamiltonian b_1 equals det of the bottom-right 2x2 of g
    from pnorbit import chain_spectrum
    p = random_point(bdi5, 19)
    amb = bdi5.params["m"]
    cs = chain_spectrum(bdi5, p.m)
    corner = p.g[amb - 2:, amb - 2:].real
    assert abs(cs.b[0] - np.linalg.det(corner)) <= 1e-12
