"""Chain-of-subalgebras eigenvalues, interlacing and polytope membership.

For the su/sp/so-unitary cases the chain data is the Gelfand-Tsetlin
pattern: ascending spectra lt^(r) of nested upper-left minors of the
level-0 block (m itself for Grassmannians, the V+ compression W^dag m W
otherwise), mapped affinely to Nijenhuis eigenvalues lam = -2*lt + offset.

For the real-Grassmannian (bdi) cases the data is the (a_k, b_k) family:
+-i a_k is the rank-2 spectrum of the upper-left so-block, b_k the single
off-diagonal entry of the split-off so(2), and
lam^(k)_pm = +-a_k - sum_{j<=k} b_j + 1.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import ConventionError

GT_TAGS = ("aiii", "ci", "diii")


def level0_block(case, m):
    """The level-0 chain block: m itself (aiii) or the V+ compression."""
    if case.tag == "aiii":
        return m
    return case.w_plus.conj().T @ np.asarray(m) @ case.w_plus


def eigenvalue_map_constants(case):
    """(slope, offset) of the eigenvalue map lam = slope*lt + offset."""
    return -2.0, case.map_offset


def top_row_constants(case):
    """Exact constant top row (ascending) for the aiii pattern."""
    k, n = case.params["k"], case.params["n"]
    return np.array([-k / n] * (n - k) + [(n - k) / n] * k)


def free_masks(case):
    """Boolean masks (one per chain row) marking the free coordinates.

    Frozen coordinates are pinned by the exact multiplicity structure of
    the case: coinciding interlacing bounds (aiii), the even-multiplicity
    pairing plus the odd-size constant (diii).  bdi coordinates are all
    free and handled separately.
    """
    if case.tag == "aiii":
        n = case.params["n"]
        top = top_row_constants(case)
        masks = [np.zeros(n, dtype=bool)]
        for r in range(1, n):
            masks.append(np.array([top[i] != top[i + r] for i in range(n - r)]))
        return masks
    if case.tag == "ci":
        n = case.params["n"]
        return [np.ones(n - r, dtype=bool) for r in range(n)]
    if case.tag == "diii":
        n = case.params["n"]
        masks = []
        m0 = np.zeros(n, dtype=bool)
        m0[0:2 * (n // 2):2] = True          # one representative per pair
        masks.append(m0)
        if n >= 2:
            m1 = np.zeros(n - 1, dtype=bool)
            m1[1::2] = True                  # entries between the pairs
            masks.append(m1)
        for r in range(2, n):
            masks.append(np.ones(n - r, dtype=bool))
        return masks
    raise ConventionError(f"free_masks: not a GT-chain case: {case.tag}")


def free_coordinates(case, top_row=None):
    """Flattened free mask; for aiii an explicit top row may be supplied."""
    if case.tag == "bdi":
        return np.ones(case.n_eig, dtype=bool)
    masks = free_masks(case)
    if top_row is not None and case.tag == "aiii":
        n = len(top_row)
        masks = [np.zeros(n, dtype=bool)] + [
            np.array([top_row[i] != top_row[i + r] for i in range(n - r)])
            for r in range(1, n)
        ]
    return np.concatenate(masks)


@dataclass
class ChainSpectrum:
    """Labeled chain eigenvalue data at one orbit point."""

    case: object
    kind: str                       # 'gt' or 'ab'
    rows: list = None               # ascending lt per level (gt)
    levels: list = None             # level label per row
    masks: list = None
    a: np.ndarray = None            # bdi: nonneg block values (last signed if even)
    b: np.ndarray = None            # bdi: so(2) entries
    mapped: list = field(default=None, repr=False)

    def __post_init__(self):
        slope, offset = eigenvalue_map_constants(self.case)
        if self.kind == "gt":
            self.mapped = [slope * r + offset for r in self.rows]
        else:
            s = np.cumsum(self.b)
            lam, labels = [], []
            n_pair = len(self.a)
            for k in range(1, n_pair + 1):
                lam += [self.a[k - 1] - s[k - 1] + 1.0,
                        -self.a[k - 1] - s[k - 1] + 1.0]
                labels += [f"l{k}+", f"l{k}-"]
            if len(self.b) == n_pair + 1:       # odd ambient size
                lam.append(1.0 - s[-1])
                labels.append(f"l{n_pair + 1}")
            self.mapped = np.array(lam)
            self._ab_labels = labels

    def free_values(self):
        """Sorted mapped free eigenvalues (length n_eig)."""
        if self.kind == "ab":
            return np.sort(self.mapped)
        vals = np.concatenate([mr[mk] for mr, mk in zip(self.mapped, self.masks)])
        return np.sort(vals)

    def labeled_entries(self, free_only=True):
        """(label, mapped value) pairs; gt labels are l<level>_<index>."""
        out = []
        if self.kind == "ab":
            return list(zip(self._ab_labels, self.mapped))
        for lv, mr, mk in zip(self.levels, self.mapped, self.masks):
            for i, val in enumerate(mr):
                if mk[i] or not free_only:
                    out.append((f"l{lv}_{i + 1}", val))
        return out

    def raw_labeled(self):
        if self.kind == "ab":
            return ([(f"a{k+1}", v) for k, v in enumerate(self.a)]
                    + [(f"b{k+1}", v) for k, v in enumerate(self.b)])
        return [(f"l{lv}_{i + 1}", val)
                for lv, row in zip(self.levels, self.rows)
                for i, val in enumerate(row)]


def chain_spectrum(case, m, validate=True, slack=1e-9):
    """Extract the chain data at the orbit point m."""
    if case.tag in GT_TAGS:
        b0 = level0_block(case, m)
        nb = b0.shape[0]
        rows = [np.linalg.eigvalsh(-1j * b0[: nb - r, : nb - r]) for r in range(nb)]
        levels = list(range(nb)) if case.tag == "aiii" else list(range(1, nb + 1))
        cs = ChainSpectrum(case, "gt", rows=rows, levels=levels,
                           masks=free_masks(case))
    else:
        a, b = _chain_ab(case, m)
        cs = ChainSpectrum(case, "ab", a=a, b=b)
    if validate:
        viol = interlace_violation(cs)
        if viol > slack:
            raise ConventionError(
                f"interlacing violated by {viol:.3e} at a point of {case.name}")
    return cs


def _chain_ab(case, m):
    amb = case.alg.size
    nhalf = amb // 2
    m = np.asarray(m)
    if np.abs(m.imag).max() > 1e-9:
        raise ConventionError("bdi moment matrix must be real")
    mr = m.real
    a, b = [], []
    for k in range(1, nhalf + (amb % 2)):
        size = amb - 2 * k
        if size >= 3:
            w = np.linalg.eigvalsh(-1j * mr[:size, :size].astype(complex))
            a.append(max(w[-1], 0.0))
        elif size == 2:
            # final even step: keep the sign (smooth global coordinate)
            a.append(mr[0, 1])
        b.append(mr[amb - 2 * k, amb - 2 * k + 1])
    return np.array(a), np.array(b)


# ---------------------------------------------------------------------------
# inequalities
# ---------------------------------------------------------------------------

def gt_interlace_check(parent, child, slack=0.0):
    """child interlaces parent: parent_i <= child_i <= parent_{i+1} (+slack).

    Returns (ok, margin) where margin is the worst violation (<= 0 if ok
    with room to spare).
    """
    parent = np.asarray(parent, float)
    child = np.asarray(child, float)
    if len(child) != len(parent) - 1:
        raise ConventionError("child row must be one shorter than parent")
    lo = (parent[:-1] - child).max() if len(child) else -np.inf
    hi = (child - parent[1:]).max() if len(child) else -np.inf
    margin = max(lo, hi)
    return margin <= slack, margin


def interlace_violation(cs):
    """Worst interlacing/cone violation of a ChainSpectrum (<=0 means ok)."""
    if cs.kind == "gt":
        worst = -np.inf
        rows = cs.rows
        if cs.case.tag == "aiii":
            rows = [top_row_constants(cs.case)] + rows[1:]
        for parent, child in zip(rows[:-1], rows[1:]):
            _, margin = gt_interlace_check(parent, child)
            worst = max(worst, margin)
        return worst
    # bdi cone with a_0 = 1
    aa = np.abs(np.concatenate([[1.0], cs.a, [0.0] if len(cs.b) > len(cs.a) else []]))
    worst = -np.inf
    for k in range(len(cs.b)):
        worst = max(worst, aa[k + 1] - aa[k])
        worst = max(worst, abs(cs.b[k]) - (aa[k] - aa[k + 1]))
    return worst


def polytope_membership(case, cs, slack=1e-9):
    """Case polytope test; returns (ok, margins dict)."""
    margins = {}
    margins["interlacing"] = interlace_violation(cs)
    if case.tag == "ci":
        lt0 = cs.rows[0]
        margins["lower_bound"] = float((-0.5 - lt0).max())
        margins["upper_bound"] = float((lt0 - 0.5).max())
    if case.tag == "diii":
        lt0 = cs.rows[0]
        n = case.params["n"]
        pair_gap = np.abs(lt0[0:2 * (n // 2):2] - lt0[1:2 * (n // 2):2])
        margins["pairing"] = float(pair_gap.max())
    ok = all(v <= slack for v in margins.values())
    return ok, margins


# ---------------------------------------------------------------------------
# batched evaluation (mass sampling)
# ---------------------------------------------------------------------------

def chain_batch(case, ms):
    """Chain rows for a stack of orbit points; returns a list of dicts
    mirroring chain_spectrum but vectorized over the first axis."""
    ms = np.asarray(ms)
    out = []
    if case.tag in GT_TAGS:
        if case.tag == "aiii":
            b0 = ms
        else:
            b0 = np.einsum("ij,sjk,kl->sil", case.w_plus.conj().T, ms, case.w_plus)
        nb = b0.shape[1]
        rows = [np.linalg.eigvalsh(-1j * b0[:, : nb - r, : nb - r]) for r in range(nb)]
        return {"kind": "gt", "rows": rows}
    amb = case.alg.size
    mr = ms.real
    a, b = [], []
    for k in range(1, amb // 2 + (amb % 2)):
        size = amb - 2 * k
        if size >= 3:
            w = np.linalg.eigvalsh(-1j * mr[:, :size, :size].astype(complex))
            a.append(np.maximum(w[:, -1], 0.0))
        elif size == 2:
            a.append(mr[:, 0, 1])
        b.append(mr[:, amb - 2 * k, amb - 2 * k + 1])
    return {"kind": "ab", "a": np.stack(a, axis=1), "b": np.stack(b, axis=1)}


def batch_free_values(case, batch):
    """Sorted mapped free eigenvalues per sample, plus per-label columns."""
    slope, offset = eigenvalue_map_constants(case)
    if batch["kind"] == "gt":
        masks = free_masks(case)
        levels = (list(range(len(batch["rows"]))) if case.tag == "aiii"
                  else list(range(1, len(batch["rows"]) + 1)))
        cols, labels = [], []
        for lv, row, mk in zip(levels, batch["rows"], masks):
            for i in range(row.shape[1]):
                if mk[i]:
                    cols.append(slope * row[:, i] + offset)
                    labels.append(f"l{lv}_{i + 1}")
        data = np.stack(cols, axis=1)
        return labels, data, np.sort(data, axis=1)
    a, b = batch["a"], batch["b"]
    s = np.cumsum(b, axis=1)
    cols, labels = [], []
    for k in range(a.shape[1]):
        cols.append(a[:, k] - s[:, k] + 1.0)
        labels.append(f"l{k+1}+")
        cols.append(-a[:, k] - s[:, k] + 1.0)
        labels.append(f"l{k+1}-")
    if b.shape[1] == a.shape[1] + 1:
        cols.append(1.0 - s[:, -1])
        labels.append(f"l{a.shape[1]+1}")
    data = np.stack(cols, axis=1)
    return labels, data, np.sort(data, axis=1)


def batch_violations(case, batch, slack=1e-9):
    """Count polytope/interlacing violations over a batch (should be 0)."""
    if batch["kind"] == "gt":
        rows = batch["rows"]
        if case.tag == "aiii":
            top = top_row_constants(case)
            rows = [np.broadcast_to(top, rows[0].shape)] + rows[1:]
        bad = np.zeros(rows[0].shape[0], dtype=bool)
        for parent, child in zip(rows[:-1], rows[1:]):
            bad |= (parent[:, :-1] - child > slack).any(axis=1)
            bad |= (child - parent[:, 1:] > slack).any(axis=1)
        if case.tag == "ci":
            bad |= ((-0.5 - rows[0]) > slack).any(axis=1)
            bad |= ((rows[0] - 0.5) > slack).any(axis=1)
        if case.tag == "diii":
            n = case.params["n"]
            lt0 = rows[0]
            bad |= (np.abs(lt0[:, 0:2 * (n // 2):2] - lt0[:, 1:2 * (n // 2):2])
                    > slack).any(axis=1)
        return int(bad.sum())
    a, b = batch["a"], batch["b"]
    aa = np.abs(np.concatenate([np.ones((a.shape[0], 1)), np.abs(a),
                                np.zeros((a.shape[0], 1)) if b.shape[1] > a.shape[1]
                                else np.zeros((a.shape[0], 0))], axis=1))
    bad = np.zeros(a.shape[0], dtype=bool)
    for k in range(b.shape[1]):
        bad |= (aa[:, k + 1] - aa[:, k]) > slack
        bad |= (np.abs(b[:, k]) - (aa[:, k] - aa[:, k + 1])) > slack
    return int(bad.sum())


# ---------------------------------------------------------------------------
# eigenvalue functions and regularity
# ---------------------------------------------------------------------------

def free_labels(case):
    if case.tag in GT_TAGS:
        masks = free_masks(case)
        lv0 = 0 if case.tag == "aiii" else 1
        return [f"l{r + lv0}_{i + 1}"
                for r, mk in enumerate(masks) for i in range(len(mk)) if mk[i]]
    amb = case.alg.size
    n_pair = amb // 2 - 1
    labels = []
    for k in range(1, n_pair + 1):
        labels += [f"l{k}+", f"l{k}-"]
    if amb % 2:
        labels.append(f"l{n_pair + 1}")
    return labels


def chain_free_vector(case, m):
    """All free mapped eigenvalues in fixed label order (for fd gradients)."""
    cs = chain_spectrum(case, m, validate=False)
    if cs.kind == "ab":
        return np.asarray(cs.mapped, float)
    slope, offset = eigenvalue_map_constants(case)
    vals = []
    for row, mk in zip(cs.rows, cs.masks):
        vals.extend(slope * row[mk] + offset)
    return np.array(vals)


def gap_regularity(case, cs, gap=1e-3):
    """Smallest separation controlling smoothness of the labeled eigenvalue
    functions; points below `gap` sit near a Weyl-chamber wall."""
    if cs.kind == "ab":
        # |.|-extraction kinks at a_k = 0; the signed final even value is a
        # plain matrix entry and stays smooth.
        amb = case.alg.size
        n_abs = len(cs.a) if amb % 2 else len(cs.a) - 1
        vals = np.abs(cs.a[:n_abs]) if n_abs else np.array([np.inf])
        return float(vals.min()) if len(vals) else np.inf
    sep = np.inf
    for row, mk in zip(cs.rows, cs.masks):
        if case.tag == "diii":
            vals = _collapsed(row)
        else:
            vals = np.sort(row[mk])
        if len(vals) >= 2:
            sep = min(sep, float(np.diff(np.sort(vals)).min()))
    return sep


def _collapsed(row, tol=1e-7):
    """Collapse theorem-exact duplicates (diii pairs) to single values."""
    vals = np.sort(row)
    out = [vals[0]]
    for v in vals[1:]:
        if v - out[-1] > tol:
            out.append(v)
    return np.array(out)
