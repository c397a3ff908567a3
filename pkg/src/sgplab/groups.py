"""Explicit finite matrix groups over GF(2^e) and their conjugacy structure.

Groups are full element enumerations.  Each element is a small matrix whose
entry codes are bit-packed into one uint64 key; a group stores the sorted
key array, so membership and class lookups are binary searches and all of
the heavy work (closure, conjugation orbits, class-matrix counts) runs as
vectorized numpy passes over key arrays.

Everything is immutable after construction and safe to share across
threads; the vectorized passes are internally batched but their results do
not depend on batch boundaries.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import gfield
from .errors import GroupSpecError, ResourceBoundError, SubgroupError

__all__ = [
    "ClassData", "FinGroup", "MatOps", "ExtOps",
    "build_group", "parse_group_spec", "conjugacy_classes", "h_classes",
    "centralizer_order", "maximal_subgroups_sp4", "subgroup",
    "find_generators", "mulclose", "element_order", "is_subgroup",
    "squares_subgroup", "cyclic_subgroup", "perm_group", "all_subgroups",
    "group_to_json",
]

MAX_ORDER_DEFAULT = 2_500_000
_CHUNK = 1 << 18

_U64 = np.uint64


def _as_key_array(x) -> np.ndarray:
    a = np.asarray(x, dtype=_U64)
    return a.reshape(1) if a.ndim == 0 else a


class MatOps:
    """Packed dim x dim matrices over a FieldCtx, entry codes bit-packed.

    inv_mode: "symplectic" uses M^-1 = J M^T J for the fixed antidiagonal
    Gram matrix J; "transpose" is for permutation matrices; "generic" does
    per-element Gauss-Jordan (small groups only).
    """

    def __init__(self, ctx: gfield.FieldCtx, dim: int, inv_mode: str = "symplectic"):
        self.ctx = ctx
        self.dim = dim
        self.bits = max(1, (ctx.q - 1).bit_length())
        if dim * dim * self.bits > 64:
            raise ValueError("matrix does not fit in a 64-bit key")
        self.inv_mode = inv_mode
        self._shifts = (np.arange(dim * dim, dtype=_U64) * _U64(self.bits))
        self._mask = _U64((1 << self.bits) - 1)
        eye = np.zeros((dim, dim), dtype=np.uint8)
        for i in range(dim):
            eye[i, i] = ctx.one
        self.identity = self.pack_one(eye)
        if inv_mode == "symplectic":
            j = np.zeros((dim, dim), dtype=np.uint8)
            for i in range(dim):
                j[i, dim - 1 - i] = ctx.one
            self._jkey = self.pack_one(j)

    # -- packing ---------------------------------------------------------

    def pack(self, mats: np.ndarray) -> np.ndarray:
        flat = mats.reshape(len(mats), -1).astype(_U64)
        return np.bitwise_or.reduce(flat << self._shifts, axis=1)

    def unpack(self, keys: np.ndarray) -> np.ndarray:
        keys = _as_key_array(keys)
        flat = (keys[:, None] >> self._shifts) & self._mask
        return flat.astype(np.uint8).reshape(len(keys), self.dim, self.dim)

    def pack_one(self, mat) -> np.uint64:
        return self.pack(np.asarray(mat, dtype=np.uint8)[None])[0]

    def from_rows(self, rows) -> np.uint64:
        return self.pack_one(np.array(rows, dtype=np.uint8))

    # -- arithmetic ------------------------------------------------------

    def _matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        mul = self.ctx.lut_mul
        add = self.ctx.lut_add
        terms = mul[a[:, :, :, None], b[:, None, :, :]]  # [n,i,k,j]
        acc = terms[:, :, 0, :]
        for k in range(1, self.dim):
            acc = add[acc, terms[:, :, k, :]]
        return acc

    def mul(self, a, b) -> np.ndarray:
        a, b = _as_key_array(a), _as_key_array(b)
        n = max(len(a), len(b))
        if len(a) != n:
            a = np.broadcast_to(a, (n,))
        if len(b) != n:
            b = np.broadcast_to(b, (n,))
        out = np.empty(n, dtype=_U64)
        for lo in range(0, n, _CHUNK):
            hi = min(lo + _CHUNK, n)
            out[lo:hi] = self.pack(self._matmul(self.unpack(a[lo:hi]),
                                                self.unpack(b[lo:hi])))
        return out

    def mul1(self, a, b) -> np.uint64:
        return self.mul(a, b)[0]

    def inv(self, keys) -> np.ndarray:
        keys = _as_key_array(keys)
        if self.inv_mode == "transpose":
            return self.pack(self.unpack(keys).swapaxes(1, 2))
        if self.inv_mode == "symplectic":
            t = self.pack(self.unpack(keys).swapaxes(1, 2))
            return self.mul(self.mul(self._jkey, t), self._jkey)
        return np.array([self._inv_one(k) for k in keys], dtype=_U64)

    def _inv_one(self, key) -> np.uint64:
        ctx, d = self.ctx, self.dim
        m = [list(row) for row in self.unpack(np.array([key], dtype=_U64))[0]]
        aug = [row + [ctx.one if i == j else 0 for j in range(d)]
               for i, row in enumerate(m)]
        for c in range(d):
            piv = next(r for r in range(c, d) if aug[r][c])
            aug[c], aug[piv] = aug[piv], aug[c]
            ic = ctx.inv(aug[c][c])
            aug[c] = [ctx.mul(ic, x) for x in aug[c]]
            for r in range(d):
                if r != c and aug[r][c]:
                    f = aug[r][c]
                    aug[r] = [ctx.add(x, ctx.mul(f, y))
                              for x, y in zip(aug[r], aug[c])]
        return self.pack_one(np.array([row[d:] for row in aug], dtype=np.uint8))

    # -- views -----------------------------------------------------------

    def sl2_view(self, key):
        """(2x2 entry codes, FieldCtx) if this is a 2x2 matrix group."""
        if self.dim != 2:
            return None
        m = self.unpack(np.array([key], dtype=_U64))[0]
        return m, self.ctx

    def describe(self, key) -> list:
        """Entry-log rows: -1 for the zero entry, else the discrete log."""
        m = self.unpack(np.array([key], dtype=_U64))[0]
        return [[int(c) - 1 for c in row] for row in m]


class ExtOps:
    """Pairs (m, t): m a 2x2 matrix over GF(q^2), t in {0,1}.

    Products twist by the entrywise Frobenius x -> x^q when t = 1:
    (m, t)(m', t') = (m * sigma^t(m'), t xor t').
    """

    def __init__(self, q: int):
        e = q.bit_length() - 1
        self.q = q
        self.ctx = gfield.field_ctx(2 * e)
        self.dim = 2
        self.bits = max(1, (self.ctx.q - 1).bit_length())
        self._shifts = (np.arange(4, dtype=_U64) * _U64(self.bits))
        self._mask = _U64((1 << self.bits) - 1)
        self._tshift = _U64(4 * self.bits)
        self._frob = self.ctx.lut_frob(e)
        self.identity = self.pack_one(
            np.array([[self.ctx.one, 0], [0, self.ctx.one]], dtype=np.uint8), 0)
        self.inv_mode = "ext"

    def pack_one(self, mat, t: int) -> np.uint64:
        flat = np.asarray(mat, dtype=_U64).reshape(4)
        key = np.bitwise_or.reduce(flat << self._shifts)
        return _U64(key | (_U64(t) << self._tshift))

    def _unpack(self, keys):
        keys = _as_key_array(keys)
        flat = (keys[:, None] >> self._shifts) & self._mask
        t = (keys >> self._tshift).astype(np.uint8)
        return flat.astype(np.uint8).reshape(len(keys), 2, 2), t

    def _pack(self, mats, t):
        flat = mats.reshape(len(mats), 4).astype(_U64)
        keys = np.bitwise_or.reduce(flat << self._shifts, axis=1)
        return keys | (t.astype(_U64) << self._tshift)

    def _matmul2(self, a, b):
        mul = self.ctx.lut_mul
        add = self.ctx.lut_add
        terms = mul[a[:, :, :, None], b[:, None, :, :]]
        return add[terms[:, :, 0, :], terms[:, :, 1, :]]

    def mul(self, a, b) -> np.ndarray:
        a, b = _as_key_array(a), _as_key_array(b)
        n = max(len(a), len(b))
        if len(a) != n:
            a = np.broadcast_to(a, (n,))
        if len(b) != n:
            b = np.broadcast_to(b, (n,))
        ma, ta = self._unpack(a)
        mb, tb = self._unpack(b)
        twist = ta.astype(bool)
        mb = np.where(twist[:, None, None], self._frob[mb], mb)
        return self._pack(self._matmul2(ma, mb), ta ^ tb)

    def mul1(self, a, b) -> np.uint64:
        return self.mul(a, b)[0]

    def inv(self, keys) -> np.ndarray:
        m, t = self._unpack(keys)
        # det-1 2x2 inverse in char 2 swaps the diagonal
        minv = m.copy()
        minv[:, 0, 0], minv[:, 1, 1] = m[:, 1, 1], m[:, 0, 0]
        twist = t.astype(bool)
        minv = np.where(twist[:, None, None], self._frob[minv], minv)
        return self._pack(minv, t)

    def sl2_view(self, key):
        m, t = self._unpack(np.array([key], dtype=_U64))
        if t[0]:
            return None
        return m[0], self.ctx

    def describe(self, key) -> dict:
        m, t = self._unpack(np.array([key], dtype=_U64))
        return {"matrix": [[int(c) - 1 for c in row] for row in m[0]],
                "twist": int(t[0])}


# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _mat_ops_cached(e: int, dim: int, inv_mode: str) -> MatOps:
    return MatOps(gfield.field_ctx(e), dim, inv_mode)


def mat_ops(ctx: gfield.FieldCtx, dim: int, inv_mode: str = "symplectic") -> MatOps:
    """Shared MatOps instance; groups over one (field, dim, mode) compare keys."""
    return _mat_ops_cached(ctx.e, dim, inv_mode)


@lru_cache(maxsize=None)
def _ext_ops_cached(q: int) -> ExtOps:
    return ExtOps(q)


def mulclose(ops, gens_keys, max_order: int) -> np.ndarray:
    """Sorted keys of the subgroup generated by gens_keys."""
    gens = sorted({int(g) for g in gens_keys})
    all_keys = np.unique(np.array([int(ops.identity)] + gens, dtype=_U64))
    frontier = all_keys
    while frontier.size:
        prods = [ops.mul(frontier, _U64(g)) for g in gens]
        cand = np.unique(np.concatenate(prods)) if prods else frontier[:0]
        pos = np.searchsorted(all_keys, cand)
        pos = np.minimum(pos, all_keys.size - 1)
        fresh = cand[all_keys[pos] != cand]
        if not fresh.size:
            break
        all_keys = np.union1d(all_keys, fresh)
        if all_keys.size > max_order:
            raise ResourceBoundError(
                f"group order exceeds the enumeration bound {max_order}")
        frontier = fresh
    return all_keys


def find_generators(keys: np.ndarray, ops) -> list:
    """A small deterministic generating set for an enumerated subgroup."""
    gens: list = []
    closure = np.array([ops.identity], dtype=_U64)
    while closure.size < keys.size:
        fresh = np.setdiff1d(keys, closure, assume_unique=True)
        gens.append(_U64(fresh[0]))
        closure = mulclose(ops, gens, keys.size)
    return gens


@dataclass(frozen=True)
class ClassData:
    """Partition of a group into conjugation orbits (by G itself or by H <= G)."""

    sizes: tuple
    reps: tuple            # element indices of class representatives
    class_of: np.ndarray   # element index -> class index
    inverse_class: tuple
    orders: tuple          # element order of each representative
    identity_class: int

    def __len__(self):
        return len(self.sizes)


class FinGroup:
    """An enumerated matrix group: sorted packed keys plus batched operations."""

    def __init__(self, label: str, ops, keys: np.ndarray, gens_keys):
        self.label = label
        self.ops = ops
        self.keys = keys
        self.order = int(keys.size)
        self.gens_keys = [int(g) for g in gens_keys]
        self.inv_idx = self.index_of(ops.inv(keys))
        self.identity_idx = int(self.index_of(np.array([ops.identity],
                                                       dtype=_U64))[0])
        self._classes = None
        self._chartable = None

    def index_of(self, keys) -> np.ndarray:
        keys = _as_key_array(keys)
        pos = np.searchsorted(self.keys, keys)
        bad = (pos >= self.order) | (self.keys[np.minimum(pos, self.order - 1)] != keys)
        if bad.any():
            raise KeyError("element is not in the group")
        return pos.astype(np.int64)

    def contains(self, keys) -> np.ndarray:
        keys = _as_key_array(keys)
        pos = np.searchsorted(self.keys, keys)
        pos = np.minimum(pos, self.order - 1)
        return self.keys[pos] == keys

    def __repr__(self):
        return f"FinGroup({self.label}, order={self.order})"


def element_order(ops, key) -> int:
    k = _U64(key)
    n = 1
    while k != ops.identity:
        k = ops.mul1(k, key)
        n += 1
    return n


def is_subgroup(H: FinGroup, G: FinGroup) -> bool:
    return H.ops is G.ops and bool(G.contains(H.keys).all())


def _require_subgroup(H, G):
    if not is_subgroup(H, G):
        raise SubgroupError(f"{H.label} is not a subgroup of {G.label}")


def _orbit_partition(G: FinGroup, gens) -> tuple:
    """Conjugation-orbit partition of G.keys under the given generators."""
    ops, keys = G.ops, G.keys
    n = G.order
    class_of = np.full(n, -1, dtype=np.int32)
    pairs = [(_U64(g), _U64(ops.inv(np.array([g], dtype=_U64))[0])) for g in gens]
    reps, sizes = [], []
    for i in range(n):
        if class_of[i] >= 0:
            continue
        cid = len(reps)
        reps.append(i)
        class_of[i] = cid
        frontier = np.array([i], dtype=np.int64)
        count = 1
        while frontier.size:
            fk = keys[frontier]
            nxt = [ops.mul(ops.mul(ginv, fk), g) for g, ginv in pairs]
            ck = np.unique(np.concatenate(nxt)) if nxt else fk[:0]
            pos = G.index_of(ck)
            fresh = pos[class_of[pos] < 0]
            class_of[fresh] = cid
            count += fresh.size
            frontier = fresh
        sizes.append(int(count))
    return tuple(sizes), tuple(reps), class_of


def conjugacy_classes(G: FinGroup) -> ClassData:
    if G._classes is not None:
        return G._classes
    sizes, reps, class_of = _orbit_partition(G, G.gens_keys)
    inverse_class = tuple(int(class_of[G.inv_idx[r]]) for r in reps)
    orders = tuple(element_order(G.ops, G.keys[r]) for r in reps)
    cd = ClassData(sizes, reps, class_of, inverse_class, orders,
                   int(class_of[G.identity_idx]))
    G._classes = cd
    return cd


def h_classes(G: FinGroup, H: FinGroup) -> ClassData:
    """Partition of G into orbits under conjugation by H only."""
    _require_subgroup(H, G)
    sizes, reps, class_of = _orbit_partition(G, H.gens_keys)
    inverse_class = tuple(int(class_of[G.inv_idx[r]]) for r in reps)
    orders = tuple(element_order(G.ops, G.keys[r]) for r in reps)
    return ClassData(sizes, reps, class_of, inverse_class, orders,
                     int(class_of[G.identity_idx]))


def centralizer_order(G: FinGroup, key) -> int:
    if not G.contains(np.array([key], dtype=_U64))[0]:
        raise SubgroupError("element is not in the group")
    left = G.ops.mul(G.keys, _U64(key))
    right = G.ops.mul(_U64(key), G.keys)
    return int(np.count_nonzero(left == right))


def subgroup(G: FinGroup, keys: np.ndarray, label: str) -> FinGroup:
    keys = np.unique(np.asarray(keys, dtype=_U64))
    if not G.contains(keys).all():
        raise SubgroupError(f"{label}: keys are not all elements of {G.label}")
    return FinGroup(label, G.ops, keys, find_generators(keys, G.ops))


def squares_subgroup(G: FinGroup, label: str | None = None) -> FinGroup:
    """The subgroup generated by all squares (= A6 for S6, A5 for S5, ...)."""
    sq = np.unique(G.ops.mul(G.keys, G.keys))
    keys = mulclose(G.ops, sq, G.order)
    return subgroup(G, keys, label or f"squares({G.label})")


def cyclic_subgroup(G: FinGroup, key, label: str | None = None) -> FinGroup:
    keys = mulclose(G.ops, [key], G.order)
    return subgroup(G, keys, label or f"cyclic{keys.size}({G.label})")


def all_subgroups(G: FinGroup) -> list:
    """Every subgroup of a small group, as sorted key arrays (exhaustive)."""
    if G.order > 200:
        raise ResourceBoundError("subgroup enumeration is for small groups only")
    seen = {}
    def add(keys):
        seen[tuple(int(k) for k in keys)] = keys
    add(np.array([G.ops.identity], dtype=_U64))
    for k in G.keys:
        add(mulclose(G.ops, [k], G.order))
    while True:
        current = list(seen.values())
        before = len(seen)
        for keys in current:
            if keys.size == G.order:
                continue
            for g in G.keys:
                if not np.any(keys == g):
                    add(mulclose(G.ops, list(keys[:1]) + [g], G.order)
                        if keys.size == 1 else
                        mulclose(G.ops, find_generators(keys, G.ops) + [g], G.order))
        if len(seen) == before:
            break
    return sorted(seen.values(), key=lambda ks: (ks.size, tuple(int(k) for k in ks)))


# -- constructors -----------------------------------------------------------


def _even_prime_power(q: int, text: str, pos: int) -> int:
    e = q.bit_length() - 1
    if q < 2 or (1 << e) != q:
        raise GroupSpecError(f"q={q} is not a power of 2", text, pos)
    return e


def _sl2_gens(ctx):
    one, g = ctx.one, ctx.gamma
    gens = [[[one, one], [0, one]], [[one, 0], [one, one]]]
    if ctx.q > 2:
        gens.append([[g, 0], [0, ctx.inv(g)]])
    return gens


def _build_sl2(q, max_order, text="", pos=0):
    e = _even_prime_power(q, text, pos)
    ctx = gfield.field_ctx(e)
    ops = mat_ops(ctx, 2, "symplectic")
    gens = [ops.from_rows(rows) for rows in _sl2_gens(ctx)]
    keys = mulclose(ops, gens, max_order)
    G = FinGroup(f"sl2:{q}", ops, keys, gens)
    assert G.order == q * (q * q - 1)
    return G


def _transvection(ops, entries):
    d = ops.dim
    m = np.zeros((d, d), dtype=np.uint8)
    for i in range(d):
        m[i, i] = ops.ctx.one
    for (i, j), c in entries.items():
        m[i, j] = c
    return ops.pack_one(m)


def _sp4_gens(ops):
    ctx = ops.ctx
    one, g = ctx.one, ctx.gamma
    gens = [
        _transvection(ops, {(0, 1): one, (2, 3): one}),  # short simple root
        _transvection(ops, {(1, 0): one, (3, 2): one}),
        _transvection(ops, {(1, 2): one}),               # long simple root
        _transvection(ops, {(2, 1): one}),
    ]
    if ctx.q > 2:
        # torus conjugation sweeps the root subgroups over all of GF(q)
        gens.append(ops.from_rows([[g, 0, 0, 0], [0, one, 0, 0],
                                   [0, 0, one, 0], [0, 0, 0, ctx.inv(g)]]))
        gens.append(ops.from_rows([[one, 0, 0, 0], [0, g, 0, 0],
                                   [0, 0, ctx.inv(g), 0], [0, 0, 0, one]]))
    return gens


def _build_sp4(q, max_order, text="", pos=0):
    e = _even_prime_power(q, text, pos)
    ctx = gfield.field_ctx(e)
    ops = mat_ops(ctx, 4, "symplectic")
    gens = _sp4_gens(ops)
    keys = mulclose(ops, gens, max_order)
    G = FinGroup(f"sp4:{q}", ops, keys, gens)
    assert G.order == q**4 * (q**2 - 1) * (q**4 - 1)
    return G


def _build_wreath(q, max_order, text="", pos=0):
    e = _even_prime_power(q, text, pos)
    ctx = gfield.field_ctx(e)
    ops = mat_ops(ctx, 4, "symplectic")
    one = ctx.one
    gens = []
    for rows in _sl2_gens(ctx):
        # act on the hyperbolic plane <e1, e4>
        (a, b), (c, d) = rows
        gens.append(ops.from_rows([[a, 0, 0, b], [0, one, 0, 0],
                                   [0, 0, one, 0], [c, 0, 0, d]]))
    # swap the two hyperbolic planes <e1,e4> <-> <e2,e3>
    gens.append(ops.from_rows([[0, one, 0, 0], [one, 0, 0, 0],
                               [0, 0, 0, one], [0, 0, one, 0]]))
    keys = mulclose(ops, gens, max_order)
    G = FinGroup(f"wreath-sp2:{q}", ops, keys, gens)
    assert G.order == 2 * q**2 * (q**2 - 1) ** 2
    return G


def _build_ext_abstract(q, max_order, text="", pos=0):
    e = _even_prime_power(q, text, pos)
    if e < 1:
        raise GroupSpecError("ext-sp2q2 needs q >= 2", text, pos)
    ops = _ext_ops_cached(q)
    gens = [ops.pack_one(np.array(rows, dtype=np.uint8), 0)
            for rows in _sl2_gens(ops.ctx)]
    gens.append(ops.pack_one(
        np.array([[ops.ctx.one, 0], [0, ops.ctx.one]], dtype=np.uint8), 1))
    keys = mulclose(ops, gens, max_order)
    G = FinGroup(f"ext-sp2q2:{q}", ops, keys, gens)
    assert G.order == 2 * q**2 * (q**4 - 1)
    return G


def _mat_inv_small(ctx, rows):
    d = len(rows)
    aug = [list(r) + [ctx.one if i == j else 0 for j in range(d)]
           for i, r in enumerate(rows)]
    for c in range(d):
        piv = next(r for r in range(c, d) if aug[r][c])
        aug[c], aug[piv] = aug[piv], aug[c]
        ic = ctx.inv(aug[c][c])
        aug[c] = [ctx.mul(ic, x) for x in aug[c]]
        for r in range(d):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [ctx.add(x, ctx.mul(f, y)) for x, y in zip(aug[r], aug[c])]
    return [row[d:] for row in aug]


def _symplectic_basis(ctx, gram):
    """Columns of a basis T with T^t * gram * T the antidiagonal Gram matrix."""
    d = len(gram)
    vecs = [[ctx.one if i == j else 0 for j in range(d)] for i in range(d)]

    def form(u, v):
        s = 0
        for i in range(d):
            if u[i]:
                for j in range(d):
                    if v[j] and gram[i][j]:
                        s = ctx.add(s, ctx.mul(u[i], ctx.mul(gram[i][j], v[j])))
        return s

    pairs = []
    while vecs:
        u = vecs.pop(0)
        w = None
        for idx, v in enumerate(vecs):
            b = form(u, v)
            if b:
                w = vecs.pop(idx)
                s = ctx.inv(b)
                w = [ctx.mul(s, x) for x in w]
                break
        assert w is not None, "degenerate form"
        rest = []
        for v in vecs:
            bu, bw = form(v, u), form(v, w)
            v2 = [ctx.add(v[i], ctx.add(ctx.mul(bw, u[i]), ctx.mul(bu, w[i])))
                  for i in range(d)]
            rest.append(v2)
        vecs = rest
        pairs.append((u, w))
    basis = [pairs[0][0], pairs[1][0], pairs[1][1], pairs[0][1]]
    return [[basis[j][i] for j in range(d)] for i in range(d)]  # columns


def _build_ext_embedded(q, max_order, text="", pos=0):
    """Concrete image of ext-sp2q2:q inside sp4:q, via GF(q^2) as 2x2 blocks."""
    e = _even_prime_power(q, text, pos)
    ctx = gfield.field_ctx(e)
    ctx2 = gfield.field_ctx(2 * e)
    emb = [gfield.subfield_embed(ctx, ctx2, a) for a in range(ctx.q)]
    gam2 = ctx2.gamma
    # coordinates of w in the basis (1, gamma2) over the embedded GF(q)
    coord = {}
    for u in range(ctx.q):
        for v in range(ctx.q):
            w = ctx2.add(emb[u], ctx2.mul(emb[v], gam2))
            coord[w] = (u, v)

    def mult_block(z):
        c1 = coord[z]
        c2 = coord[ctx2.mul(z, gam2)]
        return [[c1[0], c2[0]], [c1[1], c2[1]]]

    def image(rows2):
        out = [[0] * 4 for _ in range(4)]
        for bi in range(2):
            for bj in range(2):
                blk = mult_block(rows2[bi][bj]) if rows2[bi][bj] else [[0, 0], [0, 0]]
                for i in range(2):
                    for j in range(2):
                        out[2 * bi + i][2 * bj + j] = blk[i][j]
        return out

    frob_block = [[0, 0], [0, 0]]
    for j, z in enumerate([ctx2.one, gam2]):
        zq = gfield.frobenius(ctx2, z, e)
        u, v = coord[zq]
        frob_block[0][j], frob_block[1][j] = u, v
    galois = [[0] * 4 for _ in range(4)]
    for b in range(2):
        for i in range(2):
            for j in range(2):
                galois[2 * b + i][2 * b + j] = frob_block[i][j]

    # Gram of Tr(x1*y2 + x2*y1) in the basis (1,0),(gamma2,0),(0,1),(0,gamma2)
    basis2 = [(ctx2.one, 0), (gam2, 0), (0, ctx2.one), (0, gam2)]
    def tr_down(w):
        t = ctx2.add(w, gfield.frobenius(ctx2, w, e))
        u, v = coord[t]
        assert v == 0
        return u
    gram = [[tr_down(ctx2.add(ctx2.mul(x1, y2), ctx2.mul(x2, y1)))
             for (y1, y2) in basis2] for (x1, x2) in basis2]

    t_cols = _symplectic_basis(ctx, gram)
    t_inv = _mat_inv_small(ctx, t_cols)

    def conj(rows):
        def mm(a, b):
            return [[
                _sum_mul(ctx, [(a[i][k], b[k][j]) for k in range(4)])
                for j in range(4)] for i in range(4)]
        return mm(mm(t_inv, rows), t_cols)

    ops = mat_ops(ctx, 4, "symplectic")
    gen_rows = [image(rows) for rows in _sl2_gens(ctx2)] + [galois]
    gens = [ops.from_rows(conj(r)) for r in gen_rows]
    keys = mulclose(ops, gens, max_order)
    G = FinGroup(f"ext-sp2q2-embedded:{q}", ops, keys, gens)
    assert G.order == 2 * q**2 * (q**4 - 1)
    return G


def _sum_mul(ctx, pairs):
    s = 0
    for a, b in pairs:
        s = ctx.add(s, ctx.mul(a, b))
    return s


def _build_parabolic(q, kind, max_order, text="", pos=0):
    G = build_group(f"sp4:{q}", max_order=max_order)
    mats = G.ops.unpack(G.keys)
    if kind == "p":  # stabilizer of the isotropic point <e1>
        mask = (mats[:, 1, 0] == 0) & (mats[:, 2, 0] == 0) & (mats[:, 3, 0] == 0)
        label = f"parabolic-p:{q}"
    else:  # stabilizer of the totally isotropic plane <e1, e2>
        mask = ((mats[:, 2, 0] == 0) & (mats[:, 3, 0] == 0)
                & (mats[:, 2, 1] == 0) & (mats[:, 3, 1] == 0))
        label = f"parabolic-q:{q}"
    H = subgroup(G, G.keys[mask], label)
    assert H.order == q**3 * (q**2 + q) * (q - 1) ** 2
    return H


def _build_so4(q, sign, max_order, text="", pos=0):
    e = _even_prime_power(q, text, pos)
    G = build_group(f"sp4:{q}", max_order=max_order)
    ctx = G.ops.ctx
    if sign == "+":
        qvals = [0, 0, 0, 0]           # Q(x) = x1 x4 + x2 x3
        label = f"so4+:{q}"
    else:
        # Q(x) = x1 x4 + x2^2 + x2 x3 + a x3^2 with t^2 + t + a irreducible,
        # i.e. the absolute trace of a is 1; a is the first such power of gamma
        a = next(c for c in range(1, ctx.q) if ctx.trace_bit(c))
        qvals = [0, ctx.one, a, 0]
        label = f"so4-:{q}"
    mats = G.ops.unpack(G.keys)
    mul, add = ctx.lut_mul, ctx.lut_add
    keep = np.ones(G.order, dtype=bool)
    for j in range(4):
        col = mats[:, :, j]
        qv = add[mul[col[:, 0], col[:, 3]], mul[col[:, 1], col[:, 2]]]
        if sign == "-":
            qv = add[qv, mul[col[:, 1], col[:, 1]]]
            qv = add[qv, mul[np.full(G.order, qvals[2], dtype=np.uint8),
                             mul[col[:, 2], col[:, 2]]]]
        keep &= qv == qvals[j]
    H = subgroup(G, G.keys[keep], label)
    expect = (2 * q**2 * (q**2 - 1) ** 2 if sign == "+"
              else 2 * q**2 * (q**4 - 1))
    assert H.order == expect
    return H


def _build_sz(q, max_order, text="", pos=0):
    e = _even_prime_power(q, text, pos)
    if e % 2 == 0:
        raise GroupSpecError(f"sz:{q} needs q = 2^e with e odd", text, pos)
    n = (e - 1) // 2
    theta = 1 << (n + 1)  # the automorphism x -> x^theta with theta^2 = 2q
    ctx = gfield.field_ctx(e)
    ops = mat_ops(ctx, 4, "symplectic")
    one = ctx.one

    def smat(a, b):
        ath = ctx.pow(a, theta) if a else 0
        f = 0
        if a:
            f = ctx.pow(a, theta + 2)
        f = ctx.add(f, ctx.mul(a, b))
        if b:
            f = ctx.add(f, ctx.pow(b, theta))
        r42 = ctx.add(ctx.mul(ath, a) if a else 0, b)
        return ops.from_rows([[one, 0, 0, 0],
                              [a, one, 0, 0],
                              [b, ath, one, 0],
                              [f, r42, a, one]])

    gens = [smat(one, 0), smat(0, one)]
    if q > 2:
        lam = ctx.gamma
        d1 = ctx.pow(lam, 1 + (1 << n))
        d2 = ctx.pow(lam, 1 << n)
        gens.append(ops.from_rows([[d1, 0, 0, 0], [0, d2, 0, 0],
                                   [0, 0, ctx.inv(d2), 0],
                                   [0, 0, 0, ctx.inv(d1)]]))
    gens.append(ops.from_rows([[0, 0, 0, one], [0, 0, one, 0],
                               [0, one, 0, 0], [one, 0, 0, 0]]))
    keys = mulclose(ops, gens, max_order)
    G = FinGroup(f"sz:{q}", ops, keys, gens)
    assert G.order == q**2 * (q**2 + 1) * (q - 1)
    return G


def _build_sp4_sub(q, q0, max_order, text="", pos=0):
    e = _even_prime_power(q, text, pos)
    e0 = _even_prime_power(q0, text, pos)
    if e % e0 or e == e0:
        raise GroupSpecError(f"sp4-sub:{q}:{q0}: q0 is not a proper subfield", text, pos)
    small = build_group(f"sp4:{q0}", max_order=max_order)
    big = build_group(f"sp4:{q}", max_order=max_order)
    ctx0 = small.ops.ctx
    ctx = big.ops.ctx
    lut = np.array([gfield.subfield_embed(ctx0, ctx, a) for a in range(ctx0.q)],
                   dtype=np.uint8)
    mats = lut[small.ops.unpack(small.keys)]
    keys = np.unique(big.ops.pack(mats))
    assert keys.size == small.order
    return subgroup(big, keys, f"sp4-sub:{q}:{q0}")


def _build_trivial(max_order, text="", pos=0):
    ops = mat_ops(gfield.field_ctx(1), 2, "transpose")
    return FinGroup("trivial", ops, np.array([ops.identity], dtype=_U64), [])


def perm_group(perms, label: str, n: int | None = None) -> FinGroup:
    """Group generated by permutations (tuples of images), as 0/1 matrices."""
    n = n or len(perms[0])
    ops = mat_ops(gfield.field_ctx(1), n, "transpose")
    gens = []
    for p in perms:
        m = np.zeros((n, n), dtype=np.uint8)
        for i, pi in enumerate(p):
            m[pi, i] = 1
        gens.append(ops.pack_one(m))
    keys = mulclose(ops, gens, MAX_ORDER_DEFAULT)
    return FinGroup(label, ops, keys, gens)


# -- the group-spec mini-language -------------------------------------------

_SPEC_NAMES = ("sl2", "sp4", "wreath-sp2", "ext-sp2q2", "parabolic-p",
               "parabolic-q", "sz", "sp4-sub", "so4+", "so4-", "s6", "trivial",
               "ext-sp2q2-embedded")

_ARITY = {"sl2": 1, "sp4": 1, "wreath-sp2": 1, "ext-sp2q2": 1,
          "parabolic-p": 1, "parabolic-q": 1, "sz": 1, "sp4-sub": 2,
          "so4+": 1, "so4-": 1, "s6": 0, "trivial": 0,
          "ext-sp2q2-embedded": 1}


def parse_group_spec(text: str) -> tuple:
    """Parse `name[:arg[:arg]]` into (name, args); errors carry a position."""
    parts = text.split(":")
    name = parts[0]
    if name not in _SPEC_NAMES:
        raise GroupSpecError(f"unknown group name {name!r}", text, 0)
    args = []
    pos = len(name) + 1
    for part in parts[1:]:
        if not part.isdigit():
            raise GroupSpecError(f"expected an integer, got {part!r}", text, pos)
        args.append(int(part))
        pos += len(part) + 1
    if len(args) != _ARITY[name]:
        raise GroupSpecError(
            f"{name} takes {_ARITY[name]} argument(s), got {len(args)}", text, 0)
    # validity conditions that do not need any enumeration
    if args:
        _even_prime_power(args[0], text, len(name) + 1)
    if name == "sz" and (args[0].bit_length() - 1) % 2 == 0:
        raise GroupSpecError(f"sz:{args[0]} needs odd field degree", text,
                             len(name) + 1)
    if name == "sp4-sub":
        q, q0 = args
        e, e0 = q.bit_length() - 1, q0.bit_length() - 1
        if e0 == 0 or e % e0 or e == e0:
            raise GroupSpecError(f"sp4-sub:{q}:{q0}: invalid subfield", text, 0)
    if name in ("wreath-sp2", "ext-sp2q2", "ext-sp2q2-embedded") and args[0] < 2:
        raise GroupSpecError(f"{name} needs q >= 2", text, 0)
    return name, tuple(args)


_BUILDERS = {
    "sl2": _build_sl2,
    "sp4": _build_sp4,
    "wreath-sp2": _build_wreath,
    "ext-sp2q2": _build_ext_abstract,
    "ext-sp2q2-embedded": _build_ext_embedded,
    "sz": _build_sz,
}


@lru_cache(maxsize=None)
def _build_cached(spec: str, max_order: int) -> FinGroup:
    name, args = parse_group_spec(spec)
    if name == "s6":
        return build_group("sp4:2", max_order=max_order)
    if name == "trivial":
        return _build_trivial(max_order, spec, 0)
    if name == "parabolic-p":
        return _build_parabolic(args[0], "p", max_order, spec, 0)
    if name == "parabolic-q":
        return _build_parabolic(args[0], "q", max_order, spec, 0)
    if name == "so4+":
        return _build_so4(args[0], "+", max_order, spec, 0)
    if name == "so4-":
        return _build_so4(args[0], "-", max_order, spec, 0)
    if name == "sp4-sub":
        return _build_sp4_sub(args[0], args[1], max_order, spec, 0)
    return _BUILDERS[name](*args, max_order, spec, 0)


def build_group(spec: str, *, max_order: int = MAX_ORDER_DEFAULT) -> FinGroup:
    """Build (and cache) the group named by a group-spec string."""
    name, args = parse_group_spec(spec)  # fail fast with position info
    canonical = name if not args else name + ":" + ":".join(map(str, args))
    return _build_cached(canonical, max_order)


def maximal_subgroups_sp4(q: int, *, max_order: int = MAX_ORDER_DEFAULT) -> list:
    """One concrete subgroup of sp4:q per applicable maximal-subgroup row."""
    e = _even_prime_power(q, str(q), 0)
    if e < 2:
        raise GroupSpecError("the maximal-subgroup table needs q = 2^e, e > 1",
                             str(q), 0)
    out = [
        (build_group(f"parabolic-p:{q}", max_order=max_order), f"parabolic-p:{q}"),
        (build_group(f"parabolic-q:{q}", max_order=max_order), f"parabolic-q:{q}"),
        (build_group(f"wreath-sp2:{q}", max_order=max_order), f"wreath-sp2:{q}"),
        (build_group(f"ext-sp2q2-embedded:{q}", max_order=max_order),
         f"ext-sp2q2:{q}"),
    ]
    for r in sorted({p for p in range(2, e + 1) if e % p == 0
                     and all(p % d for d in range(2, p))}):
        q0 = 1 << (e // r)
        out.append((build_group(f"sp4-sub:{q}:{q0}", max_order=max_order),
                    f"sp4-sub:{q}:{q0}"))
    out.append((build_group(f"so4+:{q}", max_order=max_order), f"so4+:{q}"))
    out.append((build_group(f"so4-:{q}", max_order=max_order), f"so4-:{q}"))
    if e > 1 and e % 2 == 1:
        out.append((build_group(f"sz:{q}", max_order=max_order), f"sz:{q}"))
    return out


def group_to_json(G: FinGroup) -> dict:
    return {"label": G.label, "order": G.order,
            "generators": [G.ops.describe(_U64(g)) for g in G.gens_keys]}
