"""Exact irreducible character tables and the standard operations on them.

Tables are computed by the class-matrix (Burnside) method: eigenvectors of
class-multiplication matrices over a prime field GF(p) with p = 1 mod the
group exponent and p > 2*sqrt(|G|), lifted back to cyclotomic integers by
matching eigenvalue multiplicities through the power map.  The lifted table
is verified against the column orthogonality relations before it is
returned, so a returned table is exact, not heuristically trusted.

Tables and characters are immutable; sharing across threads is fine.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import InternalCheckError, ResourceBoundError, SubgroupError
from .exactnum import Cyclo
from .groups import ClassData, FinGroup, conjugacy_classes, is_subgroup

__all__ = [
    "Character", "CharTable", "dixon_schneider", "inner_product", "induce",
    "restrict", "total_character", "split_fuse", "trivial_character",
    "regular_character", "tables_equal_upto_permutation",
    "table_to_json", "table_to_csv",
]

MAX_CLASSES = 200


# -- small mod-p linear algebra ----------------------------------------------


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _dixon_prime(exponent: int, order: int) -> int:
    bound = 2 * math.isqrt(order) + 1
    p = exponent + 1
    while p <= bound or not _is_prime(p):
        p += exponent
    return p


def _factor(n: int) -> list:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _primitive_root(p: int) -> int:
    fs = _factor(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // f, p) != 1 for f in fs):
            return g
    raise InternalCheckError(f"no primitive root mod {p}")


def _sqrt_mod(a: int, p: int) -> int:
    """A square root of a mod p (p an odd prime, a a QR); Tonelli-Shanks."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        raise InternalCheckError(f"{a} is not a square mod {p}")
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = next(z for z in range(2, p) if pow(z, (p - 1) // 2, p) == p - 1)
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def _nullspace(M: list, p: int) -> list:
    """Basis vectors of the right null space of M mod p."""
    n = len(M)
    m = len(M[0])
    A = [row[:] for row in M]
    pivots = []
    r = 0
    for c in range(m):
        piv = next((i for i in range(r, n) if A[i][c] % p), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = pow(A[r][c], p - 2, p)
        A[r] = [x * inv % p for x in A[r]]
        for i in range(n):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [(x - f * y) % p for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == n:
            break
    free = [c for c in range(m) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * m
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-A[i][fc]) % p
        basis.append(v)
    return basis


def _solve_restriction(B: list, MB: list, p: int) -> list:
    """S with B*S = MB, where the r x d matrix B has full column rank."""
    r, d = len(B), len(B[0])
    aug = [B[i][:] + MB[i][:] for i in range(r)]
    row = 0
    piv_rows = []
    for c in range(d):
        piv = next(i for i in range(row, r) if aug[i][c] % p)
        aug[row], aug[piv] = aug[piv], aug[row]
        inv = pow(aug[row][c], p - 2, p)
        aug[row] = [x * inv % p for x in aug[row]]
        for i in range(r):
            if i != row and aug[i][c]:
                f = aug[i][c]
                aug[i] = [(x - f * y) % p for x, y in zip(aug[i], aug[row])]
        piv_rows.append(row)
        row += 1
    return [aug[i][d:] for i in range(d)]


def _charpoly(M: list, p: int) -> list:
    """Characteristic polynomial mod p, ascending coefficients (monic)."""
    n = len(M)
    H = [row[:] for row in M]
    for j in range(n - 2):
        piv = next((i for i in range(j + 1, n) if H[i][j] % p), None)
        if piv is None:
            continue
        if piv != j + 1:
            H[j + 1], H[piv] = H[piv], H[j + 1]
            for i in range(n):
                H[i][j + 1], H[i][piv] = H[i][piv], H[i][j + 1]
        inv = pow(H[j + 1][j], p - 2, p)
        for i in range(j + 2, n):
            if H[i][j]:
                f = H[i][j] * inv % p
                H[i] = [(x - f * y) % p for x, y in zip(H[i], H[j + 1])]
                for k in range(n):
                    H[k][j + 1] = (H[k][j + 1] + f * H[k][i]) % p
    # charpolys of leading principal minors of the Hessenberg form
    polys = [[1]]
    for k in range(1, n + 1):
        # (x - H[k-1][k-1]) * polys[k-1]
        prev = polys[k - 1]
        cur = [0] + prev[:]
        hkk = H[k - 1][k - 1]
        cur = [(cur[i] - hkk * (prev[i] if i < len(prev) else 0)) % p
               for i in range(len(cur))]
        prod = 1
        for i in range(k - 1, 0, -1):
            prod = prod * H[i][i - 1] % p
            coef = H[i - 1][k - 1] * prod % p
            if coef:
                base = polys[i - 1]
                for t in range(len(base)):
                    cur[t] = (cur[t] - coef * base[t]) % p
        polys.append(cur)
    return polys[n]


def _poly_roots(poly: list, p: int) -> list:
    roots = []
    deg = len(poly) - 1
    for x in range(p):
        acc = 0
        for c in reversed(poly):
            acc = (acc * x + c) % p
        if acc == 0:
            roots.append(x)
            if len(roots) == deg:
                break
    return roots


# -- characters and tables ---------------------------------------------------


@dataclass(frozen=True)
class Character:
    """A class function with exact cyclotomic values, one per class."""

    group: FinGroup
    values: tuple
    name: str = ""

    @property
    def degree(self) -> Fraction:
        cd = conjugacy_classes(self.group)
        d = self.values[cd.identity_class].as_rational()
        if d is None:
            raise InternalCheckError("character degree is not rational")
        return d

    def __add__(self, other: "Character") -> "Character":
        if self.group is not other.group:
            raise SubgroupError("characters live on different groups")
        return Character(self.group,
                         tuple(a + b for a, b in zip(self.values, other.values)))

    def key(self):
        return (self.degree, tuple(v.key() for v in self.values))


class CharTable:
    """The complete set of irreducible characters on a fixed class order."""

    def __init__(self, group: FinGroup, classes: ClassData, irreducibles):
        self.group = group
        self.classes = classes
        self.irreducibles = tuple(irreducibles)
        if len(self.irreducibles) != len(classes):
            raise InternalCheckError("table is not square")

    @property
    def degrees(self) -> list:
        return sorted(int(ch.degree) for ch in self.irreducibles)

    def total_degree(self) -> Fraction:
        return sum((ch.degree for ch in self.irreducibles), Fraction(0))

    def max_degree(self) -> Fraction:
        return max(ch.degree for ch in self.irreducibles)

    def __repr__(self):
        return f"CharTable({self.group.label}, {len(self.irreducibles)} irreducibles)"


def trivial_character(G: FinGroup) -> Character:
    r = len(conjugacy_classes(G))
    return Character(G, tuple(Cyclo.from_rational(1) for _ in range(r)), "Tr")


def regular_character(G: FinGroup) -> Character:
    cd = conjugacy_classes(G)
    vals = [Cyclo.from_rational(G.order if i == cd.identity_class else 0)
            for i in range(len(cd))]
    return Character(G, tuple(vals), "regular")


def _class_elements(G: FinGroup, cd: ClassData):
    by_class = [[] for _ in cd.sizes]
    for idx, c in enumerate(cd.class_of):
        by_class[c].append(idx)
    return [np.array(ix, dtype=np.int64) for ix in by_class]


def _class_matrix(G: FinGroup, cd: ClassData, members, i: int) -> list:
    """M[k][m] = #{x in C_i : x^-1 g_m in C_k}."""
    r = len(cd)
    xinv = G.keys[G.inv_idx[members[i]]]
    M = [[0] * r for _ in range(r)]
    for m in range(r):
        y = G.ops.mul(xinv, G.keys[cd.reps[m]])
        cls = cd.class_of[G.index_of(y)]
        counts = np.bincount(cls, minlength=r)
        for k in range(r):
            M[k][m] = int(counts[k])
    return M


def _power_classes(G: FinGroup, cd: ClassData, j: int) -> list:
    """Class index of rep_j^t for t = 0 .. order(rep_j) - 1."""
    out = [cd.identity_class]
    key = G.keys[cd.reps[j]]
    acc = key
    for _ in range(cd.orders[j] - 1):
        out.append(int(cd.class_of[G.index_of(acc)[0]]))
        acc = G.ops.mul1(acc, key)
    return out


def dixon_schneider(G: FinGroup, *, max_classes: int = MAX_CLASSES) -> CharTable:
    """The exact irreducible character table of an enumerated group."""
    if G._chartable is not None:
        return G._chartable
    cd = conjugacy_classes(G)
    r = len(cd)
    if r > max_classes:
        raise ResourceBoundError(f"{r} classes exceeds the bound {max_classes}")
    exponent = math.lcm(*cd.orders)
    p = _dixon_prime(exponent, G.order)
    members = _class_elements(G, cd)

    # split the common eigenspaces of the class matrices, smallest class first
    spaces = [[[1 if i == j else 0 for j in range(r)] for i in range(r)]]
    candidates = sorted((cd.sizes[i], i) for i in range(r) if i != cd.identity_class)
    for _, i in candidates:
        if all(len(B[0]) == 1 for B in spaces):
            break
        M = _class_matrix(G, cd, members, i)
        for col in range(r):
            if sum(row[col] for row in M) != cd.sizes[i]:
                raise InternalCheckError("class-matrix column sum mismatch")
        new_spaces = []
        for B in spaces:
            d = len(B[0])
            if d == 1:
                new_spaces.append(B)
                continue
            MB = [[sum(M[i2][k] * B[k][j] for k in range(r)) % p
                   for j in range(d)] for i2 in range(r)]
            S = _solve_restriction(B, MB, p)
            for lam in sorted(set(_poly_roots(_charpoly(S, p), p))):
                SI = [[(S[a][b] - (lam if a == b else 0)) % p for b in range(d)]
                      for a in range(d)]
                null = _nullspace(SI, p)
                if not null:
                    continue
                nb = [[sum(B[i2][k] * v[k] for k in range(d)) % p for v in null]
                      for i2 in range(r)]
                new_spaces.append(nb)
        spaces = new_spaces
    if not all(len(B[0]) == 1 for B in spaces) or len(spaces) != r:
        raise InternalCheckError("class matrices failed to split the algebra")

    # central characters mod p, normalized at the identity class
    id_cls = cd.identity_class
    omegas = []
    for B in spaces:
        v = [B[i][0] % p for i in range(r)]
        scale = pow(v[id_cls], p - 2, p)
        omegas.append([x * scale % p for x in v])

    # degrees:  d^2 = |G| / sum_j omega_j * omega_{j*} / |C_j|
    size_inv = [pow(cd.sizes[j], p - 2, p) for j in range(r)]
    chars_mod = []
    degrees = []
    for u in omegas:
        s = sum(u[j] * u[cd.inverse_class[j]] * size_inv[j] for j in range(r)) % p
        d2 = G.order * pow(s, p - 2, p) % p
        d = _sqrt_mod(d2, p)
        d = min(d, p - d)
        if d * d % p != d2 or d <= 0:
            raise InternalCheckError("degree recovery failed")
        degrees.append(d)
        chars_mod.append([d * u[j] % p * size_inv[j] % p for j in range(r)])

    # lift to cyclotomics through the power map
    z = pow(_primitive_root(p), (p - 1) // exponent, p)
    pow_classes = [_power_classes(G, cd, j) for j in range(r)]
    zn_cache = {}
    irreducibles = []
    for d, chi in zip(degrees, chars_mod):
        values = [None] * r
        for j in range(r):
            n = cd.orders[j]
            if n == 1:
                values[j] = Cyclo.from_rational(d)
                continue
            if n not in zn_cache:
                zn = pow(z, exponent // n, p)
                zn_cache[n] = [pow(zn, -k % (p - 1), p) for k in range(n)]
            zinv = zn_cache[n]
            ninv = pow(n, p - 2, p)
            pc = pow_classes[j]
            coeffs = {}
            total = 0
            for k in range(n):
                ck = sum(chi[pc[t]] * zinv[(k * t) % n] for t in range(n)) * ninv % p
                if ck > d:
                    raise InternalCheckError("eigenvalue multiplicity out of range")
                total += ck
                if ck:
                    coeffs[k] = Fraction(ck)
            if total != d:
                raise InternalCheckError("eigenvalue multiplicities do not sum to degree")
            values[j] = Cyclo(n, coeffs)
        irreducibles.append(Character(G, tuple(values)))

    if sum(int(ch.degree) ** 2 for ch in irreducibles) != G.order:
        raise InternalCheckError("sum of squared degrees != |G|")
    irreducibles.sort(key=lambda ch: ch.key())
    table = CharTable(G, cd, irreducibles)
    _verify_column_orthogonality(table)
    G._chartable = table
    return table


def _verify_column_orthogonality(T: CharTable):
    cd = T.classes
    r = len(cd)
    cols = [[ch.values[j] for ch in T.irreducibles] for j in range(r)]
    conj_cols = [[v.conjugate() for v in col] for col in cols]
    for j1 in range(r):
        for j2 in range(j1, r):
            s = Cyclo.zero()
            for a, b in zip(cols[j1], conj_cols[j2]):
                s = s + a * b
            want = Fraction(T.group.order, cd.sizes[j1]) if j1 == j2 else Fraction(0)
            if s.as_rational() != want:
                raise InternalCheckError(
                    f"column orthogonality fails at classes ({j1}, {j2})")


# -- operations ---------------------------------------------------------------


def inner_product(a: Character, b: Character) -> Fraction:
    """(1/|G|) sum over classes of size * a * conj(b)."""
    if a.group is not b.group:
        raise SubgroupError("inner product needs characters of the same group")
    cd = conjugacy_classes(a.group)
    s = Cyclo.zero()
    for size, x, y in zip(cd.sizes, a.values, b.values):
        s = s + size * (x * y.conjugate())
    val = s.as_rational()
    if val is None:
        raise InternalCheckError("inner product of class functions is irrational")
    return val / a.group.order


def _fusion_map(H: FinGroup, G: FinGroup) -> list:
    """G-class index of each H-class representative."""
    if not is_subgroup(H, G):
        raise SubgroupError(f"{H.label} is not a subgroup of {G.label}")
    cdh, cdg = conjugacy_classes(H), conjugacy_classes(G)
    reps = H.keys[list(cdh.reps)]
    return [int(cdg.class_of[i]) for i in G.index_of(reps)]


def restrict(chi: Character, H: FinGroup) -> Character:
    """chi viewed on the classes of the subgroup H."""
    G = chi.group
    fusion = _fusion_map(H, G)
    return Character(H, tuple(chi.values[c] for c in fusion),
                     chi.name and f"{chi.name}|{H.label}")


def induce(psi: Character, G: FinGroup) -> Character:
    """Frobenius induction of a class function from H up to G."""
    H = psi.group
    fusion = _fusion_map(H, G)
    cdh, cdg = conjugacy_classes(H), conjugacy_classes(G)
    r = len(cdg)
    sums = [Cyclo.zero() for _ in range(r)]
    for i, c in enumerate(fusion):
        cent_h = Fraction(1, H.order // cdh.sizes[i])
        sums[c] = sums[c] + cent_h * psi.values[i]
    vals = [Fraction(G.order, cdg.sizes[k]) * sums[k] for k in range(r)]
    return Character(G, tuple(vals), psi.name and f"{psi.name}^{G.label}")


def total_character(T: CharTable) -> Character:
    out = T.irreducibles[0]
    for ch in T.irreducibles[1:]:
        out = out + ch
    return Character(T.group, out.values, "total")


def split_fuse(psi: Character, G: FinGroup) -> str:
    """For |G : H| = 2: 'split' if psi induces reducibly, 'fuse' otherwise."""
    H = psi.group
    if G.order != 2 * H.order:
        raise SubgroupError("split/fuse analysis needs an index-2 subgroup")
    ind = induce(psi, G)
    norm = inner_product(ind, ind)
    if norm == 2:
        return "split"
    if norm == 1:
        return "fuse"
    raise InternalCheckError(f"induced norm {norm}: psi was not irreducible")


# -- comparison and export -----------------------------------------------------


def _lifted_key(v: Cyclo, order: int):
    lifted = v.lift(order)
    return tuple((e, c.numerator, c.denominator)
                 for e, c in sorted(lifted.coeffs.items()))


def tables_equal_upto_permutation(A: CharTable, B: CharTable) -> bool:
    """Exact equality up to simultaneous row and column permutation."""
    ra, rb = len(A.classes), len(B.classes)
    if ra != rb:
        return False
    if sorted(A.classes.sizes) != sorted(B.classes.sizes):
        return False
    if A.degrees != B.degrees:
        return False
    E = math.lcm(math.lcm(*A.classes.orders), math.lcm(*B.classes.orders))
    amat = [[_lifted_key(v, E) for v in ch.values] for ch in A.irreducibles]
    bmat = [[_lifted_key(v, E) for v in ch.values] for ch in B.irreducibles]

    def colkey(mat, classes, j):
        return (classes.sizes[j], classes.orders[j],
                tuple(sorted(mat[i][j] for i in range(ra))))

    akeys = [colkey(amat, A.classes, j) for j in range(ra)]
    bkeys = [colkey(bmat, B.classes, j) for j in range(ra)]
    if sorted(akeys) != sorted(bkeys):
        return False
    cols = sorted(range(ra), key=lambda j: (sum(1 for k in bkeys if k == akeys[j]),
                                            akeys[j]))
    assign = [-1] * ra
    used = [False] * ra

    def rows_match(upto):
        arows = sorted(tuple(row[c] for c in cols[:upto]) for row in amat)
        brows = sorted(tuple(row[assign[c]] for c in cols[:upto]) for row in bmat)
        return arows == brows

    def attempt(idx):
        if idx == ra:
            return True
        j = cols[idx]
        for j2 in range(ra):
            if used[j2] or bkeys[j2] != akeys[j]:
                continue
            assign[j] = j2
            used[j2] = True
            if rows_match(idx + 1) and attempt(idx + 1):
                return True
            used[j2] = False
            assign[j] = -1
        return False

    return attempt(0)


def table_to_json(T: CharTable) -> dict:
    cd = T.classes
    return {
        "group": T.group.label,
        "order": T.group.order,
        "classes": [
            {"rep": T.group.ops.describe(T.group.keys[cd.reps[j]]),
             "size": cd.sizes[j],
             "element_order": cd.orders[j]}
            for j in range(len(cd))
        ],
        "irreducibles": [[v.to_json() for v in ch.values]
                         for ch in T.irreducibles],
    }


def table_to_csv(T: CharTable) -> str:
    """Human-oriented rendering; complex floats, lossy by design."""
    cd = T.classes
    lines = ["# lossy float rendering of an exact table; use JSON for exact values"]
    lines.append(",".join(["degree"] + [f"size{cd.sizes[j]}/ord{cd.orders[j]}"
                                        for j in range(len(cd))]))
    for ch in T.irreducibles:
        cells = []
        for v in ch.values:
            z = v.to_complex()
            cells.append(f"{z.real:.6g}{z.imag:+.6g}i" if abs(z.imag) > 1e-9
                         else f"{z.real:.6g}")
        lines.append(",".join([str(int(ch.degree))] + cells))
    return "\n".join(lines) + "\n"
