"""The small mod-p linear algebra inside the table computation."""

import random

import pytest

from sgplab.chartab import (_charpoly, _dixon_prime, _is_prime, _nullspace,
                            _poly_roots, _primitive_root, _solve_restriction,
                            _sqrt_mod)


def _det_mod(M, p):
    # cofactor expansion; the independent oracle for _charpoly
    n = len(M)
    if n == 1:
        return M[0][0] % p
    out = 0
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * _det_mod(minor, p)
        out += -term if j % 2 else term
    return out % p


def _charpoly_oracle(M, p, x):
    n = len(M)
    A = [[(x if i == j else 0) - M[i][j] for j in range(n)] for i in range(n)]
    return _det_mod(A, p)


@pytest.mark.parametrize("seed", range(8))
def test_charpoly_matches_determinant_oracle(seed):
    p = 101
    rng = random.Random(seed)
    n = rng.randint(1, 6)
    M = [[rng.randrange(p) for _ in range(n)] for _ in range(n)]
    poly = _charpoly(M, p)
    assert len(poly) == n + 1 and poly[-1] == 1
    for x in (0, 1, 2, 17, 55):
        val = sum(c * pow(x, i, p) for i, c in enumerate(poly)) % p
        assert val == _charpoly_oracle(M, p, x)


def test_poly_roots():
    p = 101
    # (x - 3)(x - 7)^2 = x^3 - 17x^2 + 91x - 147
    poly = [(-147) % p, 91 % p, (-17) % p, 1]
    assert _poly_roots(poly, p) == [3, 7]


@pytest.mark.parametrize("seed", range(6))
def test_nullspace(seed):
    p = 97
    rng = random.Random(seed)
    n = rng.randint(2, 6)
    M = [[rng.randrange(p) for _ in range(n)] for _ in range(n)]
    M[n - 1] = [(2 * x) % p for x in M[0]]  # force rank deficiency
    basis = _nullspace(M, p)
    assert basis
    for v in basis:
        for row in M:
            assert sum(a * b for a, b in zip(row, v)) % p == 0


def test_solve_restriction_round_trip():
    p = 97
    rng = random.Random(3)
    r, d = 6, 3
    B = [[rng.randrange(p) for _ in range(d)] for _ in range(r)]
    B[0], B[1], B[2] = [1, 0, 0], [0, 1, 0], [0, 0, 1]  # full column rank
    S = [[rng.randrange(p) for _ in range(d)] for _ in range(d)]
    MB = [[sum(B[i][k] * S[k][j] for k in range(d)) % p for j in range(d)]
          for i in range(r)]
    got = _solve_restriction(B, MB, p)
    assert got == [[S[i][j] % p for j in range(d)] for i in range(d)]


def test_primality_and_dixon_prime():
    assert _is_prime(1021) and _is_prime(3061) and _is_prime(14561)
    assert not _is_prime(10921)  # 67 * 163
    p = _dixon_prime(1020, 979200)
    assert p % 1020 == 1 and p > 2 * 989 and _is_prime(p)
    assert p == 3061


def test_sqrt_mod():
    for p in (101, 97, 3061):
        for a in (1, 4, 9, 17, 40):
            if pow(a, (p - 1) // 2, p) != 1:
                continue
            r = _sqrt_mod(a, p)
            assert r * r % p == a % p
    from sgplab.errors import InternalCheckError
    with pytest.raises(InternalCheckError):
        _sqrt_mod(5, 13)  # 5 is not a square mod 13


def test_primitive_root():
    for p in (13, 1021, 3061):
        g = _primitive_root(p)
        seen = set()
        x = 1
        for _ in range(p - 1):
            x = x * g % p
            seen.add(x)
        assert len(seen) == p - 1
