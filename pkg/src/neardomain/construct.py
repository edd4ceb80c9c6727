"""Constructors for concrete models: Galois fields and Dickson near-fields.

Field elements are polynomials over F_p of degree below n, encoded base p
(little endian), so index 0 is the zero polynomial and index 1 the constant 1.
The Dickson construction twists multiplication of GF(q^2) by the q-power
Frobenius on the right factor whenever the left factor is a non-square; the
twist keys on the left factor precisely so that left distributivity survives.
"""

from __future__ import annotations

from itertools import product

from .errors import ConstructionError
from .tables import NearDomainTable, make_table

__all__ = [
    "galois_field",
    "dickson_near_field",
    "default_modulus",
    "is_prime",
    "prime_power",
]


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    f = 2
    while f * f <= m:
        if m % f == 0:
            return False
        f += 1
    return True


def prime_power(q: int):
    """(p, e) with q = p^e for prime p, or None."""
    if q < 2:
        return None
    p = 2
    while p * p <= q:
        if q % p == 0:
            e = 0
            m = q
            while m % p == 0:
                m //= p
                e += 1
            return (p, e) if m == 1 else None
        p += 1
    return (q, 1)


# --- polynomial helpers over F_p, little-endian coefficient tuples


def _trim(poly):
    i = len(poly)
    while i > 0 and poly[i - 1] == 0:
        i -= 1
    return tuple(poly[:i])


def _poly_mul(f, g, p):
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return _trim(out)


def _poly_mod(f, modulus, p):
    # modulus is monic
    f = list(f)
    deg_m = len(modulus) - 1
    for i in range(len(f) - 1, deg_m - 1, -1):
        c = f[i]
        if c:
            for j, b in enumerate(modulus):
                f[i - deg_m + j] = (f[i - deg_m + j] - c * b) % p
    return _trim(f)


def poly_str(poly) -> str:
    if not _trim(poly):
        return "0"
    parts = []
    for i in range(len(poly) - 1, -1, -1):
        c = poly[i]
        if not c:
            continue
        if i == 0:
            parts.append(str(c))
        else:
            x = "x" if i == 1 else f"x^{i}"
            parts.append(x if c == 1 else f"{c}{x}")
    return " + ".join(parts)


def _find_factor(modulus, p):
    """A monic proper factor of the modulus, or None if it is irreducible."""
    deg = len(modulus) - 1
    for d in range(1, deg // 2 + 1):
        for tail in product(range(p), repeat=d):
            g = tuple(tail) + (1,)
            if not _poly_mod(modulus, g, p):
                return g
    return None


def default_modulus(p: int, n: int):
    """First monic irreducible of degree n over F_p, by ascending coefficients."""
    for tail in product(range(p), repeat=n):
        candidate = tuple(tail) + (1,)
        if _find_factor(candidate, p) is None:
            return candidate
    raise ConstructionError(f"no irreducible of degree {n} over F_{p}")  # unreachable


def _encode(poly, p, n) -> int:
    idx = 0
    for i in range(n - 1, -1, -1):
        c = poly[i] if i < len(poly) else 0
        idx = idx * p + c
    return idx


def _decode(idx, p, n):
    coeffs = []
    for _ in range(n):
        coeffs.append(idx % p)
        idx //= p
    return _trim(coeffs)


def galois_field(p: int, n: int = 1, modulus=None) -> NearDomainTable:
    """The field GF(p^n) as a table, with an explicit or default modulus."""
    if not is_prime(p):
        raise ConstructionError(f"{p} is not prime")
    if n < 1:
        raise ConstructionError(f"extension degree must be positive, got {n}")
    if modulus is None:
        modulus = default_modulus(p, n)
    else:
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != n + 1 or modulus[-1] != 1:
            raise ConstructionError(
                f"modulus must be monic of degree {n}, got {poly_str(modulus)}"
            )
        factor = _find_factor(modulus, p)
        if factor is not None:
            raise ConstructionError(
                f"{poly_str(modulus)} is reducible over F_{p}: "
                f"divisible by {poly_str(factor)}"
            )
    q = p**n
    polys = [_decode(i, p, n) for i in range(q)]
    add = [
        [
            _encode(
                tuple(
                    ((polys[a][i] if i < len(polys[a]) else 0)
                     + (polys[b][i] if i < len(polys[b]) else 0)) % p
                    for i in range(n)
                ),
                p,
                n,
            )
            for b in range(q)
        ]
        for a in range(q)
    ]
    mul = [
        [_encode(_poly_mod(_poly_mul(polys[a], polys[b], p), modulus, p), p, n)
         for b in range(q)]
        for a in range(q)
    ]
    label = f"gf({p})" if n == 1 else f"gf({p}^{n}) mod {poly_str(modulus)}"
    return make_table(add, mul, label=label)


# --- the index-2 Dickson twist


def _pow(mul, a: int, e: int) -> int:
    r = 1
    while e:
        if e & 1:
            r = mul[r][a]
        a = mul[a][a]
        e >>= 1
    return r


def _verify_mul_group(mul, n: int) -> None:
    """Exhaustive group check on the nonzero part; guards the twist convention."""
    for a in range(1, n):
        if mul[1][a] != a or mul[a][1] != a:
            raise ConstructionError(f"twisted product has no identity at {a}")
        if not any(mul[a][b] == 1 and mul[b][a] == 1 for b in range(1, n)):
            raise ConstructionError(f"twisted product has no inverse for {a}")
    for a in range(1, n):
        for b in range(1, n):
            if mul[a][b] == 0:
                raise ConstructionError(f"twisted product not closed at ({a}, {b})")
    for a in range(1, n):
        for b in range(1, n):
            ab = mul[a][b]
            for c in range(1, n):
                if mul[ab][c] != mul[a][mul[b][c]]:
                    raise ConstructionError(
                        f"twisted product not associative at ({a}, {b}, {c})"
                    )


def dickson_near_field(q: int) -> NearDomainTable:
    """The order-q^2 near-field twisting GF(q^2) by the q-power Frobenius.

    Requires q an odd prime power.  The smallest proper example, q = 3, has
    the quaternion group of order 8 as its multiplicative group.
    """
    pe = prime_power(q)
    if pe is None:
        raise ConstructionError(f"{q} is not a prime power")
    p, e = pe
    if p == 2:
        raise ConstructionError(f"q must be odd, got {q}")
    base = galois_field(p, 2 * e)
    n = q * q
    squares = {base.mul[a][a] for a in range(1, n)}
    if len(squares) * 2 != n - 1:
        raise ConstructionError("squares do not have index 2")  # unreachable for odd q
    frob = [_pow(base.mul, a, q) for a in range(n)]
    mul = [
        list(base.mul[a]) if a == 0 or a in squares
        else [base.mul[a][frob[b]] for b in range(n)]
        for a in range(n)
    ]
    _verify_mul_group(mul, n)
    return make_table(base.add, mul, label=f"dickson({q})")
