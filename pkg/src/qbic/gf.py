"""Exact arithmetic in small finite fields GF(p^s).

Element encoding: the integer 0 is the zero element and a code c in
[1, N-1] stands for g^(c-1), where N = p^s and g is the fixed
multiplicative generator (the class of x modulo the canonical primitive
polynomial).  Multiplication, inversion and Frobenius are then index
arithmetic modulo N-1; addition goes through a Zech-logarithm table.
A context costs O(N) memory, which is why field orders are capped.

The modulus is deterministic: the lexicographically smallest (by
coefficient tuple, constant term first) monic primitive polynomial of
degree s over GF(p).  Every serialized artifact embeds this descriptor,
so files are reproducible bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

import numpy as np

from .errors import FieldSizeError, QbicError

MAX_FIELD_ORDER = 1 << 20


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _prime_factors(n: int) -> list[int]:
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


# -- dense polynomial helpers over GF(p); coefficient lists, constant term first


def _poly_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mulmod(a, b, m, p):
    res = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                res[i + j] = (res[i + j] + ai * bj) % p
    # reduce modulo the monic polynomial m
    dm = len(m) - 1
    for i in range(len(res) - 1, dm - 1, -1):
        c = res[i]
        if c:
            res[i] = 0
            for j in range(dm):
                res[i - dm + j] = (res[i - dm + j] - c * m[j]) % p
    return _poly_trim(res)


def _poly_powmod(a, e, m, p):
    result = [1]
    base = list(a)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, m, p)
        base = _poly_mulmod(base, base, m, p)
        e >>= 1
    return result


def _poly_gcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        # a mod b with b made monic
        inv = pow(b[-1], p - 2, p)
        bm = [(c * inv) % p for c in b]
        r = list(a)
        while len(r) >= len(bm) and r:
            c = r[-1]
            if c:
                off = len(r) - len(bm)
                for j in range(len(bm)):
                    r[off + j] = (r[off + j] - c * bm[j]) % p
            r.pop()
            _poly_trim(r)
        a, b = b, r
    return a


def _is_irreducible(m, p, s):
    x = [0, 1]
    xs = _poly_powmod(x, p**s, m, p)
    if _poly_trim([(a - b) % p for a, b in zip_pad(xs, x, p)]):
        return False
    for ell in _prime_factors(s):
        xe = _poly_powmod(x, p ** (s // ell), m, p)
        diff = _poly_trim([(a - b) % p for a, b in zip_pad(xe, x, p)])
        g = _poly_gcd(m, diff, p) if diff else list(m)
        if len(g) - 1 != 0:
            return False
    return True


def zip_pad(a, b, p):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n)]


def _is_primitive(m, p, s):
    n1 = p**s - 1
    x = [0, 1]
    for ell in _prime_factors(n1):
        if _poly_powmod(x, n1 // ell, m, p) == [1]:
            return False
    return True


def _find_canonical_modulus(p: int, s: int) -> tuple[int, ...]:
    """Lexicographically smallest monic primitive polynomial of degree s."""
    if s == 1:
        # x + c0 with -c0 a generator of GF(p)^x
        for c0 in range(p):
            g = (-c0) % p
            if g and all(pow(g, (p - 1) // ell, p) != 1 for ell in _prime_factors(p - 1)):
                return (c0, 1)
        raise QbicError("no primitive degree-1 polynomial found")
    # iterate coefficient tuples (c0, ..., c_{s-1}) in lexicographic order
    total = p**s
    for idx in range(total):
        tup = []
        t = idx
        for k in range(s - 1, -1, -1):
            d, t = divmod(t, p**k)
            tup.append(d)
        if tup[0] == 0:
            continue
        norm = ((-1) ** s * tup[0]) % p
        if p > 2:
            if norm == 0 or any(pow(norm, (p - 1) // ell, p) == 1 for ell in _prime_factors(p - 1)):
                continue
        m = list(tup) + [1]
        if _is_irreducible(m, p, s) and _is_primitive(m, p, s):
            return tuple(m)
    raise QbicError(f"no primitive polynomial of degree {s} over GF({p})")


class FieldCtx:
    """Arithmetic context for GF(p^s).  Immutable; share freely across threads.

    Scalars are plain integer codes; use :meth:`scalar` for a wrapped value.
    """

    def __init__(self, p: int, s: int):
        if not _is_prime(p):
            raise QbicError(f"p = {p} is not prime")
        order = p**s
        if order > MAX_FIELD_ORDER:
            raise FieldSizeError(f"p^s = {order} exceeds cap {MAX_FIELD_ORDER}")
        self.p = p
        self.s = s
        self.order = order
        self.modulus = _find_canonical_modulus(p, s)
        self._build_tables()
        self._frob_exp_cache: dict[tuple[int, int], int] = {}

    # -- table construction ------------------------------------------------

    def _build_tables(self):
        p, s, N = self.p, self.s, self.order
        poly_of_code = np.zeros(N, dtype=np.int64)
        if p == 2:
            packed_mod = sum(c << i for i, c in enumerate(self.modulus))
            vals = np.zeros(N - 1, dtype=np.int64)
            hi = 1 << s
            x = 1  # g^0; each step multiplies by the generator, the class of x
            for k in range(N - 1):
                vals[k] = x
                x <<= 1
                if x & hi:
                    x ^= packed_mod
            poly_of_code[1:] = vals
        else:
            coeffs = [1] + [0] * (s - 1)
            vals = np.zeros(N - 1, dtype=np.int64)
            weights = [p**i for i in range(s)]
            mod = self.modulus
            for k in range(N - 1):
                vals[k] = sum(c * w for c, w in zip(coeffs, weights))
                lead = coeffs[-1]
                coeffs = [0] + coeffs[:-1]
                if lead:
                    for i in range(s):
                        coeffs[i] = (coeffs[i] - lead * mod[i]) % p
            poly_of_code[1:] = vals
        if np.unique(poly_of_code).size != N:
            raise QbicError("generator does not have full multiplicative order")
        code_of_poly = np.zeros(N, dtype=np.int64)
        code_of_poly[poly_of_code] = np.arange(N, dtype=np.int64)
        # Zech table: zech[d] = code of 1 + g^d
        pf = poly_of_code[1:]
        if p == 2:
            one_plus = pf ^ 1
        else:
            c0 = pf % p
            one_plus = pf - c0 + (c0 + 1) % p
        self.poly_of_code = poly_of_code
        self.code_of_poly = code_of_poly
        self.zech = code_of_poly[one_plus]

    # -- scalar arithmetic on codes -----------------------------------------

    def add(self, a: int, b: int) -> int:
        if a == 0:
            return b
        if b == 0:
            return a
        n1 = self.order - 1
        z = int(self.zech[(b - a) % n1])
        if z == 0:
            return 0
        return (a - 1 + z - 1) % n1 + 1

    def neg(self, a: int) -> int:
        if self.p == 2 or a == 0:
            return a
        return self.mul(a, self.code_of_minus_one)

    @property
    def code_of_minus_one(self) -> int:
        if self.p == 2:
            return 1
        return (self.order - 1) // 2 + 1

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return (a - 1 + b - 1) % (self.order - 1) + 1

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return (-(a - 1)) % (self.order - 1) + 1

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow_(self, a: int, e: int) -> int:
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 0
        return ((a - 1) * e) % (self.order - 1) + 1

    def frob_exponent(self, q: int, k: int) -> int:
        """q^k reduced modulo order-1, for possibly negative k."""
        key = (q, k)
        got = self._frob_exp_cache.get(key)
        if got is None:
            n1 = self.order - 1
            got = pow(q, k, n1) if k >= 0 else pow(pow(q, -1, n1), -k, n1)
            self._frob_exp_cache[key] = got
        return got

    def frob(self, a: int, q: int, k: int = 1) -> int:
        """a^(q^k); k may be negative (inverse Frobenius)."""
        if a == 0:
            return 0
        return ((a - 1) * self.frob_exponent(q, k)) % (self.order - 1) + 1

    # -- conversions ---------------------------------------------------------

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    @property
    def generator(self) -> int:
        return 2 if self.order > 2 else 1

    def from_int(self, n: int) -> int:
        """Image of the integer n in the prime subfield."""
        n %= self.p
        c = 0
        for _ in range(n):
            c = self.add(c, 1)
        return c

    def coeffs(self, a: int) -> tuple[int, ...]:
        """Coefficient vector over GF(p), constant term first, length s."""
        v = int(self.poly_of_code[a])
        out = []
        for _ in range(self.s):
            out.append(v % self.p)
            v //= self.p
        return tuple(out)

    def from_coeffs(self, coeffs) -> int:
        if len(coeffs) != self.s:
            raise QbicError("coefficient vector has wrong length")
        packed = sum((int(c) % self.p) * self.p**i for i, c in enumerate(coeffs))
        return int(self.code_of_poly[packed])

    def dlog(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("dlog of zero")
        return a - 1

    def elements(self):
        """All element codes: zero first, then increasing discrete log."""
        return range(self.order)

    def nonzero(self):
        return range(1, self.order)

    # -- roots and subfields ---------------------------------------------------

    def nth_root(self, a: int, n: int) -> int | None:
        """Some y with y^n = a (smallest discrete log), or None."""
        if n <= 0:
            raise QbicError("root index must be positive")
        if a == 0:
            return 0
        n1 = self.order - 1
        k = a - 1
        d = gcd(n, n1)
        if k % d:
            return None
        step = n1 // d
        j0 = ((k // d) * pow(n // d, -1, step)) % step
        return j0 + 1

    def in_subfield(self, a: int, d: int) -> bool:
        """True iff a lies in GF(p^d); requires d | s."""
        if self.s % d:
            raise QbicError(f"GF({self.p}^{d}) is not a subfield of GF({self.p}^{self.s})")
        return self.frob(a, self.p, d) == a

    def subfield_codes(self, d: int) -> list[int]:
        """All codes of the subfield GF(p^d), zero first then by dlog."""
        if self.s % d:
            raise QbicError("not a subfield")
        step = (self.order - 1) // (self.p**d - 1)
        return [0] + [k * step + 1 for k in range(self.p**d - 1)]

    def descriptor(self) -> dict:
        return {"p": self.p, "s": self.s, "modulus": list(self.modulus)}

    def scalar(self, code: int) -> "Scalar":
        return Scalar(self, code)

    def __repr__(self):
        return f"GF({self.p}^{self.s})" if self.s > 1 else f"GF({self.p})"


@lru_cache(maxsize=None)
def make_field(p: int, s: int) -> FieldCtx:
    """Deterministic context for GF(p^s); cached, so contexts are singletons."""
    return FieldCtx(p, s)


@dataclass(frozen=True)
class Scalar:
    """A field element bound to its context; thin wrapper over an int code."""

    ctx: FieldCtx
    code: int

    def _peer(self, other) -> int:
        if isinstance(other, Scalar):
            if other.ctx is not self.ctx:
                raise QbicError("scalars from different field contexts")
            return other.code
        if isinstance(other, int):
            return self.ctx.from_int(other)
        return NotImplemented

    def __add__(self, other):
        return Scalar(self.ctx, self.ctx.add(self.code, self._peer(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return Scalar(self.ctx, self.ctx.sub(self.code, self._peer(other)))

    def __mul__(self, other):
        return Scalar(self.ctx, self.ctx.mul(self.code, self._peer(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return Scalar(self.ctx, self.ctx.div(self.code, self._peer(other)))

    def __neg__(self):
        return Scalar(self.ctx, self.ctx.neg(self.code))

    def __pow__(self, e: int):
        return Scalar(self.ctx, self.ctx.pow_(self.code, e))

    def frob(self, q: int, k: int = 1) -> "Scalar":
        return Scalar(self.ctx, self.ctx.frob(self.code, q, k))

    def __bool__(self):
        return self.code != 0

    def __repr__(self):
        if self.code == 0:
            return "0"
        if self.code == 1:
            return "1"
        return f"g^{self.code - 1}"


# -- embeddings between contexts of the same characteristic -----------------

_embed_cache: dict[tuple[int, int, int], int] = {}


def embedding_dlog_multiplier(src: FieldCtx, dst: FieldCtx) -> int:
    """dlog of the canonical image of src's generator inside dst.

    The image is the root of src.modulus in dst with the smallest discrete
    log, which pins the embedding GF(p^s0) -> GF(p^s1) deterministically.
    """
    if src.p != dst.p or dst.s % src.s:
        raise QbicError(f"{src} does not embed in {dst}")
    if src.s == dst.s:
        return 1
    key = (src.p, src.s, dst.s)
    got = _embed_cache.get(key)
    if got is not None:
        return got
    n_src, n_dst = src.order - 1, dst.order - 1
    step = n_dst // n_src
    mod_codes = [dst.from_int(c) for c in src.modulus]
    found = None
    for k in range(n_src):
        rho = k * step + 1  # candidate subfield element g_dst^(k*step)
        acc = 0
        for c in reversed(mod_codes):
            acc = dst.add(dst.mul(acc, rho), c)
        if acc == 0:
            found = k * step
            break
    if found is None:
        raise QbicError("embedding root not found")
    _embed_cache[key] = found
    return found


def embed_code(a: int, src: FieldCtx, dst: FieldCtx) -> int:
    if src is dst:
        return a
    if a == 0:
        return 0
    mult = embedding_dlog_multiplier(src, dst)
    return ((a - 1) * mult) % (dst.order - 1) + 1


@lru_cache(maxsize=None)
def _unembed_map(big_key: tuple[int, int], small_key: tuple[int, int]) -> dict:
    big, small = make_field(*big_key), make_field(*small_key)
    return {embed_code(a, small, big): a for a in small.elements()}


def unembed_code(a: int, big: FieldCtx, small: FieldCtx) -> int:
    """Preimage of a under the canonical embedding small -> big.

    Raises if a does not lie in the image subfield.
    """
    if big is small:
        return a
    table = _unembed_map((big.p, big.s), (small.p, small.s))
    if a not in table:
        raise QbicError(f"element does not lie in the subfield GF({small.p}^{small.s})")
    return table[a]
