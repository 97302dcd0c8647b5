"""Finite field construction and arithmetic backed by lookup tables.

A field F_{p^n} is built once into an immutable FieldCtx holding exp/log,
negation, trace, square-indicator and (for even n) norm tables. Elements
are plain ints in [0, q): the base-p packing of the coefficient vector of
the residue class, low degree first. Index 0 is the zero element and
indices 0..p-1 are the prime subfield in the obvious way. All operations
are pure functions of (context, operands).
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

Fe = int  # element index in [0, q)

MAX_FIELD_ORDER = 1 << 16
# a flat q*q addition table is only worth the memory for small fields
_ADD_TABLE_MAX = 256


class FieldError(ValueError):
    """Invalid field spec, or an operation outside its domain."""


class _IdenticallyZero:
    def __repr__(self):
        return "IDENTICALLY_ZERO"


#: Sentinel returned by quadratic_roots when all three coefficients vanish,
#: i.e. every x is a root. Distinct from any root set.
IDENTICALLY_ZERO = _IdenticallyZero()


def _is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m % 2 == 0:
        return m == 2
    f = 3
    while f * f <= m:
        if m % f == 0:
            return False
        f += 2
    return True


def _prime_factors(m: int) -> list[int]:
    out = []
    f = 2
    while f * f <= m:
        if m % f == 0:
            out.append(f)
            while m % f == 0:
                m //= f
        f += 1 if f == 2 else 2
    if m > 1:
        out.append(m)
    return out


def factor_prime_power(q: int) -> tuple[int, int]:
    """Split q into (p, n) with p prime and q = p^n, or raise FieldError."""
    if q < 2:
        raise FieldError(f"field order must be at least 2, got {q}")
    fs = _prime_factors(q)
    if len(fs) != 1:
        raise FieldError(f"{q} is not a prime power")
    p = fs[0]
    n = 0
    while q > 1:
        q //= p
        n += 1
    return p, n


# ---------------------------------------------------------------------------
# raw coefficient-vector arithmetic used only while building tables


def _vec_mul_mod(a, b, modulus, p):
    # schoolbook product reduced by the monic modulus
    n = len(modulus) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    for d in range(len(prod) - 1, n - 1, -1):
        c = prod[d]
        if c:
            prod[d] = 0
            for j in range(n + 1):
                prod[d - n + j] = (prod[d - n + j] - c * modulus[j]) % p
    return prod[:n]


def _vec_pow_mod(a, e, modulus, p):
    n = len(modulus) - 1
    r = [0] * n
    r[0] = 1
    base = list(a)
    while e:
        if e & 1:
            r = _vec_mul_mod(r, base, modulus, p)
        base = _vec_mul_mod(base, base, modulus, p)
        e >>= 1
    return r


def _poly_divides(d, f, p):
    # trial division of f by monic d over F_p, True when remainder is zero
    rem = list(f)
    dd = len(d) - 1
    while len(rem) - 1 >= dd:
        lead = rem[-1]
        if lead:
            shift = len(rem) - 1 - dd
            for j in range(dd + 1):
                rem[shift + j] = (rem[shift + j] - lead * d[j]) % p
        rem.pop()
    return all(c == 0 for c in rem)


def _is_irreducible(modulus, p) -> bool:
    n = len(modulus) - 1
    if n == 1:
        return True
    if modulus[0] == 0:
        return False
    for deg in range(1, n // 2 + 1):
        for low in range(p**deg):
            d = []
            t = low
            for _ in range(deg):
                d.append(t % p)
                t //= p
            d.append(1)
            if _poly_divides(d, modulus, p):
                return False
    return True


def default_modulus(p: int, n: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree n over F_p,
    coefficient tuples compared low degree first."""
    for low in itertools.product(range(p), repeat=n):
        coeffs = list(low) + [1]
        if _is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise FieldError(f"no irreducible of degree {n} over F_{p}")  # unreachable


@dataclass(frozen=True)
class FieldSpec:
    """Validated description of F_{p^n}: prime p, degree n, monic modulus
    of degree n given low degree first."""

    p: int
    n: int
    modulus: tuple[int, ...]

    def __post_init__(self):
        if not _is_prime(self.p):
            raise FieldError(f"p must be prime, got {self.p}")
        if self.n < 1:
            raise FieldError(f"n must be positive, got {self.n}")
        if self.p**self.n > MAX_FIELD_ORDER:
            raise FieldError(
                f"field order {self.p}^{self.n} exceeds the table cap {MAX_FIELD_ORDER}"
            )
        m = self.modulus
        if len(m) != self.n + 1 or m[-1] != 1:
            raise FieldError("modulus must be monic of degree n, low degree first")
        if any(not (0 <= c < self.p) for c in m):
            raise FieldError("modulus coefficients must be reduced mod p")
        if not _is_irreducible(list(m), self.p):
            raise FieldError(f"modulus {m} is reducible over F_{self.p}")

    @property
    def q(self) -> int:
        return self.p**self.n


class FieldCtx:
    """Immutable arithmetic context for one finite field.

    Tables built eagerly: exp/log for a fixed generator, negation, trace
    to F_p, square indicator (odd q), norm to F_sqrt(q) (even n), and a
    flat addition table when q <= 256. The generator is the first element
    index of multiplicative order q-1.
    """

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.p = spec.p
        self.n = spec.n
        self.q = spec.q
        self._default_mod: bool | None = None
        q, p, n = self.q, self.p, self.n

        pw = [p**i for i in range(n)]
        if n > 1:
            digits = []
            for x in range(q):
                t = x
                v = []
                for _ in range(n):
                    v.append(t % p)
                    t //= p
                digits.append(tuple(v))
            self._digits = digits
        else:
            self._digits = None
        self._pw = pw

        self._neg = [self._digit_neg(x) for x in range(q)]
        if q <= _ADD_TABLE_MAX:
            flat = []
            for x in range(q):
                for y in range(q):
                    flat.append(self._digit_add(x, y))
            self._add = flat
        else:
            self._add = None

        self.generator = self._find_generator()
        exp = [1] * (q - 1)
        gvec = self._digit_vec(self.generator)
        acc = [0] * n
        acc[0] = 1
        mod = list(spec.modulus)
        for i in range(1, q - 1):
            acc = _vec_mul_mod(acc, gvec, mod, p)
            exp[i] = self._pack(acc)
        log: list[int | None] = [None] * q
        for i, x in enumerate(exp):
            if log[x] is not None:
                raise FieldError("generator order check failed")
            log[x] = i
        closing = _vec_mul_mod(acc, gvec, mod, p)
        if self._pack(closing) != 1:
            raise FieldError("generator order check failed")
        self.exp = exp
        self.log = log

        trace = []
        for x in range(q):
            t = x
            y = x
            for _ in range(n - 1):
                y = self.frobenius(y)
                t = self.add(t, y)
            if self._digit_vec(t)[1:] != ((0,) * (n - 1) if n > 1 else ()):
                raise FieldError("trace landed outside the prime subfield")
            trace.append(t % p)
        self.trace_table = trace

        if q % 2 == 1:
            qc = [0] * q
            for x in range(1, q):
                qc[x] = 1 if (log[x] % 2 == 0) else -1
            if sum(1 for x in range(1, q) if qc[x] == 1) != (q - 1) // 2:
                raise FieldError("square count check failed")
            self.qchar_table = qc
            self._as_root = None
        else:
            self.qchar_table = None
            # preimage table for z^2 + z = u, used to extract char-2 roots
            as_root: list[int | None] = [None] * q
            for z in range(q):
                u = self.add(self.mul(z, z), z)
                if as_root[u] is None:
                    as_root[u] = z
            self._as_root = as_root

        if n % 2 == 0:
            s = p ** (n // 2)
            self.sqrt_q = s
            norm = [0] * q
            for x in range(1, q):
                norm[x] = exp[(log[x] * (s + 1)) % (q - 1)]
                if self.frobenius(norm[x], n // 2) != norm[x]:
                    raise FieldError("norm landed outside the subfield")
            self.norm_table = norm
        else:
            self.sqrt_q = None
            self.norm_table = None

    # -- construction helpers ------------------------------------------------

    def _digit_vec(self, x: Fe) -> tuple[int, ...]:
        if self._digits is None:
            return (x,)
        return self._digits[x]

    def _pack(self, vec) -> Fe:
        return sum(c * w for c, w in zip(vec, self._pw))

    def _digit_add(self, x: Fe, y: Fe) -> Fe:
        if self.n == 1:
            return (x + y) % self.p
        a = self._digits[x]
        b = self._digits[y]
        return sum(((c + d) % self.p) * w for c, d, w in zip(a, b, self._pw))

    def _digit_neg(self, x: Fe) -> Fe:
        if self.n == 1:
            return (-x) % self.p
        return sum(((-c) % self.p) * w for c, w in zip(self._digits[x], self._pw))

    def _find_generator(self) -> Fe:
        q = self.q
        if q == 2:
            return 1
        rs = _prime_factors(q - 1)
        mod = list(self.spec.modulus)
        for c in range(2, q):
            vec = self._digit_vec(c)
            if all(
                self._pack(_vec_pow_mod(vec, (q - 1) // r, mod, self.p)) != 1
                for r in rs
            ):
                return c
        raise FieldError("no generator found")  # unreachable for true fields

    # -- arithmetic ----------------------------------------------------------

    def add(self, x: Fe, y: Fe) -> Fe:
        if self._add is not None:
            return self._add[x * self.q + y]
        return self._digit_add(x, y)

    def neg(self, x: Fe) -> Fe:
        return self._neg[x]

    def sub(self, x: Fe, y: Fe) -> Fe:
        return self.add(x, self._neg[y])

    def mul(self, x: Fe, y: Fe) -> Fe:
        if x == 0 or y == 0:
            return 0
        return self.exp[(self.log[x] + self.log[y]) % (self.q - 1)]

    def inv(self, x: Fe) -> Fe:
        if x == 0:
            raise FieldError("division by zero")
        return self.exp[(-self.log[x]) % (self.q - 1)]

    def div(self, x: Fe, y: Fe) -> Fe:
        return self.mul(x, self.inv(y))

    def pow(self, x: Fe, e: int) -> Fe:
        """x^e for integer e >= 0, with 0^0 = 1."""
        if e < 0:
            raise FieldError("negative exponent; use inv")
        if x == 0:
            return 1 if e == 0 else 0
        return self.exp[(self.log[x] * e) % (self.q - 1)]

    def frobenius(self, x: Fe, j: int = 1) -> Fe:
        """x^(p^j); j = n is the identity."""
        if x == 0:
            return 0
        return self.exp[(self.log[x] * pow(self.p, j, self.q - 1)) % (self.q - 1)]

    def trace(self, x: Fe) -> int:
        """Absolute trace to F_p, returned as an int in [0, p) (which is
        also the element index of that prime-subfield value)."""
        return self.trace_table[x]

    def norm_to_subfield(self, x: Fe) -> Fe:
        """Norm to F_sqrt(q) for even n: x^(sqrt(q)+1). The result index
        lies in the embedded subfield."""
        if self.norm_table is None:
            raise FieldError("norm to the half-degree subfield needs even n")
        return self.norm_table[x]

    def quadratic_character(self, x: Fe) -> int:
        """1 for nonzero squares, -1 for nonsquares, 0 for zero. Odd q."""
        if self.qchar_table is None:
            raise FieldError("quadratic character is defined for odd q only")
        return self.qchar_table[x]

    def sqrt(self, x: Fe) -> Fe | None:
        """A square root of x, or None when x is a nonsquare (odd q).
        Even q has a unique root. Of the two odd-q roots the smaller
        element index is returned."""
        if x == 0:
            return 0
        if self.q % 2 == 0:
            return self.exp[(self.log[x] * (self.q // 2)) % (self.q - 1)]
        e = self.log[x]
        if e % 2 == 1:
            return None
        r = self.exp[e // 2]
        return min(r, self._neg[r])

    # -- quadratics ------------------------------------------------------

    def quadratic_roots(self, a: Fe, b: Fe, c: Fe):
        """Root set of a + b x + c x^2 as a frozenset of element indices.

        Degenerate cases are handled explicitly; the all-zero polynomial
        returns the IDENTICALLY_ZERO sentinel rather than a root set.
        """
        if c == 0:
            if b == 0:
                return IDENTICALLY_ZERO if a == 0 else frozenset()
            return frozenset({self.div(self._neg[a], b)})
        if self.p == 2:
            if b == 0:
                # squaring is a bijection in characteristic 2
                return frozenset({self.sqrt(self.div(a, c))})
            u = self.div(self.mul(a, c), self.mul(b, b))
            if self.trace_table[u] != 0:
                return frozenset()
            z = self._as_root[u]
            scale = self.div(b, c)
            return frozenset(
                {self.mul(scale, z), self.mul(scale, self.add(z, 1))}
            )
        four = 4 % self.p
        disc = self.sub(self.mul(b, b), self.mul(four, self.mul(a, c)))
        ch = self.qchar_table[disc]
        if ch == -1:
            return frozenset()
        s = self.sqrt(disc)
        inv2c = self.inv(self.mul(2 % self.p, c))
        mb = self._neg[b]
        return frozenset(
            {
                self.mul(self.add(mb, s), inv2c),
                self.mul(self.sub(mb, s), inv2c),
            }
        )

    # -- misc ----------------------------------------------------------------

    def elements(self) -> range:
        return range(self.q)

    def element_from_digits(self, vec) -> Fe:
        if len(vec) != self.n or any(not (0 <= c < self.p) for c in vec):
            raise FieldError("digit vector must have n entries in [0, p)")
        return self._pack(vec)

    def digits_of(self, x: Fe) -> tuple[int, ...]:
        return self._digit_vec(x)

    def spec_string(self) -> str:
        return f"{self.p}^{self.n}/" + ",".join(str(c) for c in self.spec.modulus)

    def short_spec_string(self) -> str:
        return f"{self.p}^{self.n}"

    def report_spec_string(self) -> str:
        """Short 'p^n' for the default modulus, the full form otherwise."""
        if self._default_mod is None:
            self._default_mod = self.spec.modulus == default_modulus(self.p, self.n)
        return self.short_spec_string() if self._default_mod else self.spec_string()

    def __repr__(self):
        return f"FieldCtx(q={self.q}, modulus={self.spec.modulus})"


@functools.lru_cache(maxsize=None)
def _build(p: int, n: int, modulus: tuple[int, ...]) -> FieldCtx:
    return FieldCtx(FieldSpec(p, n, modulus))


def make_field(p: int, n: int, modulus=None) -> FieldCtx:
    """Build (or fetch from cache) the context for F_{p^n}.

    modulus is a low-degree-first monic coefficient sequence of length
    n+1; omit it to get the lexicographically smallest irreducible.
    """
    if not _is_prime(p):
        raise FieldError(f"p must be prime, got {p}")
    if n < 1:
        raise FieldError(f"n must be positive, got {n}")
    if p**n > MAX_FIELD_ORDER:
        raise FieldError(
            f"field order {p}^{n} exceeds the table cap {MAX_FIELD_ORDER}"
        )
    if modulus is None:
        modulus = default_modulus(p, n)
    return _build(p, n, tuple(modulus))


def make_field_of_order(q: int) -> FieldCtx:
    """make_field from a bare prime-power order, default modulus."""
    p, n = factor_prime_power(q)
    return make_field(p, n)


def parse_field_spec(text: str) -> FieldCtx:
    """Parse 'p^n' or 'p^n/c0,c1,...,cn' (modulus low degree first)."""
    body = text.strip()
    mod = None
    if "/" in body:
        body, mtxt = body.split("/", 1)
        try:
            mod = tuple(int(t) for t in mtxt.split(","))
        except ValueError:
            raise FieldError(f"bad modulus in field spec {text!r}") from None
    if "^" in body:
        parts = body.split("^")
        if len(parts) != 2:
            raise FieldError(f"bad field spec {text!r}")
        try:
            p, n = int(parts[0]), int(parts[1])
        except ValueError:
            raise FieldError(f"bad field spec {text!r}") from None
    else:
        try:
            p, n = int(body), 1
        except ValueError:
            raise FieldError(f"bad field spec {text!r}") from None
    return make_field(p, n, mod)
