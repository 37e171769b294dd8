__all__ = [
    "FieldContext",
    "FieldElement",
    "IntPoly",
    "UniPoly",
    "embed_subfield",
    "embedding_map",
    "fe_inv",
    "fe_pow",
    "field_create",
    "is_irreducible",
    "matrix_mod",
    "matrix_rank_mod",
    "mult_order_mod",
    "poly_distinct_degree_factor",
    "poly_gcd",
    "poly_roots",
    "poly_squarefree_decomposition",
    "poly_xgcd",
]

import functools
import itertools
import logging
import math
from collections.abc import Callable, Iterable, Iterator
from dataclasses import dataclass
from typing import Optional, Union

from sympy import GF, ZZ, Poly, Symbol, isprime, n_order, primefactors
from sympy.ntheory import sqrt_mod
from sympy.polys.matrices import DomainMatrix

from .const import MAX_EXTENSION_DEGREE, MAX_FIELD_SIZE, ROOT_SEARCH_CAP, TABLE_FIELD_CAP
from .errors import (
    BothZero,
    DegreeOutOfRange,
    DivisionByZero,
    FieldTooLarge,
    NotASubfield,
    NotCoprime,
    NotPrime,
    NotSquarefree,
)

logger = logging.getLogger(__name__)


class FieldContext:
    """Arithmetic of the finite field 𝔽_q, q = p^a

    Elements are packed integers in ``range(q)``: the residue
    c_0 + c_1 u + ... + c_{a-1} u^{a-1} modulo the monic ``modulus`` is stored as
    sum(c_i * p**i), so the prime subfield is ``range(p)``. Fields with
    q <= TABLE_FIELD_CAP keep exp/log tables of a primitive element together with
    a Zech table for addition.

    :param p: Characteristic
    :param a: Extension degree over 𝔽_p
    :param modulus: Coefficients of the defining polynomial, constant term first
    """

    __slots__ = ("p", "a", "q", "modulus", "_order", "_generator", "_exp", "_log", "_zech")

    def __init__(self, p: int, a: int, modulus: tuple[int, ...]):
        self.p: int = p
        self.a: int = a
        self.q: int = p**a
        self.modulus: tuple[int, ...] = modulus
        self._order: int = self.q - 1
        self._generator: Optional[int] = None
        self._exp: Optional[list[int]] = None
        self._log: Optional[list[int]] = None
        self._zech: Optional[list[int]] = None
        if self.q <= TABLE_FIELD_CAP:
            self._build_tables()

    def __repr__(self) -> str:
        return f"FieldContext(p={self.p}, a={self.a}, modulus={self.modulus})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, FieldContext):
            return NotImplemented
        return (self.p, self.a, self.modulus) == (other.p, other.a, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.a, self.modulus))

    @property
    def has_tables(self) -> bool:
        return self._log is not None

    # -- packing ---------------------------------------------------------------

    def digits(self, n: int) -> list[int]:
        """Coefficients of the packed element ``n``, constant term first"""
        out = []
        for _ in range(self.a):
            n, d = divmod(n, self.p)
            out.append(d)
        return out

    def pack(self, coeffs: Iterable[int]) -> int:
        n = 0
        for c in reversed(list(coeffs)):
            n = n * self.p + c % self.p
        return n

    def key(self, n: int) -> tuple[int, ...]:
        """Sort key ordering elements lexicographically by coefficients, constant first"""
        return tuple(self.digits(n))

    def from_int(self, k: int) -> int:
        return k % self.p

    def element(self, n: int) -> "FieldElement":
        return FieldElement(self, n)

    def elements(self) -> Iterator[int]:
        return iter(range(self.q))

    # -- slow arithmetic, used before the tables exist ----------------------------

    def _mul_digits(self, x: int, y: int) -> int:
        p, a = self.p, self.a
        xd, yd = self.digits(x), self.digits(y)
        prod = [0] * (2 * a - 1)
        for i, xi in enumerate(xd):
            if xi:
                for j, yj in enumerate(yd):
                    if yj:
                        prod[i + j] += xi * yj
        m = self.modulus
        for k in range(2 * a - 2, a - 1, -1):
            c = prod[k] % p
            if c:
                for i in range(a):
                    prod[k - a + i] -= c * m[i]
            prod[k] = 0
        return self.pack(prod[:a])

    def _mul_slow(self, x: int, y: int) -> int:
        if self.a == 1:
            return x * y % self.p
        return self._mul_digits(x, y)

    def _pow_slow(self, x: int, e: int) -> int:
        result = 1
        while e:
            if e & 1:
                result = self._mul_slow(result, x)
            x = self._mul_slow(x, x)
            e >>= 1
        return result

    def primitive_element(self) -> int:
        """Least packed integer generating 𝔽_q^*"""
        if self._generator is None:
            if self.q == 2:
                self._generator = 1
            else:
                factors = primefactors(self._order)
                for cand in range(2, self.q):
                    if all(self._pow_slow(cand, self._order // r) != 1 for r in factors):
                        self._generator = cand
                        break
        return self._generator

    def _build_tables(self) -> None:
        p, order = self.p, self._order
        g = self.primitive_element()
        logger.g2_trace("Building log tables for %s^%s with generator %s", p, self.a, g)
        exp = [0] * (2 * order)
        log = [-1] * self.q
        x = 1
        for i in range(order):
            exp[i] = x
            exp[i + order] = x
            log[x] = i
            x = self._mul_slow(x, g)
        zech = [0] * order
        for k in range(order):
            n = exp[k]
            low = n % p
            one_plus = n - low + (low + 1) % p
            zech[k] = -1 if one_plus == 0 else log[one_plus]
        self._exp, self._log, self._zech = exp, log, zech

    # -- arithmetic on packed integers ---------------------------------------------

    def add(self, x: int, y: int) -> int:
        if self.a == 1:
            s = x + y
            return s - self.p if s >= self.p else s
        if self._log is not None:
            if x == 0:
                return y
            if y == 0:
                return x
            lx = self._log[x]
            z = self._zech[(self._log[y] - lx) % self._order]
            if z < 0:
                return 0
            return self._exp[lx + z]
        return self.pack(i + j for i, j in zip(self.digits(x), self.digits(y)))

    def neg(self, x: int) -> int:
        if x == 0 or self.p == 2:
            return x
        if self.a == 1:
            return self.p - x
        if self._log is not None:
            return self._exp[self._log[x] + self._order // 2]
        return self.pack(-d for d in self.digits(x))

    def sub(self, x: int, y: int) -> int:
        if self.a == 1:
            return (x - y) % self.p
        return self.add(x, self.neg(y))

    def mul(self, x: int, y: int) -> int:
        if self.a == 1:
            return x * y % self.p
        if x == 0 or y == 0:
            return 0
        if self._log is not None:
            return self._exp[self._log[x] + self._log[y]]
        return self._mul_digits(x, y)

    def inv(self, x: int) -> int:
        if x == 0:
            raise DivisionByZero(f"Zero has no inverse in 𝔽_{self.q}")
        if self.a == 1:
            return pow(x, -1, self.p)
        if self._log is not None:
            return self._exp[(self._order - self._log[x]) % self._order]
        return self._pow_slow(x, self.q - 2)

    def div(self, x: int, y: int) -> int:
        return self.mul(x, self.inv(y))

    def pow(self, x: int, e: int) -> int:
        if x == 0:
            if e > 0:
                return 0
            if e == 0:
                return 1
            raise DivisionByZero(f"Zero raised to negative power {e}")
        if self.a == 1:
            return pow(x, e, self.p)
        if self._log is not None:
            return self._exp[(self._log[x] * e) % self._order]
        if e < 0:
            x, e = self.inv(x), -e
        return self._pow_slow(x, e % self._order)

    def frobenius(self, x: int, power: int = 1) -> int:
        """x ** (p ** power)"""
        if x == 0:
            return 0
        return self.pow(x, pow(self.p, power, self._order))

    def log(self, x: int) -> int:
        """Discrete logarithm to the base of ``primitive_element``"""
        if x == 0:
            raise DivisionByZero("Logarithm of zero")
        if self._log is None:
            raise FieldTooLarge(f"No log table for 𝔽_{self.q}")
        return self._log[x]

    def is_square(self, x: int) -> bool:
        if x == 0 or self.p == 2:
            return True
        if self._log is not None:
            return self._log[x] % 2 == 0
        return self.pow(x, self._order // 2) == 1

    def chi(self, x: int) -> int:
        """Quadratic character: 0, 1 or -1"""
        if x == 0:
            return 0
        return 1 if self.is_square(x) else -1

    def sqrt(self, x: int) -> Optional[int]:
        """A square root of ``x`` or None when ``x`` is a non-square"""
        if x == 0:
            return 0
        if self._log is not None:
            k = self._log[x]
            if k % 2:
                if self.p != 2:
                    return None
                k += self._order
            return self._exp[k // 2]
        if self.a == 1:
            root = sqrt_mod(x, self.p)
            return None if root is None else int(root)
        return self._tonelli_shanks(x)

    def _tonelli_shanks(self, x: int) -> Optional[int]:
        if self.p == 2:
            return self.pow(x, self.q // 2)
        if not self.is_square(x):
            return None
        t, s = self._order, 0
        while t % 2 == 0:
            t //= 2
            s += 1
        z = next(n for n in range(2, self.q) if not self.is_square(n))
        m, c, r, tt = s, self.pow(z, t), self.pow(x, (t + 1) // 2), self.pow(x, t)
        while tt != 1:
            i, tmp = 0, tt
            while tmp != 1:
                tmp = self.mul(tmp, tmp)
                i += 1
            b = c
            for _ in range(m - i - 1):
                b = self.mul(b, b)
            m, c = i, self.mul(b, b)
            tt, r = self.mul(tt, c), self.mul(r, b)
        return r


@functools.lru_cache(maxsize=None)
def field_create(p: int, a: int = 1) -> FieldContext:
    """Create (or fetch) the canonical representation of 𝔽_{p^a}

    The modulus is the first irreducible monic polynomial of degree ``a`` when the
    lower coefficients (c_0, ..., c_{a-1}) run through 𝔽_p^a in lexicographic order.

    :param p: Prime characteristic
    :param a: Extension degree, 1 <= a <= MAX_EXTENSION_DEGREE

    :return: Field context, identical for identical arguments
    """
    if not isinstance(p, int) or p < 2 or not isprime(p):
        raise NotPrime(f"{p} is not a prime")
    if not isinstance(a, int) or not 1 <= a <= MAX_EXTENSION_DEGREE:
        raise DegreeOutOfRange(f"Extension degree {a} outside 1..{MAX_EXTENSION_DEGREE}")
    if p**a > MAX_FIELD_SIZE:
        raise FieldTooLarge(f"{p}^{a} exceeds {MAX_FIELD_SIZE}")
    if a == 1:
        return FieldContext(p, 1, (0, 1))
    logger.debug("Searching canonical modulus for %s^%s", p, a)
    return FieldContext(p, a, _canonical_modulus(p, a))


def _canonical_modulus(p: int, a: int) -> tuple[int, ...]:
    prime = field_create(p, 1)
    for lower in itertools.product(range(p), repeat=a):
        if lower[0] == 0:
            continue
        if is_irreducible(UniPoly(prime, lower + (1,))):
            return lower + (1,)
    raise AssertionError(f"No irreducible polynomial of degree {a} over 𝔽_{p}")


class FieldElement:
    """A value of a FieldContext with operator support

    Integers mix freely and are read in the prime subfield.
    """

    __slots__ = ("ctx", "value")

    def __init__(self, ctx: FieldContext, value: int):
        self.ctx = ctx
        self.value = value

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.ctx != self.ctx:
                raise TypeError(f"Cannot mix elements of {self.ctx} and {other.ctx}")
            return other.value
        if isinstance(other, int):
            return self.ctx.from_int(other)
        return NotImplemented

    def __add__(self, other):
        return FieldElement(self.ctx, self.ctx.add(self.value, self._coerce(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.ctx, self.ctx.sub(self.value, self._coerce(other)))

    def __rsub__(self, other):
        return FieldElement(self.ctx, self.ctx.sub(self._coerce(other), self.value))

    def __mul__(self, other):
        return FieldElement(self.ctx, self.ctx.mul(self.value, self._coerce(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.ctx, self.ctx.div(self.value, self._coerce(other)))

    def __rtruediv__(self, other):
        return FieldElement(self.ctx, self.ctx.div(self._coerce(other), self.value))

    def __neg__(self):
        return FieldElement(self.ctx, self.ctx.neg(self.value))

    def __pow__(self, e: int):
        return FieldElement(self.ctx, self.ctx.pow(self.value, e))

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.ctx == other.ctx and self.value == other.value
        if isinstance(other, int):
            return self.value == self.ctx.from_int(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ctx.p, self.ctx.a, self.value))

    def __repr__(self) -> str:
        if self.ctx.a == 1:
            return f"FieldElement({self.value} mod {self.ctx.p})"
        return f"FieldElement({self.ctx.digits(self.value)} in 𝔽_{self.ctx.q})"

    @property
    def coefficients(self) -> tuple[int, ...]:
        return tuple(self.ctx.digits(self.value))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.ctx, self.ctx.inv(self.value))

    def is_zero(self) -> bool:
        return self.value == 0


def fe_inv(x: FieldElement) -> FieldElement:
    return x.inverse()


def fe_pow(x: FieldElement, e: int) -> FieldElement:
    return x**e


class UniPoly:
    """Univariate polynomial over a FieldContext

    Coefficients are packed field integers, constant term first, with no trailing
    zeros. The zero polynomial has degree -1.
    """

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldContext, coeffs: Iterable[int] = ()):
        out = list(coeffs)
        while out and out[-1] == 0:
            out.pop()
        self.ctx = ctx
        self.coeffs: tuple[int, ...] = tuple(out)

    @classmethod
    def zero(cls, ctx: FieldContext) -> "UniPoly":
        return cls(ctx)

    @classmethod
    def one(cls, ctx: FieldContext) -> "UniPoly":
        return cls(ctx, (1,))

    @classmethod
    def gen(cls, ctx: FieldContext) -> "UniPoly":
        return cls(ctx, (0, 1))

    @classmethod
    def linear(cls, ctx: FieldContext, root: int) -> "UniPoly":
        """X - root"""
        return cls(ctx, (ctx.neg(root), 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (1,)

    def __eq__(self, other) -> bool:
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.ctx == other.ctx and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        if self.ctx.a == 1:
            return f"UniPoly({list(self.coeffs)} mod {self.ctx.p})"
        return f"UniPoly({[self.ctx.digits(c) for c in self.coeffs]} in 𝔽_{self.ctx.q})"

    def sort_key(self) -> tuple:
        return (self.degree, tuple(self.ctx.key(c) for c in self.coeffs))

    def map_coeffs(
        self, fn: Callable[[int], int], ctx: Optional[FieldContext] = None
    ) -> "UniPoly":
        """Apply ``fn`` to every coefficient; ``ctx`` is the field of the images"""
        return UniPoly(ctx or self.ctx, (fn(c) for c in self.coeffs))

    def __add__(self, other: "UniPoly") -> "UniPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        add = self.ctx.add
        for i, c in enumerate(b):
            out[i] = add(out[i], c)
        return UniPoly(self.ctx, out)

    def __neg__(self) -> "UniPoly":
        return self.map_coeffs(self.ctx.neg)

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def scale(self, c: int) -> "UniPoly":
        mul = self.ctx.mul
        return UniPoly(self.ctx, (mul(c, x) for x in self.coeffs))

    def __mul__(self, other: Union["UniPoly", int]) -> "UniPoly":
        if isinstance(other, int):
            return self.scale(other)
        if self.is_zero() or other.is_zero():
            return UniPoly(self.ctx)
        ctx = self.ctx
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] = ctx.add(out[i + j], ctx.mul(a, b))
        return UniPoly(ctx, out)

    def __divmod__(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if other.is_zero():
            raise DivisionByZero("Polynomial division by zero")
        ctx = self.ctx
        d = other.degree
        rem = list(self.coeffs)
        if len(rem) <= d:
            return UniPoly(ctx), self
        inv_lead = ctx.inv(other.leading)
        quot = [0] * (len(rem) - d)
        for k in range(len(rem) - d - 1, -1, -1):
            c = ctx.mul(rem[k + d], inv_lead)
            quot[k] = c
            if c:
                for i, oc in enumerate(other.coeffs):
                    rem[k + i] = ctx.sub(rem[k + i], ctx.mul(c, oc))
        return UniPoly(ctx, quot), UniPoly(ctx, rem[:d])

    def __floordiv__(self, other: "UniPoly") -> "UniPoly":
        return divmod(self, other)[0]

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return divmod(self, other)[1]

    def monic(self) -> "UniPoly":
        if self.is_zero() or self.leading == 1:
            return self
        return self.scale(self.ctx.inv(self.leading))

    def __call__(self, x: int) -> int:
        ctx = self.ctx
        acc = 0
        for c in reversed(self.coeffs):
            acc = ctx.add(ctx.mul(acc, x), c)
        return acc

    def derivative(self) -> "UniPoly":
        ctx = self.ctx
        return UniPoly(ctx, (ctx.mul(ctx.from_int(i), c) for i, c in enumerate(self.coeffs) if i))

    def powmod(self, e: int, modulus: "UniPoly") -> "UniPoly":
        result = UniPoly.one(self.ctx) % modulus
        base = self % modulus
        while e:
            if e & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            e >>= 1
        return result


def poly_xgcd(f: UniPoly, g: UniPoly) -> tuple[UniPoly, UniPoly, UniPoly]:
    """Extended Euclid

    :return: (d, s, t) with s*f + t*g = d and d monic
    """
    if f.is_zero() and g.is_zero():
        raise BothZero("gcd(0, 0) is undefined")
    ctx = f.ctx
    r0, r1 = f, g
    s0, s1 = UniPoly.one(ctx), UniPoly.zero(ctx)
    t0, t1 = UniPoly.zero(ctx), UniPoly.one(ctx)
    while not r1.is_zero():
        quo, rem = divmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - quo * s1
        t0, t1 = t1, t0 - quo * t1
    inv_lead = ctx.inv(r0.leading)
    return r0.scale(inv_lead), s0.scale(inv_lead), t0.scale(inv_lead)


def poly_gcd(f: UniPoly, g: UniPoly) -> UniPoly:
    if f.is_zero() and g.is_zero():
        raise BothZero("gcd(0, 0) is undefined")
    while not g.is_zero():
        f, g = g, f % g
    return f.monic()


def _frobenius_x(f: UniPoly, times: int) -> UniPoly:
    """X^(q^times) mod f"""
    h = UniPoly.gen(f.ctx) % f
    for _ in range(times):
        h = h.powmod(f.ctx.q, f)
    return h


def is_irreducible(f: UniPoly) -> bool:
    """Rabin's irreducibility test over the coefficient field"""
    n = f.degree
    if n < 1:
        return False
    if n == 1:
        return True
    f = f.monic()
    x = UniPoly.gen(f.ctx)
    if _frobenius_x(f, n) != x % f:
        return False
    for r in primefactors(n):
        if not poly_gcd(f, _frobenius_x(f, n // r) - x).is_one():
            return False
    return True


def _pth_root(f: UniPoly) -> UniPoly:
    ctx = f.ctx
    root_power = ctx.q // ctx.p
    return UniPoly(ctx, (ctx.pow(c, root_power) for c in f.coeffs[:: ctx.p]))


def _yun_pieces(g: UniPoly) -> list[tuple[int, UniPoly]]:
    """Yun's algorithm with the p-th root step; pieces may still share factors"""
    p = g.ctx.p
    dg = g.derivative()
    if dg.is_zero():
        return [(m * p, part) for m, part in _yun_pieces(_pth_root(g))]
    pieces = []
    c = poly_gcd(g, dg)
    w = g // c
    i = 1
    while w.degree > 0:
        y = poly_gcd(w, c)
        z = w // y
        if z.degree > 0:
            pieces.append((i, z))
        i += 1
        w, c = y, c // y
    if c.degree > 0:
        pieces.extend((m * p, part) for m, part in _yun_pieces(_pth_root(c)))
    return pieces


def poly_squarefree_decomposition(f: UniPoly) -> list[tuple[int, UniPoly]]:
    """Squarefree factorization

    :return: List of (multiplicity, monic squarefree factor) with pairwise coprime
        factors, sorted by multiplicity
    """
    if f.is_zero():
        raise DivisionByZero("Squarefree decomposition of zero")
    f = f.monic()
    if f.degree < 1:
        return []
    pieces = _yun_pieces(f)
    # a factor of multiplicity j + kp shows up once for j and once for kp
    refined = True
    while refined:
        refined = False
        for i, j in itertools.combinations(range(len(pieces)), 2):
            (mi, fi), (mj, fj) = pieces[i], pieces[j]
            g = poly_gcd(fi, fj)
            if g.degree > 0:
                rest = [pc for k, pc in enumerate(pieces) if k not in (i, j)]
                rest.extend((m, h) for m, h in ((mi, fi // g), (mj, fj // g)) if h.degree > 0)
                rest.append((mi + mj, g))
                pieces, refined = rest, True
                break
    grouped: dict[int, UniPoly] = {}
    for m, part in pieces:
        grouped[m] = grouped[m] * part if m in grouped else part
    return sorted(((m, part.monic()) for m, part in grouped.items()), key=lambda mp: mp[0])


def poly_distinct_degree_factor(f: UniPoly) -> list[tuple[int, UniPoly]]:
    """Distinct-degree factorization of a squarefree polynomial

    :param f: Squarefree polynomial of positive degree

    :return: List of (d, g_d) where g_d is the product of the monic irreducible factors
        of degree d
    """
    if f.degree < 1:
        return []
    f = f.monic()
    if not poly_gcd(f, f.derivative()).is_one():
        raise NotSquarefree(f"{f} is not squarefree")
    ctx = f.ctx
    x = UniPoly.gen(ctx)
    result = []
    rest, h, i = f, x % f, 1
    while rest.degree >= 2 * i:
        h = h.powmod(ctx.q, rest)
        g = poly_gcd(rest, h - x)
        if g.degree > 0:
            result.append((i, g))
            rest = rest // g
            h = h % rest
        i += 1
    if rest.degree > 0:
        result.append((rest.degree, rest))
    return result


def poly_roots(f: UniPoly) -> list[FieldElement]:
    """All roots with multiplicity, by exhaustive evaluation

    :return: Roots sorted by coefficient key, each repeated by its multiplicity
    """
    if f.is_zero():
        raise DivisionByZero("Every element is a root of the zero polynomial")
    ctx = f.ctx
    if ctx.q > ROOT_SEARCH_CAP:
        raise FieldTooLarge(f"Exhaustive root search over 𝔽_{ctx.q} exceeds {ROOT_SEARCH_CAP}")
    if f.degree < 1:
        return []
    x = UniPoly.gen(ctx)
    split = poly_gcd(f, x.powmod(ctx.q, f) - x)
    found: list[int] = []
    if split.degree > 0:
        for n in ctx.elements():
            if split(n) == 0:
                found.append(n)
                if len(found) == split.degree:
                    break
    roots: list[FieldElement] = []
    for r in sorted(found, key=ctx.key):
        lin = UniPoly.linear(ctx, r)
        g = f
        while True:
            quo, rem = divmod(g, lin)
            if not rem.is_zero():
                break
            roots.append(FieldElement(ctx, r))
            g = quo
    return roots


def mult_order_mod(a: int, n: int) -> int:
    """Least k >= 1 with a^k = 1 (mod n)"""
    if n < 1:
        raise NotCoprime(f"Modulus {n} must be positive")
    if math.gcd(a, n) != 1:
        raise NotCoprime(f"{a} is not a unit modulo {n}")
    if n == 1:
        return 1
    return int(n_order(a % n, n))


@functools.lru_cache(maxsize=None)
def _subfield_generator_image(source: FieldContext, target: FieldContext) -> int:
    """Least root (by coefficient key) of the source modulus inside target"""
    modulus = UniPoly(target, source.modulus)
    sub_order = source.q - 1
    gamma = target.pow(target.primitive_element(), (target.q - 1) // sub_order)
    roots = []
    z = 1
    for _ in range(sub_order):
        if modulus(z) == 0:
            roots.append(z)
        z = target.mul(z, gamma)
    logger.g2_trace("Subfield generator images of %s in %s: %s", source, target, roots)
    return min(roots, key=target.key)


def embed_subfield(x: FieldElement, target: FieldContext) -> FieldElement:
    """Image of ``x`` under the canonical embedding of its field into ``target``

    The generator of the source field is sent to the least root of its modulus in
    ``target`` (coefficient order, constant first).
    """
    source = x.ctx
    if source.p != target.p or target.a % source.a:
        raise NotASubfield(f"𝔽_{source.q} is not a subfield of 𝔽_{target.q}")
    if source == target:
        return x
    if source.a == 1:
        return FieldElement(target, x.value)
    image = _subfield_generator_image(source, target)
    acc = 0
    for c in reversed(source.digits(x.value)):
        acc = target.add(target.mul(acc, image), c)
    return FieldElement(target, acc)


def embedding_map(source: FieldContext, target: FieldContext) -> Callable[[int], int]:
    """Packed-integer version of ``embed_subfield`` for bulk coefficient maps"""
    if source.p != target.p or target.a % source.a:
        raise NotASubfield(f"𝔽_{source.q} is not a subfield of 𝔽_{target.q}")
    if source == target or source.a == 1:
        return lambda n: n
    cache: dict[int, int] = {}

    def _map(n: int) -> int:
        if n not in cache:
            cache[n] = embed_subfield(FieldElement(source, n), target).value
        return cache[n]

    return _map


def matrix_mod(rows: list[list[int]], ell: int) -> DomainMatrix:
    """Integer matrix reduced into GF(ℓ)"""
    return DomainMatrix.from_list([[c % ell for c in row] for row in rows], GF(ell))


def matrix_rank_mod(rows: list[list[int]], ell: int) -> int:
    if not rows or not rows[0]:
        return 0
    return matrix_mod(rows, ell).rank()


X = Symbol("X")


@dataclass(frozen=True)
class IntPoly:
    """Exact integer polynomial, coefficients constant term first"""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        coeffs = list(self.coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(int(c) for c in coeffs))

    @classmethod
    def from_sympy(cls, poly: Poly) -> "IntPoly":
        return cls(tuple(reversed(poly.all_coeffs())))

    def to_sympy(self) -> Poly:
        return Poly(list(reversed(self.coeffs)) or [0], X, domain=ZZ)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def reduce_mod(self, field: FieldContext) -> UniPoly:
        """Image in 𝔽_p[X] for the prime field ``field``"""
        return UniPoly(field, (c % field.p for c in self.coeffs))

    def __str__(self) -> str:
        return str(self.to_sympy().as_expr())
