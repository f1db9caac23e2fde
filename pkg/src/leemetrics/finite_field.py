"""Small finite fields GF(p^n) and the affine groups built on them."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from .group_core import Group, GroupError

FIELD_CAP = 256


def is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


def prime_power(q: int) -> tuple[int, int]:
    """``(p, n)`` with ``q = p**n``; raises if q is not a prime power."""
    for p in range(2, q + 1):
        if q % p == 0:
            n, r = 0, q
            while r % p == 0:
                r //= p
                n += 1
            if r != 1:
                raise GroupError(f"{q} is not a prime power")
            return p, n
    raise GroupError(f"{q} is not a prime power")


# polynomials are coefficient tuples, lowest degree first

def _polymod(a: list[int], m: tuple[int, ...], p: int) -> list[int]:
    a = [x % p for x in a]
    d = len(m) - 1
    lead_inv = pow(m[-1], -1, p)
    for i in range(len(a) - 1, d - 1, -1):
        c = a[i] * lead_inv % p
        if c:
            for j in range(d + 1):
                a[i - d + j] = (a[i - d + j] - c * m[j]) % p
    a = a[:d] if len(a) >= d else a + [0] * (d - len(a))
    return a


def _is_irreducible(m: tuple[int, ...], p: int) -> bool:
    d = len(m) - 1
    if d == 1:
        return True
    for k in range(1, d // 2 + 1):
        for low in itertools.product(range(p), repeat=k):
            div = tuple(low) + (1,)
            if not any(_polymod(list(m), div, p)):
                return False
    return True


@dataclass(frozen=True, eq=False)
class Field:
    """GF(p^n); elements are ids ``0..q-1`` encoding coefficient vectors base p."""

    p: int
    n: int
    modulus: tuple[int, ...]
    generator: int = 0

    @property
    def q(self) -> int:
        return self.p ** self.n

    def coeffs(self, a: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.n):
            out.append(a % self.p)
            a //= self.p
        return tuple(out)

    def elem(self, coeffs) -> int:
        return sum(c * self.p ** i for i, c in enumerate(coeffs))

    @cached_property
    def add_table(self) -> list[list[int]]:
        p = self.p
        cs = [self.coeffs(a) for a in range(self.q)]
        return [[self.elem([(x + y) % p for x, y in zip(cs[a], cs[b])]) for b in range(self.q)]
                for a in range(self.q)]

    @cached_property
    def mul_table(self) -> list[list[int]]:
        p, n = self.p, self.n
        cs = [self.coeffs(a) for a in range(self.q)]
        out = []
        for a in range(self.q):
            row = []
            for b in range(self.q):
                prod = [0] * (2 * n - 1)
                for i, x in enumerate(cs[a]):
                    if x:
                        for j, y in enumerate(cs[b]):
                            prod[i + j] += x * y
                row.append(self.elem(_polymod(prod, self.modulus, p)))
            out.append(row)
        return out

    def add(self, a: int, b: int) -> int:
        return self.add_table[a][b]

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def neg(self, a: int) -> int:
        return self.elem([(-c) % self.p for c in self.coeffs(a)])

    def mult_order(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative order")
        k, x = 1, a
        while x != 1:
            x = self.mul(x, a)
            k += 1
        return k

    def power(self, a: int, k: int) -> int:
        x = 1
        for _ in range(k):
            x = self.mul(x, a)
        return x

    def label(self, a: int) -> str:
        if self.n == 1:
            return str(a)
        terms = []
        for i, c in enumerate(self.coeffs(a)):
            if c:
                mono = "" if i == 0 else ("α" if i == 1 else f"α^{i}")
                terms.append(f"{c if (c != 1 or i == 0) else ''}{mono}")
        return "+".join(reversed(terms)) or "0"

    def subgroup(self, h: int) -> list[int]:
        """The unique order-h subgroup of the multiplicative group, as powers of the generator."""
        if (self.q - 1) % h:
            raise GroupError(f"{h} does not divide q-1 = {self.q - 1}")
        step = self.power(self.generator, (self.q - 1) // h)
        return [self.power(step, k) for k in range(h)]


def make_field(p: int, n: int = 1) -> Field:
    """GF(p^n) modulo the lexicographically smallest monic irreducible of degree n."""
    if not is_prime(p):
        raise GroupError(f"{p} is not prime")
    if n < 1 or p ** n > FIELD_CAP:
        raise GroupError(f"need 1 <= n and p^n <= {FIELD_CAP}")
    for low in itertools.product(range(p), repeat=n):
        m = tuple(low) + (1,)
        if n > 1 and m[0] == 0:
            continue
        if _is_irreducible(m, p):
            break
    F = Field(p, n, m)
    q = F.q
    if q == 2:
        return Field(p, n, m, 1)
    for g in range(1, q):
        if F.mult_order(g) == q - 1:
            return Field(p, n, m, g)
    raise AssertionError("no multiplicative generator found")


def field_of_order(q: int) -> Field:
    return make_field(*prime_power(q))


def affine_group(F: Field, h: int) -> Group:
    """``F_q ⋊ H`` for the order-h subgroup ``H`` of ``F_q^*``.

    Element ``(b, a)`` is the map ``x -> a*x + b`` and products compose left to
    right: ``(b, a)(b', a') = (b*a' + b', a*a')``.
    """
    H = F.subgroup(h)
    q = F.q
    elems = [(b, a) for a in H for b in range(q)]
    pos = {e: i for i, e in enumerate(elems)}
    table = [[pos[(F.add(F.mul(b, a2), b2), F.mul(a, a2))] for (b2, a2) in elems] for (b, a) in elems]
    labels = [f"({F.label(b)},{F.label(a)})" for (b, a) in elems]
    name = f"F{q}⋊Z{h}" if h != q - 1 else f"Aff(F{q})"
    return Group.from_table(table, labels, name=name)
