"""Finite groups as explicit Cayley tables.

Every group is a set of element ids ``0..n-1`` together with a full
multiplication table.  Constructors for the standard families live in
:func:`build`, driven by small :class:`GroupSpec` records; the same records
are produced by :func:`parse_spec` from the text grammar used on the command
line (``cyclic:8``, ``prod(dihedral:3,cyclic:4)``, ``perm:4:(1 2)(3 4);(1 2 3)``).
"""
from __future__ import annotations

import itertools
import math
import re
from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence, Union

import numpy as np

ASSOC_CAP = 512
ORDER_CAP = 5040  # |S7|; full tables beyond this are not what the tool is for
_SUP = str.maketrans("0123456789-", "⁰¹²³⁴⁵⁶⁷⁸⁹⁻")


class GroupError(ValueError):
    """Raised when a table or a constructor's parameters do not define a group."""


class SpecSyntaxError(ValueError):
    """Raised by :func:`parse_spec` on malformed spec text."""


def _pow_label(sym: str, k: int) -> str:
    if k == 0:
        return ""
    if k == 1:
        return sym
    return sym + str(k).translate(_SUP)


@dataclass(frozen=True, eq=False)
class Group:
    """A finite group stored as its multiplication table.

    ``mul[g, h]`` is the id of ``g*h``.  Instances are treated as immutable.
    """

    mul: np.ndarray
    inv: np.ndarray
    identity: int
    labels: tuple[str, ...]
    name: str = ""

    @property
    def n(self) -> int:
        return len(self.labels)

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"Group({self.name or '?'}, n={self.n})"

    @cached_property
    def rows(self) -> list[list[int]]:
        """The table as nested python lists (fast scalar lookups)."""
        return self.mul.tolist()

    @cached_property
    def inverses(self) -> list[int]:
        return self.inv.tolist()

    @cached_property
    def orders(self) -> list[int]:
        return [element_order(self, g) for g in range(self.n)]

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = self.inverses[g], -k
        x = self.identity
        rows = self.rows
        for _ in range(k):
            x = rows[x][g]
        return x

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mul, self.mul.T))

    @classmethod
    def from_table(cls, table, labels: Sequence[str] | None = None, name: str = "",
                   check_assoc: bool = True, assoc_cap: int = ASSOC_CAP) -> "Group":
        """Validate a Cayley table and wrap it.

        The Latin-square and identity conditions are always checked; the
        O(n^3) associativity check runs when ``check_assoc`` is set and
        ``n <= assoc_cap``.
        """
        mul = np.array(table, dtype=np.int32)
        if mul.ndim != 2 or mul.shape[0] != mul.shape[1] or mul.shape[0] == 0:
            raise GroupError("table must be a non-empty square array")
        n = mul.shape[0]
        if mul.min() < 0 or mul.max() >= n:
            raise GroupError("table entries must be element ids in 0..n-1")
        full = np.arange(n)
        if not (np.all(np.sort(mul, axis=1) == full) and np.all(np.sort(mul, axis=0) == full[:, None])):
            raise GroupError("table is not a Latin square")
        ident = [g for g in range(n) if np.array_equal(mul[g], full)]
        if len(ident) != 1 or not np.array_equal(mul[:, ident[0]], full):
            raise GroupError("table has no two-sided identity")
        e = ident[0]
        inv = np.argmax(mul == e, axis=1).astype(np.int32)
        if not np.all(mul[inv, full] == e):
            raise GroupError("left and right inverses differ")
        if check_assoc and n <= assoc_cap:
            for a in range(n):
                if not np.array_equal(mul[mul[a]], mul[a][mul]):
                    raise GroupError(f"table is not associative (first failure at left factor {a})")
        if labels is None:
            labels = [f"g{i}" for i in range(n)]
        if len(labels) != n:
            raise GroupError("need one label per element")
        mul.setflags(write=False)
        inv.setflags(write=False)
        return cls(mul, inv, e, tuple(labels), name)


# ----------------------------------------------------------------------------
# structural queries


def element_order(G: Group, g: int) -> int:
    rows, e = G.rows, G.identity
    k, x = 1, g
    while x != e:
        x = rows[x][g]
        k += 1
    return k


def order_profile(G: Group) -> dict[int, int]:
    """Number of elements of each order, keyed by order."""
    return dict(sorted(Counter(G.orders).items()))


def center(G: Group) -> set[int]:
    m = G.mul
    return {g for g in range(G.n) if np.array_equal(m[g], m[:, g])}


def centralizer(G: Group, g: int) -> set[int]:
    m = G.mul
    return set(np.flatnonzero(m[g] == m[:, g]).tolist())


def generated_subgroup(G: Group, S: Iterable[int]) -> set[int]:
    """Closure of ``S`` under multiplication (finite, so inverses come free)."""
    gens = list(dict.fromkeys(S))
    rows = G.rows
    seen = {G.identity}
    queue = deque([G.identity])
    while queue:
        x = queue.popleft()
        for s in gens:
            y = rows[x][s]
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def is_subgroup(G: Group, H: set[int]) -> bool:
    rows, inv = G.rows, G.inverses
    return G.identity in H and all(inv[a] in H for a in H) and all(rows[a][b] in H for a in H for b in H)


def is_cyclic(G: Group) -> bool:
    return G.n in G.orders


def set_star(G: Group, A: Iterable[int], B: Iterable[int]) -> set[int]:
    """``A*B = AB ∪ BA``."""
    rows = G.rows
    A, B = list(A), list(B)
    return {rows[a][b] for a in A for b in B} | {rows[b][a] for a in A for b in B}


def involution_subgroups(G: Group) -> tuple[set[int], set[int]]:
    """The subgroups generated by the elements of order 2, and of order 2 or 4."""
    orders = G.orders
    g2 = generated_subgroup(G, [g for g in range(G.n) if orders[g] == 2])
    g24 = generated_subgroup(G, [g for g in range(G.n) if orders[g] in (2, 4)])
    return g2, g24


def index2_subgroups(G: Group) -> list[frozenset[int]]:
    """All subgroups of index 2.

    They are the preimages of the hyperplanes of the elementary abelian
    quotient ``G/N`` with ``N`` generated by all squares and commutators.
    """
    if G.n % 2:
        return []
    rows, inv = G.rows, G.inverses
    gens = {rows[g][g] for g in range(G.n)}
    gens |= {rows[rows[inv[g]][inv[h]]][rows[g][h]] for g in range(G.n) for h in range(g + 1, G.n)}
    N = generated_subgroup(G, gens)
    coset_of = [-1] * G.n
    reps = []
    for g in range(G.n):
        if coset_of[g] < 0:
            for x in N:
                coset_of[rows[x][g]] = len(reps)
            reps.append(g)
    # coordinates of each coset in a basis of G/N over GF(2)
    coord = {coset_of[G.identity]: 0}
    dim = 0
    for c, r in enumerate(reps):
        if c in coord:
            continue
        for c0, bits in list(coord.items()):
            coord[coset_of[rows[reps[c0]][r]]] = bits | (1 << dim)
        dim += 1
    out = []
    for phi in range(1, 1 << dim):
        H = frozenset(g for g in range(G.n) if bin(coord[coset_of[g]] & phi).count("1") % 2 == 0)
        out.append(H)
    return sorted(out, key=sorted)


def subgroup_as_group(G: Group, H: Iterable[int]) -> tuple[Group, list[int]]:
    """Re-index a subgroup as a standalone group; also returns the id map."""
    elems = sorted(H)
    pos = {g: i for i, g in enumerate(elems)}
    rows = G.rows
    table = [[pos[rows[a][b]] for b in elems] for a in elems]
    return Group.from_table(table, [G.labels[g] for g in elems], check_assoc=False), elems


def fingerprint(G: Group) -> dict:
    """Cheap isomorphism invariants used to sanity-check catalog entries."""
    Z = center(G)
    return {
        "order": G.n,
        "profile": order_profile(G),
        "abelian": G.is_abelian,
        "center": len(Z),
    }


# ----------------------------------------------------------------------------
# specs


@dataclass(frozen=True)
class Cyclic:
    n: int


@dataclass(frozen=True)
class Dihedral:
    """Symmetries of the n-gon, order 2n."""
    n: int


@dataclass(frozen=True)
class Dicyclic:
    """Dicyclic group of the given order 4n."""
    order: int


@dataclass(frozen=True)
class Quasidihedral:
    n: int
    sign: int


@dataclass(frozen=True)
class Symmetric:
    n: int


@dataclass(frozen=True)
class Alternating:
    n: int


@dataclass(frozen=True)
class DirectProduct:
    left: "GroupSpec"
    right: "GroupSpec"


@dataclass(frozen=True)
class SemidirectCyclic:
    """``Z_a ⋊ Z_b`` where the generator of ``Z_b`` acts by ``x -> x^t``."""
    a: int
    b: int
    t: int


@dataclass(frozen=True)
class Affine:
    """``F_q ⋊ H`` with ``H`` the order-h subgroup of ``F_q^*`` (default: all of it)."""
    q: int
    h: int | None = None


@dataclass(frozen=True)
class PermGens:
    degree: int
    gens: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class RawTable:
    table: tuple[tuple[int, ...], ...] = field(repr=False)
    source: str = ""


GroupSpec = Union[Cyclic, Dihedral, Dicyclic, Quasidihedral, Symmetric, Alternating,
                  DirectProduct, SemidirectCyclic, Affine, PermGens, RawTable]


def _cyclic(n: int) -> Group:
    if n < 1:
        raise GroupError("cyclic order must be >= 1")
    idx = np.arange(n)
    return Group.from_table((idx[:, None] + idx[None, :]) % n, [str(i) for i in range(n)],
                            name=f"Z{n}", check_assoc=False)


def _dihedral(n: int) -> Group:
    # rho^i tau^j  ->  i + n*j ;  tau rho tau = rho^-1
    if n < 1:
        raise GroupError("dihedral parameter must be >= 1")
    table = [[0] * (2 * n) for _ in range(2 * n)]
    for a in range(2 * n):
        i, j = a % n, a // n
        for b in range(2 * n):
            k, l = b % n, b // n
            table[a][b] = (i + (k if j == 0 else -k)) % n + n * ((j + l) % 2)
    labels = [(_pow_label("ρ", i) + _pow_label("τ", j)) or "e" for j in range(2) for i in range(n)]
    return Group.from_table(table, labels, name=f"D{n}", check_assoc=False)


def _dicyclic(order: int) -> Group:
    if order < 4 or order % 4:
        raise GroupError("dicyclic order must be 4n with n >= 1")
    n = order // 4
    m = 2 * n
    table = [[0] * order for _ in range(order)]
    for a in range(order):
        i, j = a % m, a // m
        for b in range(order):
            k, l = b % m, b // m
            if j == 0:
                table[a][b] = (i + k) % m + m * l
            elif l == 0:  # x^i y x^k = x^(i-k) y
                table[a][b] = (i - k) % m + m
            else:  # x^i y x^k y = x^(i-k+n)
                table[a][b] = (i - k + n) % m
    labels = [(_pow_label("x", i) + _pow_label("y", j)) or "e" for j in range(2) for i in range(m)]
    return Group.from_table(table, labels, name=f"Q{order}", check_assoc=False)


def _semidirect(a: int, b: int, t: int, name: str = "", syms=("x", "y"), check=True) -> Group:
    if a < 1 or b < 1:
        raise GroupError("semidirect factors must have order >= 1")
    if math.gcd(t, a) != 1:
        raise GroupError(f"sd:{a},{b},{t}: gcd(t, a) must be 1")
    if pow(t, b, a) != 1 % a:
        raise GroupError(f"sd:{a},{b},{t}: t^b must be 1 mod a")
    tp = [pow(t, j, a) for j in range(b)]
    n = a * b
    table = [[0] * n for _ in range(n)]
    for u in range(n):
        i, j = u % a, u // a
        for v in range(n):
            k, l = v % a, v // a
            table[u][v] = (i + tp[j] * k) % a + a * ((j + l) % b)
    labels = [(_pow_label(syms[0], i) + _pow_label(syms[1], j)) or "e" for j in range(b) for i in range(a)]
    return Group.from_table(table, labels, name=name or f"Z{a}⋊Z{b}", check_assoc=check)


def _perm_label(p: Sequence[int]) -> str:
    seen, parts = set(), []
    for s in range(len(p)):
        if s in seen or p[s] == s:
            continue
        cyc, x = [], s
        while x not in seen:
            seen.add(x)
            cyc.append(x + 1)
            x = p[x]
        parts.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(parts) or "()"


def _perm_group(elems: list[tuple[int, ...]], name: str) -> Group:
    # product is left-to-right: (p*q)(i) = q(p(i))
    pos = {p: i for i, p in enumerate(elems)}
    table = [[pos[tuple(q[x] for x in p)] for q in elems] for p in elems]
    return Group.from_table(table, [_perm_label(p) for p in elems], name=name, check_assoc=False)


def perm_closure(degree: int, gens: Iterable[Sequence[int]], cap: int = ORDER_CAP) -> list[tuple[int, ...]]:
    """All products of ``gens``, found breadth first from the identity."""
    gens = [tuple(g) for g in gens]
    for g in gens:
        if sorted(g) != list(range(degree)):
            raise GroupError(f"{list(g)} is not a permutation of 0..{degree - 1}")
    e = tuple(range(degree))
    seen = {e: None}
    order = [e]
    queue = deque([e])
    while queue:
        p = queue.popleft()
        for g in gens:
            q = tuple(g[x] for x in p)
            if q not in seen:
                seen[q] = None
                order.append(q)
                queue.append(q)
        if len(order) > cap:
            raise GroupError(f"generated group exceeds the order cap {cap}")
    return order


def _sign(p: Sequence[int]) -> int:
    s, seen = 1, set()
    for i in range(len(p)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = p[j]
            length += 1
        if length % 2 == 0:
            s = -s
    return s


def direct_product(A: Group, B: Group) -> Group:
    """``A × B`` with element ``(a, b)`` at id ``a*|B| + b``."""
    nb = B.n
    table = (A.mul[:, None, :, None] * nb + B.mul[None, :, None, :]).reshape(A.n * nb, A.n * nb)
    labels = [f"({la},{lb})" for la in A.labels for lb in B.labels]
    return Group.from_table(table, labels, name=f"{A.name}×{B.name}", check_assoc=False)


def spec_order(spec: GroupSpec) -> int | None:
    """Order implied by a parametric spec, or None when it is only known after construction."""
    if isinstance(spec, Cyclic):
        return spec.n
    if isinstance(spec, Dihedral):
        return 2 * spec.n
    if isinstance(spec, Dicyclic):
        return spec.order
    if isinstance(spec, Quasidihedral):
        return 2 ** spec.n if spec.n >= 0 else None
    if isinstance(spec, SemidirectCyclic):
        return spec.a * spec.b
    if isinstance(spec, DirectProduct):
        a, b = spec_order(spec.left), spec_order(spec.right)
        return None if a is None or b is None else a * b
    return None


def build(spec: GroupSpec, check_assoc: bool = True) -> Group:
    """Construct the group described by ``spec``."""
    n = spec_order(spec)
    if n is not None and n > ORDER_CAP:
        raise GroupError(f"order {n} exceeds the cap {ORDER_CAP}")
    if isinstance(spec, Cyclic):
        return _cyclic(spec.n)
    if isinstance(spec, Dihedral):
        return _dihedral(spec.n)
    if isinstance(spec, Dicyclic):
        return _dicyclic(spec.order)
    if isinstance(spec, Quasidihedral):
        if spec.n < 4 or spec.sign not in (1, -1):
            raise GroupError("quasidihedral needs n >= 4 and sign +1 or -1")
        half = 2 ** (spec.n - 1)
        sgn = "+" if spec.sign > 0 else "-"
        return _semidirect(half, 2, 2 ** (spec.n - 2) + spec.sign, name=f"QD{spec.n}{sgn}", check=False)
    if isinstance(spec, SemidirectCyclic):
        return _semidirect(spec.a, spec.b, spec.t, check=check_assoc)
    if isinstance(spec, Symmetric):
        if not 1 <= spec.n <= 7:
            raise GroupError("symmetric degree must be in 1..7")
        return _perm_group(list(itertools.permutations(range(spec.n))), f"S{spec.n}")
    if isinstance(spec, Alternating):
        if not 1 <= spec.n <= 7:
            raise GroupError("alternating degree must be in 1..7")
        perms = [p for p in itertools.permutations(range(spec.n)) if _sign(p) == 1]
        return _perm_group(perms, f"A{spec.n}")
    if isinstance(spec, DirectProduct):
        return direct_product(build(spec.left, check_assoc), build(spec.right, check_assoc))
    if isinstance(spec, Affine):
        from .finite_field import affine_group, field_of_order
        q = spec.q
        return affine_group(field_of_order(q), q - 1 if spec.h is None else spec.h)
    if isinstance(spec, PermGens):
        return _perm_group(perm_closure(spec.degree, spec.gens), "")
    if isinstance(spec, RawTable):
        return Group.from_table(spec.table, check_assoc=check_assoc)
    raise TypeError(f"not a group spec: {spec!r}")


# ----------------------------------------------------------------------------
# text formats


def parse_perm(text: str, degree: int) -> tuple[int, ...]:
    """A permutation in image-list form ``0 2 1 3`` or 1-based cycle form ``(1 2)(3 4)``."""
    text = text.strip()
    if text.startswith("("):
        p = list(range(degree))
        cycles = re.findall(r"\(([^()]*)\)", text)
        if re.sub(r"\([^()]*\)", "", text).strip():
            raise SpecSyntaxError(f"bad cycle notation: {text!r}")
        for cyc in cycles:
            pts = [int(x) - 1 for x in re.split(r"[\s,]+", cyc.strip()) if x]
            if any(not 0 <= x < degree for x in pts) or len(set(pts)) != len(pts):
                raise SpecSyntaxError(f"bad cycle {cyc!r} for degree {degree}")
            for x, y in zip(pts, pts[1:] + pts[:1]):
                p[x] = y
        return tuple(p)
    try:
        p = tuple(int(x) for x in re.split(r"[\s,]+", text) if x)
    except ValueError:
        raise SpecSyntaxError(f"bad permutation {text!r}") from None
    if sorted(p) != list(range(degree)):
        raise SpecSyntaxError(f"{text!r} is not a permutation of 0..{degree - 1}")
    return p


def read_table(path: str | Path) -> tuple[tuple[int, ...], ...]:
    """Raw Cayley table: first line n, then n rows of n ids."""
    tokens = Path(path).read_text().split()
    if not tokens:
        raise SpecSyntaxError(f"{path}: empty table file")
    n = int(tokens[0])
    vals = [int(t) for t in tokens[1:]]
    if len(vals) != n * n:
        raise SpecSyntaxError(f"{path}: expected {n * n} entries, found {len(vals)}")
    return tuple(tuple(vals[i * n:(i + 1) * n]) for i in range(n))


def write_table(G: Group) -> str:
    lines = [str(G.n)] + [" ".join(map(str, row)) for row in G.rows]
    return "\n".join(lines) + "\n"


def _ints(body: str, token: str, count: int | None = None) -> list[int]:
    parts = [p.strip() for p in body.split(",")]
    try:
        vals = [int(p) for p in parts]
    except ValueError:
        raise SpecSyntaxError(f"bad number in {token!r}") from None
    if count is not None and len(vals) != count:
        raise SpecSyntaxError(f"{token!r} takes {count} parameter(s)")
    return vals


def _split_top(body: str) -> list[str]:
    depth, start, out = 0, 0, []
    for i, ch in enumerate(body):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            out.append(body[start:i])
            start = i + 1
    out.append(body[start:])
    return out


def parse_spec(text: str) -> GroupSpec:
    """Parse the command-line group grammar into a spec record."""
    t = text.strip()
    if t.startswith("prod(") and t.endswith(")"):
        args = _split_top(t[5:-1])
        if len(args) < 2:
            raise SpecSyntaxError(f"prod needs at least two factors: {t!r}")
        spec = parse_spec(args[0])
        for a in args[1:]:
            spec = DirectProduct(spec, parse_spec(a))
        return spec
    kind, sep, body = t.partition(":")
    if not sep:
        raise SpecSyntaxError(f"unknown group token {t!r}")
    if kind == "cyclic":
        return Cyclic(*_ints(body, t, 1))
    if kind == "dihedral":
        return Dihedral(*_ints(body, t, 1))
    if kind == "dicyclic":
        return Dicyclic(*_ints(body, t, 1))
    if kind == "sym":
        return Symmetric(*_ints(body, t, 1))
    if kind == "alt":
        return Alternating(*_ints(body, t, 1))
    if kind == "sd":
        return SemidirectCyclic(*_ints(body, t, 3))
    if kind == "qd":
        n, _, sgn = body.partition(",")
        if sgn.strip() not in ("+", "-"):
            raise SpecSyntaxError(f"qd sign must be + or - in {t!r}")
        return Quasidihedral(_ints(n, t, 1)[0], 1 if sgn.strip() == "+" else -1)
    if kind == "affine":
        # accepts "9,4" as well as "q=9,h=4"
        vals = _ints(re.sub(r"\b[qh]\s*=", "", body), t)
        if len(vals) not in (1, 2):
            raise SpecSyntaxError(f"affine takes q or q,h: {t!r}")
        return Affine(*vals)
    if kind == "perm":
        deg, _, gens = body.partition(":")
        degree = _ints(deg, t, 1)[0]
        return PermGens(degree, tuple(parse_perm(g, degree) for g in gens.split(";") if g.strip()))
    if kind == "table":
        return RawTable(read_table(body), source=body)
    raise SpecSyntaxError(f"unknown group kind {kind!r} in {t!r}")


def format_spec(spec: GroupSpec) -> str:
    """Inverse of :func:`parse_spec` (permutations come out in image-list form)."""
    if isinstance(spec, Cyclic):
        return f"cyclic:{spec.n}"
    if isinstance(spec, Dihedral):
        return f"dihedral:{spec.n}"
    if isinstance(spec, Dicyclic):
        return f"dicyclic:{spec.order}"
    if isinstance(spec, Quasidihedral):
        return f"qd:{spec.n},{'+' if spec.sign > 0 else '-'}"
    if isinstance(spec, Symmetric):
        return f"sym:{spec.n}"
    if isinstance(spec, Alternating):
        return f"alt:{spec.n}"
    if isinstance(spec, SemidirectCyclic):
        return f"sd:{spec.a},{spec.b},{spec.t}"
    if isinstance(spec, Affine):
        return f"affine:{spec.q}" + ("" if spec.h is None else f",{spec.h}")
    if isinstance(spec, DirectProduct):
        return f"prod({format_spec(spec.left)},{format_spec(spec.right)})"
    if isinstance(spec, PermGens):
        return f"perm:{spec.degree}:" + ";".join(" ".join(map(str, g)) for g in spec.gens)
    if isinstance(spec, RawTable):
        return f"table:{spec.source}"
    raise TypeError(f"not a group spec: {spec!r}")


def elementary_abelian_rank(spec: GroupSpec) -> int | None:
    """``r`` if ``spec`` is syntactically a product of ``r`` copies of Z2, else None."""
    if isinstance(spec, Cyclic) and spec.n == 2:
        return 1
    if isinstance(spec, Dihedral) and spec.n == 2:
        return 2
    if isinstance(spec, DirectProduct):
        a, b = elementary_abelian_rank(spec.left), elementary_abelian_rank(spec.right)
        if a and b:
            return a + b
    return None
