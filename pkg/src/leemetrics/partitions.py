"""Unitary symmetric partitions of a finite group.

A partition is *unitary* when ``{e}`` is one of its blocks and *symmetric*
when every block is closed under inversion.  These are exactly the level-set
partitions of invariant weights, and the finest one (blocks ``{a, a^-1}``) is
the Lee partition.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .group_core import Group

BELL_CAP = 4_213_597  # Bell(12)


class PartitionError(ValueError):
    pass


@dataclass(frozen=True)
class SymPartition:
    """Blocks in canonical order: block 0 is ``{e}``, the rest sorted by least element."""

    blocks: tuple[tuple[int, ...], ...]
    block_of: tuple[int, ...]

    @property
    def s(self) -> int:
        """Number of non-trivial blocks."""
        return len(self.blocks) - 1

    def __len__(self) -> int:
        return len(self.blocks)

    @classmethod
    def from_blocks(cls, G: Group, blocks: Iterable[Iterable[int]]) -> "SymPartition":
        blocks = [tuple(sorted(set(b))) for b in blocks]
        if not is_unitary_symmetric(G, blocks):
            raise PartitionError("blocks do not form a unitary symmetric partition")
        e = G.identity
        rest = sorted((b for b in blocks if b != (e,)), key=lambda b: b[0])
        blocks = [(e,)] + rest
        block_of = [0] * G.n
        for i, b in enumerate(blocks):
            for g in b:
                block_of[g] = i
        return cls(tuple(blocks), tuple(block_of))

    @classmethod
    def from_labels(cls, G: Group, block_of: Sequence[int]) -> "SymPartition":
        """Build from any per-element block labelling."""
        groups: dict[int, list[int]] = {}
        for g, b in enumerate(block_of):
            groups.setdefault(b, []).append(g)
        return cls.from_blocks(G, groups.values())


def is_unitary_symmetric(G: Group, blocks: Sequence[Iterable[int]]) -> bool:
    blocks = [set(b) for b in blocks]
    if any(not b for b in blocks):
        return False
    seen: set[int] = set()
    for b in blocks:
        if seen & b:
            return False
        seen |= b
    if seen != set(range(G.n)):
        return False
    if {G.identity} not in blocks:
        return False
    inv = G.inverses
    return all(inv[g] in b for b in blocks for g in b)


def lee_partition(G: Group) -> SymPartition:
    inv = G.inverses
    return SymPartition.from_blocks(G, {frozenset((g, inv[g])) for g in range(G.n)})


def k_of(G: Group) -> int:
    """``(n + #{x : x^2 = e}) / 2 - 1``."""
    rows, e = G.rows, G.identity
    sq = sum(1 for x in range(G.n) if rows[x][x] == e)
    twice = G.n + sq
    assert twice % 2 == 0
    return twice // 2 - 1


def hamming_partition(G: Group) -> SymPartition:
    e = G.identity
    blocks = [[e]] + ([[g for g in range(G.n) if g != e]] if G.n > 1 else [])
    return SymPartition.from_blocks(G, blocks)


def refines(P1: SymPartition, P2: SymPartition) -> bool:
    """True when every block of ``P1`` lies inside one block of ``P2``."""
    return all(len({P2.block_of[g] for g in b}) == 1 for b in P1.blocks)


def bell(m: int) -> int:
    row = [1]
    for _ in range(m):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[0]


def restricted_growth_strings(m: int) -> Iterator[tuple[int, ...]]:
    """Set partitions of ``range(m)`` as restricted growth strings, lexicographically."""
    if m == 0:
        yield ()
        return
    a = [0] * m
    mx = [0] * m  # mx[i] = max(a[:i+1])
    while True:
        yield tuple(a)
        i = m - 1
        while i > 0 and a[i] == mx[i - 1] + 1:
            i -= 1
        if i == 0:
            return
        a[i] += 1
        mx[i] = max(mx[i - 1], a[i])
        for j in range(i + 1, m):
            a[j] = 0
            mx[j] = mx[i]


def enumerate_unitary_symmetric(G: Group, cap: int = BELL_CAP) -> Iterator[SymPartition]:
    """Every unitary symmetric partition, as a merge of Lee blocks.

    Yields exactly Bell(k(G)) partitions; refuses up front when that exceeds ``cap``.
    """
    lee = lee_partition(G)
    atoms = lee.blocks[1:]
    total = bell(len(atoms))
    if total > cap:
        raise PartitionError(f"{total} partitions exceed the cap of {cap}")
    e = G.identity
    for rgs in restricted_growth_strings(len(atoms)):
        groups: dict[int, list[int]] = {}
        for atom, label in zip(atoms, rgs):
            groups.setdefault(label, []).extend(atom)
        yield SymPartition.from_blocks(G, [[e], *groups.values()])


def induced_partition(G: Group, w: Sequence[int]) -> SymPartition:
    """Level sets of the weight ``w``."""
    return SymPartition.from_labels(G, list(w))


def is_conjugation_closed(G: Group, P: SymPartition) -> bool:
    rows, inv, bo = G.rows, G.inverses, P.block_of
    for g in range(G.n):
        r, gi = rows[g], inv[g]
        for x in range(G.n):
            if bo[rows[r[x]][gi]] != bo[x]:
                return False
    return True


def is_small_block(G: Group, block: Sequence[int]) -> bool:
    """A block of the form ``{g, g^-1}``."""
    return set(block) == {block[0], G.inverses[block[0]]}


def format_partition(G: Group, P: SymPartition, use_labels: bool = True) -> str:
    fmt = (lambda g: G.labels[g]) if use_labels else str
    return "\n".join(",".join(fmt(g) for g in b) for b in P.blocks) + "\n"


def parse_partition(G: Group, text: str) -> SymPartition:
    """One block per line, elements given by label or by id, comma separated."""
    lookup = {lab: i for i, lab in enumerate(G.labels)}
    blocks = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        block = []
        for tok in _split_elems(line):
            if tok in lookup:
                block.append(lookup[tok])
            elif tok.isdigit() and int(tok) < G.n:
                block.append(int(tok))
            else:
                raise PartitionError(f"unknown element {tok!r}")
        blocks.append(block)
    return SymPartition.from_blocks(G, blocks)


def _split_elems(line: str) -> list[str]:
    # labels such as "(1,0)" contain commas, so split only at depth 0
    out, depth, cur = [], 0, ""
    for ch in line:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == "," and depth == 0:
            out.append(cur.strip())
            cur = ""
        else:
            cur += ch
    if cur.strip():
        out.append(cur.strip())
    return out
