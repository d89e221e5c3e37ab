"""Branched coverings of the sphere as constellations of permutations.

Points of the fiber are numbered ``1..n`` at the interface and ``0..n-1``
internally; a permutation is stored as the tuple of images. Products are
composites of maps, ``(p * q)(i) = p(q(i))``, so the rightmost factor acts
first.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .errors import InvalidConstellation, InvalidInput, Intransitive, NonIdentityProduct

Perm = tuple[int, ...]


def identity_perm(n: int) -> Perm:
    return tuple(range(n))


def compose_perms(p: Perm, q: Perm) -> Perm:
    """``p o q``."""
    return tuple(p[i] for i in q)


def invert_perm(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def perm_from_cycles(n: int, cycles: Sequence[Sequence[int]]) -> Perm:
    """Permutation of ``0..n-1`` from 1-indexed cycles; unlisted points are fixed."""
    img = list(range(n))
    seen = set()
    for cyc in cycles:
        cyc = [int(x) for x in cyc]
        for x in cyc:
            if not 1 <= x <= n:
                raise InvalidConstellation(f"point {x} outside 1..{n}")
            if x in seen:
                raise InvalidConstellation(f"point {x} appears in two cycles")
            seen.add(x)
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            img[a - 1] = b - 1
    return tuple(img)


def perm_to_cycles(p: Perm, *, fixed: bool = False) -> list[list[int]]:
    """1-indexed cycles, each starting at its smallest point, ordered by that point."""
    seen = [False] * len(p)
    out = []
    for start in range(len(p)):
        if seen[start]:
            continue
        cyc = []
        i = start
        while not seen[i]:
            seen[i] = True
            cyc.append(i + 1)
            i = p[i]
        if len(cyc) > 1 or fixed:
            out.append(cyc)
    return out


def cycle_type(p: Perm) -> tuple[int, ...]:
    return tuple(sorted((len(c) for c in perm_to_cycles(p, fixed=True)), reverse=True))


@dataclass(frozen=True)
class Constellation:
    """Permutations ``sigma_1..sigma_k`` of an ``n``-point fiber.

    Construction does not validate; call :func:`validate`.
    """

    degree: int
    sigma: tuple[Perm, ...]

    def __post_init__(self):
        if self.degree < 1:
            raise InvalidConstellation("degree must be at least 1")
        for s in self.sigma:
            if sorted(s) != list(range(self.degree)):
                raise InvalidConstellation(f"{s} is not a permutation of {self.degree} points")

    @classmethod
    def from_cycles(cls, degree: int, sigma: Sequence[Sequence[Sequence[int]]]) -> "Constellation":
        return cls(degree, tuple(perm_from_cycles(degree, s) for s in sigma))

    @property
    def branch_count(self) -> int:
        return len(self.sigma)

    def cycles(self) -> list[list[list[int]]]:
        return [perm_to_cycles(s) for s in self.sigma]

    def product(self) -> Perm:
        out = identity_perm(self.degree)
        for s in self.sigma:
            out = compose_perms(out, s)
        return out

    def passport(self) -> "Passport":
        return Passport(tuple(cycle_type(s) for s in self.sigma))


@dataclass(frozen=True)
class Passport:
    """One partition of ``n`` (cycle lengths, descending) per branch point."""

    types: tuple[tuple[int, ...], ...]

    @classmethod
    def from_lists(cls, types: Sequence[Sequence[int]]) -> "Passport":
        types = tuple(tuple(sorted((int(x) for x in t), reverse=True)) for t in types)
        if types and len({sum(t) for t in types}) != 1:
            raise InvalidInput("passport entries partition different degrees")
        if any(x < 1 for t in types for x in t):
            raise InvalidInput("cycle lengths must be positive")
        return cls(types)

    def __len__(self):
        return len(self.types)


@dataclass(frozen=True)
class BlockSystem:
    """Partition of ``1..n`` into blocks of one size, ordered by smallest element."""

    blocks: tuple[tuple[int, ...], ...]

    @property
    def block_size(self) -> int:
        return len(self.blocks[0])

    @property
    def degree(self) -> int:
        return sum(len(b) for b in self.blocks)

    def block_of(self) -> list[int]:
        """Index of the block containing each point (0-indexed points)."""
        out = [0] * self.degree
        for k, b in enumerate(self.blocks):
            for x in b:
                out[x - 1] = k
        return out


def _orbit(n: int, gens: Sequence[Perm], start: int) -> list[int]:
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for g in gens:
            y = g[x]
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return sorted(seen)


def validate(c: Constellation) -> None:
    """Raise unless the product is the identity and the action is transitive."""
    if c.product() != identity_perm(c.degree):
        raise NonIdentityProduct("sigma_1 o ... o sigma_k is not the identity")
    if len(_orbit(c.degree, c.sigma, 0)) != c.degree:
        raise Intransitive("the permutations do not act transitively")


def genus(c: Constellation) -> int:
    """Genus from ``2 - 2g = 2n - sum (len - 1)`` over all cycles."""
    validate(c)
    ram = sum(len(cyc) - 1 for s in c.sigma for cyc in perm_to_cycles(s))
    twice = ram - 2 * c.degree + 2
    if twice < 0 or twice % 2:
        raise InvalidConstellation(f"Riemann-Hurwitz gives 2g = {twice}")
    return twice // 2


def _check_pairing(pairing: Sequence[int], k: int) -> list[int]:
    pi = [int(j) - 1 for j in pairing]
    if len(pi) != k or any(not 0 <= j < k for j in pi):
        raise InvalidInput(f"pairing must map 1..{k} into itself")
    if any(pi[pi[j]] != j for j in range(k)):
        raise InvalidInput("pairing is not an involution")
    return pi


def passport_stability(c: Constellation | Passport, pairing: Sequence[int]) -> bool:
    """Whether branch points ``j`` and ``pairing[j]`` (1-indexed) have equal cycle types."""
    p = c.passport() if isinstance(c, Constellation) else c
    pi = _check_pairing(pairing, len(p))
    return all(Counter(p.types[j]) == Counter(p.types[pi[j]]) for j in range(len(p)))


def evaluate_word(c: Constellation, word: Sequence[int]) -> Perm:
    """Product of generators named by signed 1-based indices (``-j`` is the inverse).

    ``[1, 2]`` is ``sigma_1 o sigma_2``; the empty word is the identity.
    """
    out = identity_perm(c.degree)
    for letter in word:
        if isinstance(letter, bool) or not isinstance(letter, int):
            raise InvalidInput(f"word letter {letter!r} is not an integer")
        j = abs(letter)
        if not 1 <= j <= c.branch_count:
            raise InvalidInput(f"word letter {letter} names no generator")
        s = c.sigma[j - 1]
        out = compose_perms(out, s if letter > 0 else invert_perm(s))
    return out


def schreier_generators(c: Constellation, base: int) -> list[Perm]:
    """Generators of the stabilizer of ``base`` (0-indexed) in the monodromy group."""
    n = c.degree
    transversal = {base: identity_perm(n)}
    queue = [base]
    while queue:
        x = queue.pop(0)
        for s in c.sigma:
            y = s[x]
            if y not in transversal:
                transversal[y] = compose_perms(s, transversal[x])
                queue.append(y)
    ident = identity_perm(n)
    out = set()
    for x, tx in transversal.items():
        for s in c.sigma:
            h = compose_perms(invert_perm(transversal[s[x]]), compose_perms(s, tx))
            if h != ident:
                out.add(h)
    return sorted(out)


def block_closure(c: Constellation, basepoint: int,
                  extra_words: Sequence[Sequence[int]] = ()) -> BlockSystem:
    """Block system whose block through ``basepoint`` is its orbit under ``H``.

    ``H`` is generated by the stabilizer of the basepoint and the evaluated
    ``extra_words``; since ``H`` contains the stabilizer, the orbit is a block
    and its translates under the monodromy group partition the fiber.
    """
    validate(c)
    n = c.degree
    if not 1 <= basepoint <= n:
        raise InvalidInput(f"basepoint {basepoint} outside 1..{n}")
    base = basepoint - 1
    H = schreier_generators(c, base) + [evaluate_word(c, w) for w in extra_words]
    block = _orbit(n, H, base)
    blocks = {tuple(block)}
    frontier = [tuple(block)]
    while frontier:
        b = frontier.pop()
        for s in c.sigma:
            img = tuple(sorted(s[x] for x in b))
            if img not in blocks:
                blocks.add(img)
                frontier.append(img)
    covered = sorted(x for b in blocks for x in b)
    if covered != list(range(n)):
        raise InvalidConstellation("translates of the block do not partition the fiber")
    ordered = sorted(tuple(x + 1 for x in b) for b in blocks)
    return BlockSystem(tuple(ordered))


def is_block_system(c: Constellation, B: BlockSystem) -> bool:
    """Whether ``B`` partitions the fiber into equal blocks that every generator permutes."""
    points = sorted(x for b in B.blocks for x in b)
    if points != list(range(1, c.degree + 1)) or len({len(b) for b in B.blocks}) != 1:
        return False
    which = B.block_of()
    for s in c.sigma:
        for b in B.blocks:
            if len({which[s[x - 1]] for x in b}) != 1:
                return False
    return True


def quotient_constellation(c: Constellation, B: BlockSystem) -> Constellation:
    """Induced action of the generators on the blocks."""
    if not is_block_system(c, B):
        raise InvalidInput("the partition is not preserved by the generators")
    which = B.block_of()
    sigma = tuple(tuple(which[s[b[0] - 1]] for b in B.blocks) for s in c.sigma)
    q = Constellation(len(B.blocks), sigma)
    validate(q)
    return q
