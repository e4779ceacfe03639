"""
Partitions, multipartitions, nodes and residues.

Everything here is an immutable value; the ordering of multipartitions
(`Multipartition.__lt__`) is the canonical order used by every enumeration
and report in the package.
"""
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Iterable, Iterator, Sequence

from sympy.utilities.iterables import partitions as sympy_partitions

from src.errors import ParameterError


@dataclass(frozen=True)
class ParamEnv:
    """
    Normalized parameters (p, k, ell); d = p / k components per q-orbit and
    e = d * ell is the order of q. Only the integers are stored, never field elements.
    """
    p: int
    k: int = 1
    ell: int = 1
    d: int = field(init=False)
    e: int = field(init=False)

    def __post_init__(self):
        for name in ("p", "k", "ell"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 1:
                raise ParameterError(f"{name} must be a positive integer, got {value!r}")
        if self.p % self.k:
            raise ParameterError(f"k={self.k} does not divide p={self.p}")
        object.__setattr__(self, "d", self.p // self.k)
        object.__setattr__(self, "e", (self.p // self.k) * self.ell)

    def block_env(self) -> "ParamEnv":
        """The single-orbit environment (d, ell) governing each block."""
        return ParamEnv(p=self.d, k=1, ell=self.ell)

    def __str__(self):
        return f"(p={self.p}, k={self.k}, d={self.d}, ell={self.ell}, e={self.e})"


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(self.parts)
        if any((not isinstance(x, int)) or x < 1 for x in parts):
            raise ParameterError(f"partition parts must be positive integers: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ParameterError(f"partition parts must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    def part(self, row: int) -> int:
        """Length of row `row` (1-indexed); 0 past the last row."""
        return self.parts[row - 1] if 1 <= row <= len(self.parts) else 0

    def __len__(self):
        return len(self.parts)

    def __str__(self):
        if not self.parts:
            return "∅"
        chunks = []
        for value in sorted(set(self.parts), reverse=True):
            mult = self.parts.count(value)
            chunks.append(str(value) if mult == 1 else f"{value}^{mult}")
        return "(" + ",".join(chunks) + ")"


@dataclass(frozen=True, order=True)
class Node:
    row: int
    col: int
    comp: int


@dataclass(frozen=True, order=True)
class Residue:
    orbit: int
    value: int

    def label(self, env: ParamEnv) -> str:
        return str(self.value) if env.k == 1 else f"{self.orbit}:{self.value}"

    def to_json(self, env: ParamEnv):
        if env.k == 1:
            return self.value
        return {"orbit": self.orbit, "value": self.value}


def height_key(node: Node) -> tuple[int, int, int]:
    """
    Sort key that lists nodes bottom-up: higher component first, then lower row.
    Within one row the rightmost node is the highest (only matters when e = 1).
    """
    return (-node.comp, -node.row, node.col)


def is_below(node: Node, other: Node) -> bool:
    return height_key(node) < height_key(other)


@dataclass(frozen=True, order=True)
class Multipartition:
    components: tuple[Partition, ...]

    def __post_init__(self):
        comps = tuple(c if isinstance(c, Partition) else Partition(tuple(c)) for c in self.components)
        if not comps:
            raise ParameterError("a multipartition needs at least one component")
        object.__setattr__(self, "components", comps)

    @classmethod
    def empty(cls, p: int) -> "Multipartition":
        return cls(tuple(Partition() for _ in range(p)))

    @classmethod
    def from_lists(cls, lists: Iterable[Iterable[int]]) -> "Multipartition":
        return cls(tuple(Partition(tuple(parts)) for parts in lists))

    @property
    def p(self) -> int:
        return len(self.components)

    @property
    def size(self) -> int:
        return sum(c.size for c in self.components)

    @property
    def rows(self) -> tuple[int, ...]:
        """Number of nonzero rows in each component."""
        return tuple(len(c) for c in self.components)

    def contains(self, node: Node) -> bool:
        if not 1 <= node.comp <= self.p:
            return False
        return node.col <= self.components[node.comp - 1].part(node.row)

    def add_node(self, node: Node) -> "Multipartition":
        comp = self.components[node.comp - 1]
        if node.col != comp.part(node.row) + 1 or (node.row > 1 and comp.part(node.row - 1) < node.col):
            raise ParameterError(f"{node} is not addable")
        parts = list(comp.parts)
        if node.row == len(parts) + 1:
            parts.append(1)
        else:
            parts[node.row - 1] += 1
        return self._replace(node.comp, Partition(tuple(parts)))

    def remove_node(self, node: Node) -> "Multipartition":
        comp = self.components[node.comp - 1]
        if node.col != comp.part(node.row) or node.col < 1 or comp.part(node.row + 1) >= node.col:
            raise ParameterError(f"{node} is not removable")
        parts = list(comp.parts)
        parts[node.row - 1] -= 1
        if parts[node.row - 1] == 0:
            parts.pop()
        return self._replace(node.comp, Partition(tuple(parts)))

    def _replace(self, comp: int, partition: Partition) -> "Multipartition":
        comps = list(self.components)
        comps[comp - 1] = partition
        return Multipartition(tuple(comps))

    def to_json(self) -> list[list[int]]:
        return [list(c.parts) for c in self.components]

    def __str__(self):
        return "(" + ",".join(str(c) for c in self.components) + ")"


def parse_multipartition(data: Sequence[Sequence[int]], p: int | None = None) -> Multipartition:
    """Builds a Multipartition from its JSON form, e.g. [[2,1],[1,1],[1,1,1],[2]]."""
    try:
        lam = Multipartition.from_lists(data)
    except TypeError as exc:
        raise ParameterError(f"not a multipartition: {data!r}") from exc
    if p is not None and lam.p != p:
        raise ParameterError(f"expected {p} components, got {lam.p}")
    return lam


def _check_component(env: ParamEnv, comp: int):
    if not 1 <= comp <= env.p:
        raise ParameterError(f"component {comp} out of range 1..{env.p}")


def residue_of(env: ParamEnv, node: Node) -> Residue:
    _check_component(env, node.comp)
    orbit, j = divmod(node.comp - 1, env.d)
    return Residue(orbit, (node.col - node.row + j * env.ell) % env.e)


def residue_alphabet(env: ParamEnv) -> tuple[Residue, ...]:
    return tuple(Residue(o, v) for o in range(env.k) for v in range(env.e))


def diagram_nodes(lam: Multipartition) -> list[Node]:
    """All nodes of [lam], top to bottom (component, then row, then column)."""
    return [
        Node(row, col, c)
        for c, comp in enumerate(lam.components, start=1)
        for row, length in enumerate(comp.parts, start=1)
        for col in range(1, length + 1)
    ]


def addable_nodes(lam: Multipartition, env: ParamEnv) -> list[tuple[Node, Residue]]:
    if lam.p != env.p:
        raise ParameterError(f"multipartition has {lam.p} components, environment expects {env.p}")
    found = []
    for c, comp in enumerate(lam.components, start=1):
        for row in range(1, len(comp) + 2):
            if row == 1 or comp.part(row - 1) > comp.part(row):
                node = Node(row, comp.part(row) + 1, c)
                found.append((node, residue_of(env, node)))
    found.sort(key=lambda item: height_key(item[0]))
    return found


def removable_nodes(lam: Multipartition, env: ParamEnv) -> list[tuple[Node, Residue]]:
    if lam.p != env.p:
        raise ParameterError(f"multipartition has {lam.p} components, environment expects {env.p}")
    found = []
    for c, comp in enumerate(lam.components, start=1):
        for row in range(1, len(comp) + 1):
            if comp.part(row) > comp.part(row + 1):
                node = Node(row, comp.part(row), c)
                found.append((node, residue_of(env, node)))
    found.sort(key=lambda item: height_key(item[0]))
    return found


def residue_content(env: ParamEnv, lam: Multipartition) -> Counter:
    """Multiset of residues of [lam]."""
    return Counter(residue_of(env, node) for node in diagram_nodes(lam))


def dominance_geq(lam: Multipartition, mu: Multipartition) -> bool:
    if lam.p != mu.p or lam.size != mu.size:
        raise ParameterError("dominance needs multipartitions with the same p and size")
    offset_lam = offset_mu = 0
    for comp_lam, comp_mu in zip(lam.components, mu.components):
        sum_lam, sum_mu = offset_lam, offset_mu
        for row in range(1, max(len(comp_lam), len(comp_mu)) + 1):
            sum_lam += comp_lam.part(row)
            sum_mu += comp_mu.part(row)
            if sum_lam < sum_mu:
                return False
        # the m = 0 prefix of the next component is the running total
        offset_lam, offset_mu = sum_lam, sum_mu
        if offset_lam < offset_mu:
            return False
    return True


@lru_cache(maxsize=None)
def partitions_of(n: int) -> tuple[Partition, ...]:
    """All partitions of n in increasing tuple order."""
    if n < 0:
        raise ParameterError(f"n must be >= 0, got {n}")
    if n == 0:
        return (Partition(),)
    found = []
    for mults in sympy_partitions(n):
        parts = sorted((part for part, mult in mults.items() for _ in range(mult)), reverse=True)
        found.append(Partition(tuple(parts)))
    return tuple(sorted(found))


def weak_compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Ordered tuples of `parts` non-negative integers summing to `total`."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in weak_compositions(total - first, parts - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def enumerate_multipartitions(p: int, n: int) -> tuple[Multipartition, ...]:
    if p < 1 or n < 0:
        raise ParameterError(f"need p >= 1 and n >= 0, got p={p}, n={n}")
    found = [
        Multipartition(comps)
        for sizes in weak_compositions(n, p)
        for comps in product(*(partitions_of(s) for s in sizes))
    ]
    return tuple(sorted(found))


def split_blocks(env: ParamEnv, lam: Multipartition) -> tuple[Multipartition, ...]:
    if lam.p != env.p:
        raise ParameterError(f"multipartition has {lam.p} components, environment expects {env.p}")
    return tuple(
        Multipartition(lam.components[i * env.d:(i + 1) * env.d]) for i in range(env.k)
    )
