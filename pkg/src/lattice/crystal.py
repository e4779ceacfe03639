"""
Good-node calculus on multipartitions and Kleshchev's good lattice.

The signature of lam at residue r lists the addable (A) and removable (R)
r-nodes bottom-up. Cancelling "AR" pairs leaves R...RA...A; the surviving
R's are the normal nodes (the highest one is good), the surviving A's are
the conormal nodes (the lowest one is cogood).
"""
import bisect
import logging
import random
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterable, Optional

from src.errors import DomainError, InvariantViolation, ParameterError
from src.lattice.core import (
    Multipartition,
    Node,
    ParamEnv,
    Residue,
    addable_nodes,
    height_key,
    removable_nodes,
    residue_alphabet,
    split_blocks,
)

logger = logging.getLogger(__name__)


class Letter(str, Enum):
    ADD = "A"
    REMOVE = "R"


@dataclass(frozen=True)
class SignatureWord:
    letters: tuple[tuple[Letter, Node], ...] = ()

    def __str__(self):
        return "".join(letter.value for letter, _ in self.letters)

    def __len__(self):
        return len(self.letters)

    @property
    def removable(self) -> list[Node]:
        return [node for letter, node in self.letters if letter is Letter.REMOVE]

    @property
    def addable(self) -> list[Node]:
        return [node for letter, node in self.letters if letter is Letter.ADD]


def signature(env: ParamEnv, lam: Multipartition, r: Residue) -> SignatureWord:
    letters = [(Letter.ADD, node) for node, res in addable_nodes(lam, env) if res == r]
    letters += [(Letter.REMOVE, node) for node, res in removable_nodes(lam, env) if res == r]
    letters.sort(key=lambda item: height_key(item[1]))
    return SignatureWord(tuple(letters))


def reduce(word: SignatureWord) -> SignatureWord:
    # bracket matching: an R cancels the nearest uncancelled A below it
    stack: list[tuple[Letter, Node]] = []
    for letter, node in word.letters:
        if letter is Letter.REMOVE and stack and stack[-1][0] is Letter.ADD:
            stack.pop()
        else:
            stack.append((letter, node))
    return SignatureWord(tuple(stack))


def residue_word_string(env: ParamEnv, lam: Multipartition, r: Residue) -> str:
    return str(signature(env, lam, r))


def good_node(env: ParamEnv, lam: Multipartition, r: Residue) -> Optional[Node]:
    normal = reduce(signature(env, lam, r)).removable
    return normal[-1] if normal else None


def cogood_node(env: ParamEnv, lam: Multipartition, r: Residue) -> Optional[Node]:
    conormal = reduce(signature(env, lam, r)).addable
    return conormal[0] if conormal else None


def epsilon_count(env: ParamEnv, lam: Multipartition, r: Residue) -> int:
    return len(reduce(signature(env, lam, r)).removable)


def phi_count(env: ParamEnv, lam: Multipartition, r: Residue) -> int:
    return len(reduce(signature(env, lam, r)).addable)


def e_tilde(env: ParamEnv, lam: Multipartition, r: Residue) -> Optional[Multipartition]:
    node = good_node(env, lam, r)
    return lam.remove_node(node) if node is not None else None


def f_tilde(env: ParamEnv, lam: Multipartition, r: Residue) -> Optional[Multipartition]:
    """
    Adds the conormal r-node that becomes the good r-node of the result, trying the
    cogood node first. For e >= 2 the cogood node always qualifies; for e = 1 none
    ever does and f_tilde is undefined.
    """
    for node in reduce(signature(env, lam, r)).addable:
        mu = lam.add_node(node)
        if good_node(env, mu, r) == node:
            return mu
    return None


def _removable_residues(env: ParamEnv, lam: Multipartition) -> list[Residue]:
    return sorted({res for _, res in removable_nodes(lam, env)})


@lru_cache(maxsize=None)
def _greedy_terminal(env: ParamEnv, lam: Multipartition) -> Multipartition:
    # Raising paths from lam all end at the highest-weight element of its component,
    # so any choice of residue at each step gives the same terminal.
    current = lam
    while True:
        for r in _removable_residues(env, current):
            raised = e_tilde(env, current, r)
            if raised is not None:
                current = raised
                break
        else:
            return current


def is_kleshchev_greedy(env: ParamEnv, lam: Multipartition) -> bool:
    """Membership by raising with e_tilde over the full residue alphabet of env."""
    return _greedy_terminal(env, lam).size == 0


def is_kleshchev(env: ParamEnv, lam: Multipartition) -> bool:
    if env.k == 1:
        return is_kleshchev_greedy(env, lam)
    block_env = env.block_env()
    return all(is_kleshchev_greedy(block_env, block) for block in split_blocks(env, lam))


def path_from_empty(
    env: ParamEnv, lam: Multipartition, rng: Optional[random.Random] = None
) -> list[Residue]:
    """
    Residues r_1..r_n of a path from the empty multipartition to lam in the good lattice.
    Without `rng` the descent removes the good node of the smallest residue at every step;
    with `rng` the residue is drawn at random among those with a good node.
    """
    if not is_kleshchev(env, lam):
        raise DomainError(f"{lam} is not Kleshchev for {env}")
    path = []
    current = lam
    while current.size:
        candidates = [r for r in _removable_residues(env, current) if good_node(env, current, r)]
        if not candidates:
            raise InvariantViolation(f"descent from {lam} stuck at {current}")
        r = rng.choice(candidates) if rng is not None else candidates[0]
        path.append(r)
        current = e_tilde(env, current, r)
    path.reverse()
    return path


def random_descent_path(env: ParamEnv, lam: Multipartition, rng: random.Random) -> list[Residue]:
    return path_from_empty(env, lam, rng=rng)


def walk(env: ParamEnv, residues: Iterable[Residue], start: Optional[Multipartition] = None) -> Optional[Multipartition]:
    """Applies f_tilde along `residues`; None as soon as a step is undefined."""
    current = start if start is not None else Multipartition.empty(env.p)
    for r in residues:
        current = f_tilde(env, current, r)
        if current is None:
            return None
    return current


@dataclass(frozen=True)
class CrystalLattice:
    env: ParamEnv
    levels: tuple[tuple[Multipartition, ...], ...]
    # edges[t] maps (parent in level t, residue) -> child in level t+1
    edges: tuple[dict[tuple[Multipartition, Residue], Multipartition], ...]

    @property
    def depth(self) -> int:
        return len(self.levels) - 1

    def index(self, lam: Multipartition) -> int:
        """Position of lam in its (sorted) level, or -1."""
        if lam.size > self.depth:
            return -1
        level = self.levels[lam.size]
        i = bisect.bisect_left(level, lam)
        return i if i < len(level) and level[i] == lam else -1

    def __contains__(self, lam: Multipartition) -> bool:
        return self.index(lam) >= 0

    def edge_list(self) -> list[tuple[int, int, int, Residue]]:
        """(level, parent index, child index, residue) in deterministic order."""
        rows = []
        for t, edges in enumerate(self.edges):
            for (parent, r), child in edges.items():
                rows.append((t, self.index(parent), self.index(child), r))
        rows.sort(key=lambda row: (row[0], row[1], row[3], row[2]))
        return rows


@lru_cache(maxsize=None)
def _level(env: ParamEnv, t: int) -> tuple[tuple[Multipartition, ...], dict]:
    if t == 0:
        return (Multipartition.empty(env.p),), {}
    parents, _ = _level(env, t - 1)
    alphabet = residue_alphabet(env)
    edges = {}
    for parent in parents:
        for r in alphabet:
            child = f_tilde(env, parent, r)
            if child is not None:
                edges[(parent, r)] = child
    level = tuple(sorted(set(edges.values())))
    logger.debug("lattice %s level %d: %d Kleshchev multipartitions", env, t, len(level))
    return level, edges


def generate_lattice(env: ParamEnv, n: int) -> CrystalLattice:
    if n < 0:
        raise ParameterError(f"n must be >= 0, got {n}")
    built = [_level(env, t) for t in range(n + 1)]
    return CrystalLattice(
        env=env,
        levels=tuple(level for level, _ in built),
        edges=tuple(edges for _, edges in built[1:]),
    )


def kleshchev_set(env: ParamEnv, n: int) -> tuple[Multipartition, ...]:
    """K_n in canonical order."""
    if n < 0:
        raise ParameterError(f"n must be >= 0, got {n}")
    return _level(env, n)[0]


def lattice_edges(env: ParamEnv, n: int) -> list[tuple[int, int, int, Residue]]:
    return generate_lattice(env, n).edge_list()
