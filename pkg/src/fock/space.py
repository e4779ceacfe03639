"""
The level-p Fock space of a single-orbit environment (k = 1).

Basis vectors are p-multipartitions; coefficients are Laurent polynomials in v.
F_r adds an r-node with weight v^n_l, E_r removes one with weight v^-n_r,
K_r and D act diagonally.
"""
import logging
import re
from dataclasses import dataclass
from typing import Optional

from src.errors import ParameterError
from src.fock.laurent import LaurentPoly
from src.lattice.core import (
    Multipartition,
    Node,
    ParamEnv,
    Residue,
    addable_nodes,
    diagram_nodes,
    is_below,
    removable_nodes,
    residue_alphabet,
    residue_of,
)

logger = logging.getLogger(__name__)

WORD_TOKEN = re.compile(r"^(?:([EFK])(\d+)|D)$")


def _require_single_orbit(env: ParamEnv):
    if env.k != 1:
        raise ParameterError(f"the Fock space action needs k = 1, got {env}")


@dataclass(frozen=True)
class FockVector:
    terms: tuple[tuple[Multipartition, LaurentPoly], ...] = ()

    def __post_init__(self):
        merged: dict[Multipartition, LaurentPoly] = {}
        for lam, coeff in self.terms:
            merged[lam] = merged.get(lam, LaurentPoly.zero()) + coeff
        sizes = {lam.p for lam in merged}
        if len(sizes) > 1:
            raise ParameterError(f"Fock vector mixes multipartitions with p in {sorted(sizes)}")
        object.__setattr__(self, "terms", tuple(sorted((lam, c) for lam, c in merged.items() if c)))

    @classmethod
    def zero(cls) -> "FockVector":
        return cls()

    @classmethod
    def basis(cls, lam: Multipartition, coeff: Optional[LaurentPoly] = None) -> "FockVector":
        return cls(((lam, coeff if coeff is not None else LaurentPoly.one()),))

    @property
    def support(self) -> frozenset[Multipartition]:
        return frozenset(lam for lam, _ in self.terms)

    def scale(self, coeff: LaurentPoly) -> "FockVector":
        return FockVector(tuple((lam, c * coeff) for lam, c in self.terms))

    def __add__(self, other: "FockVector") -> "FockVector":
        return FockVector(self.terms + other.terms)

    def __neg__(self) -> "FockVector":
        return FockVector(tuple((lam, -c) for lam, c in self.terms))

    def __sub__(self, other: "FockVector") -> "FockVector":
        return self + (-other)

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*{lam}" for lam, c in self.terms)


def n_i(env: ParamEnv, lam: Multipartition, r: Residue) -> int:
    _require_single_orbit(env)
    added = sum(1 for _, res in addable_nodes(lam, env) if res == r)
    removed = sum(1 for _, res in removable_nodes(lam, env) if res == r)
    return added - removed


def n_d_stat(env: ParamEnv, lam: Multipartition) -> int:
    _require_single_orbit(env)
    zero = Residue(0, 0)
    return sum(1 for node in diagram_nodes(lam) if residue_of(env, node) == zero)


def _added_node(env: ParamEnv, small: Multipartition, big: Multipartition, r: Residue) -> Node:
    if small.p != big.p or big.size != small.size + 1:
        raise ParameterError(f"{big} is not {small} plus one node")
    for node, res in addable_nodes(small, env):
        if small.add_node(node) == big:
            if res != r:
                raise ParameterError(f"{node} has residue {res.label(env)}, not {r.label(env)}")
            return node
    raise ParameterError(f"{big} is not {small} plus one node")


def n_l(env: ParamEnv, lam: Multipartition, mu: Multipartition, r: Residue) -> int:
    """Addable r-nodes of mu below the added node, minus removable r-nodes of lam below it."""
    _require_single_orbit(env)
    gamma = _added_node(env, lam, mu, r)
    added = sum(1 for node, res in addable_nodes(mu, env) if res == r and is_below(node, gamma))
    removed = sum(1 for node, res in removable_nodes(lam, env) if res == r and is_below(node, gamma))
    return added - removed


def n_r(env: ParamEnv, nu: Multipartition, lam: Multipartition, r: Residue) -> int:
    """Addable r-nodes of lam above the removed node, minus removable r-nodes of nu above it."""
    _require_single_orbit(env)
    gamma = _added_node(env, nu, lam, r)
    added = sum(1 for node, res in addable_nodes(lam, env) if res == r and is_below(gamma, node))
    removed = sum(1 for node, res in removable_nodes(nu, env) if res == r and is_below(gamma, node))
    return added - removed


def _linear(x: FockVector, image) -> FockVector:
    result = FockVector.zero()
    for lam, coeff in x.terms:
        result = result + image(lam).scale(coeff)
    return result


def f_op(env: ParamEnv, x: FockVector, r: Residue) -> FockVector:
    _require_single_orbit(env)

    def image(lam: Multipartition) -> FockVector:
        terms = []
        for node, res in addable_nodes(lam, env):
            if res == r:
                mu = lam.add_node(node)
                terms.append((mu, LaurentPoly.monomial(n_l(env, lam, mu, r))))
        return FockVector(tuple(terms))

    return _linear(x, image)


def e_op(env: ParamEnv, x: FockVector, r: Residue) -> FockVector:
    _require_single_orbit(env)

    def image(lam: Multipartition) -> FockVector:
        terms = []
        for node, res in removable_nodes(lam, env):
            if res == r:
                nu = lam.remove_node(node)
                terms.append((nu, LaurentPoly.monomial(-n_r(env, nu, lam, r))))
        return FockVector(tuple(terms))

    return _linear(x, image)


def k_op(env: ParamEnv, x: FockVector, r: Residue) -> FockVector:
    _require_single_orbit(env)
    return _linear(x, lambda lam: FockVector.basis(lam, LaurentPoly.monomial(n_i(env, lam, r))))


def kd_op(env: ParamEnv, x: FockVector) -> FockVector:
    _require_single_orbit(env)
    return _linear(x, lambda lam: FockVector.basis(lam, LaurentPoly.monomial(-n_d_stat(env, lam))))


def commutator(env: ParamEnv, lam: Multipartition, r: Residue, r2: Residue) -> FockVector:
    """(E_r2 F_r - F_r E_r2) applied to lam."""
    x = FockVector.basis(lam)
    return e_op(env, f_op(env, x, r), r2) - f_op(env, e_op(env, x, r2), r)


def commutator_check(env: ParamEnv, lam: Multipartition, r: Residue) -> bool:
    """
    True iff [E_r, F_r] lam = [n_i(lam, r)] lam and [E_s, F_r] lam = 0 for every other residue s.
    """
    expected = FockVector.basis(lam, LaurentPoly.quantum_integer(n_i(env, lam, r)))
    if commutator(env, lam, r, r) != expected:
        logger.debug("same-residue commutator fails at %s, r=%s", lam, r.label(env))
        return False
    for other in residue_alphabet(env):
        if other != r and commutator(env, lam, r, other):
            logger.debug("mixed commutator F%s/E%s nonzero at %s", r.label(env), other.label(env), lam)
            return False
    return True


def parse_word(env: ParamEnv, word: str) -> list[tuple[str, Optional[Residue]]]:
    """Tokens such as "F0 F2 E0 K1 D"; residues are values mod e."""
    _require_single_orbit(env)
    tokens = []
    for token in word.split():
        match = WORD_TOKEN.match(token)
        if not match:
            raise ParameterError(f"bad operator token {token!r}; expected E<r>, F<r>, K<r> or D")
        letter, value = match.groups()
        if letter is None:
            tokens.append(("D", None))
            continue
        value = int(value)
        if value >= env.e:
            raise ParameterError(f"residue {value} out of range 0..{env.e - 1}")
        tokens.append((letter, Residue(0, value)))
    return tokens


def apply_word(env: ParamEnv, x: FockVector, word: str) -> FockVector:
    """Applies an operator word to x; the rightmost operator acts first."""
    for letter, r in reversed(parse_word(env, word)):
        if letter == "F":
            x = f_op(env, x, r)
        elif letter == "E":
            x = e_op(env, x, r)
        elif letter == "K":
            x = k_op(env, x, r)
        else:
            x = kd_op(env, x)
    return x
