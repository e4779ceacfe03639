"""
The automorphism hbar of K_n and its cyclic orbits.

For one q-orbit (k = 1) hbar follows a good-lattice path to lam with every
residue shifted by ell. For k > 1 the blocks rotate and only the last block
is transformed: theta(hbar(lam)) = (hbar'(lam[k]), lam[1], ..., lam[k-1]).
"""
import logging
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple, Optional, Sequence

from src.errors import DomainError, InvariantViolation, ParameterError
from src.lattice.core import Multipartition, ParamEnv, Residue, split_blocks
from src.lattice.crystal import f_tilde, is_kleshchev, kleshchev_set, path_from_empty, walk

logger = logging.getLogger(__name__)


def theta(env: ParamEnv, lam: Multipartition) -> tuple[Multipartition, ...]:
    return split_blocks(env, lam)


def theta_inverse(env: ParamEnv, blocks: Sequence[Multipartition]) -> Multipartition:
    if len(blocks) != env.k:
        raise ParameterError(f"expected {env.k} blocks, got {len(blocks)}")
    if any(block.p != env.d for block in blocks):
        raise ParameterError(f"every block must have {env.d} components")
    return Multipartition(tuple(comp for block in blocks for comp in block.components))


def shift_residue(env: ParamEnv, r: Residue, amount: int) -> Residue:
    return Residue(r.orbit, (r.value + amount) % env.e)


def h_prime(
    env_block: ParamEnv, lam_block: Multipartition, path: Optional[Sequence[Residue]] = None
) -> Multipartition:
    """
    hbar' on a single-orbit environment. `path` may be any good-lattice path to
    lam_block; the canonical descent is used when it is omitted.
    """
    if env_block.k != 1:
        raise ParameterError(f"h_prime needs a single-orbit environment, got {env_block}")
    if path is None:
        path = path_from_empty(env_block, lam_block)
    elif walk(env_block, path) != lam_block:
        raise DomainError(f"the given path does not lead to {lam_block}")
    current = Multipartition.empty(env_block.p)
    for step, r in enumerate(path, start=1):
        shifted = shift_residue(env_block, r, env_block.ell)
        nxt = f_tilde(env_block, current, shifted)
        if nxt is None:
            raise InvariantViolation(
                f"shifted step {step} (residue {shifted.value}) undefined from {current} for {lam_block}"
            )
        current = nxt
    return current


@lru_cache(maxsize=None)
def _h_map(env: ParamEnv, lam: Multipartition) -> Multipartition:
    if env.k == 1:
        return h_prime(env, lam)
    blocks = theta(env, lam)
    rotated = (h_prime(env.block_env(), blocks[-1]),) + blocks[:-1]
    return theta_inverse(env, rotated)


def h_map(env: ParamEnv, lam: Multipartition) -> Multipartition:
    if not is_kleshchev(env, lam):
        raise DomainError(f"{lam} is not Kleshchev for {env}")
    return _h_map(env, lam)


def h_power(env: ParamEnv, lam: Multipartition, m: int) -> Multipartition:
    if m < 0:
        raise ParameterError(f"m must be >= 0, got {m}")
    current = lam
    if m and not is_kleshchev(env, lam):
        raise DomainError(f"{lam} is not Kleshchev for {env}")
    for _ in range(m):
        current = _h_map(env, current)
    return current


def h_prime_random_paths(
    env_block: ParamEnv, lam_block: Multipartition, samples: int, rng: random.Random
) -> set[Multipartition]:
    """Images of lam_block under hbar' computed along `samples` random descent paths."""
    return {
        h_prime(env_block, lam_block, path_from_empty(env_block, lam_block, rng=rng))
        for _ in range(samples)
    }


def h_separated(lam: Multipartition) -> Multipartition:
    """hbar in the separated case: (lam(2), ..., lam(p), lam(1))."""
    return Multipartition(lam.components[1:] + lam.components[:1])


@dataclass(frozen=True)
class OrbitReport:
    representative: Multipartition
    orbit: tuple[Multipartition, ...]
    order: int
    stabilizer_size: int


def orbit_report(env: ParamEnv, lam: Multipartition) -> OrbitReport:
    if not is_kleshchev(env, lam):
        raise DomainError(f"{lam} is not Kleshchev for {env}")
    orbit = [lam]
    current = _h_map(env, lam)
    while current != lam:
        orbit.append(current)
        if len(orbit) > env.p:
            raise InvariantViolation(f"hbar-orbit of {lam} longer than p={env.p}")
        current = _h_map(env, current)
    order = len(orbit)
    if env.p % order:
        raise InvariantViolation(f"orbit order {order} of {lam} does not divide p={env.p}")
    return OrbitReport(
        representative=min(orbit),
        orbit=tuple(orbit),
        order=order,
        stabilizer_size=env.p // order,
    )


def orbits(env: ParamEnv, n: int) -> list[OrbitReport]:
    """Every hbar-orbit of K_n, each started at its smallest element, in canonical order."""
    seen: set[Multipartition] = set()
    reports = []
    for lam in kleshchev_set(env, n):
        if lam in seen:
            continue
        report = orbit_report(env, lam)
        seen.update(report.orbit)
        reports.append(report)
    logger.debug("%d hbar-orbits on K_%d for %s", len(reports), n, env)
    return reports


class OrbitClasses(NamedTuple):
    free: tuple[Multipartition, ...]
    nonfree: tuple[tuple[Multipartition, int], ...]


def partition_orbits(env: ParamEnv, n: int) -> OrbitClasses:
    """Orbit representatives split into K_n(0) (trivial stabilizer) and K_n(1) with stabilizer sizes."""
    reports = orbits(env, n)
    return OrbitClasses(
        free=tuple(r.representative for r in reports if r.stabilizer_size == 1),
        nonfree=tuple((r.representative, r.stabilizer_size) for r in reports if r.stabilizer_size > 1),
    )
