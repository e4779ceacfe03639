"""
The invariant grid behind `verify`.

One cell per parameter environment; every check walks its inputs in canonical
order and stops at the first counterexample, so a reported witness is the
smallest failing input. Cells are independent and may run on a process pool;
results are always returned in grid order.
"""
import logging
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import gcd
from typing import Callable, Iterator, Optional

from src.errors import KleshchevError
from src.fock.space import FockVector, commutator_check, e_op, f_op, n_i
from src.hecke.counting import (
    count_irr_ppn,
    divisors,
    eta_map,
    fixed_points,
    n_tilde_bruteforce,
    n_tilde_formula,
    orbit_sum_oracle,
    reduced_fixed_blocks,
    truncate_blocks,
)
from src.hecke.involution import h_power, h_prime_random_paths, orbits, theta
from src.lattice.core import ParamEnv, enumerate_multipartitions, residue_alphabet
from src.lattice.crystal import (
    e_tilde,
    epsilon_count,
    f_tilde,
    is_kleshchev,
    kleshchev_set,
    phi_count,
)

logger = logging.getLogger(__name__)

CRYSTAL_MAX_SIZE = 5
FOCK_MAX_SIZE = 5
FOCK_MAX_P = 3


@dataclass
class Failure:
    invariant: str
    witness: str


@dataclass
class CellResult:
    cell: str
    checks: int = 0
    failures: list[Failure] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


Check = Callable[[ParamEnv, int, random.Random, int], Iterator[Optional[str]]]


def _first_failure(results: Iterator[Optional[str]]) -> tuple[int, Optional[str]]:
    count = 0
    for witness in results:
        count += 1
        if witness is not None:
            return count, witness
    return count, None


# --- CRYSTAL ---
def check_inverse_pair(env, max_n, rng, samples):
    for n in range(min(max_n, CRYSTAL_MAX_SIZE) + 1):
        for lam in enumerate_multipartitions(env.p, n):
            for r in residue_alphabet(env):
                mu = f_tilde(env, lam, r)
                if mu is not None and e_tilde(env, mu, r) != lam:
                    yield f"e~(f~({lam})) != {lam} at r={r.label(env)}"
                    return
                nu = e_tilde(env, lam, r)
                if nu is not None and f_tilde(env, nu, r) != lam:
                    yield f"f~(e~({lam})) != {lam} at r={r.label(env)}"
                    return
                yield None


def check_string_lengths(env, max_n, rng, samples):
    # at e = 1 the conormal nodes never become good, so phi > 0 with f~ undefined
    if env.e == 1:
        return
    for n in range(min(max_n, CRYSTAL_MAX_SIZE) + 1):
        for lam in enumerate_multipartitions(env.p, n):
            for r in residue_alphabet(env):
                if (f_tilde(env, lam, r) is not None) != (phi_count(env, lam, r) > 0):
                    yield f"f~ defined iff phi > 0 fails at {lam}, r={r.label(env)}"
                    return
                if (e_tilde(env, lam, r) is not None) != (epsilon_count(env, lam, r) > 0):
                    yield f"e~ defined iff eps > 0 fails at {lam}, r={r.label(env)}"
                    return
                yield None


def check_lattice_membership(env, max_n, rng, samples):
    for n in range(min(max_n, CRYSTAL_MAX_SIZE) + 1):
        level = set(kleshchev_set(env, n))
        for lam in enumerate_multipartitions(env.p, n):
            if (lam in level) != is_kleshchev(env, lam):
                yield f"lattice and greedy membership disagree on {lam}"
                return
            yield None


def _raise_at_random(env, lam, rng):
    current, steps = lam, 0
    while True:
        raised = [mu for mu in (e_tilde(env, current, r) for r in residue_alphabet(env)) if mu is not None]
        if not raised:
            return current, steps
        current, steps = rng.choice(raised), steps + 1


def check_greedy_termination(env, max_n, rng, samples):
    # any raising order from lam in K_n reaches the empty multipartition in n steps
    for n in range(min(max_n, CRYSTAL_MAX_SIZE) + 1):
        for lam in kleshchev_set(env, n):
            for _ in range(samples):
                end, steps = _raise_at_random(env, lam, rng)
                if end.size or steps != n:
                    yield f"raising chain from {lam} stops at {end} after {steps} steps"
                    return
            yield None


# --- HBAR ---
def check_path_independence(env, max_n, rng, samples):
    block_env = env.block_env()
    for n in range(max_n + 1):
        for lam in kleshchev_set(env, n):
            for block in theta(env, lam):
                images = h_prime_random_paths(block_env, block, samples, rng)
                if len(images) != 1:
                    yield f"hbar' of block {block} depends on the path: {sorted(map(str, images))}"
                    return
            if h_power(env, lam, env.p) != lam:
                yield f"hbar^p({lam}) != {lam}"
                return
            yield None


# --- COUNTING ---
def check_fixed_point_formula(env, max_n, rng, samples):
    for n in range(max_n + 1):
        for m in divisors(env.p):
            formula, brute = n_tilde_formula(env, n, m), n_tilde_bruteforce(env, n, m)
            if formula != brute:
                yield f"N~({m}) at n={n}: formula {formula} != brute force {brute}"
                return
            yield None


def check_simple_count(env, max_n, rng, samples):
    for n in range(max_n + 1):
        formula, oracle = count_irr_ppn(env, n), orbit_sum_oracle(env, n)
        if formula != oracle:
            yield f"n={n}: simple-module count {formula} != orbit sum {oracle}"
            return
        yield None


def check_block_truncation(env, max_n, rng, samples):
    for n in range(max_n + 1):
        for m in divisors(env.p):
            truncated = {truncate_blocks(env, lam, m) for lam in fixed_points(env, n, m)}
            if truncated != reduced_fixed_blocks(env, n, m) or len(truncated) != n_tilde_bruteforce(env, n, m):
                yield f"block truncation is not a bijection at n={n}, m={m}"
                return
            yield None


def check_vanishing(env, max_n, rng, samples):
    for n in range(1, max_n + 1):
        if env.k == 1 and env.ell == 1:
            if n_tilde_formula(env, n, 1) or n_tilde_bruteforce(env, n, 1):
                yield f"N~(1) != 0 at ell=1, n={n}"
                return
        if gcd(env.p, n) == 1:
            if any(n_tilde_formula(env, n, m) for m in divisors(env.p) if m < env.p):
                yield f"N~(m) != 0 for some m < p with gcd(p, n) = 1, n={n}"
                return
            if any(report.stabilizer_size != 1 for report in orbits(env, n)):
                yield f"non-free hbar-orbit with gcd(p, n) = 1, n={n}"
                return
        yield None


def check_eta(env, max_n, rng, samples):
    if env.k != 1:
        return
    for n in range(max_n + 1):
        for m in divisors(env.p):
            if (n * m) % env.p:
                continue
            small_env = ParamEnv(p=m, k=1, ell=env.ell)
            sources = kleshchev_set(small_env, n * m // env.p)
            images = [eta_map(env, m, lam) for lam in sources]
            if len(set(images)) != len(images) or set(images) != fixed_points(env, n, m):
                yield f"eta is not a bijection onto the hbar^{m}-fixed points at n={n}"
                return
            yield None


# --- FOCK ---
def check_fock(env, max_n, rng, samples):
    if env.k != 1 or env.p > FOCK_MAX_P:
        return
    for n in range(min(max_n, FOCK_MAX_SIZE) + 1):
        for lam in enumerate_multipartitions(env.p, n):
            x = FockVector.basis(lam)
            for r in residue_alphabet(env):
                if n_i(env, lam, r) != phi_count(env, lam, r) - epsilon_count(env, lam, r):
                    yield f"weight identity fails at {lam}, r={r.label(env)}"
                    return
                up, down = f_op(env, x, r), e_op(env, x, r)
                mu, nu = f_tilde(env, lam, r), e_tilde(env, lam, r)
                if (mu is not None and mu not in up.support) or (nu is not None and nu not in down.support):
                    yield f"crystal operator outside the Fock support at {lam}, r={r.label(env)}"
                    return
                if not commutator_check(env, lam, r):
                    yield f"commutator identity fails at {lam}, r={r.label(env)}"
                    return
                yield None


CHECKS: dict[str, Check] = {
    "crystal inverse pair": check_inverse_pair,
    "crystal string lengths": check_string_lengths,
    "lattice membership": check_lattice_membership,
    "crystal greedy termination": check_greedy_termination,
    "hbar path independence": check_path_independence,
    "fixed-point formula": check_fixed_point_formula,
    "simple-module count": check_simple_count,
    "block truncation": check_block_truncation,
    "vanishing counts": check_vanishing,
    "eta bijection": check_eta,
    "fock algebra": check_fock,
}


def grid_cells(k1_grid, multi_orbit_grid) -> list[ParamEnv]:
    cells = [ParamEnv(p=p, k=1, ell=ell) for p, ell in k1_grid]
    cells += [ParamEnv(p=p, k=k, ell=ell) for p, k, ell in multi_orbit_grid]
    return cells


def verify_cell(env: ParamEnv, max_n: int, seed: int, samples: int) -> CellResult:
    result = CellResult(cell=str(env))
    rng = random.Random(f"{seed}:{env.p}:{env.k}:{env.ell}")
    for name, check in CHECKS.items():
        try:
            count, witness = _first_failure(check(env, max_n, rng, samples))
        except KleshchevError as exc:
            count, witness = 1, f"{type(exc).__name__}: {exc}"
        result.checks += count
        if witness is not None:
            result.failures.append(Failure(invariant=name, witness=witness))
    marker = "✅" if result.passed else "🔻"
    logger.info("%s %s: %d checks, %d failures", marker, result.cell, result.checks, len(result.failures))
    return result


def run_verify(cells: list[ParamEnv], max_n: int, seed: int, samples: int, workers: int = 1) -> list[CellResult]:
    if workers <= 1:
        return [verify_cell(env, max_n, seed, samples) for env in cells]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(verify_cell, env, max_n, seed, samples) for env in cells]
        return [future.result() for future in futures]
