"""
Counting simple modules of H_q(p,p,n).

Closed formulas for the number of hbar^m-fixed Kleshchev multipartitions,
Moebius inversion to exact orbit orders, and the brute-force oracles each
formula is checked against.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd, prod
from typing import Optional

from sympy import divisors as sympy_divisors
from sympy import factorint

from src.errors import InvariantViolation, ParameterError
from src.hecke.involution import h_power, partition_orbits, theta
from src.lattice.core import Multipartition, ParamEnv, Residue, weak_compositions
from src.lattice.crystal import f_tilde, kleshchev_set, path_from_empty

logger = logging.getLogger(__name__)


def mobius(a: int) -> int:
    if a < 1:
        raise ParameterError(f"mobius needs a >= 1, got {a}")
    factors = factorint(a)
    if any(exp > 1 for exp in factors.values()):
        return 0
    return -1 if len(factors) % 2 else 1


def divisors(n: int) -> list[int]:
    return [int(x) for x in sympy_divisors(n)]


def compositions(total: int, parts: int) -> list[tuple[int, ...]]:
    """Weak compositions of `total` into `parts` ordered non-negative parts."""
    return list(weak_compositions(total, parts))


def _check_divisor(env: ParamEnv, m: int):
    if m < 1 or m > env.p or env.p % m:
        raise ParameterError(f"m={m} must be a divisor of p={env.p}")


def count_irr_single_orbit(pp: int, ell: int, n: int) -> int:
    """|K_n| for the single-orbit environment (pp, ell); 1 when n = 0."""
    return len(kleshchev_set(ParamEnv(p=pp, k=1, ell=ell), n))


def count_irr_pn(env: ParamEnv, n: int) -> int:
    if env.k == 1:
        return count_irr_single_orbit(env.p, env.ell, n)
    return sum(
        prod(count_irr_single_orbit(env.d, env.ell, part) for part in sizes)
        for sizes in weak_compositions(n, env.k)
    )


def n_tilde_bruteforce(env: ParamEnv, n: int, m: int) -> int:
    if not 1 <= m <= env.p:
        raise ParameterError(f"m must lie in 1..{env.p}, got {m}")
    return len(fixed_points(env, n, m))


def fixed_points(env: ParamEnv, n: int, m: int) -> frozenset[Multipartition]:
    return frozenset(lam for lam in kleshchev_set(env, n) if h_power(env, lam, m) == lam)


def n_tilde_formula(env: ParamEnv, n: int, m: int) -> int:
    _check_divisor(env, m)
    if env.k == 1:
        if (m * n) % env.p:
            return 0
        return count_irr_single_orbit(m, env.ell, m * n // env.p)

    a = gcd(m, env.k)
    d_tilde = gcd(env.d, m // a)
    if (n * a) % env.k:
        return 0
    total = 0
    for sizes in weak_compositions(n * a // env.k, a):
        # a block of size n_i is fixed only when d divides d_tilde * n_i
        if any((d_tilde * part) % env.d for part in sizes):
            continue
        total += prod(count_irr_single_orbit(d_tilde, env.ell, d_tilde * part // env.d) for part in sizes)
    return total


def n_exact(env: ParamEnv, n: int, m_exact: int) -> int:
    """N(m): the number of lam in K_n whose hbar-orbit has exactly m elements."""
    _check_divisor(env, m_exact)
    return sum(mobius(m_exact // m) * n_tilde_formula(env, n, m) for m in divisors(m_exact))


def count_irr_ppn(env: ParamEnv, n: int) -> int:
    irr_pn = count_irr_pn(env, n)
    proper = [m for m in divisors(env.p) if m < env.p]
    exact = {m: n_exact(env, n, m) for m in proper}
    value = Fraction(irr_pn - sum(exact.values()), env.p)
    value += sum(Fraction(exact[m] * env.p, m * m) for m in proper)
    if value.denominator != 1 or value < 0:
        raise InvariantViolation(f"simple-module count {value} for {env}, n={n} is not a non-negative integer")
    return int(value)


def orbit_sum_oracle(env: ParamEnv, n: int) -> int:
    classes = partition_orbits(env, n)
    return len(classes.free) + sum(stab for _, stab in classes.nonfree)


def eta_map(env: ParamEnv, m: int, lam_check: Multipartition) -> Multipartition:
    """
    Expands a good-lattice path to lam_check (level m, e = m*ell) into a path of the
    level-p lattice: every residue r becomes r, r + m*ell, ..., r + (p-m)*ell.
    """
    if env.k != 1:
        raise ParameterError(f"eta_map needs a single-orbit environment, got {env}")
    _check_divisor(env, m)
    small_env = ParamEnv(p=m, k=1, ell=env.ell)
    if lam_check.p != m:
        raise ParameterError(f"expected an {m}-multipartition, got {lam_check.p} components")
    path = path_from_empty(small_env, lam_check)
    current = Multipartition.empty(env.p)
    for r in path:
        for j in range(env.p // m):
            step = Residue(0, (r.value + j * m * env.ell) % env.e)
            nxt = f_tilde(env, current, step)
            if nxt is None:
                raise InvariantViolation(f"expanded step {step.value} undefined from {current} for {lam_check}")
            current = nxt
    return current


def reduced_fixed_blocks(env: ParamEnv, n: int, m: int) -> frozenset[tuple[Multipartition, ...]]:
    """
    The first a = gcd(m, k) blocks of every hbar^m-fixed lam: tuples of Kleshchev
    d-multipartitions of total size n*a/k, each fixed by hbar'^(m/a).
    """
    _check_divisor(env, m)
    a = gcd(m, env.k)
    if (n * a) % env.k:
        return frozenset()
    block_env = env.block_env()
    found = set()
    for sizes in weak_compositions(n * a // env.k, a):
        choices = [
            [blk for blk in kleshchev_set(block_env, part) if h_power(block_env, blk, m // a) == blk]
            for part in sizes
        ]
        found.update(product(*choices))
    return frozenset(found)


def truncate_blocks(env: ParamEnv, lam: Multipartition, m: int) -> tuple[Multipartition, ...]:
    return theta(env, lam)[: gcd(m, env.k)]


@dataclass
class CountReport:
    n_tilde: dict[int, int]
    n_exact: dict[int, int]
    irr_pn: int
    irr_ppn: int
    cross_checked: bool = False
    oracle_n_tilde: Optional[dict[int, int]] = None
    orbit_sum: Optional[int] = None
    mismatches: list[str] = field(default_factory=list)


def count_report(env: ParamEnv, n: int, check: bool = False) -> CountReport:
    if n < 0:
        raise ParameterError(f"n must be >= 0, got {n}")
    divs = divisors(env.p)
    report = CountReport(
        n_tilde={m: n_tilde_formula(env, n, m) for m in divs},
        n_exact={m: n_exact(env, n, m) for m in divs if m < env.p},
        irr_pn=count_irr_pn(env, n),
        irr_ppn=count_irr_ppn(env, n),
    )
    if not check:
        return report

    report.oracle_n_tilde = {m: n_tilde_bruteforce(env, n, m) for m in divs}
    report.orbit_sum = orbit_sum_oracle(env, n)
    for m in divs:
        if report.oracle_n_tilde[m] != report.n_tilde[m]:
            report.mismatches.append(f"N~({m}): formula {report.n_tilde[m]} != oracle {report.oracle_n_tilde[m]}")
    if report.orbit_sum != report.irr_ppn:
        report.mismatches.append(f"irr_ppn {report.irr_ppn} != orbit sum {report.orbit_sum}")
    if report.irr_pn != len(kleshchev_set(env, n)):
        report.mismatches.append(f"irr_pn {report.irr_pn} != |K_n| {len(kleshchev_set(env, n))}")
    report.cross_checked = not report.mismatches
    if report.mismatches:
        logger.warning("count cross-check failed for %s, n=%d: %s", env, n, report.mismatches)
    return report
