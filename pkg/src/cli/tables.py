"""Plain-text tables for the `table` output format (pandas does the layout)."""
import pandas as pd

from src.cli.verify import CellResult
from src.fock.space import FockVector
from src.hecke.counting import CountReport
from src.hecke.involution import OrbitReport
from src.lattice.core import Multipartition, ParamEnv, diagram_nodes, residue_of
from src.lattice.crystal import CrystalLattice


def _render(df: pd.DataFrame) -> str:
    if df.empty:
        return "(no rows)"
    return df.to_string(index=False)


def multipartition_table(items: tuple[Multipartition, ...]) -> str:
    df = pd.DataFrame({"#": range(1, len(items) + 1), "multipartition": [str(lam) for lam in items]})
    return _render(df)


def orbit_table(reports: list[OrbitReport]) -> str:
    df = pd.DataFrame({
        "orbit": [" -> ".join(str(lam) for lam in r.orbit) for r in reports],
        "order": [r.order for r in reports],
        "stabilizer": [r.stabilizer_size for r in reports],
    })
    return _render(df)


def count_table(report: CountReport) -> str:
    divs = sorted(report.n_tilde)
    df = pd.DataFrame({
        "m": divs,
        "N~(m)": [report.n_tilde[m] for m in divs],
        "N(m)": [report.n_exact.get(m, "-") for m in divs],
    })
    if report.oracle_n_tilde is not None:
        df["oracle N~(m)"] = [report.oracle_n_tilde[m] for m in divs]
    lines = [_render(df), f"irr_pn = {report.irr_pn}", f"irr_ppn = {report.irr_ppn}"]
    if report.orbit_sum is not None:
        lines.append(f"orbit sum = {report.orbit_sum}")
        lines.append("PASS" if report.cross_checked else "FAIL")
        lines.extend(f"  {item}" for item in report.mismatches)
    return "\n".join(lines)


def fock_table(x: FockVector) -> str:
    df = pd.DataFrame({
        "multipartition": [str(lam) for lam, _ in x.terms],
        "coefficient": [str(c) for _, c in x.terms],
    })
    return _render(df)


def eta_table(rows: list[tuple[Multipartition, Multipartition]]) -> str:
    df = pd.DataFrame({
        "source": [str(src) for src, _ in rows],
        "image": [str(img) for _, img in rows],
    })
    return _render(df)


def lattice_table(lattice: CrystalLattice) -> str:
    env = lattice.env
    rows = lattice.edge_list()
    df = pd.DataFrame({
        "level": [t for t, _, _, _ in rows],
        "from": [str(lattice.levels[t][i]) for t, i, _, _ in rows],
        "residue": [r.label(env) for _, _, _, r in rows],
        "to": [str(lattice.levels[t + 1][j]) for t, _, j, _ in rows],
    })
    return _render(df)


def residue_diagram(env: ParamEnv, lam: Multipartition) -> str:
    """One block of residue labels per component, rows top to bottom."""
    blocks = []
    for c, comp in enumerate(lam.components, start=1):
        if not comp.parts:
            blocks.append(f"component {c}: ∅")
            continue
        grid = pd.DataFrame([
            [residue_of(env, node).label(env) for node in diagram_nodes(lam) if node.comp == c and node.row == a]
            for a in range(1, len(comp) + 1)
        ]).fillna("")
        blocks.append(f"component {c}:\n" + grid.to_string(index=False, header=False))
    return "\n".join(blocks)


def verify_table(results: list[CellResult]) -> str:
    df = pd.DataFrame({
        "cell": [r.cell for r in results],
        "checks": [r.checks for r in results],
        "status": ["PASS" if r.passed else "FAIL" for r in results],
    })
    lines = [_render(df)]
    for r in results:
        for failure in r.failures:
            lines.append(f"FAIL {r.cell} [{failure.invariant}]: {failure.witness}")
    return "\n".join(lines)
