"""
Command-line entry point: python -m src.cli.main <command> [flags]

Exit codes: 0 success, 1 usage or invalid input, 2 verification failure.
"""
import argparse
import json
import logging
import sys
from typing import Optional

from pydantic import ValidationError

from src.cli import schemas, tables
from src.cli.verify import grid_cells, run_verify
from src.config import settings
from src.errors import DomainError, InvariantViolation, ParameterError
from src.fock.space import apply_word
from src.hecke.counting import count_report, eta_map
from src.hecke.involution import orbits
from src.lattice.core import ParamEnv, diagram_nodes, parse_multipartition, residue_of
from src.lattice.crystal import generate_lattice, kleshchev_set

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_USAGE, EXIT_VERIFY = 0, 1, 2


class CliParser(argparse.ArgumentParser):
    """argparse exits with 2 on bad flags; usage errors here exit with 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> CliParser:
    parser = CliParser(prog="kleshchev", description="Kleshchev multipartitions for G(p,p,n)")
    commands = parser.add_subparsers(dest="command", required=True)

    env_flags = CliParser(add_help=False)
    env_flags.add_argument("--p", type=int, required=True, help="number of components")
    env_flags.add_argument("--k", type=int, default=1, help="number of q-orbits (divides p)")
    env_flags.add_argument("--ell", type=int, default=1, help="exponent with eps^k = q^ell")

    output_flags = CliParser(add_help=False)
    output_flags.add_argument("--format", choices=["table", "json"], default=settings.OUTPUT_FORMAT)
    output_flags.add_argument("--out", default=None, help="write the output to this file instead of stdout")

    size_flag = CliParser(add_help=False)
    size_flag.add_argument("--n", type=int, required=True, help="size of the multipartitions")

    both = [env_flags, size_flag, output_flags]
    commands.add_parser("enumerate", parents=both, help="list K_n in canonical order")
    commands.add_parser("lattice", parents=both, help="export the good lattice up to level n")
    commands.add_parser("hmap", parents=both, help="the hbar-orbits of K_n")

    count = commands.add_parser("count", parents=both, help="fixed-point and simple-module counts")
    count.add_argument("--check", action="store_true", help="cross-check every formula by brute force")

    eta = commands.add_parser("eta", parents=both, help="the path-expansion bijection onto hbar^m-fixed points")
    eta.add_argument("--m", type=int, required=True)

    fock = commands.add_parser("fock", parents=[env_flags, output_flags], help="apply an operator word in the Fock space")
    fock.add_argument("--state", required=True, help='JSON state, e.g. [[],[],[]] or {"terms": [...]}')
    fock.add_argument("--word", default="", help='operators applied right to left, e.g. "F0 F2 E0"')

    residues = commands.add_parser("residues", parents=[env_flags, output_flags], help="residue diagram of a multipartition")
    residues.add_argument("--lambda", dest="lam", required=True, help="JSON multipartition, e.g. [[2,1],[1,1]]")

    verify = commands.add_parser("verify", parents=[output_flags], help="run the invariant grid")
    verify.add_argument("--seed", type=int, default=settings.SEED)
    verify.add_argument("--max-n", dest="max_n", type=int, default=settings.MAX_N)
    verify.add_argument("--workers", type=int, default=settings.WORKERS)
    return parser


def _config(args: argparse.Namespace) -> schemas.RunConfig:
    fields = {name: getattr(args, name) for name in schemas.RunConfig.model_fields if getattr(args, name, None) is not None}
    return schemas.RunConfig(**fields)


def _emit(text: str, out: Optional[str]):
    if out:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")
        logger.info("wrote %s", out)
    else:
        print(text)


def _json(model) -> str:
    return model.model_dump_json(by_alias=True, indent=2)


def cmd_enumerate(cfg: schemas.RunConfig) -> tuple[str, int]:
    env = cfg.env()
    level = kleshchev_set(env, cfg.n)
    if cfg.format == "json":
        model = schemas.EnumerateExport(
            env=schemas.EnvModel.of(env), n=cfg.n, count=len(level), multipartitions=[lam.to_json() for lam in level]
        )
        return _json(model), EXIT_OK
    return tables.multipartition_table(level), EXIT_OK


def cmd_lattice(cfg: schemas.RunConfig) -> tuple[str, int]:
    lattice = generate_lattice(cfg.env(), cfg.n)
    if cfg.format == "json":
        return _json(schemas.lattice_to_model(lattice)), EXIT_OK
    return tables.lattice_table(lattice), EXIT_OK


def cmd_hmap(cfg: schemas.RunConfig) -> tuple[str, int]:
    env = cfg.env()
    reports = orbits(env, cfg.n)
    if cfg.format == "json":
        return _json(schemas.orbits_to_model(env, cfg.n, reports)), EXIT_OK
    return tables.orbit_table(reports), EXIT_OK


def cmd_count(cfg: schemas.RunConfig) -> tuple[str, int]:
    env = cfg.env()
    report = count_report(env, cfg.n, check=cfg.check)
    code = EXIT_VERIFY if report.mismatches else EXIT_OK
    if cfg.format == "json":
        return _json(schemas.count_to_model(env, cfg.n, report)), code
    return tables.count_table(report), code


def cmd_eta(cfg: schemas.RunConfig) -> tuple[str, int]:
    env = cfg.env()
    if cfg.m is None:
        raise ParameterError("eta needs --m")
    if env.k != 1:
        raise ParameterError(f"eta needs k = 1, got {env}")
    if (cfg.n * cfg.m) % env.p:
        raise ParameterError(f"p={env.p} must divide n*m={cfg.n * cfg.m}")
    small_env = ParamEnv(p=cfg.m, k=1, ell=env.ell)
    rows = [(lam, eta_map(env, cfg.m, lam)) for lam in kleshchev_set(small_env, cfg.n * cfg.m // env.p)]
    if cfg.format == "json":
        model = schemas.EtaExport(
            env=schemas.EnvModel.of(env),
            m=cfg.m,
            n=cfg.n,
            rows=[schemas.EtaRow(source=src.to_json(), image=img.to_json()) for src, img in rows],
        )
        return _json(model), EXIT_OK
    return tables.eta_table(rows), EXIT_OK


def cmd_fock(cfg: schemas.RunConfig, state: str, word: str) -> tuple[str, int]:
    env = cfg.env()
    if env.k != 1:
        raise ParameterError(f"the Fock space action needs k = 1, got {env}")
    try:
        parsed = schemas.FockState.model_validate(json.loads(state))
    except (json.JSONDecodeError, ValidationError) as exc:
        raise ParameterError(f"invalid --state: {exc}") from exc
    x = schemas.fock_from_terms(parsed.terms, env.p)
    result = apply_word(env, x, word)
    if cfg.format == "json":
        model = schemas.FockExport(env=schemas.EnvModel.of(env), word=word, terms=schemas.fock_to_terms(result))
        return _json(model), EXIT_OK
    return tables.fock_table(result), EXIT_OK


def cmd_residues(cfg: schemas.RunConfig, lam_text: str) -> tuple[str, int]:
    env = cfg.env()
    try:
        lam = parse_multipartition(json.loads(lam_text), env.p)
    except json.JSONDecodeError as exc:
        raise ParameterError(f"invalid --lambda: {exc}") from exc
    if cfg.format == "json":
        grid = [[[] for _ in comp.parts] for comp in lam.components]
        for node in diagram_nodes(lam):
            grid[node.comp - 1][node.row - 1].append(residue_of(env, node).to_json(env))
        model = schemas.ResiduesExport(env=schemas.EnvModel.of(env), multipartition=lam.to_json(), residues=grid)
        return _json(model), EXIT_OK
    return tables.residue_diagram(env, lam), EXIT_OK


def cmd_verify(cfg: schemas.RunConfig) -> tuple[str, int]:
    cells = grid_cells(settings.K1_GRID, settings.MULTI_ORBIT_GRID)
    results = run_verify(cells, cfg.max_n, cfg.seed, settings.PATH_SAMPLES, cfg.workers)
    passed = all(r.passed for r in results)
    code = EXIT_OK if passed else EXIT_VERIFY
    if cfg.format == "json":
        model = schemas.VerifyExport(
            max_n=cfg.max_n,
            seed=cfg.seed,
            passed=passed,
            cells=[
                schemas.CellModel(
                    cell=r.cell,
                    checks=r.checks,
                    passed=r.passed,
                    failures=[schemas.FailureModel(invariant=f.invariant, witness=f.witness) for f in r.failures],
                )
                for r in results
            ],
        )
        return _json(model), code
    return tables.verify_table(results), code


def dispatch(args: argparse.Namespace, cfg: schemas.RunConfig) -> tuple[str, int]:
    if args.command == "fock":
        return cmd_fock(cfg, args.state, args.word)
    if args.command == "residues":
        return cmd_residues(cfg, args.lam)
    handler = {
        "enumerate": cmd_enumerate,
        "lattice": cmd_lattice,
        "hmap": cmd_hmap,
        "count": cmd_count,
        "eta": cmd_eta,
        "verify": cmd_verify,
    }[args.command]
    return handler(cfg)


def main(argv: Optional[list[str]] = None) -> int:
    logging.basicConfig(level=settings.LOG_LEVEL, format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        cfg = _config(args)
        text, code = dispatch(args, cfg)
    except ValidationError as exc:
        print(f"❌ invalid options: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ParameterError, DomainError) as exc:
        print(f"❌ {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvariantViolation as exc:
        print(f"🔻 invariant violated: {exc}", file=sys.stderr)
        return EXIT_VERIFY

    _emit(text, args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
