from typing import Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.config import settings
from src.fock.laurent import LaurentPoly
from src.fock.space import FockVector
from src.hecke.counting import CountReport
from src.hecke.involution import OrbitReport
from src.lattice.core import ParamEnv, Residue, parse_multipartition
from src.lattice.crystal import CrystalLattice

# A multipartition in JSON is a list of components, each a list of parts: [[2,1],[],[3]]
MultipartitionJson = list[list[int]]
# Residues are plain ints when k = 1, {"orbit": i, "value": v} otherwise
ResidueJson = Union[int, dict[str, int]]


class RunConfig(BaseModel):
    """Validated command options shared by every subcommand."""
    p: int = Field(1, ge=1)
    k: int = Field(1, ge=1)
    ell: int = Field(1, ge=1)
    n: int = Field(0, ge=0)
    m: Optional[int] = Field(None, ge=1)
    format: Literal["table", "json"] = settings.OUTPUT_FORMAT
    check: bool = False
    seed: int = settings.SEED
    max_n: int = Field(settings.MAX_N, ge=0)
    workers: int = Field(settings.WORKERS, ge=1)

    @model_validator(mode="after")
    def check_divisibility(self):
        if self.p % self.k:
            raise ValueError(f"k={self.k} must divide p={self.p}")
        if self.m is not None and self.p % self.m:
            raise ValueError(f"m={self.m} must divide p={self.p}")
        return self

    def env(self) -> ParamEnv:
        return ParamEnv(p=self.p, k=self.k, ell=self.ell)


class EnvModel(BaseModel):
    p: int
    k: int
    d: int
    ell: int
    e: int

    @classmethod
    def of(cls, env: ParamEnv) -> "EnvModel":
        return cls(p=env.p, k=env.k, d=env.d, ell=env.ell, e=env.e)

    def to_env(self) -> ParamEnv:
        return ParamEnv(p=self.p, k=self.k, ell=self.ell)


def residue_json(env: ParamEnv, r: Residue) -> ResidueJson:
    return r.to_json(env)


def residue_from_json(data: ResidueJson) -> Residue:
    if isinstance(data, int):
        return Residue(0, data)
    return Residue(data["orbit"], data["value"])


# --- LATTICE / ENUMERATION ---
class EnumerateExport(BaseModel):
    env: EnvModel
    n: int
    count: int
    multipartitions: list[MultipartitionJson]


class LatticeEdge(BaseModel):
    # "from" is a keyword, so the field is aliased
    model_config = ConfigDict(populate_by_name=True)

    level: int
    from_: int = Field(..., alias="from")
    to: int
    residue: ResidueJson


class LatticeExport(BaseModel):
    env: EnvModel
    levels: list[list[MultipartitionJson]]
    edges: list[LatticeEdge]


def lattice_to_model(lattice: CrystalLattice) -> LatticeExport:
    env = lattice.env
    return LatticeExport(
        env=EnvModel.of(env),
        levels=[[lam.to_json() for lam in level] for level in lattice.levels],
        edges=[
            LatticeEdge(level=t, from_=parent, to=child, residue=residue_json(env, r))
            for t, parent, child, r in lattice.edge_list()
        ],
    )


# --- HBAR ---
class OrbitRow(BaseModel):
    orbit: list[MultipartitionJson]
    order: int
    stabilizer_size: int


class HmapExport(BaseModel):
    env: EnvModel
    n: int
    orbits: list[OrbitRow]


def orbits_to_model(env: ParamEnv, n: int, reports: list[OrbitReport]) -> HmapExport:
    return HmapExport(
        env=EnvModel.of(env),
        n=n,
        orbits=[
            OrbitRow(orbit=[lam.to_json() for lam in r.orbit], order=r.order, stabilizer_size=r.stabilizer_size)
            for r in reports
        ],
    )


# --- COUNTING ---
class CountExport(BaseModel):
    env: EnvModel
    n: int
    n_tilde: dict[int, int]
    n_exact: dict[int, int]
    irr_pn: int
    irr_ppn: int
    cross_checked: bool = False
    oracle_n_tilde: Optional[dict[int, int]] = None
    orbit_sum: Optional[int] = None
    mismatches: list[str] = []


def count_to_model(env: ParamEnv, n: int, report: CountReport) -> CountExport:
    return CountExport(
        env=EnvModel.of(env),
        n=n,
        n_tilde=report.n_tilde,
        n_exact=report.n_exact,
        irr_pn=report.irr_pn,
        irr_ppn=report.irr_ppn,
        cross_checked=report.cross_checked,
        oracle_n_tilde=report.oracle_n_tilde,
        orbit_sum=report.orbit_sum,
        mismatches=list(report.mismatches),
    )


# --- FOCK ---
class FockTerm(BaseModel):
    multipartition: MultipartitionJson
    # [[exponent, coefficient], ...] in increasing exponent order
    coefficient: list[tuple[int, int]]


class FockExport(BaseModel):
    env: EnvModel
    word: str = ""
    terms: list[FockTerm]


def fock_to_terms(x: FockVector) -> list[FockTerm]:
    return [FockTerm(multipartition=lam.to_json(), coefficient=c.to_pairs()) for lam, c in x.terms]


def fock_from_terms(terms: list[FockTerm], p: Optional[int] = None) -> FockVector:
    return FockVector(tuple(
        (parse_multipartition(t.multipartition, p), LaurentPoly.from_pairs(t.coefficient)) for t in terms
    ))


class FockState(BaseModel):
    """Input state for `fock`: either {"terms": [...]} or a bare multipartition (coefficient 1)."""
    terms: list[FockTerm]

    @model_validator(mode="before")
    @classmethod
    def accept_bare_multipartition(cls, data):
        if isinstance(data, list):
            return {"terms": [{"multipartition": data, "coefficient": [[0, 1]]}]}
        return data


# --- ETA ---
class EtaRow(BaseModel):
    source: MultipartitionJson
    image: MultipartitionJson


class EtaExport(BaseModel):
    env: EnvModel
    m: int
    n: int
    rows: list[EtaRow]


# --- RESIDUES ---
class ResiduesExport(BaseModel):
    env: EnvModel
    multipartition: MultipartitionJson
    # residues[c][a][b]: residue of node (a+1, b+1, c+1)
    residues: list[list[list[ResidueJson]]]


# --- VERIFY ---
class FailureModel(BaseModel):
    invariant: str
    witness: str


class CellModel(BaseModel):
    cell: str
    checks: int
    passed: bool
    failures: list[FailureModel] = []


class VerifyExport(BaseModel):
    max_n: int
    seed: int
    passed: bool
    cells: list[CellModel]
