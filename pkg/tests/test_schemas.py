import pytest  # pyright: ignore[reportMissingImports]
from pydantic import ValidationError

from src.cli import schemas
from src.fock.laurent import LaurentPoly
from src.fock.space import FockVector
from src.hecke.counting import count_report
from src.lattice.core import ParamEnv, Residue
from src.lattice.crystal import generate_lattice
from tests.golden import E, mp

ENV_3_2 = ParamEnv(p=3, k=1, ell=2)


def test_run_config_validation():
    cfg = schemas.RunConfig(p=4, k=2, ell=1, n=2)
    assert cfg.env() == ParamEnv(p=4, k=2, ell=1)

    with pytest.raises(ValidationError):
        schemas.RunConfig(p=4, k=3)
    with pytest.raises(ValidationError):
        schemas.RunConfig(p=3, n=-1)
    with pytest.raises(ValidationError):
        schemas.RunConfig(p=3, m=2)
    with pytest.raises(ValidationError):
        schemas.RunConfig(p=3, format="yaml")


def test_lattice_export_uses_from_alias_and_round_trips():
    model = schemas.lattice_to_model(generate_lattice(ENV_3_2, 2))
    dumped = model.model_dump(by_alias=True)

    assert "from" in dumped["edges"][0]
    assert dumped["levels"][0] == [[[], [], []]]
    assert schemas.LatticeExport.model_validate_json(model.model_dump_json(by_alias=True)) == model


def test_count_export_round_trips_integer_keys():
    model = schemas.count_to_model(ENV_3_2, 3, count_report(ENV_3_2, 3, check=True))
    parsed = schemas.CountExport.model_validate_json(model.model_dump_json())
    assert parsed == model
    assert parsed.n_tilde == {1: 1, 3: 19}


def test_fock_terms_round_trip():
    x = FockVector((
        (mp((1,), E, E), LaurentPoly.from_pairs([[0, 1]])),
        (mp(E, (2,), E), LaurentPoly.from_pairs([[-1, 2], [3, -1]])),
    ))
    terms = schemas.fock_to_terms(x)
    assert terms[1].coefficient == [(-1, 2), (3, -1)]
    assert schemas.fock_from_terms(terms, 3) == x


def test_fock_state_accepts_a_bare_multipartition():
    state = schemas.FockState.model_validate([[], [1], []])
    assert schemas.fock_from_terms(state.terms) == FockVector.basis(mp(E, (1,), E))


def test_residue_json_round_trip():
    multi = ParamEnv(p=4, k=2, ell=1)
    assert schemas.residue_json(ENV_3_2, Residue(0, 5)) == 5
    assert schemas.residue_json(multi, Residue(1, 0)) == {"orbit": 1, "value": 0}
    assert schemas.residue_from_json({"orbit": 1, "value": 0}) == Residue(1, 0)
    assert schemas.residue_from_json(5) == Residue(0, 5)


def test_env_model_round_trip():
    env = ParamEnv(p=6, k=3, ell=1)
    assert schemas.EnvModel.of(env).to_env() == env
