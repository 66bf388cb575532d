import pytest

from stableplace.core.config import SettleParams, build_config, load_config
from stableplace.core.constants import DEFAULT_EPSILON1, Regime
from stableplace.core.exceptions import ConfigParseError, ConfigValidationError
from stableplace.schemas.common import make_provenance


def test_empty_file_gives_defaults(tmp_path):
    path = tmp_path / "config.toml"
    path.write_text("", encoding="utf-8")
    config = load_config(path)
    assert config.settle == SettleParams()
    assert config.bench.regime == Regime.PARTIAL
    assert config.config_hash() == build_config({}).config_hash()


def test_toml_and_json_values_are_read(tmp_path):
    toml = tmp_path / "config.toml"
    toml.write_text('seed = 7\n\n[settle]\nepsilon1 = 0.002\nepsilon2 = 0.004\nL = 5\n\n[bench]\nregime = "whole"\n', encoding="utf-8")
    config = load_config(toml)
    assert config.seed == 7
    assert config.settle.epsilon1 == 0.002
    assert config.settle.window == 5
    assert config.bench.regime == Regime.WHOLE

    json_path = tmp_path / "config.json"
    json_path.write_text('{"cluster": {"eps_deg": 5.0}}', encoding="utf-8")
    assert load_config(json_path).cluster.eps_deg == 5.0


def test_invalid_window_names_the_key():
    with pytest.raises(ConfigValidationError) as err:
        build_config({"settle": {"L": 0}})
    assert err.value.config_key == "settle.L"
    assert err.value.error_code == "CONFIG_VALIDATION_ERROR"


def test_unknown_keys_and_bad_thresholds_are_rejected():
    with pytest.raises(ConfigValidationError) as err:
        build_config({"bogus": 1})
    assert err.value.config_key == "bogus"
    with pytest.raises(ConfigValidationError):
        build_config({"settle": {"epsilon1": 0.01, "epsilon2": 0.001}})
    with pytest.raises(ConfigValidationError):
        build_config({"cluster": {"tilt_deg": 60.0}})


def test_parse_errors_carry_position(tmp_path):
    path = tmp_path / "config.toml"
    path.write_text("[settle\nepsilon = 1\n", encoding="utf-8")
    with pytest.raises(ConfigParseError) as err:
        load_config(path)
    assert err.value.line == 1

    broken = tmp_path / "config.json"
    broken.write_text('{"seed": }', encoding="utf-8")
    with pytest.raises(ConfigParseError) as err:
        load_config(broken)
    assert err.value.line == 1 and err.value.column is not None


def test_environment_beats_file(tmp_path, monkeypatch):
    path = tmp_path / "config.toml"
    path.write_text("[settle]\nepsilon1 = 0.002\nepsilon2 = 0.01\n", encoding="utf-8")
    monkeypatch.setenv("STABLEPLACE_SETTLE__EPSILON1", "0.005")
    config = load_config(path)
    assert config.settle.epsilon1 == 0.005
    assert config.settle.epsilon2 == 0.01


def test_provenance_echoes_result_affecting_settings():
    config = build_config({"settle": {"epsilon1": 0.0005}, "threads": 4})
    provenance = make_provenance(config, seed=11)
    assert provenance.seed == 11
    assert provenance.config_hash == config.config_hash()
    assert config.payload_dict()["settle"]["epsilon1"] == 0.0005
    assert "threads" not in config.payload_dict()

    assert build_config({"threads": 8}).config_hash() == build_config({}).config_hash()
    assert config.config_hash() != build_config({}).config_hash()
    assert build_config({}).settle.epsilon1 == DEFAULT_EPSILON1


def test_dotenv_ignores_foreign_prefixed_lines(tmp_path, monkeypatch):
    (tmp_path / ".env").write_text("STABLEPLACE_RUN_SLOW=1\nSTABLEPLACE_THREADS=3\n", encoding="utf-8")
    monkeypatch.chdir(tmp_path)
    config = build_config({})
    assert config.threads == 3
    with pytest.raises(ConfigValidationError):
        build_config({"run_slow": 1})
