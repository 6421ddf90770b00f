import pytest

from matfun._config import DEFAULTS, tol, tol_factor


def test_defaults_without_env(monkeypatch):
    monkeypatch.delenv("MATFUN_TOL", raising=False)
    assert tol_factor() == 1.0
    assert tol("matrix") == DEFAULTS["matrix"]


def test_env_scales_every_tolerance(monkeypatch):
    monkeypatch.setenv("MATFUN_TOL", "10")
    for name, value in DEFAULTS.items():
        assert tol(name) == pytest.approx(10 * value)


@pytest.mark.parametrize("raw", ["0", "-1", "abc"])
def test_env_must_be_positive(monkeypatch, raw):
    monkeypatch.setenv("MATFUN_TOL", raw)
    with pytest.raises(ValueError):
        tol("pole")
