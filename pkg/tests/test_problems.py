import numpy as np
import pytest

from haarsvie.core.exceptions import RegistryError
from haarsvie.schemas.oracle import QuadSpec
from haarsvie.schemas.problem import ProblemSpec
from haarsvie.services import problems
from haarsvie.services.oracles import quad2d
from haarsvie.services.problems import (
    constant_forcing,
    constant_kernel,
    list_problems,
    register_problem,
    registry_lookup,
)


def test_builtin_problems_are_registered():
    names = [p.name for p in list_problems()]
    assert names == sorted(names)
    assert {"paper-example", "det-xy", "zero-kernel", "weak-noise"} <= set(names)


def test_published_example_at_a_corner():
    problem = registry_lookup("paper-example")
    assert problem.K1(1.0, 1.0, 0.0, 0.0) == 2.0
    assert problem.K2(1.0, 1.0, 0.0, 0.0) == 2.0
    assert problem.f(1.0, 1.0) == pytest.approx(7.0 / 6.0, abs=1e-15)
    assert not problem.noise_free


@pytest.mark.parametrize("x, y", [(1.0, 1.0), (0.3, 0.7), (0.125, 0.875)])
def test_manufactured_forcing_matches_quadrature(x, y):
    problem = registry_lookup("det-xy")
    integral = quad2d(lambda s, t: problem.K1(x, y, s, t) * s * t, x, y, QuadSpec(subdivisions=64))
    assert problem.f(x, y) == pytest.approx(problem.exact(x, y) - integral, abs=1e-12)


def test_zero_kernel_solution_is_its_forcing():
    problem = registry_lookup("zero-kernel")
    assert problem.noise_free
    assert problem.exact(0.25, 0.5) == problem.f(0.25, 0.5)


def test_unknown_problem_lists_the_registry():
    with pytest.raises(RegistryError) as excinfo:
        registry_lookup("no-such-problem")
    message = str(excinfo.value)
    assert "no-such-problem" in message
    assert "paper-example" in message
    assert isinstance(excinfo.value, KeyError)
    assert excinfo.value.code == "unknown_problem"


def test_register_and_replace(monkeypatch):
    monkeypatch.setattr(problems, "_REGISTRY", dict(problems._REGISTRY))
    spec = ProblemSpec(
        name="constant",
        f=constant_forcing(2.0),
        K1=constant_kernel(0.5),
        K2=constant_kernel(0.0),
    )
    register_problem(spec)
    assert registry_lookup("constant") is spec
    with pytest.raises(ValueError):
        register_problem(spec)
    register_problem(spec, replace=True)


def test_constant_helpers_broadcast():
    kernel = constant_kernel(1.5)
    out = kernel(np.zeros((2, 1, 1, 1)), np.zeros((1, 3, 1, 1)), 0.0, np.zeros(4))
    assert out.shape == (2, 3, 1, 4)
    assert np.all(out == 1.5)
    assert constant_forcing(-1.0)(np.zeros(3), 0.0).tolist() == [-1.0, -1.0, -1.0]
