import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st
from scipy.linalg import expm

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

J1 = np.diag([1.0, 1.0, -1.0]).astype(complex)
J2 = np.array([[0, 0, 1], [0, 1, 0], [1, 0, 0]], dtype=complex)

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def random_su21(rng, J=J1, scale=0.7):
    """exp of a random element of su(2,1); independent of the library."""
    A = scale * (rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3)))
    X = A - J @ A.conj().T @ J  # X^* J + J X = 0 since J = J^{-1}
    X = X - np.trace(X) / 3.0 * np.eye(3)
    return expm(X)


def random_ball_vector(rng, radius=0.95):
    """Negative vector (z1, z2, 1) of the first form with |z| < radius."""
    d = rng.standard_normal(4)
    d /= np.linalg.norm(d)
    rho = radius * rng.random() ** 0.25
    z = rho * d
    return np.array([z[0] + 1j * z[1], z[2] + 1j * z[3], 1.0])


def random_upper_half(rng, spread=3.0):
    return complex(rng.normal(0, spread), np.exp(rng.normal(0, 1.0)))


@pytest.fixture
def rng():
    return np.random.default_rng(20261019)


ACCEPTANCE_KEY = pytest.StashKey[dict]()


@pytest.fixture
def acceptance(request):
    """Record one pass/fail line per acceptance criterion."""
    results = request.config.stash.setdefault(ACCEPTANCE_KEY, {})

    def record(number, title, ok, detail=""):
        line = f"acceptance {number:>2} {'PASS' if ok else 'FAIL'}  {title}"
        if detail:
            line += f"  [{detail}]"
        results[number] = line
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter, config):
    results = config.stash.get(ACCEPTANCE_KEY, {})
    if results:
        terminalreporter.section("acceptance criteria")
        for k in sorted(results):
            terminalreporter.write_line(results[k])
