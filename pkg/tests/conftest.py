from fractions import Fraction

import pytest
import sympy

ACCEPTANCE: list[tuple[str, bool, str]] = []


@pytest.fixture
def record_criterion():
    def _record(name: str, passed: bool, detail: str = "") -> None:
        ACCEPTANCE.append((name, passed, detail))

    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, detail in ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {name}  {detail}")


def sympy_hitting(n: int, a: int, b: int) -> dict[int, Fraction]:
    """Independent oracle: dense sympy solve of the harmonic system on raw bit words."""
    interior = [v for v in range(2**n) if v not in (a, b)]
    idx = {v: i for i, v in enumerate(interior)}
    m = len(interior)
    A = sympy.zeros(m, m)
    rhs = sympy.zeros(m, 1)
    for v in interior:
        i = idx[v]
        A[i, i] = n
        for bit in range(n):
            y = v ^ (1 << bit)
            if y == b:
                rhs[i] += 1
            elif y != a:
                A[i, idx[y]] -= 1
    sol = A.LUsolve(rhs) if m else []
    out = {a: Fraction(0), b: Fraction(1)}
    for v in interior:
        r = sympy.Rational(sol[idx[v]])
        out[v] = Fraction(int(r.p), int(r.q))
    return out


@pytest.fixture(scope="session")
def sympy_oracle():
    return sympy_hitting
