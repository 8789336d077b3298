import random
from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import strategies as st

from legendric.rational import RationalMatrix


def leibniz_det(rows):
    """Permutation-expansion determinant; independent of the elimination code."""
    n = len(rows)
    total = Fraction(0)
    for perm in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = Fraction(-1) ** inversions
        for i, j in enumerate(perm):
            term *= rows[i][j]
        total += term
    return total


def rank_by_minors(rows):
    """Largest k with a nonzero k x k minor."""
    from itertools import combinations

    m, n = len(rows), len(rows[0])
    for k in range(min(m, n), 0, -1):
        for rs in combinations(range(m), k):
            for cs in combinations(range(n), k):
                if leibniz_det([[rows[i][j] for j in cs] for i in rs]) != 0:
                    return k
    return 0


def random_fraction(rng, lo=-9, hi=9):
    den = rng.randint(1, hi)
    return Fraction(rng.randint(lo, hi), den)


def random_matrix(rng, rows, cols=None):
    cols = rows if cols is None else cols
    return RationalMatrix([[random_fraction(rng) for _ in range(cols)] for _ in range(rows)])


def random_skew(rng, n):
    a = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            x = random_fraction(rng)
            a[i][j], a[j][i] = x, -x
    return RationalMatrix(a)


def random_symmetric(rng, n):
    a = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            a[i][j] = a[j][i] = random_fraction(rng, -3, 3)
    return RationalMatrix(a)


def random_symplectic(rng, n, steps=4):
    """Product of shears [[I,S],[0,I]], [[I,0],[S,I]] (S symmetric) and
    [[A,0],[0,A^{-T}]] with A unipotent; all lie in Sp_{2n}(Q)."""
    I = RationalMatrix.identity(n)
    Z = RationalMatrix.zeros(n)
    out = RationalMatrix.identity(2 * n)
    for _ in range(steps):
        S = random_symmetric(rng, n)
        out = out @ RationalMatrix.block([[I, S], [Z, I]])
        S = random_symmetric(rng, n)
        out = out @ RationalMatrix.block([[I, Z], [S, I]])
        A = RationalMatrix(
            [[1 if i == j else (rng.randint(-2, 2) if j > i else 0) for j in range(n)] for i in range(n)]
        )
        out = out @ RationalMatrix.block([[A, Z], [Z, A.inverse().T]])
    return out


def rational_vector(rng, n):
    return [random_fraction(rng) for _ in range(n)]


fractions_st = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@st.composite
def matrices(draw, size):
    return RationalMatrix([[draw(fractions_st) for _ in range(size)] for _ in range(size)])


@pytest.fixture
def rng():
    return random.Random(20240611)


_ACCEPTANCE_KEY = pytest.StashKey[list]()


@pytest.fixture
def criterion(request):
    """Record a named acceptance verdict for the end-of-run summary."""
    store = request.config.stash.setdefault(_ACCEPTANCE_KEY, [])

    def record(name, ok, detail=""):
        store.append((name, bool(ok), detail))
        return ok

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = config.stash.get(_ACCEPTANCE_KEY, [])
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in results:
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {name}" + (f"  ({detail})" if detail else ""))
