"""Random instance generators and the worked five-dimensional example."""
import random
from fractions import Fraction as F
from pathlib import Path

from hypothesis import strategies as st

from flatpair import Backend, Matrix, Vector, make_variety, rank

HERE = Path(__file__).parent
FIXTURES = HERE / "fixtures"
GOLDEN = HERE / "golden"

# worked example in R^5
A1 = [[1, -1, -2, 1, 1], [1, 1, -4, 1, 2]]
C1 = [1, 2]
A2 = [[1, -1, -2, 1, 1], [-1, 1, -4, 1, 2], [1, 1, -4, -1, 3]]
C2 = [-10, -20, 3]
Q = [F(23, 2), F(23, 2), 5, 0, 0]
U1 = [-2, 0, 1, 2, 3]
S1 = [F(77, 16), F(-57, 212), F(837, 848), F(-4765, 848), F(1489, 424)]
S2 = [F(55, 16), F(469, 424), F(3169, 848), F(-5931, 848), F(453, 212)]
DIST_SQ = F(121, 8)


def v(*xs):
    return Vector(xs)


def worked_pair():
    return make_variety(5, A1, C1), make_variety(5, A2, C2)


def rand_int_rows(rng: random.Random, n: int, m: int, lo=-5, hi=5):
    """``m`` independent integer rows of length ``n``."""
    while True:
        rows = [[rng.randint(lo, hi) for _ in range(n)] for _ in range(m)]
        if rank(Matrix(rows)) == m:
            return rows


def rand_frac(rng: random.Random, lo=-6, hi=6):
    return F(rng.randint(lo * 4, hi * 4), rng.choice([1, 2, 3, 4]))


def rand_vector(rng: random.Random, n: int) -> Vector:
    return Vector([rand_frac(rng) for _ in range(n)])


def rand_variety(rng: random.Random, n: int, m: int | None = None, zero_rhs_ok=True):
    if m is None:
        m = rng.randint(1, n - 1)
    rows = rand_int_rows(rng, n, m)
    c = [rng.randint(-5, 5) for _ in range(m)]
    if not zero_rhs_ok and not any(c):
        c[rng.randrange(m)] = rng.choice([-1, 1]) * rng.randint(1, 5)
    return make_variety(n, rows, c)


def rand_unique_pair(rng: random.Random, n: int):
    """Two varieties of R^n whose direction subspaces meet only at 0."""
    while True:
        m1 = rng.randint(1, n - 1)
        m2 = rng.randint(n - m1, n - 1)
        V1, V2 = rand_variety(rng, n, m1), rand_variety(rng, n, m2)
        if rank(V1.A.vstack(V2.A)) == n:
            return V1, V2


def rand_shared_pair(rng: random.Random, n: int):
    """Two varieties sharing some, but not all, directions (m1 + m2 < n)."""
    while True:
        m1 = rng.randint(1, n - 2)
        m2 = rng.randint(1, n - 1 - m1)
        V1, V2 = rand_variety(rng, n, m1), rand_variety(rng, n, m2)
        if rank(V1.A.vstack(V2.A)) == m1 + m2:
            return V1, V2


def rows_of(V):
    return [list(r) for r in V.A.rows]


def permuted_scaled(rng: random.Random, V, scale=True):
    """Same variety with shuffled rows, each scaled by a nonzero rational."""
    idx = list(range(V.m))
    rng.shuffle(idx)
    rows, c = [], []
    for i in idx:
        k = F(rng.choice([-3, -2, -1, 1, 2, 3]), rng.choice([1, 2, 5])) if scale else 1
        rows.append([k * x for x in V.A.rows[i]])
        c.append(k * V.c[i])
    return make_variety(V.n, rows, c)


@st.composite
def varieties(draw, max_n=5, backend=Backend.EXACT):
    """Hypothesis strategy for small exact varieties with independent rows."""
    n = draw(st.integers(2, max_n))
    m = draw(st.integers(1, n - 1))
    entry = st.integers(-4, 4)
    rows = draw(st.lists(st.lists(entry, min_size=n, max_size=n), min_size=m, max_size=m)
                .filter(lambda r: rank(Matrix(r)) == len(r)))
    c = draw(st.lists(st.integers(-5, 5), min_size=m, max_size=m))
    return make_variety(n, rows, c, backend)


def points(n):
    return st.lists(st.fractions(min_value=-10, max_value=10, max_denominator=6),
                    min_size=n, max_size=n).map(Vector)
