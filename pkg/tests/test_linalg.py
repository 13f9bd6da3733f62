from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from mfkit import linalg
from mfkit.cyclo import CycloScalar, root_of_unity

Q = CycloScalar.rational
z5 = root_of_unity(1, 5)


def M(rows):
    return [[x if isinstance(x, CycloScalar) else Q(x) for x in r] for r in rows]


def test_rank_rational():
    assert linalg.rank(M([[1, 2], [2, 4]])) == 1
    assert linalg.rank(M([[1, 2], [3, 4]])) == 2
    assert linalg.rank(M([[0, 0], [0, 0]])) == 0
    assert linalg.rank([]) == 0
    assert linalg.nullity(M([[1, 2, 3]]), 3) == 2


def test_rank_cyclotomic():
    # rows proportional over Q(zeta_5) but not over Q
    assert linalg.rank(M([[1, z5], [z5, z5 * z5]])) == 1
    assert linalg.rank(M([[1, z5], [z5, 1]])) == 2


def test_inverse_and_identity():
    a = M([[z5, 1], [0, 2]])
    ainv = linalg.inverse(a)
    assert linalg.is_identity(linalg.matmul(a, ainv))
    assert linalg.scalar_value(linalg.scale(z5, linalg.identity(3))) == z5
    assert linalg.scalar_value(a) is None
    with pytest.raises(ZeroDivisionError):
        linalg.inverse(M([[1, 2], [2, 4]]))


def test_kron_and_transpose():
    a = M([[1, 2], [3, 4]])
    k = linalg.kron(a, linalg.identity(2))
    assert len(k) == 4 and k[0][2] == 2 and k[3][3] == 4
    assert linalg.transpose(a) == M([[1, 3], [2, 4]])
    assert linalg.matadd(a, a, -1) == M([[0, 0], [0, 0]])


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.fractions(-4, 4, max_denominator=3), min_size=3, max_size=3), min_size=1, max_size=4))
def test_rank_matches_gaussian_elimination(rows):
    # compare with a plain Gaussian elimination over Fraction
    work = [list(r) for r in rows]
    r = 0
    for c in range(3):
        piv = next((i for i in range(r, len(work)) if work[i][c] != 0), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        for i in range(len(work)):
            if i != r and work[i][c] != 0:
                f = work[i][c] / work[r][c]
                work[i] = [x - f * y for x, y in zip(work[i], work[r])]
        r += 1
    assert linalg.rank(M(rows)) == r
    # scaling by a unit of Q(zeta_5) preserves rank
    assert linalg.rank([[z5 * x for x in row] for row in M(rows)]) == r
