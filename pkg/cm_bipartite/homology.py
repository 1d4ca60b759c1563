"""Reduced simplicial homology over the rationals.

Ranks of the boundary maps come from incremental fraction-free elimination
on sparse integer rows, so no rounding ever happens."""
import logging
from functools import reduce
from math import gcd

from .complexes import faces
from .exceptions import SelfCheckFailed

logger = logging.getLogger(__name__)


class BettiVector:
    """Reduced Betti numbers from dimension -1 upwards."""

    def __init__(self, numbers):
        self.numbers = tuple(numbers)

    def __getitem__(self, dimension):
        index = dimension + 1
        if index < 0:
            raise IndexError(dimension)
        return self.numbers[index] if index < len(self.numbers) else 0

    def __iter__(self):
        return iter(self.numbers)

    def __len__(self):
        return len(self.numbers)

    def __eq__(self, other):
        if isinstance(other, BettiVector):
            return self.numbers == other.numbers
        return NotImplemented

    def __hash__(self):
        return hash(self.numbers)

    def __repr__(self):
        return f'BettiVector({list(self.numbers)})'

    def first_nonzero_below(self, dimension):
        """Smallest ``k < dimension`` with a nonzero Betti number, or None."""
        for k in range(-1, dimension):
            if self[k]:
                return k
        return None

    @property
    def euler_characteristic(self):
        return sum((-1) ** (k + 1) * b for k, b in enumerate(self.numbers))

    def to_record(self):
        return list(self.numbers)


class RowEchelon:
    """Integer row space kept in echelon form, one pivot per column."""

    def __init__(self):
        self.pivots = {}

    @property
    def rank(self):
        return len(self.pivots)

    def add_row(self, row):
        """Reduce `row` (a ``{column: value}`` dict) against the pivots and
        keep it if anything survives. Returns whether the rank grew."""
        row = {c: v for c, v in row.items() if v}
        while row:
            column = min(row)
            pivot = self.pivots.get(column)
            if pivot is None:
                self.pivots[column] = _primitive(row)
                return True
            a, b = pivot[column], row[column]
            combined = {c: a * v for c, v in row.items()}
            for c, v in pivot.items():
                value = combined.get(c, 0) - b * v
                if value:
                    combined[c] = value
                else:
                    combined.pop(c, None)
            row = _primitive(combined)
        return False


def _primitive(row):
    divisor = reduce(gcd, row.values(), 0)
    if divisor > 1:
        return {c: v // divisor for c, v in row.items()}
    return row


def boundary_rank(upper, lower_index):
    """Rank of the boundary map from the faces `upper` (all of one size) to
    the faces indexed by `lower_index`."""
    echelon = RowEchelon()
    for face in upper:
        row = {}
        for i in range(len(face)):
            row[lower_index[face[:i] + face[i + 1:]]] = -1 if i % 2 else 1
        echelon.add_row(row)
    return echelon.rank


def reduced_homology(c, cap=None):
    """Reduced Betti numbers of `c` from dimension -1 to ``dim c``.

    The alternating face count is compared against the alternating Betti
    sum; a mismatch raises :py:class:`SelfCheckFailed`."""
    all_faces = faces(c, cap)
    if not all_faces:
        return BettiVector([])
    by_size = {}
    for face in all_faces:
        by_size.setdefault(len(face), []).append(face)
    top = max(by_size)

    ranks = {0: 0}
    for size in range(1, top + 1):
        lower_index = {face: i for i, face in enumerate(by_size[size - 1])}
        ranks[size] = boundary_rank(by_size[size], lower_index)
    ranks[top + 1] = 0

    numbers = [len(by_size[size]) - ranks[size] - ranks[size + 1]
               for size in range(top + 1)]
    betti = BettiVector(numbers)

    face_euler = sum((-1) ** (size + 1) * len(by_size[size]) for size in by_size)
    if face_euler != betti.euler_characteristic:
        raise SelfCheckFailed(f'Euler characteristic mismatch on {c!r}: faces give '
                              f'{face_euler}, Betti numbers give {betti.euler_characteristic}')
    logger.debug(f'Reduced homology of {c!r}: {betti.numbers}')
    return betti
