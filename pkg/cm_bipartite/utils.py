import time
from operator import itemgetter


def enum(name, *sequential, **named):
    values = dict(zip(sequential, range(len(sequential))), **named)
    return type(str(name), (), values)


def bits(x):
    """Positions of the set bits of a nonnegative int, ascending."""
    s = bin(x)[:1:-1]
    out = []
    i = s.find('1')
    while i >= 0:
        out.append(i)
        i = s.find('1', i + 1)
    return out


def mask_of(positions):
    """Inverse of :py:func:`bits`."""
    positions = list(positions)
    if not positions:
        return 0
    width = max(positions) + 1
    buf = bytearray(b'0' * width)
    for p in positions:
        buf[width - 1 - p] = 49  # '1'
    return int(buf, 2)


try:
    popcount = int.bit_count
except AttributeError:  # python < 3.10
    def popcount(x):
        return bin(x).count('1')


def lowest_bit(x):
    """Index of the lowest set bit, -1 for zero."""
    return (x & -x).bit_length() - 1


def full_mask(n):
    return (1 << n) - 1


def bit_permuter(mapping):
    """Function moving bit ``p`` of its argument to bit ``mapping[p]``.

    Arguments must be below ``2 ** len(mapping)``."""
    width = len(mapping)
    if not width:
        return lambda x: 0
    inverse = [0] * width
    for p, q in enumerate(mapping):
        inverse[q] = p
    pick = itemgetter(*reversed(inverse))

    def permute(x):
        lsb_first = format(x, f'0{width}b')[::-1]
        return int(''.join(pick(lsb_first)), 2)

    return permute


class Stopwatch:
    """Monotonic wall-clock timer, reported in milliseconds."""

    def __init__(self):
        self.started_at = time.monotonic()

    @property
    def elapsed_ms(self):
        return round((time.monotonic() - self.started_at) * 1000, 3)
