import pytest

from cm_bipartite import utils


def test_bits():
    assert utils.bits(0) == []
    assert utils.bits(0b101001) == [0, 3, 5]
    assert utils.mask_of([5, 0, 3]) == 0b101001
    assert utils.mask_of([]) == 0
    assert utils.mask_of(iter([2])) == 4
    assert utils.popcount(0b1011) == 3
    assert utils.lowest_bit(0b1000) == 3
    assert utils.lowest_bit(0) == -1
    assert utils.full_mask(3) == 0b111
    assert utils.full_mask(0) == 0


@pytest.mark.parametrize('mapping, value, expected', [
    ([1, 0], 0b01, 0b10),
    ([1, 0], 0b11, 0b11),
    ([2, 0, 1], 0b001, 0b100),
    ([2, 0, 1], 0b110, 0b011),
    ([0, 1, 2, 3], 0b1010, 0b1010),
    ([], 0, 0),
])
def test_bit_permuter(mapping, value, expected):
    assert utils.bit_permuter(mapping)(value) == expected


def test_enum():
    Color = utils.enum('Color', 'RED', 'GREEN', BLUE='blue')
    assert (Color.RED, Color.GREEN, Color.BLUE) == (0, 1, 'blue')
    assert Color.__name__ == 'Color'


def test_stopwatch(mocker):
    monotonic = mocker.patch('cm_bipartite.utils.time.monotonic', return_value=10.0)
    stopwatch = utils.Stopwatch()
    monotonic.return_value = 10.25
    assert stopwatch.elapsed_ms == 250.0
