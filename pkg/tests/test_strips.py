import math

import pytest

from pdstrip.errors import MalformedDescriptor, ParseError
from pdstrip.strips import Strip, format_ext_real, parse_ext_real


@pytest.mark.parametrize("text, value", [("-inf", -math.inf), ("+inf", math.inf), ("inf", math.inf), ("2.5", 2.5), (3, 3.0)])
def test_parse_ext_real(text, value):
    assert parse_ext_real(text) == value


@pytest.mark.parametrize("bad", ["infinite", "", None, True, [1]])
def test_parse_ext_real_rejects(bad):
    with pytest.raises(ParseError):
        parse_ext_real(bad)


def test_format_round_trip():
    for x in (-math.inf, -1.5, 0.0, math.inf):
        assert parse_ext_real(format_ext_real(x)) == x


def test_strip_ordering_and_membership():
    s = Strip.horizontal(-1, 1)
    assert s.contains(5 + 0.5j)
    assert not s.contains(1j)  # open strip
    assert not s.contains(-1j)
    t = Strip.vertical(0, "+inf")
    assert t.contains(3 - 100j)
    assert not t.contains(-0.1)
    with pytest.raises(MalformedDescriptor):
        Strip.horizontal(1, 1)
    with pytest.raises(MalformedDescriptor):
        Strip("diagonal", 0, 1)


def test_labels_and_windows():
    assert Strip.horizontal(-1, 1).label() == "S(-1,1)"
    assert Strip.vertical("-inf", 0).label() == "T(-inf,0)"
    assert Strip.horizontal("-inf", "inf").finite_window() == (-4, 4)
    assert Strip.vertical(1, "inf").finite_window() == (1, 9)
    assert Strip.horizontal(-1, 1).rotated() == Strip.vertical(-1, 1)
