import json

import pytest

from leibniz_rings import census as C
from leibniz_rings import fg_abelian as ab
from leibniz_rings.acceptance import intro_ring
from leibniz_rings.errors import IllDefinedBracket, RingFileError
from leibniz_rings.families import FamilySpec, make_family
from leibniz_rings.ringfile import census_to_text, dumps_ring, load_ring, loads_census, loads_ring, dump_ring


def test_round_trip_and_format(tmp_path):
    r = make_family(FamilySpec("L6", p=3))
    text = dumps_ring(r)
    assert text.startswith('{\n  "group": [\n    9,\n    3\n  ],')
    assert loads_ring(text) == r
    p = tmp_path / "l6.json"
    dump_ring(r, p)
    assert load_ring(p) == r
    inf = make_family(FamilySpec("L7", alpha=2, beta=3))
    assert loads_ring(dumps_ring(inf)) == inf


@pytest.mark.parametrize(
    "doc,needle",
    [
        ({"group": [3, 3], "bracket": [[[0, 4], [0, 1]], [[0, 0], [0, 0]]]}, "bracket[0][0][1] = 4"),
        ({"group": [3, 3], "bracket": [[[0, -1], [0, 1]], [[0, 0], [0, 0]]]}, "not normalized"),
        ({"group": [3, 3]}, "missing field 'bracket'"),
        ({"group": [3, 1], "bracket": []}, "group"),
        ({"group": "3,3", "bracket": []}, "list of integers"),
        ({"group": [3], "bracket": [[[0], [0]]]}, "bracket[0] must have 1 entries"),
        ({"group": [3], "bracket": [[[0.5]]]}, "bracket[0][0]"),
        ([1, 2], "top level"),
    ],
)
def test_load_errors(doc, needle):
    with pytest.raises(RingFileError) as info:
        loads_ring(json.dumps(doc))
    assert needle in str(info.value)


def test_json_syntax_error_has_position():
    with pytest.raises(RingFileError, match="line 2, column"):
        loads_ring('{"group": [3],\n ]')


def test_ill_defined_is_separate():
    with pytest.raises(IllDefinedBracket):
        loads_ring(json.dumps({"group": [3, 2], "bracket": [[[0, 0], [1, 0]], [[0, 0], [0, 0]]]}))


def test_census_round_trip():
    cen = C.classify(ab.make_group([9]))
    text = census_to_text(cen)
    back = loads_census(text)
    assert back["group"] == [9] and back["total_valid"] == 3 and back["automorphisms"] == 6
    assert [c["ring"] for c in back["classes"]] == [c.ring for c in cen.classes]
    assert [c["family"] for c in back["classes"]] == ["Lie", "L1(p=3,m=2,s=1)"]
    assert back["classes"][1]["invariants"]["leib"] == 3


def test_census_text_is_stable():
    g = ab.make_group([2, 2])
    assert census_to_text(C.classify(g)) == census_to_text(C.classify(g))


def test_bad_census():
    with pytest.raises(RingFileError):
        loads_census("nonsense\n")
    text = census_to_text(C.classify(ab.make_group([3])))
    with pytest.raises(RingFileError):
        loads_census(text.replace("classes=1", "classes=2"))
    assert loads_ring(dumps_ring(intro_ring(3))) == intro_ring(3)
