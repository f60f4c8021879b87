import json

import pytest

from leibniz_rings import acceptance as A
from leibniz_rings import ring as R
from leibniz_rings.acceptance import intro_ring, square_ring
from leibniz_rings.cli import main
from leibniz_rings.families import FamilySpec, make_family
from leibniz_rings.ringfile import dump_ring, ring_from_doc


@pytest.fixture
def ring_file(tmp_path):
    def write(r, name="r.json"):
        p = tmp_path / name
        dump_ring(r, p)
        return str(p)

    return write


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_intro_ring(capsys, ring_file):
    code, out, _ = run(capsys, "check", ring_file(intro_ring(3)))
    assert code == 0 and "left: yes" in out and "right: no" in out


def test_check_square_ring(capsys, ring_file):
    code, out, _ = run(capsys, "check", ring_file(make_family(FamilySpec("L2", p=3))))
    assert code == 0 and "symmetric: yes" in out and "lie: no" in out


def test_check_json_round_trip(capsys, ring_file):
    r = square_ring(5)
    code, out, _ = run(capsys, "check", ring_file(r), "--json")
    doc = json.loads(out)
    assert code == 0 and doc["symmetric"] and not doc["lie"] and doc["witnesses"] == []
    assert ring_from_doc(doc["ring"]) == r


def test_check_failures(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"group": [3, 3], "bracket": [[[0, 7], [0, 0]], [[0, 0], [0, 0]]]}))
    code, _, err = run(capsys, "check", str(bad))
    assert code == 2 and "bracket[0][0][1]" in err
    ill = tmp_path / "ill.json"
    ill.write_text(json.dumps({"group": [3, 2], "bracket": [[[0, 0], [1, 0]], [[0, 0], [0, 0]]]}))
    code, out, _ = run(capsys, "check", str(ill))
    assert code == 1 and "well-defined: no" in out
    code, _, _ = run(capsys, "check", str(tmp_path / "missing.json"))
    assert code == 2
    # a well-defined table that is right but not left Leibniz
    right_only = R.opposite(intro_ring(3))
    p = tmp_path / "right.json"
    dump_ring(right_only, p)
    code, out, _ = run(capsys, "check", str(p))
    assert code == 1 and "left: no" in out


def test_invariants(capsys, ring_file):
    code, out, _ = run(capsys, "invariants", ring_file(make_family(FamilySpec("L1", p=3, m=2, s=1))), "--json")
    doc = json.loads(out)
    assert code == 0
    for key in ("leib", "derived", "left_center", "right_center", "center"):
        assert doc[key] == {"gens": [[3]], "order": 3}
    code, out, _ = run(capsys, "invariants", ring_file(R.zero_ring(make_family(FamilySpec("L2", p=2)).group)), "--json")
    doc = json.loads(out)
    assert doc["leib"]["order"] == 1 and doc["center"]["order"] == 4
    code, _, err = run(capsys, "invariants", ring_file(R.opposite(intro_ring(3))))
    assert code == 1 and "not a left Leibniz ring" in err


def test_invariants_text_is_stable(capsys, ring_file):
    f = ring_file(make_family(FamilySpec("L9", k=12, sigma=6, alpha1=4, alpha2=2, beta=6)))
    first = run(capsys, "invariants", f)
    assert first[0] == 0 and first == run(capsys, "invariants", f)


def test_census_commands(capsys, tmp_path):
    code, out, _ = run(capsys, "census", "--group", "9", "--out", str(tmp_path / "c9.txt"))
    assert code == 0 and "2 isomorphism classes" in out and "unmatched: 0" in out
    code, out, _ = run(capsys, "census", "--group", "3,3", "--out", str(tmp_path / "c33.txt"))
    assert code == 0 and "L2(p=3)" in out and "L3(p=3)" in out and "Lie" in out
    # extra classes on [4, 2] are reported and flagged
    code, out, _ = run(capsys, "census", "--group", "4,2", "--out", str(tmp_path / "c42.txt"))
    assert code == 1
    assert all(tag in out for tag in ("L4(p=2)", "L5(p=2)", "L6(p=2)", "Lie"))


def test_census_jobs_byte_identical(capsys, tmp_path):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    run(capsys, "census", "--group", "5,5", "--out", str(a))
    run(capsys, "census", "--group", "5,5", "--out", str(b), "--jobs", "2")
    assert a.read_bytes() == b.read_bytes()


@pytest.mark.parametrize(
    "argv",
    [
        ["census", "--group", "0,2", "--out", "x"],
        ["census", "--group", "9,3", "--out", "x", "--budget", "100"],
        ["census", "--group", "3,1", "--out", "x"],
        ["census", "--group", "a,b", "--out", "x"],
        ["census", "--group", "9", "--out", "x", "--jobs", "0"],
        ["nonsense"],
        [],
    ],
)
def test_usage_errors(capsys, tmp_path, monkeypatch, argv):
    monkeypatch.chdir(tmp_path)
    assert run(capsys, *argv)[0] == 2


def test_family(capsys, tmp_path):
    out_file = tmp_path / "l1.json"
    code, out, _ = run(capsys, "family", "L1", "--p", "2", "--m", "3", "--s", "1", "--emit", str(out_file))
    assert code == 0 and out_file.exists()
    assert R.is_left_leibniz(ring_from_doc(json.loads(out_file.read_text())))
    code, _, err = run(capsys, "family", "L1", "--p", "2", "--m", "1", "--s", "1")
    assert code == 2 and "2s <= m" in err
    code, _, err = run(capsys, "family", "L8", "--k", "6", "--beta", "4")
    assert code == 2 and "divisor" in err
    # a family whose stated closed forms disagree with computation
    code, out, _ = run(capsys, "family", "L5", "--p", "3", "--emit", str(tmp_path / "l5.json"))
    assert code == 1 and "MISMATCH" in out


def test_family_json(capsys):
    code, out, _ = run(capsys, "family", "L2", "--p", "3", "--json")
    doc = json.loads(out)
    assert code == 0 and all(doc["matches"].values()) and doc["family"] == "L2(p=3)"


def test_verify_paper_small(capsys):
    code, out, _ = run(capsys, "verify-paper", "--max-p", "2", "--max-m", "2", "--max-k", "1", "--seed", "3")
    lines = out.splitlines()
    assert lines[0] == "seed: 3"
    crit = [ln for ln in lines if ln.startswith("[")]
    assert len(crit) == 10
    assert crit[6].startswith("[PASS]  7.")
    # the closed-form comparison stays red even on the small grid
    assert crit[2].startswith("[FAIL]  3.") and code == 1


def test_verify_paper_fault_injection(capsys, monkeypatch):
    honest = A.census_rings
    broken = R.LeibnizRing(intro_ring(3).group, (((0, 1), (0, 1)), ((1, 0), (0, 0))))

    def with_corruption(censuses):
        yield from honest(censuses)
        yield broken

    monkeypatch.setattr(A, "census_rings", with_corruption)
    code, out, _ = run(capsys, "verify-paper", "--max-p", "2", "--max-m", "2", "--max-k", "1")
    line8 = next(ln for ln in out.splitlines() if " 8. " in ln)
    assert code == 1 and line8.startswith("[FAIL]") and "left Leibniz identity" in line8
