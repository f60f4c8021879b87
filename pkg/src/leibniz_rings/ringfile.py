"""Ring documents and census files.

A ring document is ``{"group": [d_1, ..., d_n], "bracket": B}`` where
``B[i][j]`` lists the coefficients of ``[e_i, e_j]``; finite coordinates
must already lie in ``[0, d_i)``.  Census files are plain text: a header
line, then one block per isomorphism class.
"""

from __future__ import annotations

import json
from pathlib import Path

from . import fg_abelian as ab
from . import ring as R
from .errors import FactorOne, RingFileError

CENSUS_MAGIC = "leibniz-census"


def ring_to_doc(r: R.LeibnizRing) -> dict:
    return {
        "group": list(r.group.factors),
        "bracket": [[list(r.table[i][j]) for j in range(r.n)] for i in range(r.n)],
    }


def dumps_ring(r: R.LeibnizRing) -> str:
    return json.dumps(ring_to_doc(r), indent=2) + "\n"


def dump_ring(r: R.LeibnizRing, path) -> None:
    Path(path).write_text(dumps_ring(r))


def ring_from_doc(doc) -> R.LeibnizRing:
    """Validate a decoded document; raises RingFileError naming the field."""
    if not isinstance(doc, dict):
        raise RingFileError("top level must be an object with 'group' and 'bracket'")
    for key in ("group", "bracket"):
        if key not in doc:
            raise RingFileError(f"missing field '{key}'")
    factors = doc["group"]
    if not isinstance(factors, list) or not all(type(d) is int for d in factors):
        raise RingFileError("'group' must be a list of integers")
    try:
        g = ab.make_group(factors)
    except (FactorOne, ValueError) as exc:
        raise RingFileError(f"group: {exc}") from exc
    n = g.ngens
    rows = doc["bracket"]
    if not isinstance(rows, list) or len(rows) != n:
        raise RingFileError(f"'bracket' must have {n} rows")
    table = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise RingFileError(f"bracket[{i}] must have {n} entries")
        out_row = []
        for j, coeffs in enumerate(row):
            if not isinstance(coeffs, list) or len(coeffs) != n or not all(type(c) is int for c in coeffs):
                raise RingFileError(f"bracket[{i}][{j}] must be a list of {n} integers")
            for t, (c, d) in enumerate(zip(coeffs, g.factors)):
                if d and not 0 <= c < d:
                    raise RingFileError(
                        f"bracket[{i}][{j}][{t}] = {c} is not normalized into [0, {d})"
                    )
            out_row.append(tuple(coeffs))
        table.append(out_row)
    return R.make_ring(g, table)


def loads_ring(text: str) -> R.LeibnizRing:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise RingFileError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return ring_from_doc(doc)


def load_ring(path) -> R.LeibnizRing:
    return loads_ring(Path(path).read_text())


# -- census files -------------------------------------------------------------


def census_to_text(census) -> str:
    g = census.group
    out = [
        f"{CENSUS_MAGIC} group={json.dumps(list(g.factors))} total_valid={census.total_valid} "
        f"automorphisms={census.aut_order} classes={len(census.classes)}"
    ]
    for idx, cls in enumerate(census.classes):
        out.append(f"== class {idx}")
        out.append(f"family: {cls.family}")
        out.append(f"orbit_size: {cls.orbit_size}")
        out.append("invariants: " + json.dumps(cls.report.orders(), sort_keys=True))
        out.append("ring:")
        out.append(dumps_ring(cls.ring).rstrip("\n"))
    return "\n".join(out) + "\n"


def census_to_file(census, path) -> None:
    Path(path).write_text(census_to_text(census))


def loads_census(text: str) -> dict:
    """Parse a census file back into plain data (rings rebuilt and validated)."""
    lines = text.splitlines()
    if not lines or not lines[0].startswith(CENSUS_MAGIC):
        raise RingFileError("not a census file: bad header")
    header = dict(part.split("=", 1) for part in lines[0].split()[1:])
    out = {
        "group": json.loads(header["group"]),
        "total_valid": int(header["total_valid"]),
        "automorphisms": int(header["automorphisms"]),
        "classes": [],
    }
    blocks, cur = [], None
    for ln in lines[1:]:
        if ln.startswith("== class "):
            cur = []
            blocks.append(cur)
        elif cur is None:
            raise RingFileError("content before the first class block")
        else:
            cur.append(ln)
    for blk in blocks:
        try:
            fam = blk[0].split(": ", 1)[1]
            orbit = int(blk[1].split(": ", 1)[1])
            inv = json.loads(blk[2].split(": ", 1)[1])
            assert blk[3] == "ring:"
        except (IndexError, ValueError, AssertionError) as exc:
            raise RingFileError(f"malformed class block: {blk[:4]}") from exc
        ring = loads_ring("\n".join(blk[4:]))
        out["classes"].append({"family": fam, "orbit_size": orbit, "invariants": inv, "ring": ring})
    if len(out["classes"]) != int(header["classes"]):
        raise RingFileError("class count in header does not match the blocks")
    return out


def load_census(path) -> dict:
    return loads_census(Path(path).read_text())
