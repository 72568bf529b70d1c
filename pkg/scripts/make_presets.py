"""Regenerate the bundled category presets under src/tetrasym/presets/."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

OUT = Path(__file__).resolve().parents[1] / "src" / "tetrasym" / "presets"


def enc(m):
    m = np.atleast_2d(np.asarray(m, dtype=complex))
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def closure(gens):
    """Elements of the matrix group generated by ``gens``, identity first."""
    eye = np.eye(gens[0].shape[0], dtype=complex)
    elems = [eye]
    frontier = [eye]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = g @ s
                if not any(np.allclose(h, e) for e in elems):
                    elems.append(h)
                    nxt.append(h)
        frontier = nxt
    return elems


def index_of(elems, m):
    return next(i for i, e in enumerate(elems) if np.allclose(e, m))


def group_doc(name, faithful_gens, irreps):
    """``irreps``: list of (name, conjugate, conj_unitary, generator images)."""
    elems = closure([np.asarray(g, dtype=complex) for g in faithful_gens])
    mult = [[index_of(elems, a @ b) for b in elems] for a in elems]
    gen_idx = [index_of(elems, np.asarray(g, dtype=complex)) for g in faithful_gens]
    out = []
    for nm, cj, cu, images in irreps:
        d = np.atleast_2d(np.asarray(images[0])).shape[0]
        out.append(
            {
                "name": nm,
                "dim": d,
                "conjugate": cj,
                "conj_unitary": enc(cu),
                "matrices": {str(g): enc(m) for g, m in zip(gen_idx, images)},
            }
        )
    return {
        "name": name,
        "backend": "group_rep",
        "order": len(elems),
        "generators": gen_idx,
        "mult_table": mult,
        "irreps": out,
    }


def one(x):
    return [[x]]


def presets():
    w = np.exp(2j * np.pi / 3)
    yield group_doc("z2", [[[-1]]], [("1", "1", one(1), [one(1)]), ("sgn", "sgn", one(1), [one(-1)])])
    yield group_doc(
        "z3",
        [[[w]]],
        [("0", "0", one(1), [one(1)]), ("1", "2", one(1), [one(w)]), ("2", "1", one(1), [one(w * w)])],
    )

    # S3 via the standard real representation
    c, s = -0.5, np.sqrt(3) / 2
    rot = np.array([[c, -s], [s, c]])
    ref = np.array([[1.0, 0.0], [0.0, -1.0]])
    i2 = np.eye(2)
    yield group_doc(
        "s3",
        [rot, ref],
        [
            ("1", "1", one(1), [one(1), one(1)]),
            ("sgn", "sgn", one(1), [one(1), one(-1)]),
            ("std", "std", i2, [rot, ref]),
        ],
    )

    r90 = np.array([[0.0, -1.0], [1.0, 0.0]])
    yield group_doc(
        "d4",
        [r90, ref],
        [
            ("1", "1", one(1), [one(1), one(1)]),
            ("a", "a", one(1), [one(1), one(-1)]),
            ("b", "b", one(1), [one(-1), one(1)]),
            ("c", "c", one(1), [one(-1), one(-1)]),
            ("E", "E", i2, [r90, ref]),
        ],
    )

    qi = np.diag([1j, -1j])
    qj = np.array([[0, 1], [-1, 0]], dtype=complex)
    yield group_doc(
        "q8",
        [qi, qj],
        [
            ("1", "1", one(1), [one(1), one(1)]),
            ("i", "i", one(1), [one(1), one(-1)]),
            ("j", "j", one(1), [one(-1), one(1)]),
            ("k", "k", one(1), [one(-1), one(-1)]),
            ("E", "E", qj, [qi, qj]),
        ],
    )
    for k in range(3):
        yield {"name": f"z3_omega{k}", "backend": "pointed_z3", "omega_index": k}


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for doc in presets():
        (OUT / f"{doc['name']}.json").write_text(json.dumps(doc, indent=1) + "\n")
        print("wrote", doc["name"])


if __name__ == "__main__":
    main()
