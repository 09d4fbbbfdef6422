"""One-shot generator for the bundled device preset JSON files."""

import json
from pathlib import Path

OUT = Path(__file__).parent / "src" / "bellmark" / "data"

IBM_EAGLE = {"p1": 4.322e-4, "p2": 1.019e-2, "pr": 2.434e-2}
SYC_SIM = {"p1": 1.6e-3, "p2": 6.2e-3, "pr": 3.8e-2}
ZERO = {"p1": 0.0, "p2": 0.0, "pr": 0.0}


def chain(lo, hi):
    return [[i, i + 1] for i in range(lo, hi)]


def star5():
    return {"name": "star-5", "n_vertices": 5,
            "edges": [[2, 0], [2, 1], [2, 3], [2, 4]], "noise": ZERO}


def falcon7():
    return {"name": "falcon-7", "n_vertices": 7,
            "edges": [[0, 1], [1, 2], [1, 3], [3, 5], [4, 5], [5, 6]], "noise": ZERO}


def iontrap20():
    edges = [[i, j] for i in range(20) for j in range(i + 1, 20)]
    return {"name": "ion-trap-20", "n_vertices": 20, "edges": edges, "noise": ZERO}


def sycamore53():
    cols = {0: (5, 6), 1: (4, 7), 2: (3, 8), 3: (2, 9), 4: (1, 9),
            5: (0, 8), 6: (1, 7), 7: (2, 6), 8: (3, 5)}
    qubits = sorted((r, c) for r, (lo, hi) in cols.items() for c in range(lo, hi + 1))
    index = {q: i for i, q in enumerate(qubits)}
    edges = []
    for (r, c) in qubits:
        for nb in ((r, c + 1), (r + 1, c)):
            if nb in index:
                edges.append([index[(r, c)], index[nb]])
    return {"name": "sycamore-53", "n_vertices": len(qubits), "edges": sorted(edges),
            "noise": SYC_SIM}


def eagle127():
    edges = []
    edges += chain(0, 13)      # row 0: 0..13
    edges += chain(18, 32)     # row 1: 18..32
    edges += chain(37, 51)     # row 2
    edges += chain(56, 70)     # row 3
    edges += chain(75, 89)     # row 4
    edges += chain(94, 108)    # row 5
    edges += chain(113, 126)   # row 6
    connectors = [
        (14, 0, 18), (15, 4, 22), (16, 8, 26), (17, 12, 30),
        (33, 20, 39), (34, 24, 43), (35, 28, 47), (36, 32, 51),
        (52, 37, 56), (53, 41, 60), (54, 45, 64), (55, 49, 68),
        (71, 58, 77), (72, 62, 81), (73, 66, 85), (74, 70, 89),
        (90, 75, 94), (91, 79, 98), (92, 83, 102), (93, 87, 106),
        (109, 96, 114), (110, 100, 118), (111, 104, 122), (112, 108, 126),
    ]
    for mid, top, bottom in connectors:
        edges.append([top, mid])
        edges.append([mid, bottom])
    return {"name": "eagle-127", "n_vertices": 127, "edges": sorted(edges),
            "noise": IBM_EAGLE}


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for preset in (star5(), falcon7(), iontrap20(), sycamore53(), eagle127()):
        path = OUT / f"{preset['name']}.json"
        path.write_text(json.dumps(preset, indent=1) + "\n")
        print(path, preset["n_vertices"], len(preset["edges"]))


if __name__ == "__main__":
    main()
