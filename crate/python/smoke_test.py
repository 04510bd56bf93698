"""Smoke test for the pyflowgp extension.

Build and install it first:

    pip install --no-build-isolation ./crates/python
"""

import sys
from collections import Counter

import pyflowgp

EXAMPLE = "4; 0 1; 0 2; 1 2; 2 3; 2 4; 3 4"
S_14523 = {
    (2, 2, 0, 0): 1,
    (2, 1, 1, 0): 1,
    (2, 0, 2, 0): 1,
    (1, 2, 1, 0): 1,
    (1, 1, 2, 0): 1,
    (0, 2, 2, 0): 1,
}


def check(name, ok):
    print(f"{'ok  ' if ok else 'FAIL'} {name}")
    return ok


def main():
    results = []

    results.append(check("kostant on a path", pyflowgp.kostant("2; 0 1; 1 2", [1, 0, -1]) == 1))
    results.append(check("infeasible netflow", not pyflowgp.feasible("2; 0 1; 1 2", [-1, 0, 1])))

    vol = pyflowgp.volume(EXAMPLE)
    leaves = pyflowgp.ld(EXAMPLE)
    full = sum(m for seq, f, m in leaves if f == "{}")
    results.append(check(f"volume {vol} = full-dimensional leaves {full}", vol == full))

    ehr = pyflowgp.ehrhart(EXAMPLE)
    results.append(check("Ehrhart constant term is 1", ehr[0] == "1"))

    lex = pyflowgp.ld(EXAMPLE, "lex")
    special = pyflowgp.ld(EXAMPLE)

    def agg(entries):
        c = Counter()
        for seq, _, m in entries:
            c[tuple(seq)] += m
        return c

    results.append(check("lex and special LD agree", agg(lex) == agg(special)))
    results.append(check("theorem A holds", pyflowgp.verify_theorem_a(EXAMPLE, seed=5)))

    rows = pyflowgp.tri(EXAMPLE, "2-3,2-4,3-4")
    results.append(check("tri has one row per vertex", len(rows) == 4 and rows[1].startswith("2")))

    results.append(check("schubert 14523", pyflowgp.schubert("14523") == S_14523))
    results.append(check("transition agrees", pyflowgp.transition("14523") == pyflowgp.schubert("14523")))
    groth = pyflowgp.grothendieck("1432")
    results.append(check("grothendieck 1432 has 11 pipe dreams", sum(groth.values()) == 11))

    bad, total = pyflowgp.conjecture_scan(4)
    results.append(check(f"conjecture scan S_4: {bad} / {total}", (bad, total) == (0, 24)))

    try:
        pyflowgp.volume("3; 2 1")
        results.append(check("bad graph raises", False))
    except ValueError:
        results.append(check("bad graph raises", True))

    return 0 if all(results) else 1


if __name__ == "__main__":
    sys.exit(main())
