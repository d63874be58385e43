#!/usr/bin/env python3
"""Solve a pure-binary CPLEX LP file with scipy's MILP interface (HiGHS).

Usage: solve_lp.py FILE.lp
Prints the optimal objective on the first line and the names of variables
set to 1 on the second. Exit code 3 when scipy is unavailable.
"""
import re
import sys

try:
    import numpy as np
    from scipy.optimize import milp, LinearConstraint, Bounds
    from scipy.sparse import lil_matrix
except ImportError:
    sys.exit(3)

TERM = re.compile(r"([+-])?\s*(\d+(?:\.\d+)?)?\s*([A-Za-z_][A-Za-z0-9_]*)")


def parse_expr(text):
    terms = []
    for sign, coef, var in TERM.findall(text):
        value = float(coef) if coef else 1.0
        if sign == "-":
            value = -value
        terms.append((var, value))
    return terms


def main(path):
    section = None
    objective = []
    rows = []
    binaries = []
    with open(path) as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("\\"):
                continue
            low = line.lower()
            if low in ("minimize", "minimise", "min"):
                section = "obj"
                continue
            if low in ("subject to", "st", "s.t."):
                section = "st"
                continue
            if low in ("binary", "binaries", "bin"):
                section = "bin"
                continue
            if low == "end":
                break
            if section == "obj":
                objective.extend(parse_expr(line.split(":", 1)[-1]))
            elif section == "st":
                body = line.split(":", 1)[-1]
                m = re.match(r"(.*?)(<=|>=|=)\s*(-?\d+(?:\.\d+)?)\s*$", body)
                if not m:
                    raise SystemExit(f"cannot parse constraint: {line}")
                rows.append((parse_expr(m.group(1)), m.group(2), float(m.group(3))))
            elif section == "bin":
                binaries.extend(line.split())

    names = list(dict.fromkeys(binaries + [v for v, _ in objective]))
    index = {v: k for k, v in enumerate(names)}
    c = np.zeros(len(names))
    for v, a in objective:
        c[index[v]] += a
    A = lil_matrix((len(rows), len(names)))
    lo = np.empty(len(rows))
    hi = np.empty(len(rows))
    for r, (terms, sense, rhs) in enumerate(rows):
        for v, a in terms:
            A[r, index[v]] += a
        lo[r] = rhs if sense in ("=", ">=") else -np.inf
        hi[r] = rhs if sense in ("=", "<=") else np.inf
    res = milp(
        c,
        constraints=LinearConstraint(A.tocsr(), lo, hi),
        integrality=np.ones(len(names)),
        bounds=Bounds(0, 1),
    )
    if not res.success:
        raise SystemExit(f"solver failed: {res.message}")
    print(int(round(res.fun)))
    print(" ".join(n for n, x in zip(names, res.x) if x > 0.5))


if __name__ == "__main__":
    main(sys.argv[1])
