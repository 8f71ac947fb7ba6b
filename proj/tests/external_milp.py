#!/usr/bin/env python3
"""Solve a free-form MPS binary program with scipy's MILP interface.

Usage: external_milp.py model.mps

Prints "objective <value>" on success.  Exits 77 when scipy is missing so
callers can treat the cross-check as advisory.
"""
import sys

try:
    import numpy as np
    from scipy import sparse
    from scipy.optimize import Bounds, LinearConstraint, milp
except ImportError:
    sys.exit(77)

SECTIONS = {"NAME", "ROWS", "COLUMNS", "RHS", "RANGES", "BOUNDS", "ENDATA"}


def parse_mps(path):
    rows = []  # (sense, name), constraint rows only
    row_index = {}
    obj = {}
    cols = {}  # var -> {row name: coeff}
    var_order = []
    rhs = {}
    section = None
    with open(path) as fh:
        for raw in fh:
            f = raw.split()
            if not f:
                continue
            # Section headers start in column 0; data lines are indented.
            # (RHS data lines also begin with the token "RHS".)
            if not raw[0].isspace() and f[0].upper() in SECTIONS:
                section = f[0].upper()
                continue
            if section == "ROWS":
                sense, name = f[0].upper(), f[1]
                if sense == "N":
                    continue  # objective row; COLUMNS entries for it go to obj
                row_index[name] = len(rows)
                rows.append((sense, name))
            elif section == "COLUMNS":
                if len(f) >= 3 and f[1] == "'MARKER'":
                    continue  # integrality markers; every variable here is binary anyway
                var = f[0]
                if var not in cols:
                    cols[var] = {}
                    var_order.append(var)
                for i in range(1, len(f) - 1, 2):
                    row, coeff = f[i], float(f[i + 1])
                    if row in row_index:
                        cols[var][row] = cols[var].get(row, 0.0) + coeff
                    else:
                        obj[var] = obj.get(var, 0.0) + coeff
            elif section == "RHS":
                for i in range(1, len(f) - 1, 2):
                    rhs[f[i]] = float(f[i + 1])
    return rows, row_index, obj, cols, var_order, rhs


def main():
    if len(sys.argv) != 2:
        print("usage: external_milp.py model.mps", file=sys.stderr)
        return 2
    rows, row_index, obj, cols, var_order, rhs = parse_mps(sys.argv[1])
    n = len(var_order)
    var_pos = {v: i for i, v in enumerate(var_order)}

    c = np.zeros(n)
    for v, coeff in obj.items():
        c[var_pos[v]] = coeff

    data, ri, ci = [], [], []
    for v, entries in cols.items():
        for row, coeff in entries.items():
            ri.append(row_index[row])
            ci.append(var_pos[v])
            data.append(coeff)
    a = sparse.csr_matrix((data, (ri, ci)), shape=(len(rows), n))
    lb = np.empty(len(rows))
    ub = np.empty(len(rows))
    for i, (sense, name) in enumerate(rows):
        b = rhs.get(name, 0.0)
        if sense == "E":
            lb[i] = ub[i] = b
        elif sense == "L":
            lb[i], ub[i] = -np.inf, b
        else:
            lb[i], ub[i] = b, np.inf

    res = milp(c=c, constraints=LinearConstraint(a, lb, ub),
               integrality=np.ones(n), bounds=Bounds(0, 1))
    if not res.success:
        print("solve failed: " + str(res.message), file=sys.stderr)
        return 1
    print(f"objective {res.fun:.6f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
