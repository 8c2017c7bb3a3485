"""Sparse exact Gaussian elimination over any Python field type.

Rows are dicts mapping hashable column keys to nonzero coefficients.  The
coefficient type only needs +, -, *, / and truthiness, so the same code
serves fractions.Fraction and the rational-function field.  No floating
point anywhere; a reported rank or solution is exact.
"""

from fractions import Fraction


def _coeff_size(c):
    """Crude cost estimate used to pick cheap pivots."""
    if isinstance(c, Fraction):
        return c.numerator.bit_length() + c.denominator.bit_length()
    try:
        return len(c.num.c) + len(c.den.c)
    except AttributeError:
        return 1


def reduce_row(row, pivots):
    """Reduce a row against unit pivot rows; returns the residual dict."""
    r = {col: c for col, c in row.items() if c}
    for col, prow in pivots:
        c = r.get(col)
        if not c:
            continue
        del r[col]
        for col2, x2 in prow.items():
            if col2 == col:
                continue
            prev = r.get(col2)
            s = -c * x2 if prev is None else prev - c * x2
            if s:
                r[col2] = s
            elif prev is not None:
                del r[col2]
    return r


def eliminate(rows):
    """Forward elimination; returns [(pivot_col, unit_row), ...].

    Each stored row is scaled so its pivot entry is 1.  Pivot columns are
    chosen to minimize coefficient size, which keeps blow-up down when the
    entries are rational functions.
    """
    pivots = []
    for row in rows:
        r = reduce_row(row, pivots)
        if not r:
            continue
        col = min(r, key=lambda k: _coeff_size(r[k]))
        inv = r[col]
        pivots.append((col, {c2: x2 / inv for c2, x2 in r.items()}))
    return pivots


def rank_of_rows(rows):
    """Exact rank of the sparse matrix whose rows are the given dicts."""
    return len(eliminate(rows))


_RHS = ("rhs",)


def solve_unique(equations, rhs):
    """Solve a linear system that must have exactly one solution.

    equations: list of dicts var -> coeff; rhs: list of coeffs.  Returns
    {var: value} covering every variable that appears.  Raises ValueError
    when the system is inconsistent or underdetermined.
    """
    seen = set()
    pivots = []
    for eq, b in zip(equations, rhs):
        row = {var: c for var, c in eq.items() if c}
        seen.update(row)
        if b:
            row[_RHS] = b
        r = reduce_row(row, pivots)
        if not r:
            continue
        cols = [c for c in r if c is not _RHS]
        if not cols:
            raise ValueError("inconsistent linear system")
        col = min(cols, key=lambda k: _coeff_size(r[k]))
        inv = r[col]
        prow = {c2: x2 / inv for c2, x2 in r.items()}
        for _, prow0 in pivots:
            c0 = prow0.get(col)
            if not c0:
                continue
            del prow0[col]
            for c2, x2 in prow.items():
                if c2 == col:
                    continue
                prev = prow0.get(c2)
                s = -c0 * x2 if prev is None else prev - c0 * x2
                if s:
                    prow0[c2] = s
                elif prev is not None:
                    del prow0[c2]
        pivots.append((col, prow))
    solved = {col for col, _ in pivots}
    if seen - solved:
        raise ValueError("underdetermined linear system")
    out = {}
    for col, prow in pivots:
        extra = [c for c in prow if c is not _RHS and c != col]
        if extra:
            raise ValueError("underdetermined linear system")
        out[col] = prow.get(_RHS, 0)
    return out
