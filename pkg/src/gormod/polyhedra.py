"""Exact rational polyhedra: Fourier-Motzkin elimination and point searches.

A linear constraint is a triple ``(coeffs, const, strict)`` standing for
``coeffs . x + const >= 0`` (or ``> 0`` when strict); an equality is a pair
``(coeffs, const)`` standing for ``coeffs . x + const = 0``.  All data are
Python ints, so elimination is exact; constraints are rescaled by gcds to
keep coefficient growth in check.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import BudgetExceeded

INT_SEARCH_CAP = 1024  # doubling search stops here


def _reduce_ineq(coeffs, const, strict):
    g = 0
    for c in coeffs:
        g = gcd(g, c)
    g = gcd(g, const)
    if g > 1:
        coeffs = tuple(c // g for c in coeffs)
        const = const // g
    return (tuple(coeffs), const, strict)


def _reduce_eq(coeffs, const):
    g = 0
    for c in coeffs:
        g = gcd(g, c)
    g = gcd(g, const)
    if g > 1:
        coeffs = tuple(c // g for c in coeffs)
        const = const // g
    return (tuple(coeffs), const)


def eliminate_variable(ineqs, eqs, j):
    """Project away variable j, returning (ineqs, eqs) with zero j-coefficients.

    If some equality involves x_j it is used as an exact pivot; otherwise the
    classical positive/negative pairing applies.
    """
    pivot = None
    for k, (e, f) in enumerate(eqs):
        if e[j]:
            pivot = k
            break
    new_ineqs = []
    new_eqs = []
    if pivot is not None:
        e, f = eqs[pivot]
        s = 1 if e[j] > 0 else -1
        for k, (e2, f2) in enumerate(eqs):
            if k == pivot:
                continue
            if e2[j]:
                coeffs = tuple(abs(e[j]) * a - s * e2[j] * b for a, b in zip(e2, e))
                const = abs(e[j]) * f2 - s * e2[j] * f
                new_eqs.append(_reduce_eq(coeffs, const))
            else:
                new_eqs.append((e2, f2))
        for (a, c, strict) in ineqs:
            if a[j]:
                coeffs = tuple(abs(e[j]) * p - s * a[j] * q for p, q in zip(a, e))
                const = abs(e[j]) * c - s * a[j] * f
                new_ineqs.append(_reduce_ineq(coeffs, const, strict))
            else:
                new_ineqs.append((a, c, strict))
        return _dedupe(new_ineqs), new_eqs

    pos = [t for t in ineqs if t[0][j] > 0]
    neg = [t for t in ineqs if t[0][j] < 0]
    new_ineqs = [t for t in ineqs if t[0][j] == 0]
    for (ap, cp, sp) in pos:
        for (an, cn, sn) in neg:
            coeffs = tuple((-an[j]) * x + ap[j] * y for x, y in zip(ap, an))
            const = (-an[j]) * cp + ap[j] * cn
            new_ineqs.append(_reduce_ineq(coeffs, const, sp or sn))
    return _dedupe(new_ineqs), list(eqs)


def _dedupe(ineqs):
    seen = {}
    for (a, c, strict) in ineqs:
        key = (a, c)
        # A strict copy subsumes a non-strict one of the same data.
        seen[key] = seen.get(key, False) or strict
    return [(a, c, s) for (a, c), s in sorted(seen.items(), key=repr)]


def project_chain(ineqs, eqs, dim):
    """Systems obtained by eliminating x_{dim-1}, ..., x_1 in turn.

    Returns a list ``levels`` where levels[k] constrains x_0..x_k only.
    """
    levels = [None] * dim
    cur_i, cur_e = list(ineqs), list(eqs)
    levels[dim - 1] = (cur_i, cur_e)
    for j in range(dim - 1, 0, -1):
        cur_i, cur_e = eliminate_variable(cur_i, cur_e, j)
        levels[j - 1] = (cur_i, cur_e)
    return levels


def _feasible_constants(ineqs, eqs):
    for a, c, strict in ineqs:
        if any(a):
            continue
        if c < 0 or (strict and c == 0):
            return False
    for e, f in eqs:
        if not any(e) and f != 0:
            return False
    return True


def rational_point(ineqs, eqs, dim):
    """An exact rational point of the system, or None if it is infeasible."""
    if dim == 0:
        return () if _feasible_constants(ineqs, eqs) else None
    levels = project_chain(ineqs, eqs, dim)
    if not _feasible_constants(*levels[0]):
        return None
    point: list[Fraction] = []
    for k in range(dim):
        ineqs_k, eqs_k = levels[k]
        val = None
        for e, f in eqs_k:
            if e[k]:
                acc = Fraction(f)
                for i in range(k):
                    acc += e[i] * point[i]
                val = -acc / e[k]
                break
        if val is None:
            lo, lo_strict, hi, hi_strict = None, False, None, False
            for a, c, strict in ineqs_k:
                if not a[k]:
                    continue
                acc = Fraction(c)
                for i in range(k):
                    acc += a[i] * point[i]
                bound = -acc / a[k]
                if a[k] > 0:
                    if lo is None or bound > lo or (bound == lo and strict):
                        lo, lo_strict = bound, strict
                else:
                    if hi is None or bound < hi or (bound == hi and strict):
                        hi, hi_strict = bound, strict
            if lo is None and hi is None:
                val = Fraction(0)
            elif lo is None:
                val = hi - 1 if hi_strict else hi
            elif hi is None:
                val = lo + 1 if lo_strict else lo
            else:
                if lo > hi or (lo == hi and (lo_strict or hi_strict)):
                    return None
                val = (lo + hi) / 2 if (lo_strict or hi_strict) else lo
        point.append(val)
        # Validate against every constraint at this level (FM guarantees a
        # consistent choice exists, but equalities may pin inconsistent values).
        for a, c, strict in ineqs_k:
            acc = Fraction(c)
            for i in range(k + 1):
                acc += a[i] * point[i]
            if acc < 0 or (strict and acc == 0):
                return None
        for e, f in eqs_k:
            acc = Fraction(f)
            for i in range(k + 1):
                acc += e[i] * point[i]
            if acc != 0:
                return None
    return tuple(point)


def integer_point(ineqs, eqs, dim, cap=INT_SEARCH_CAP):
    """An integer point of the system, None if certainly empty.

    Strict inequalities must already be integerized by the caller (for
    integer data ``> 0`` is ``>= 1``); strict flags are rejected here.
    Search is depth-first over Fourier-Motzkin bounds with a growing value
    cap; if the search is truncated by the cap without finding a point,
    BudgetExceeded is raised rather than guessing.
    """
    for _, _, strict in ineqs:
        if strict:
            raise ValueError("integerize strict inequalities before the search")
    if dim == 0:
        return () if _feasible_constants(ineqs, eqs) else None
    if rational_point(ineqs, eqs, dim) is None:
        return None
    levels = project_chain(ineqs, eqs, dim)

    def bounds(k, prefix, box):
        lo, hi = -box, box
        truncated_lo, truncated_hi = True, True
        ineqs_k, eqs_k = levels[k]
        for e, f in eqs_k:
            if e[k]:
                acc = f + sum(e[i] * prefix[i] for i in range(k))
                if acc % e[k]:
                    return None
                v = -acc // e[k]
                return (v, v, False, False) if lo <= v <= hi else None
        for a, c, _ in ineqs_k:
            if not a[k]:
                continue
            acc = c + sum(a[i] * prefix[i] for i in range(k))
            if a[k] > 0:
                b = -(acc // a[k])  # ceil(-acc / a[k])
                if b > lo:
                    lo, truncated_lo = b, False
                elif b == lo:
                    truncated_lo = False
            else:
                b = acc // (-a[k])
                if b < hi:
                    hi, truncated_hi = b, False
                elif b == hi:
                    truncated_hi = False
        return lo, hi, truncated_lo, truncated_hi

    def satisfies_all(point):
        for a, c, _ in ineqs:
            if sum(x * y for x, y in zip(a, point)) + c < 0:
                return False
        for e, f in eqs:
            if sum(x * y for x, y in zip(e, point)) + f != 0:
                return False
        return True

    box = 2
    while True:
        truncated = False

        def search(k, prefix):
            nonlocal truncated
            b = bounds(k, prefix, box)
            if b is None:
                return None
            lo, hi, tlo, thi = b
            if tlo or thi:
                truncated = True
            if lo > hi:
                return None
            order = sorted(range(lo, hi + 1), key=lambda v: (abs(v), v))
            for v in order:
                nxt = prefix + (v,)
                if k + 1 == dim:
                    if satisfies_all(nxt):
                        return nxt
                else:
                    res = search(k + 1, nxt)
                    if res is not None:
                        return res
            return None

        found = search(0, ())
        if found is not None:
            return found
        if not truncated:
            return None
        if box >= cap:
            raise BudgetExceeded(
                f"no integer point within box {cap}, search truncated")
        box *= 2
