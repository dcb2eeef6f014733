"""Projective layer: canonical forms, spans, incidence, enumeration counts."""

import itertools

import pytest

from splitcayley.galois import QuadraticField
from splitcayley import projective as pr


@pytest.fixture(scope="module")
def gf4():
    return QuadraticField.for_q(2)


@pytest.fixture(scope="module")
def gf9():
    return QuadraticField.for_q(3)


def test_normalize_idempotent_and_unique(gf4):
    f = gf4
    seen = {}
    for vec in itertools.product(range(f.n), repeat=3):
        if not any(vec):
            continue
        p = pr.normalize_point(f, vec)
        assert pr.normalize_point(f, p) == p
        # all scalar multiples normalise to the same key
        key = frozenset(pr.scale_vec(f, c, vec) for c in range(1, f.n))
        assert seen.setdefault(key, p) == p


def test_point_counts():
    f4 = QuadraticField.for_q(2)
    assert len(list(pr.enumerate_points(f4, 1))) == 5          # PG(1,4)
    assert len(list(pr.enumerate_points(f4, 3))) == 85         # PG(3,4)
    assert len(list(pr.enumerate_points(f4, 6, f4.subfield))) == 127  # PG(6,2)
    pts = list(pr.enumerate_points(f4, 3))
    assert len(set(pts)) == len(pts)


def test_subspace_counts():
    f4 = QuadraticField.for_q(2)
    # lines of PG(2,2) via the subfield alphabet
    assert len(list(pr.enumerate_subspaces(f4, 2, 1, f4.subfield))) == 7
    lines = list(pr.enumerate_subspaces(f4, 3, 1))
    assert len(lines) == pr.gaussian_binomial(4, 2, 4) == 357   # lines of PG(3,4)
    assert len(set(lines)) == 357
    planes_pg62 = pr.enumerate_subspaces(f4, 6, 2, f4.subfield)
    assert sum(1 for _ in planes_pg62) == pr.gaussian_binomial(7, 3, 2) == 11811


def test_span_dimensions(gf4):
    f = gf4
    p = (1, 0, 0, 0)
    q = (0, 1, 0, 0)
    assert len(pr.span(f, [p])) == 1
    assert len(pr.span(f, [p, q])) == 2
    # four points of a planar quadrangle span a plane
    quad = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (1, 1, 1, 0)]
    assert len(pr.span(f, quad)) == 3


def test_incidence(gf4):
    f = gf4
    x = (1, 2, 3, 0)
    y = (0, 1, 1, 1)
    line = pr.span(f, [x, y])
    assert pr.incident(f, x, line)
    assert pr.incident(f, y, line)
    hyperplane = pr.rref(f, [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0)])
    assert not pr.incident(f, (0, 0, 1, 1), hyperplane)
    assert pr.incident(f, (1, 2, 0, 0), hyperplane)


def test_membership_agrees_with_point_listing(gf4):
    f = gf4
    # exhaustive cross-check over every line of PG(3,4)
    pts = list(pr.enumerate_points(f, 3))
    for basis in pr.enumerate_subspaces(f, 3, 1):
        listed = set(pr.subspace_points(f, basis))
        assert len(listed) == 5
        for p in pts:
            assert (p in listed) == pr.point_in_subspace(f, p, basis)


def test_dimension_formula_exhaustive_subfield(gf4):
    # dim(U v W) = dim U + dim W - dim(U ^ W) over all subspace pairs of PG(3,2)
    f = gf4
    subs = [pr.rref(f, [p]) for p in pr.enumerate_points(f, 3, f.subfield)]
    subs += list(pr.enumerate_subspaces(f, 3, 1, f.subfield))
    subs += list(pr.enumerate_subspaces(f, 3, 2, f.subfield))
    assert len(subs) == 15 + 35 + 15
    for a in subs:
        for b in subs:
            join = pr.rref(f, list(a) + list(b))
            meet = pr.intersect(f, a, b)
            assert len(join) == len(a) + len(b) - len(meet)


def test_nullspace_and_intersect(gf9):
    f = gf9
    rows = ((1, 0, 2, 0), (0, 1, 1, 1))
    ns = pr.nullspace(f, rows)
    assert len(ns) == 2
    for v in ns:
        for r in rows:
            acc = 0
            for a, b in zip(r, v):
                acc = f.add(acc, f.mul(a, b))
            assert acc == 0


def test_solve_combination(gf9):
    f = gf9
    rows = [(1, 0, 0, 2), (0, 1, 4, 0)]
    target = (2, 3, f.mul(3, 4), f.mul(2, 2))
    coeffs = pr.solve_combination(f, rows, target)
    assert coeffs == (2, 3)
    assert pr.solve_combination(f, rows, (0, 0, 1, 0)) is None


def test_subspace_points_subfield_counts(gf4):
    f = gf4
    basis = ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0))
    pts = list(pr.subspace_points(f, basis, f.subfield))
    assert len(pts) == len(set(pts)) == 7  # Baer subplane size q^2+q+1
