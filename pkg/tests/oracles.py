"""Brute-force enumeration oracles shared by the test modules.

Everything here is deliberately independent of the library's own geometry
paths: subspaces are enumerated from pivot patterns, lines from point pairs.
"""

from itertools import combinations

from rankforms.linalg import Mat, Subspace


def enumerate_subspaces(ambient, k, spec):
    """All k-dimensional subspaces of GF(q)^ambient, one canonical rref each."""
    q = spec.q
    out = []
    for pivots in combinations(range(ambient), k):
        free_cols = []
        for r in range(k):
            for c in range(pivots[r] + 1, ambient):
                if c not in pivots:
                    free_cols.append((r, c))
        for code in range(q ** len(free_cols)):
            m = Mat.zeros(k, ambient, spec)
            for r in range(k):
                m[r, pivots[r]] = 1
            c = code
            for (r, col) in free_cols:
                m[r, col] = c % q
                c //= q
            out.append(Subspace(m))
    return out


def ambient_points(space):
    """Normalized projective points of the ambient PG(2n-1, q)."""
    return Subspace(Mat.identity(space.dim, space.field)).points()


def polar_lines_disjoint_from_special(space):
    """All totally isotropic lines avoiding both distinguished generators.

    Built from point pairs and deduplicated by canonical basis, so it does
    not rely on the library's classifiers.
    """
    pi1 = space.gen_at_infinity()
    pi2 = space.gen_zero()

    def off_special(v):
        n = space.n
        return any(v[:n]) and any(v[n:])

    pts = [p for p in ambient_points(space) if off_special(p)]
    seen = {}
    for p in pts:
        pperp = space.perp(space.point(p))
        for r in pperp.points():
            if r == tuple(p) or not off_special(r):
                continue
            line = Subspace.from_rows([list(p), list(r)], space.field)
            if line.dim != 2:
                continue
            key = line.key()
            if key in seen:
                continue
            if line.intersect(pi1).dim or line.intersect(pi2).dim:
                continue
            if not space.is_totally_isotropic(line):
                continue
            seen[key] = line
    return list(seen.values())


def all_generators(space):
    """Every generator, by filtering all n-subspaces (small ambients only)."""
    subs = enumerate_subspaces(space.dim, space.n, space.field)
    return [s for s in subs if space.is_totally_isotropic(s)]
