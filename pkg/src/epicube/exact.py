"""Exact rational-arithmetic backend.

Everything here runs on Fractions, so determinants, ranks and the bracket
invariant are computed without floating point.  It backs the randomized
certificate that the reduced Turnbull-Young invariant vanishes on the
facet-coplanarity variety of the combinatorial cube.
"""

from fractions import Fraction

from .degeneracy import CUBE_LABELS, TY_MONOMIALS
from .exceptions import DegenerateIntersection

Rational = Fraction


def _np_svdvals(A):
    import numpy as np

    return np.linalg.svd(np.array(A, dtype=float), compute_uv=False)


def _as_matrix(M):
    rows = [[Fraction(x) for x in row] for row in M]
    if not rows or any(len(r) != len(rows[0]) for r in rows):
        raise ValueError("matrix rows must be nonempty and of equal length")
    return rows


def exact_det(M):
    """Exact determinant via fraction-free (Bareiss) elimination."""
    A = _as_matrix(M)
    n = len(A)
    if any(len(r) != n for r in A):
        raise ValueError("determinant needs a square matrix")
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) / prev
            A[i][k] = Fraction(0)
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def exact_rank(M):
    """Exact rank via Gaussian elimination over the rationals."""
    A = _as_matrix(M)
    n_rows, n_cols = len(A), len(A[0])
    rank = 0
    row = 0
    for col in range(n_cols):
        pivot = next((i for i in range(row, n_rows) if A[i][col] != 0), None)
        if pivot is None:
            continue
        A[row], A[pivot] = A[pivot], A[row]
        pv = A[row][col]
        for i in range(row + 1, n_rows):
            if A[i][col] != 0:
                f = A[i][col] / pv
                for j in range(col, n_cols):
                    A[i][j] -= f * A[row][j]
        rank += 1
        row += 1
        if row == n_rows:
            break
    return rank


def exact_kernel(M):
    """Exact basis of the right null space over the rationals.

    Returns a list of length-n_cols rational vectors (free-variable basis
    from the reduced row echelon form); empty for full column rank.
    """
    A = _as_matrix(M)
    n_rows, n_cols = len(A), len(A[0])
    pivots = []
    row = 0
    for col in range(n_cols):
        pivot = next((i for i in range(row, n_rows) if A[i][col] != 0), None)
        if pivot is None:
            continue
        A[row], A[pivot] = A[pivot], A[row]
        pv = A[row][col]
        A[row] = [x / pv for x in A[row]]
        for i in range(n_rows):
            if i != row and A[i][col] != 0:
                f = A[i][col]
                A[i] = [a - f * b for a, b in zip(A[i], A[row])]
        pivots.append(col)
        row += 1
        if row == n_rows:
            break
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n_cols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -A[r][fc]
        basis.append(v)
    return basis


def exact_pencil_cubic(F1, F2):
    """Exact coefficients (c3, c2, c1, c0) of det(a*F1 + (1-a)*F2)."""
    F1 = _as_matrix(F1)
    F2 = _as_matrix(F2)
    nodes = [Fraction(0), Fraction(1), Fraction(2), Fraction(-1)]
    vals = [
        exact_det(
            [
                [a * x + (1 - a) * y for x, y in zip(r1, r2)]
                for r1, r2 in zip(F1, F2)
            ]
        )
        for a in nodes
    ]
    # Solve the 4x4 Vandermonde system exactly.
    V = [[a**3, a**2, a, Fraction(1)] for a in nodes]
    aug = [row + [val] for row, val in zip(V, vals)]
    for col in range(4):
        pivot = next(i for i in range(col, 4) if aug[i][col] != 0)
        aug[col], aug[pivot] = aug[pivot], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for i in range(4):
            if i != col and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[col])]
    return tuple(aug[i][4] for i in range(4))


def cross4(a, b, c):
    """Generalized cross product in 4 coordinates.

    Returns n with n . x = det([x; a; b; c]) for every x, i.e. the vector
    of signed 3x3 maximal minors of the stacked rows a, b, c.
    """
    a = [Fraction(x) for x in a]
    b = [Fraction(x) for x in b]
    c = [Fraction(x) for x in c]

    def minor(j):
        cols = [k for k in range(4) if k != j]
        m = [[v[k] for k in cols] for v in (a, b, c)]
        return (
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        )

    return [(-1) ** j * minor(j) for j in range(4)]


def exact_veronese(p):
    """Degree-2 monomial lift of a rational point of P^3 (10 entries)."""
    x1, x2, x3, x4 = (Fraction(x) for x in p)
    return [
        x1 * x1,
        x1 * x2,
        x1 * x3,
        x1 * x4,
        x2 * x2,
        x2 * x3,
        x2 * x4,
        x3 * x3,
        x3 * x4,
        x4 * x4,
    ]


def exact_veronese_matrix(P):
    return [exact_veronese(p) for p in P]


def exact_turnbull_young(config):
    """Exact reduced Turnbull-Young invariant of a 10-point configuration.

    ``config`` is indexable by label 0..9, each entry a rational 4-vector.
    """
    if len(config) != 10:
        raise ValueError("need the full 10-point labeled configuration")
    total = Fraction(0)
    for sign, brackets in TY_MONOMIALS:
        prod = Fraction(sign)
        for idx in brackets:
            prod *= exact_det([config[i] for i in idx])
        total += prod
    return total


# Base vertices of the normal-form cube: 0 at the origin, 3, 2, 9 the unit
# vectors (homogeneous, last coordinate 1).
_V0 = (Fraction(0), Fraction(0), Fraction(0), Fraction(1))
_V3 = (Fraction(1), Fraction(0), Fraction(0), Fraction(1))
_V2 = (Fraction(0), Fraction(1), Fraction(0), Fraction(1))
_V9 = (Fraction(0), Fraction(0), Fraction(1), Fraction(1))


def exact_cube_closure(v1, v6, v7):
    """Complete the normal-form cube: exact vertex 8.

    v1 lies on the xy-plane, v6 on the xz-plane, v7 on the yz-plane (each a
    rational affine 3-vector or homogeneous 4-vector).  Vertex 8 is the
    intersection of the facet planes through {1,2,7}, {1,3,6} and {6,7,9}.
    """

    def hom(v):
        v = [Fraction(x) for x in v]
        if len(v) == 3:
            v = v + [Fraction(1)]
        if len(v) != 4 or v[3] == 0:
            raise ValueError("vertex must be an affine point")
        return [x / v[3] for x in v]

    p1, p6, p7 = hom(v1), hom(v6), hom(v7)
    plane_a = cross4(p1, _V2, p7)
    plane_b = cross4(p1, _V3, p6)
    plane_c = cross4(p6, p7, _V9)
    v8 = cross4(plane_a, plane_b, plane_c)
    if all(x == 0 for x in v8) or v8[3] == 0:
        raise DegenerateIntersection("facet planes do not meet in an affine point")
    return tuple(x / v8[3] for x in v8)


def random_fraction(rng, lo, hi, max_den=1000):
    """Uniform-ish rational in [lo, hi] with denominator <= max_den."""
    den = int(rng.integers(1, max_den + 1))
    num = int(rng.integers(int(lo * den), int(hi * den) + 1))
    return Fraction(num, den)


def random_rational_point(rng, lo=-10, hi=10):
    return tuple([random_fraction(rng, lo, hi) for _ in range(3)] + [Fraction(1)])


def _positive_fraction(rng, spread):
    # Floor at 1/5 of the spread: coordinates arbitrarily close to zero
    # flatten the cube toward a degenerate (noise-hypersensitive) shape.
    s = Fraction(spread).limit_denominator(10**6)
    return Fraction(int(rng.integers(200, 1001)), 1000) * s


def normal_form_cube(rng, spread=1):
    """Sample the normal-form cube: returns 8 rational homogeneous vertices
    in label order 0,1,2,3,6,7,8,9."""
    v1 = (_positive_fraction(rng, spread), _positive_fraction(rng, spread), Fraction(0))
    v6 = (_positive_fraction(rng, spread), Fraction(0), _positive_fraction(rng, spread))
    v7 = (Fraction(0), _positive_fraction(rng, spread), _positive_fraction(rng, spread))
    one = Fraction(1)
    v8 = exact_cube_closure(v1, v6, v7)
    return (
        _V0,
        (v1[0], v1[1], v1[2], one),
        _V2,
        _V3,
        (v6[0], v6[1], v6[2], one),
        (v7[0], v7[1], v7[2], one),
        v8,
        _V9,
    )


def _random_affine(rng, max_tries=200):
    for _ in range(max_tries):
        A = [
            [Fraction(int(rng.integers(-1000, 1001)), 1000) for _ in range(3)]
            for _ in range(3)
        ]
        if exact_det(A) == 0:
            continue
        # Reject ill-conditioned maps: they squash the cube toward a
        # degenerate configuration.  The check is float-only; the map
        # itself stays exact.
        sv = _np_svdvals(A)
        if sv[-1] >= sv[0] / 4.0:
            return A
    raise DegenerateIntersection("could not sample an invertible affine map")


def random_rational_cube(rng, spread=1, apply_map=True):
    """Random combinatorial-cube candidate with exact rational vertices,
    affinely mapped into the box [-1, 1]^3.

    Facet coplanarity holds exactly by construction; convexity is not
    checked here (callers reject on the floating-point incidence test).
    """
    verts = normal_form_cube(rng, spread=spread)
    pts = [list(v[:3]) for v in verts]
    if apply_map:
        A = _random_affine(rng)
        pts = [
            [sum(A[i][j] * p[j] for j in range(3)) for i in range(3)] for p in pts
        ]
    # Affine fit into [-1, 1]^3, one scale per axis.
    out = [[Fraction(0)] * 3 for _ in range(8)]
    for ax in range(3):
        vals = [p[ax] for p in pts]
        lo, hi = min(vals), max(vals)
        if hi == lo:
            raise DegenerateIntersection("flat cube candidate")
        for k, p in enumerate(pts):
            out[k][ax] = 2 * (p[ax] - lo) / (hi - lo) - 1
    return tuple(tuple(p) + (Fraction(1),) for p in out)


def vanishing_certificate(rng, trials=100, controls=20):
    """Randomized certificate that the bracket invariant vanishes on cubes.

    Evaluates the exact invariant on random rational cubes (alternating
    normal-form and affinely mapped samples) with random rational focal
    points, checks the exact Veronese rank bound, and evaluates perturbed
    non-cube controls that must give a nonzero invariant.

    Returns a dict with counts: cube trials where the invariant vanished
    and the rank stayed <= 7, and controls where it did not vanish.
    """
    vanished = 0
    rank_ok = 0
    observed_ranks = []
    for i in range(trials):
        cube = random_rational_cube(rng, apply_map=bool(i % 2))
        f1 = random_rational_point(rng)
        f2 = random_rational_point(rng)
        config = exact_config_ten(cube, f1, f2)
        if exact_turnbull_young(config) == 0:
            vanished += 1
        r = exact_rank(exact_veronese_matrix(cube))
        observed_ranks.append(r)
        if r <= 7:
            rank_ok += 1
    nonzero_controls = 0
    for _ in range(controls):
        cube = list(random_rational_cube(rng))
        # Knock vertex 8 (tuple position 6) off its three facet planes.
        v = list(cube[6])
        for ax in range(3):
            v[ax] += random_fraction(rng, 1, 3) / 7
        cube[6] = tuple(v)
        f1 = random_rational_point(rng)
        f2 = random_rational_point(rng)
        if exact_turnbull_young(exact_config_ten(cube, f1, f2)) != 0:
            nonzero_controls += 1
    return {
        "trials": trials,
        "vanished": vanished,
        "rank_ok": rank_ok,
        "observed_ranks": observed_ranks,
        "controls": controls,
        "nonzero_controls": nonzero_controls,
    }


def exact_config_ten(cube_vertices, f1, f2):
    """Labeled 10-point rational configuration from cube vertices + focals."""
    config = [None] * 10
    for lab, v in zip(CUBE_LABELS, cube_vertices):
        config[lab] = tuple(Fraction(x) for x in v)
    config[4] = tuple(Fraction(x) for x in f1)
    config[5] = tuple(Fraction(x) for x in f2)
    return config
