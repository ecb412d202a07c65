"""Finite optimal transport: couplings composed by disintegration, the
transport norm, Lipschitz seminorms, and exact Kantorovich duality.

Plans over a finite metric space form a category with an involutive
inverse (transposition).  It is deliberately NOT a groupoid: gamma^-1
composed with gamma is usually not an identity plan, and the plans of
the form h^-1 h include fat things like the quarter-uniform plan on two
points.  Everything here is exact Fraction arithmetic; the LP solver is
a small two-phase simplex with Bland's rule, so the Kantorovich duality
gap comes out identically zero rather than merely small.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .constructions import FiniteMetricSpace
from .core import (
    CategoryWithInverses,
    LawCheck,
    SeminormFamily,
    ValidationReport,
    as_fraction,
)


class MarginalMismatch(ValueError):
    """Raised when two plans are composed but the middle marginals differ.

    Carries the first offending point index; plans are never renormalized
    to force composability."""

    def __init__(self, index, left, right):
        self.index = index
        self.left = left
        self.right = right
        super().__init__(
            f"middle marginals differ at point index {index}: "
            f"{left} != {right}"
        )


# ---------------------------------------------------------------------------
# measures and couplings


@dataclass
class Measure:
    """A probability measure on a finite metric space, exact weights."""

    space: FiniteMetricSpace
    weights: tuple

    def __post_init__(self):
        w = tuple(as_fraction(v) for v in self.weights)
        if len(w) != self.space.n_points():
            raise ValueError(
                f"{len(w)} weights for {self.space.n_points()} points"
            )
        for i, v in enumerate(w):
            if v < 0:
                raise ValueError(f"negative mass {v} at point index {i}")
        total = sum(w)
        if total != 1:
            raise ValueError(f"total mass {total} != 1")
        self.weights = w

    def __getitem__(self, i):
        return self.weights[i]

    def support(self) -> list:
        return [i for i, v in enumerate(self.weights) if v > 0]

    def full_support(self) -> bool:
        return all(v > 0 for v in self.weights)

    def to_json(self):
        return [str(v) for v in self.weights]


@dataclass
class Coupling:
    """A transport plan: joint matrix whose marginals are the endpoint
    measures.  Rows are the first (source) marginal, columns the second.

    Declared marginals are optional; when given they are checked against
    the row/column sums exactly, mismatches report the first offending
    coordinate.
    """

    space: FiniteMetricSpace
    gamma: tuple
    mu: Measure | None = None
    nu: Measure | None = None

    def __post_init__(self):
        n = self.space.n_points()
        g = tuple(tuple(as_fraction(v) for v in row) for row in self.gamma)
        if len(g) != n or any(len(row) != n for row in g):
            raise ValueError("coupling matrix is not n x n")
        for row in g:
            for v in row:
                if v < 0:
                    raise ValueError(f"negative coupling entry {v}")
        self.gamma = g
        rows = tuple(sum(row) for row in g)
        cols = tuple(sum(g[i][j] for i in range(n)) for j in range(n))
        if self.mu is None:
            self.mu = Measure(self.space, rows)  # checks total mass 1
        else:
            _match_weights("first marginal", self.mu.weights, rows)
        if self.nu is None:
            self.nu = Measure(self.space, cols)
        else:
            _match_weights("second marginal", self.nu.weights, cols)

    def __eq__(self, other):
        return (
            isinstance(other, Coupling)
            and self.space == other.space
            and self.gamma == other.gamma
        )

    def support(self) -> list:
        """Occupied (row, column) pairs."""
        n = self.space.n_points()
        return [
            (x, y)
            for x in range(n)
            for y in range(n)
            if self.gamma[x][y] > 0
        ]

    def to_json(self):
        return {
            "space": self.space.to_json(),
            "mu": self.mu.to_json(),
            "nu": self.nu.to_json(),
            "gamma": [[str(v) for v in row] for row in self.gamma],
        }

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        space = FiniteMetricSpace.from_json(data["space"])
        mu = Measure(space, data["mu"]) if "mu" in data else None
        nu = Measure(space, data["nu"]) if "nu" in data else None
        return cls(space, data["gamma"], mu=mu, nu=nu)


def _match_weights(what, declared, computed):
    for i, (a, b) in enumerate(zip(declared, computed)):
        if a != b:
            raise ValueError(
                f"declared {what} differs from the matrix at point index "
                f"{i}: {a} != {b}"
            )


def _same_space(a, b):
    if a.space != b.space:
        raise ValueError("operands live on different spaces")


# plan constructors


def diag_plan(mu: Measure) -> Coupling:
    """The identity plan at mu: all mass stays put."""
    n = mu.space.n_points()
    g = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        g[i][i] = mu.weights[i]
    return Coupling(mu.space, tuple(tuple(r) for r in g), mu=mu, nu=mu)


def product_plan(mu: Measure, nu: Measure) -> Coupling:
    """The independent coupling mu (x) nu."""
    _same_space(mu, nu)
    g = tuple(
        tuple(a * b for b in nu.weights) for a in mu.weights
    )
    return Coupling(mu.space, g, mu=mu, nu=nu)


@dataclass
class MapPlan:
    """A transport map together with the measure it pushes: the pair
    (f, mu).  f is a tuple of point indices, total on the support of mu
    (entries off the support may be None)."""

    f: tuple
    mu: Measure

    def __post_init__(self):
        n = self.mu.space.n_points()
        f = tuple(self.f)
        if len(f) != n:
            raise ValueError(f"map has {len(f)} entries for {n} points")
        for x in self.mu.support():
            if f[x] is None or not (0 <= f[x] < n):
                raise ValueError(
                    f"map undefined or out of range at support point {x}"
                )
        self.f = f

    def coupling(self) -> Coupling:
        return map_plan(self.f, self.mu)

    def push_forward(self) -> Measure:
        return push_forward(self.f, self.mu)


def map_plan(f, mu: Measure) -> Coupling:
    """The plan induced by a transport map: gamma(x, y) = mu(x) [y = f(x)].

    f may be a callable on point indices or a sequence; it only has to be
    defined on the support of mu."""
    n = mu.space.n_points()
    fx = [f(x) if callable(f) else f[x] for x in range(n)]
    g = [[Fraction(0)] * n for _ in range(n)]
    for x in mu.support():
        y = fx[x]
        if y is None or not (0 <= y < n):
            raise ValueError(f"map undefined at support point {x}")
        g[x][y] += mu.weights[x]
    return Coupling(mu.space, tuple(tuple(r) for r in g), mu=mu)


def push_forward(f, mu: Measure) -> Measure:
    """The image measure f # mu."""
    n = mu.space.n_points()
    w = [Fraction(0)] * n
    for x in mu.support():
        y = f(x) if callable(f) else f[x]
        w[y] += mu.weights[x]
    return Measure(mu.space, tuple(w))


# ---------------------------------------------------------------------------
# the category operations


def compose_plans(gamma: Coupling, gamma_prime: Coupling) -> Coupling:
    """Compose two plans: gamma first, then gamma_prime.

    Returns the plan whose entry at (x, z) is
        sum over y with nu(y) > 0 of  gamma(x,y) gamma'(y,z) / nu(y),
    where nu is the shared middle marginal — the finite disintegration:
    condition gamma on its second coordinate, then average gamma' rows.
    Conditionals are only defined on the support of nu; zero-mass middle
    points carry no mass in either factor, so they drop out.
    """
    _same_space(gamma, gamma_prime)
    nu = gamma.nu.weights
    mu_p = gamma_prime.mu.weights
    for i, (a, b) in enumerate(zip(nu, mu_p)):
        if a != b:
            raise MarginalMismatch(i, a, b)
    n = gamma.space.n_points()
    out = [[Fraction(0)] * n for _ in range(n)]
    for y in range(n):
        if nu[y] == 0:
            continue
        for x in range(n):
            gxy = gamma.gamma[x][y]
            if gxy == 0:
                continue
            w = gxy / nu[y]
            row = gamma_prime.gamma[y]
            for z in range(n):
                if row[z]:
                    out[x][z] += w * row[z]
    return Coupling(
        gamma.space, tuple(tuple(r) for r in out),
        mu=gamma.mu, nu=gamma_prime.nu,
    )


def inverse_plan(gamma: Coupling) -> Coupling:
    """Transpose: run the plan backwards."""
    n = gamma.space.n_points()
    g = tuple(
        tuple(gamma.gamma[y][x] for y in range(n)) for x in range(n)
    )
    return Coupling(gamma.space, g, mu=gamma.nu, nu=gamma.mu)


def norm_d(gamma: Coupling) -> Fraction:
    """Mean displacement of the plan: the integral of d against gamma."""
    d = gamma.space.dist
    total = Fraction(0)
    for x, y in gamma.support():
        total += d[x][y] * gamma.gamma[x][y]
    return total


def lip1_witness(space: FiniteMetricSpace, values):
    """None if the values are 1-Lipschitz, else the first violating
    ordered pair (x, y)."""
    n = space.n_points()
    for x in range(n):
        for y in range(n):
            if x != y and values[x] - values[y] > space.dist[x][y]:
                return (x, y)
    return None


@dataclass
class LipFunction:
    """A 1-Lipschitz potential, validated on construction."""

    space: FiniteMetricSpace
    values: tuple

    def __post_init__(self):
        v = tuple(as_fraction(x) for x in self.values)
        if len(v) != self.space.n_points():
            raise ValueError("one value per point, please")
        w = lip1_witness(self.space, v)
        if w is not None:
            x, y = w
            raise ValueError(
                f"not 1-Lipschitz: u[{x}] - u[{y}] = {v[x] - v[y]} "
                f"> d = {self.space.dist[x][y]}"
            )
        self.values = v

    def __getitem__(self, i):
        return self.values[i]


def seminorm_rho(u, gamma: Coupling) -> Fraction:
    """The seminorm induced by a 1-Lipschitz potential u:
    |integral of u(x) - u(y) against gamma|.

    Because the integrand splits, this only sees the marginals:
    rho_u(gamma) = |int u d(mu) - int u d(nu)|.  The full sum is used
    anyway — it is the definition, and it is cheap."""
    if not isinstance(u, LipFunction):
        u = LipFunction(gamma.space, tuple(u))
    total = Fraction(0)
    for x, y in gamma.support():
        total += (u[x] - u[y]) * gamma.gamma[x][y]
    return abs(total)


def is_invtrans(gamma: Coupling):
    """Decide whether the plan is an invertible transport: induced by a
    map whose inverse plan is again induced by a map.

    Finite criterion: every occupied row and every occupied column of
    the matrix holds exactly one entry.  Returns the witness pair
    (forward MapPlan, backward MapPlan) or None.  Equivalent dual route
    (tested elsewhere): both gamma^-1 o gamma = diag(mu) and
    gamma o gamma^-1 = diag(nu)."""
    n = gamma.space.n_points()
    rows = [[y for y in range(n) if gamma.gamma[x][y] > 0] for x in range(n)]
    cols = [[x for x in range(n) if gamma.gamma[x][y] > 0] for y in range(n)]
    if any(len(r) > 1 for r in rows) or any(len(c) > 1 for c in cols):
        return None
    f = tuple(r[0] if r else None for r in rows)
    g = tuple(c[0] if c else None for c in cols)
    return (MapPlan(f, gamma.mu), MapPlan(g, gamma.nu))


# ---------------------------------------------------------------------------
# exact LP: two-phase simplex with Bland's rule


def _pivot(rows, obj, basis, r, c):
    piv = rows[r][c]
    rows[r] = [v / piv for v in rows[r]]
    prow = rows[r]
    for i in range(len(rows)):
        if i != r and rows[i][c] != 0:
            f = rows[i][c]
            rows[i] = [a - f * b for a, b in zip(rows[i], prow)]
    if obj[c] != 0:
        f = obj[c]
        obj[:] = [a - f * b for a, b in zip(obj, prow)]
    basis[r] = c


def _run_simplex(rows, obj, basis, ncols):
    """Minimize in place.  Bland's rule both ways (smallest entering
    index; leaving row by minimum ratio, ties to the smallest basis
    index), which is what makes termination a theorem instead of a
    hope."""
    while True:
        col = None
        for j in range(ncols):
            if obj[j] < 0:
                col = j
                break
        if col is None:
            return
        r_best, t_best = None, None
        for r in range(len(rows)):
            a = rows[r][col]
            if a > 0:
                t = rows[r][-1] / a
                if (
                    t_best is None
                    or t < t_best
                    or (t == t_best and basis[r] < basis[r_best])
                ):
                    r_best, t_best = r, t
        if r_best is None:
            raise ArithmeticError("LP is unbounded")
        _pivot(rows, obj, basis, r_best, col)


def solve_lp(A, b, c):
    """min c.x subject to A x = b, x >= 0, all exact rationals.

    Returns (optimal value, x).  Raises ArithmeticError on infeasible or
    unbounded input.  Redundant equality rows are tolerated (phase one
    discards them)."""
    m = len(A)
    n = len(A[0]) if m else 0
    A = [[Fraction(v) for v in row] for row in A]
    b = [Fraction(v) for v in b]
    c = [Fraction(v) for v in c]
    for i in range(m):
        if b[i] < 0:
            A[i] = [-v for v in A[i]]
            b[i] = -b[i]

    # phase one: artificial basis, minimize the artificial mass
    rows = [
        A[i] + [Fraction(int(i == j)) for j in range(m)] + [b[i]]
        for i in range(m)
    ]
    basis = [n + i for i in range(m)]
    obj = [Fraction(0)] * n + [Fraction(1)] * m + [Fraction(0)]
    for row in rows:
        obj = [a - v for a, v in zip(obj, row)]
    _run_simplex(rows, obj, basis, n + m)
    if -obj[-1] != 0:
        raise ArithmeticError(f"LP infeasible (artificial mass {-obj[-1]})")

    # drive leftover zero-level artificials out; drop redundant rows
    keep = []
    for r in range(m):
        if basis[r] >= n:
            col = next((j for j in range(n) if rows[r][j] != 0), None)
            if col is None:
                continue  # 0 = 0 row, redundant constraint
            _pivot(rows, obj, basis, r, col)
        keep.append(r)
    rows = [rows[r] for r in keep]
    basis = [basis[r] for r in keep]

    # phase two: the real objective, original columns only
    obj = list(c) + [Fraction(0)] * m + [Fraction(0)]
    for r, row in enumerate(rows):
        cb = c[basis[r]]
        if cb != 0:
            obj = [a - cb * v for a, v in zip(obj, row)]
    _run_simplex(rows, obj, basis, n)
    x = [Fraction(0)] * n
    for r, bi in enumerate(basis):
        if bi < n:
            x[bi] = rows[r][-1]
    return -obj[-1], x


@dataclass
class KantorovichResult:
    """Optimal plan, optimal potential, and the two LP values (equal)."""

    plan: Coupling
    potential: LipFunction
    primal: Fraction
    dual: Fraction

    def __iter__(self):
        return iter((self.plan, self.potential, self.primal, self.dual))


def kantorovich(mu: Measure, nu: Measure) -> KantorovichResult:
    """Solve both sides of the finite transport problem exactly.

    Primal: minimize the mean displacement over all couplings of
    (mu, nu) — an LP over the transportation polytope.  Dual: maximize
    the mean of u against mu - nu over 1-Lipschitz potentials u.  Both
    are solved independently by the exact simplex and the duality gap is
    asserted to be identically zero, as is the complementary-slackness
    identity rho_{u*}(gamma*) = d(gamma*)."""
    _same_space(mu, nu)
    space = mu.space
    n = space.n_points()
    d = space.dist

    # primal: variables gamma[x][y] flattened as x * n + y; row sums
    # equal mu, column sums equal nu (last column constraint is implied
    # by the others, so it is dropped)
    A, b = [], []
    for x in range(n):
        row = [Fraction(0)] * (n * n)
        for y in range(n):
            row[x * n + y] = Fraction(1)
        A.append(row)
        b.append(mu.weights[x])
    for y in range(n - 1):
        row = [Fraction(0)] * (n * n)
        for x in range(n):
            row[x * n + y] = Fraction(1)
        A.append(row)
        b.append(nu.weights[y])
    cost = [d[x][y] for x in range(n) for y in range(n)]
    primal, sol = solve_lp(A, b, cost)
    g = tuple(
        tuple(sol[x * n + y] for y in range(n)) for x in range(n)
    )
    plan = Coupling(space, g, mu=mu, nu=nu)

    # dual: maximize sum_x u(x) (mu(x) - nu(x)) with u(x) - u(y) <= d(x,y)
    # for every ordered pair; free u splits as p - q, slacks close the gap
    pairs = [(x, y) for x in range(n) for y in range(n) if x != y]
    nvars = 2 * n + len(pairs)
    A2, b2 = [], []
    for k, (x, y) in enumerate(pairs):
        row = [Fraction(0)] * nvars
        row[x] += 1
        row[n + x] -= 1
        row[y] -= 1
        row[n + y] += 1
        row[2 * n + k] = Fraction(1)
        A2.append(row)
        b2.append(d[x][y])
    cost2 = [nu.weights[x] - mu.weights[x] for x in range(n)]
    cost2 += [mu.weights[x] - nu.weights[x] for x in range(n)]
    cost2 += [Fraction(0)] * len(pairs)
    neg_dual, sol2 = solve_lp(A2, b2, cost2)
    dual = -neg_dual
    u = LipFunction(
        space, tuple(sol2[x] - sol2[n + x] for x in range(n))
    )

    if primal != dual:
        raise AssertionError(
            f"duality gap is not zero: primal {primal} != dual {dual} "
            "(this is an internal error: both LPs are exact)"
        )
    if seminorm_rho(u, plan) != norm_d(plan):
        raise AssertionError(
            "complementary slackness failed: rho_u*(gamma*) != d(gamma*)"
        )
    return KantorovichResult(plan, u, primal, dual)


def wasserstein(mu: Measure, nu: Measure) -> Fraction:
    return kantorovich(mu, nu).primal


# ---------------------------------------------------------------------------
# the Lip1 polytope


def _solve_square(M, rhs):
    """Exact Gaussian elimination for a square system; None if singular."""
    k = len(M)
    M = [list(row) + [r] for row, r in zip(M, rhs)]
    for col in range(k):
        piv = next((r for r in range(col, k) if M[r][col] != 0), None)
        if piv is None:
            return None
        M[col], M[piv] = M[piv], M[col]
        pv = M[col][col]
        M[col] = [v / pv for v in M[col]]
        for r in range(k):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [a - f * b for a, b in zip(M[r], M[col])]
    return [M[r][k] for r in range(k)]


def lip1_vertices(space: FiniteMetricSpace) -> list:
    """All vertices of the 1-Lipschitz polytope, pinned by u(x0) = 0.

    The polytope {u : u(x0) = 0, u(x) - u(y) <= d(x,y)} lives in
    dimension n-1; vertices are enumerated as feasible solutions of
    (n-1)-subsets of the difference constraints turned into equalities.
    Exponential in n, hence guarded: n <= 5."""
    n = space.n_points()
    if n > 5:
        raise ValueError(
            f"vertex enumeration is exponential; refusing n = {n} > 5"
        )
    if n == 1:
        return [(Fraction(0),)]
    cons = [(x, y) for x in range(n) for y in range(n) if x != y]

    def row(x, y):
        r = [Fraction(0)] * (n - 1)
        if x > 0:
            r[x - 1] += 1
        if y > 0:
            r[y - 1] -= 1
        return r

    verts = set()
    for sub in combinations(cons, n - 1):
        sol = _solve_square(
            [row(*c) for c in sub], [space.dist[x][y] for x, y in sub]
        )
        if sol is None:
            continue
        u = (Fraction(0),) + tuple(sol)
        if all(u[x] - u[y] <= space.dist[x][y] for x, y in cons):
            verts.add(u)
    return sorted(verts)


def lip1_vertex_seminorms(space: FiniteMetricSpace, plans) -> SeminormFamily:
    """The seminorm family indexed by the Lip1 vertices, tabulated on a
    finite list of plans (for the category bridge)."""
    verts = lip1_vertices(space)
    names = ["u=(" + ",".join(str(v) for v in u) + ")" for u in verts]
    values = [
        [seminorm_rho(LipFunction(space, u), g) for g in plans]
        for u in verts
    ]
    return SeminormFamily(names, values)


# ---------------------------------------------------------------------------
# random material


def random_measure(
    space: FiniteMetricSpace, rng, full_support: bool = True
) -> Measure:
    n = space.n_points()
    w = [
        Fraction(rng.randint(1, 12)) if full_support or rng.random() < 0.75
        else Fraction(0)
        for _ in range(n)
    ]
    if sum(w) == 0:
        w[rng.randrange(n)] = Fraction(1)
    total = sum(w)
    return Measure(space, tuple(v / total for v in w))


def random_coupling_from(
    mu: Measure, rng, full_support: bool = True
) -> Coupling:
    """A random plan with first marginal mu: each support row spreads its
    mass by random positive rational proportions."""
    n = mu.space.n_points()
    g = [[Fraction(0)] * n for _ in range(n)]
    for x in mu.support():
        props = [
            Fraction(rng.randint(1, 12))
            if full_support or rng.random() < 0.7
            else Fraction(0)
            for _ in range(n)
        ]
        if sum(props) == 0:
            props[rng.randrange(n)] = Fraction(1)
        total = sum(props)
        for y in range(n):
            g[x][y] = mu.weights[x] * props[y] / total
    return Coupling(mu.space, tuple(tuple(r) for r in g), mu=mu)


def random_coupling_between(mu: Measure, nu: Measure, rng) -> Coupling:
    """A random plan with BOTH marginals prescribed.  Visit the cells in a
    random order assigning each a random fraction of the feasible mass,
    then zero out whatever is left with a northwest-corner sweep (the
    leftover row and column masses always balance, so the sweep lands
    exactly)."""
    n = mu.space.n_points()
    rows = list(mu.weights)
    cols = list(nu.weights)
    g = [[Fraction(0)] * n for _ in range(n)]
    cells = [(x, y) for x in range(n) for y in range(n)]
    rng.shuffle(cells)
    for x, y in cells:
        cap = min(rows[x], cols[y])
        if cap == 0:
            continue
        t = cap * Fraction(rng.randint(0, 8), 8)
        g[x][y] += t
        rows[x] -= t
        cols[y] -= t
    y = 0
    for x in range(n):
        while rows[x] > 0:
            t = min(rows[x], cols[y])
            g[x][y] += t
            rows[x] -= t
            cols[y] -= t
            if cols[y] == 0 and rows[x] > 0:
                y += 1
    return Coupling(mu.space, tuple(tuple(r) for r in g), mu=mu, nu=nu)


def random_composable_chain(space, rng, length=3, full_support=True):
    """length plans where each one's second marginal is the next one's
    first, ready for associativity checks."""
    mu = random_measure(space, rng, full_support=full_support)
    out = []
    for _ in range(length):
        g = random_coupling_from(mu, rng, full_support=full_support)
        out.append(g)
        mu = g.nu
    return out


# ---------------------------------------------------------------------------
# the fixture category and the bridge to CategoryWithInverses


def category_from_plans(space, plans, labels=None):
    """Tabulate a finite, composition-closed family of plans as a
    CategoryWithInverses (compose key (g, h) means: h first, then g —
    the groupoid convention used by the core tables).

    Raises if the family is not closed under composition or inverse."""
    idx = {}
    for i, p in enumerate(plans):
        idx[p.gamma] = i
    if labels is None:
        labels = [f"plan{i}" for i in range(len(plans))]
    compose, inverse = {}, []
    for i, p in enumerate(plans):
        ip = inverse_plan(p)
        if ip.gamma not in idx:
            raise ValueError(f"family not closed under inverse at {labels[i]}")
        inverse.append(idx[ip.gamma])
    for i, g in enumerate(plans):
        for j, h in enumerate(plans):
            try:
                gh = compose_plans(h, g)  # h first, then g
            except MarginalMismatch:
                continue
            if gh.gamma not in idx:
                raise ValueError(
                    f"family not closed: {labels[j]} then {labels[i]}"
                )
            compose[(i, j)] = idx[gh.gamma]
    return CategoryWithInverses(
        arrows=list(labels),
        compose=compose,
        inverse=inverse,
        norm=[norm_d(p) for p in plans],
        seminorms=lip1_vertex_seminorms(space, plans),
    )


def two_point_space() -> FiniteMetricSpace:
    return FiniteMetricSpace(points=[0, 1], dist=[[0, 1], [1, 0]])


def transport_category_fixture():
    """A closed seven-plan family on the two-point space, as a category.

    Contains the three Pi(mu, mu) plans for the fair measure mu (the
    identity, the swap, and the quarter-uniform plan), an invertible
    plan s between two lopsided measures, its transpose, and the two
    lopsided identities (which s and s^T produce as h^-1 h).  The
    quarter-uniform plan is its own h^-1 h with norm 1/2 — the standing
    counterexample to reading the strict groupoid norm clause into
    transport.  Returns (category, plans, labels)."""
    X = two_point_space()
    half = Fraction(1, 2)
    quarter = Fraction(1, 4)
    mu = Measure(X, (half, half))
    nu = Measure(X, (quarter, 3 * quarter))
    nu_t = Measure(X, (3 * quarter, quarter))
    plans = [
        diag_plan(mu),
        Coupling(X, ((0, half), (half, 0))),            # swap
        product_plan(mu, mu),                           # quarter-uniform
        Coupling(X, ((0, quarter), (3 * quarter, 0))),  # s: nu -> nu_t
        Coupling(X, ((0, 3 * quarter), (quarter, 0))),  # s^T
        diag_plan(nu),
        diag_plan(nu_t),
    ]
    labels = [
        "id(1/2,1/2)", "swap", "quarter-uniform",
        "s", "s^T", "id(1/4,3/4)", "id(3/4,1/4)",
    ]
    return category_from_plans(X, plans, labels), plans, labels


# ---------------------------------------------------------------------------
# the property battery


def check_transport(space=None, seed=0, samples=40) -> ValidationReport:
    """Run the transport laws on one space with seeded random plans.

    Covers: composition (identities, associativity with and without
    zero-mass points, marginal-mismatch rejection), the inverse
    involution and antimorphism, norm clauses in the category form
    (zero exactly on identity plans, subadditive, inversion invariant),
    seminorm clauses and domination d >= rho_u at the Lip1 vertices,
    separability of distinct measures by the dual value, the map-plan
    composition and equality laws, and the invertible-plan criterion
    against its two-sided dual route."""
    if space is None:
        space = two_point_space()
    rng = random.Random(seed)
    n = space.n_points()
    rep = ValidationReport(subject=f"transport plans on {n} points")

    ident = LawCheck("identity plans are neutral")
    assoc = LawCheck("composition is associative (full support)")
    assoc0 = LawCheck("composition is associative (zero-mass points)")
    mism = LawCheck("marginal mismatch is rejected, never renormalized")
    invo = LawCheck("inverse is an involution with d(inv g) = d(g)")
    anti = LawCheck("inverse is an antimorphism")
    nzero = LawCheck("d = 0 exactly on identity plans")
    nsub = LawCheck("d is subadditive under composition")
    dom = LawCheck("d >= rho_u at every Lip1 vertex")
    rsub = LawCheck("each rho_u is subadditive and inversion invariant")
    sep = LawCheck("distinct endpoint measures are separated by some rho_u")
    mapc = LawCheck("map plans compose like their maps")
    mapeq = LawCheck("map plans agree iff the maps agree a.e.")
    itr = LawCheck("invertible-transport criterion matches the dual route")
    twon = LawCheck("d(inv g o g) <= 2 d(g)")
    rep.add(
        ident, assoc, assoc0, mism, invo, anti, nzero, nsub, dom, rsub,
        sep, mapc, mapeq, itr, twon,
    )

    verts = None
    if n <= 5:
        verts = [LipFunction(space, u) for u in lip1_vertices(space)]

    def maybe_zero_mass(full):
        return random_composable_chain(space, rng, 3, full_support=full)

    for k in range(samples):
        full = k % 3 != 2
        a, bq, cq = maybe_zero_mass(full)

        left = compose_plans(compose_plans(a, bq), cq)
        right = compose_plans(a, compose_plans(bq, cq))
        law = assoc if full else assoc0
        law.tick()
        if left.gamma != right.gamma:
            law.fail(sample=k, left=left.gamma, right=right.gamma)

        ident.tick(2)
        if compose_plans(a, diag_plan(a.nu)).gamma != a.gamma:
            ident.fail(side="post", sample=k)
        if compose_plans(diag_plan(a.mu), a).gamma != a.gamma:
            ident.fail(side="pre", sample=k)

        ia = inverse_plan(a)
        invo.tick()
        if inverse_plan(ia).gamma != a.gamma or norm_d(ia) != norm_d(a):
            invo.fail(sample=k)
        anti.tick()
        ab = compose_plans(a, bq)
        if inverse_plan(ab).gamma != compose_plans(
            inverse_plan(bq), ia
        ).gamma:
            anti.fail(sample=k)

        nzero.tick()
        is_identity = a.gamma == diag_plan(a.mu).gamma
        if (norm_d(a) == 0) != is_identity:
            nzero.fail(sample=k, d=str(norm_d(a)))
        nsub.tick()
        if norm_d(ab) > norm_d(a) + norm_d(bq):
            nsub.fail(sample=k)

        loop = compose_plans(a, ia)
        twon.tick()
        if norm_d(loop) > 2 * norm_d(a):
            twon.fail(sample=k)

        itr.tick()
        witness = is_invtrans(a)
        diag_both = (
            loop.gamma == diag_plan(a.mu).gamma
            and compose_plans(ia, a).gamma == diag_plan(a.nu).gamma
        )
        if (witness is not None) != diag_both:
            itr.fail(sample=k, criterion=witness is not None)
        if witness is not None:
            f, g = witness
            if inverse_plan(f.coupling()).gamma != g.coupling().gamma:
                itr.fail(sample=k, note="backward map is not the inverse")

        if verts is not None:
            for u in verts:
                dom.tick()
                if norm_d(a) < seminorm_rho(u, a):
                    dom.fail(sample=k, u=u.values)
                rsub.tick(2)
                if seminorm_rho(u, ab) > seminorm_rho(u, a) + seminorm_rho(
                    u, bq
                ):
                    rsub.fail(sample=k, u=u.values, side="subadditive")
                if seminorm_rho(u, ia) != seminorm_rho(u, a):
                    rsub.fail(sample=k, u=u.values, side="inversion")

        mism.tick()
        shifted = random_measure(space, rng)
        if shifted.weights != a.nu.weights:
            try:
                compose_plans(a, random_coupling_from(shifted, rng))
                mism.fail(sample=k, note="mismatch accepted")
            except MarginalMismatch as e:
                if a.nu.weights[e.index] == shifted.weights[e.index]:
                    mism.fail(sample=k, note="wrong offending index")

        # map plans
        f = tuple(rng.randrange(n) for _ in range(n))
        g = tuple(rng.randrange(n) for _ in range(n))
        mu = random_measure(space, rng, full_support=(k % 2 == 0))
        gf = tuple(g[f[x]] for x in range(n))
        mapc.tick()
        if compose_plans(
            map_plan(f, mu), map_plan(g, push_forward(f, mu))
        ).gamma != map_plan(gf, mu).gamma:
            mapc.fail(sample=k, f=f, g=g)
        mapeq.tick()
        same_ae = all(f[x] == g[x] for x in mu.support())
        if (map_plan(f, mu).gamma == map_plan(g, mu).gamma) != same_ae:
            mapeq.fail(sample=k, f=f, g=g)

    # separability: distinct measures give a positive dual value, and a
    # vertex potential realizes a positive rho_u on every plan between them
    for k in range(6):
        mu = random_measure(space, rng)
        nu = random_measure(space, rng)
        if mu.weights == nu.weights:
            continue
        sep.tick()
        res = kantorovich(mu, nu)
        ok = res.primal > 0
        if verts is not None:
            # rho_u only sees the marginals, so any plan between mu and
            # nu will do as the test subject
            gam = product_plan(mu, nu)
            ok = ok and any(seminorm_rho(u, gam) > 0 for u in verts)
        if not ok:
            sep.fail(mu=mu.weights, nu=nu.weights)
    return rep


def check_kantorovich_duality(space, measures, rng=None) -> ValidationReport:
    """Exact duality on given or random measure pairs: gap identically
    zero, optimal potential 1-Lipschitz (by construction), and the
    optimal plan saturates its own seminorm."""
    rep = ValidationReport(subject=f"duality on {space.n_points()} points")
    gap = LawCheck("primal value = dual value, exactly")
    sat = LawCheck("rho_{u*}(gamma*) = d(gamma*)")
    opt = LawCheck("primal is minimal among sampled couplings")
    rep.add(gap, sat, opt)
    rng = rng or random.Random(11)
    for mu, nu in measures:
        res = kantorovich(mu, nu)
        gap.tick()
        if res.primal != res.dual:
            gap.fail(mu=mu.weights, nu=nu.weights)
        sat.tick()
        if seminorm_rho(res.potential, res.plan) != norm_d(res.plan):
            sat.fail(mu=mu.weights, nu=nu.weights)
        # any coupling with the same marginals must cost at least as much
        for _ in range(8):
            probe = random_coupling_between(mu, nu, rng)
            opt.tick()
            if norm_d(probe) < res.primal:
                opt.fail(mu=mu.weights, nu=nu.weights)
    return rep
