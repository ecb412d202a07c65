"""Normed groupoids presented by finite composition tables.

A groupoid here is "arrows only": a partial composition m(g, h) -- read
right-to-left, h happens first -- and a total involutive inverse.  The
unit arrows are recovered from the data as alpha(a) = m(inv(a), a) and
omega(a) = m(a, inv(a)); an arrow a runs from the object alpha(a) to the
object omega(a), and (g, h) is composable exactly when alpha(g) = omega(h).

A norm is a nonnegative weight on arrows that vanishes exactly on unit
arrows, is subadditive along composition and invariant under inversion.
All finite-table arithmetic is exact (fractions.Fraction).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

MAX_WITNESSES = 10


def as_fraction(value) -> Fraction:
    """Parse a rational from int/str/Fraction.  Floats are refused: table
    data is meant to be exact."""
    if isinstance(value, bool) or isinstance(value, float):
        raise ValueError(f"expected an exact rational, got {value!r}")
    return Fraction(value)


# ---------------------------------------------------------------------------
# reports


@dataclass
class LawCheck:
    """Outcome of checking one law: instance count and counterexamples."""

    law: str
    checked: int = 0
    failures: int = 0
    witnesses: list = field(default_factory=list)
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def tick(self, n: int = 1) -> None:
        self.checked += n

    def fail(self, **data) -> None:
        self.failures += 1
        if len(self.witnesses) < MAX_WITNESSES:
            self.witnesses.append(data)

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        msg = f"[{tag}] {self.law} (checked={self.checked}"
        if self.failures:
            msg += f", failures={self.failures}"
        msg += ")"
        if self.note:
            msg += f"  -- {self.note}"
        if not self.passed and self.witnesses:
            msg += f"\n       witness: {self.witnesses[0]}"
        return msg


@dataclass
class ValidationReport:
    """A bundle of law checks (and, for analytic models, limit estimates)
    about one structure."""

    subject: str
    laws: list = field(default_factory=list)
    limits: list = field(default_factory=list)  # LimitEstimate objects

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.laws) and all(
            e.passed for e in self.limits
        )

    def law(self, name: str) -> LawCheck:
        for c in self.laws:
            if c.law == name:
                return c
        raise KeyError(name)

    def add(self, *checks) -> "ValidationReport":
        self.laws.extend(checks)
        return self

    def merge(self, other: "ValidationReport") -> "ValidationReport":
        self.laws.extend(other.laws)
        self.limits.extend(other.limits)
        return self

    def summary(self) -> str:
        head = f"== {self.subject}: {'PASS' if self.passed else 'FAIL'}"
        lines = [head]
        lines += ["  " + c.line() for c in self.laws]
        lines += ["  " + e.line() for e in self.limits]
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "subject": self.subject,
            "pass": self.passed,
            "laws": [
                {
                    "law": c.law,
                    "pass": c.passed,
                    "checked": c.checked,
                    "failures": c.failures,
                    "witnesses": [repr(w) for w in c.witnesses],
                    "note": c.note,
                }
                for c in self.laws
            ],
            "limits": [e.to_json() for e in self.limits],
        }


# ---------------------------------------------------------------------------
# finite groupoids


@dataclass
class FiniteGroupoid:
    """A finite groupoid given by tables.

    arrows   -- list of arrow labels (strings)
    compose  -- dict (g, h) -> m(g, h) on arrow indices; partial
    inverse  -- list, inverse[g] = index of g^-1
    norm     -- optional list of Fractions, one per arrow
    """

    arrows: list
    compose: dict
    inverse: list
    norm: list | None = None

    def __post_init__(self):
        n = len(self.arrows)
        if len(set(self.arrows)) != n:
            raise ValueError("duplicate arrow labels")
        if len(self.inverse) != n:
            raise ValueError(
                f"inverse table has {len(self.inverse)} entries for {n} arrows"
            )
        for g, gi in enumerate(self.inverse):
            if not (isinstance(gi, int) and 0 <= gi < n):
                raise ValueError(f"inverse[{g}] = {gi!r} out of range")
        for (g, h), k in self.compose.items():
            for v in (g, h, k):
                if not (isinstance(v, int) and 0 <= v < n):
                    raise ValueError(
                        f"compose entry ({g},{h})->{k} out of range"
                    )
        if self.norm is not None:
            if len(self.norm) != n:
                raise ValueError("norm table length mismatch")
            self.norm = [as_fraction(v) for v in self.norm]
            for g, v in enumerate(self.norm):
                if v < 0:
                    raise ValueError(f"norm[{g}] = {v} is negative")
        self._index = {lbl: i for i, lbl in enumerate(self.arrows)}
        self._alpha = None
        self._omega = None

    # -- basic operations ---------------------------------------------------

    def n_arrows(self) -> int:
        return len(self.arrows)

    def index(self, label) -> int:
        return self._index[label]

    def m(self, g: int, h: int) -> int:
        try:
            return self.compose[(g, h)]
        except KeyError:
            raise ValueError(
                f"arrows not composable: {self.arrows[g]} o {self.arrows[h]}"
            ) from None

    def inv(self, g: int) -> int:
        return self.inverse[g]

    def _units(self):
        if self._alpha is None:
            alpha, omega = [], []
            for g in range(len(self.arrows)):
                a = self.compose.get((self.inverse[g], g))
                w = self.compose.get((g, self.inverse[g]))
                if a is None or w is None:
                    raise ValueError(
                        f"(inv, arrow) pair not composable at {self.arrows[g]}"
                    )
                alpha.append(a)
                omega.append(w)
            self._alpha, self._omega = alpha, omega
        return self._alpha, self._omega

    def alpha(self, g: int) -> int:
        """Source unit arrow of g (an arrow index)."""
        return self._units()[0][g]

    def omega(self, g: int) -> int:
        """Target unit arrow of g."""
        return self._units()[1][g]

    def objects(self) -> list:
        return sorted(set(self._units()[0]))

    def is_unit(self, g: int) -> bool:
        return self.alpha(g) == g

    def d(self, g: int) -> Fraction:
        if self.norm is None:
            raise ValueError("groupoid carries no norm")
        return self.norm[g]

    def arrows_between(self, x: int, y: int) -> list:
        """All arrows with alpha = x and omega = y (unit-arrow indices)."""
        return [
            g
            for g in range(len(self.arrows))
            if self.alpha(g) == x and self.omega(g) == y
        ]

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        out = {
            "arrows": list(self.arrows),
            "compose": [
                [self.arrows[g], self.arrows[h], self.arrows[k]]
                for (g, h), k in sorted(self.compose.items())
            ],
            "inverse": [
                [self.arrows[g], self.arrows[gi]]
                for g, gi in enumerate(self.inverse)
            ],
        }
        if self.norm is not None:
            out["norm"] = {
                self.arrows[g]: str(v) for g, v in enumerate(self.norm)
            }
        return out

    @classmethod
    def from_json(cls, data) -> "FiniteGroupoid":
        if isinstance(data, str):
            data = json.loads(data)
        arrows = list(data["arrows"])
        idx = {lbl: i for i, lbl in enumerate(arrows)}

        def look(lbl):
            if lbl not in idx:
                raise ValueError(f"unknown arrow id {lbl!r}")
            return idx[lbl]

        compose = {}
        for g, h, k in data["compose"]:
            compose[(look(g), look(h))] = look(k)
        inverse = [0] * len(arrows)
        seen = set()
        for g, gi in data["inverse"]:
            inverse[look(g)] = look(gi)
            seen.add(look(g))
        if len(seen) != len(arrows):
            raise ValueError("inverse table does not cover every arrow")
        norm = None
        if "norm" in data:
            norm = [Fraction(0)] * len(arrows)
            for lbl, v in data["norm"].items():
                norm[look(lbl)] = as_fraction(v)
        return cls(arrows, compose, inverse, norm)


# ---------------------------------------------------------------------------
# groupoid laws


def validate_groupoid(G: FiniteGroupoid) -> ValidationReport:
    """Check the groupoid laws on the tables: involution, unit pairs,
    typing of composites, composability = endpoint matching, associativity
    (with its two closure halves) and the cancellation identities."""
    rep = ValidationReport(subject=f"groupoid[{len(G.arrows)} arrows]")
    invo = LawCheck("inverse is an involution")
    pairs = LawCheck("(inv g, g) and (g, inv g) compose")
    typing = LawCheck("composite typing alpha(gh)=alpha(h), omega(gh)=omega(g)")
    match = LawCheck("composability iff alpha(g) = omega(h)")
    assoc = LawCheck("associativity with closure")
    cancel = LawCheck("cancellation (gh)h^-1 = g and g^-1(gh) = h")
    rep.add(invo, pairs, typing, match, assoc, cancel)

    n = len(G.arrows)
    inv = G.inverse
    comp = G.compose

    for g in range(n):
        invo.tick()
        if inv[inv[g]] != g:
            invo.fail(g=G.arrows[g], inv=G.arrows[inv[g]])
        pairs.tick()
        if (inv[g], g) not in comp or (g, inv[g]) not in comp:
            pairs.fail(g=G.arrows[g])

    if not pairs.passed:
        # alpha/omega are not even defined; the remaining laws would crash
        for c in (typing, match, assoc, cancel):
            c.note = "skipped: unit arrows undefined"
        return rep

    alpha = [comp[(inv[g], g)] for g in range(n)]
    omega = [comp[(g, inv[g])] for g in range(n)]

    for g in range(n):
        for h in range(n):
            match.tick()
            if ((g, h) in comp) != (alpha[g] == omega[h]):
                match.fail(g=G.arrows[g], h=G.arrows[h],
                           composable=(g, h) in comp)

    for (g, h), k in comp.items():
        typing.tick()
        if alpha[k] != alpha[h] or omega[k] != omega[g]:
            typing.fail(g=G.arrows[g], h=G.arrows[h], gh=G.arrows[k])
        cancel.tick()
        if comp.get((k, inv[h])) != g or comp.get((inv[g], k)) != h:
            cancel.fail(g=G.arrows[g], h=G.arrows[h])

    by_omega = {}
    for k in range(n):
        by_omega.setdefault(omega[k], []).append(k)

    for (g, h), gh in comp.items():
        for k in by_omega.get(alpha[h], ()):
            # (h, k) is composable whenever alpha(h) = omega(k)
            assoc.tick()
            hk = comp.get((h, k))
            left = comp.get((gh, k))
            if hk is None or left is None or comp.get((g, hk)) != left:
                assoc.fail(g=G.arrows[g], h=G.arrows[h], k=G.arrows[k])
    return rep


def check_norm(G: FiniteGroupoid, norm=None) -> ValidationReport:
    """Norm laws: zero exactly on unit arrows, subadditive, inversion
    invariant."""
    d = G.norm if norm is None else norm
    if d is None:
        raise ValueError("no norm to check")
    rep = ValidationReport(subject="norm")
    zero = LawCheck("d(g) = 0 iff g is a unit arrow")
    sub = LawCheck("d(gh) <= d(g) + d(h)")
    symm = LawCheck("d(inv g) = d(g)")
    rep.add(zero, sub, symm)

    for g in range(len(G.arrows)):
        zero.tick()
        if (d[g] == 0) != G.is_unit(g):
            zero.fail(g=G.arrows[g], d=str(d[g]), unit=G.is_unit(g))
        symm.tick()
        if d[G.inv(g)] != d[g]:
            symm.fail(g=G.arrows[g], d=str(d[g]), d_inv=str(d[G.inv(g)]))
    for (g, h), k in G.compose.items():
        sub.tick()
        if d[k] > d[g] + d[h]:
            sub.fail(g=G.arrows[g], h=G.arrows[h],
                     d_gh=str(d[k]), bound=str(d[g] + d[h]))
    return rep


def check_separability(G: FiniteGroupoid, norm=None) -> ValidationReport:
    """Distinct objects are separated: between two different objects every
    connecting arrow family has strictly positive minimal norm.  (Stated
    separately from the zero-norm law so it can be run on seminormed data.)"""
    d = G.norm if norm is None else norm
    rep = ValidationReport(subject="separability")
    law = LawCheck("distinct objects are norm-separated")
    rep.add(law)
    objs = G.objects()
    for x in objs:
        for y in objs:
            if x >= y:
                continue
            arrows = G.arrows_between(x, y)
            if not arrows:
                continue
            law.tick()
            lo = min(d[g] for g in arrows)
            if lo == 0:
                g0 = next(g for g in arrows if d[g] == 0)
                law.fail(x=G.arrows[x], y=G.arrows[y], arrow=G.arrows[g0])
    return rep


def object_distance(G: FiniteGroupoid) -> dict:
    """Shortest-path distance between objects induced by the norm:
    d_ob(x, y) = min over chains of arrows of the summed norm.  Exact
    Floyd-Warshall over Fractions; unreachable pairs map to None.

    For a validated normed groupoid the minimum over direct arrows already
    realizes the infimum (subadditivity), and tests cross-check that."""
    objs = G.objects()
    dist = {(x, y): (Fraction(0) if x == y else None) for x in objs for y in objs}
    for g in range(len(G.arrows)):
        x, y = G.alpha(g), G.omega(g)
        v = G.d(g)
        cur = dist[(x, y)]
        if cur is None or v < cur:
            dist[(x, y)] = v
    for k in objs:
        for x in objs:
            dxk = dist[(x, k)]
            if dxk is None:
                continue
            for y in objs:
                dky = dist[(k, y)]
                if dky is None:
                    continue
                cand = dxk + dky
                cur = dist[(x, y)]
                if cur is None or cand < cur:
                    dist[(x, y)] = cand
    return dist


def dif(G: FiniteGroupoid, g: int, h: int) -> int:
    """The difference arrow dif(g, h) = g h^-1 of two arrows sharing a
    source object."""
    if G.alpha(g) != G.alpha(h):
        raise ValueError("dif needs arrows with a common source")
    return G.m(g, G.inv(h))


def dtilde(G: FiniteGroupoid, g: int, h: int) -> Fraction:
    """Fiberwise distance d~(g, h) = d(g h^-1)."""
    return G.d(dif(G, g, h))


# ---------------------------------------------------------------------------
# convergence of arrow sequences


class ConvergenceMode(Enum):
    SIMPLE = "simple"
    LEFT = "left"
    RIGHT = "right"


@dataclass
class ConvergenceResult:
    mode: ConvergenceMode
    ok: bool
    residuals: list  # Fraction per step, or None where no witness exists
    note: str = ""
    pairs: list = field(default_factory=list)  # simple mode: (g, h) chosen

    def __bool__(self):
        return self.ok


def converges(G, seq, a, mode=ConvergenceMode.SIMPLE, tol=Fraction(1, 100)):
    """Does the arrow sequence converge to a in the given mode?

    simple: a_n is conjugated onto a by small arrows, residual_n =
            min { d(g) + d(h) : h a_n g = a } over valid decompositions;
    left:   residual_n = d(a_n^-1 a), requires omega(a_n) = omega(a);
    right:  residual_n = d(a_n a^-1), requires alpha(a_n) = alpha(a).

    "Converges" means: every residual in the last quarter of the sequence
    exists and is < tol, and the residuals do not grow (max of the last
    quarter <= max of the first quarter).
    """
    if not seq:
        raise ValueError("empty sequence")
    tol = as_fraction(tol)
    residuals, pairs = [], []
    for an in seq:
        if mode is ConvergenceMode.LEFT:
            r = (
                G.d(G.m(G.inv(an), a))
                if G.omega(an) == G.omega(a)
                else None
            )
            pairs.append(None)
        elif mode is ConvergenceMode.RIGHT:
            r = (
                G.d(G.m(an, G.inv(a)))
                if G.alpha(an) == G.alpha(a)
                else None
            )
            pairs.append(None)
        else:
            r, best = None, None
            for g in range(len(G.arrows)):
                if G.alpha(g) != G.alpha(a) or G.omega(g) != G.alpha(an):
                    continue
                ang = G.m(an, g)
                h = G.m(a, G.inv(ang))
                if G.m(h, ang) != a:  # defensive; true by cancellation
                    continue
                val = G.d(g) + G.d(h)
                if r is None or val < r:
                    r, best = val, (g, h)
            pairs.append(best)
        residuals.append(r)

    q = max(1, len(seq) // 4)
    tail, head = residuals[-q:], residuals[:q]
    ok = all(r is not None and r < tol for r in tail)
    if ok and len(seq) >= 8:
        head_fin = [r for r in head if r is not None]
        if head_fin and max(r for r in tail) > max(head_fin):
            ok = False
    return ConvergenceResult(mode=mode, ok=ok, residuals=residuals,
                             pairs=pairs)


# ---------------------------------------------------------------------------
# morphisms and seminorms


@dataclass
class GroupoidMorphism:
    """Arrow map between finite groupoids (objects ride along)."""

    source: FiniteGroupoid
    target: FiniteGroupoid
    arrow_map: list
    name: str = "F"


def check_morphism(M: GroupoidMorphism) -> ValidationReport:
    rep = ValidationReport(subject=f"morphism {M.name}")
    comp = LawCheck("preserves composition")
    invo = LawCheck("preserves inversion")
    ends = LawCheck("preserves unit arrows / endpoints")
    rep.add(comp, invo, ends)
    F = M.arrow_map
    G, H = M.source, M.target
    for (g, h), k in G.compose.items():
        comp.tick()
        if H.compose.get((F[g], F[h])) != F[k]:
            comp.fail(g=G.arrows[g], h=G.arrows[h])
    for g in range(len(G.arrows)):
        invo.tick()
        if F[G.inv(g)] != H.inv(F[g]):
            invo.fail(g=G.arrows[g])
        ends.tick()
        if F[G.alpha(g)] != H.alpha(F[g]) or F[G.omega(g)] != H.omega(F[g]):
            ends.fail(g=G.arrows[g])
    return rep


@dataclass
class SeminormFamily:
    """A family of seminorms on a groupoid's arrows, as exact tables."""

    names: list
    values: list  # values[i][g] = rho_i(g), Fraction

    def __len__(self):
        return len(self.names)


def seminorms_from_morphisms(G, morphisms) -> SeminormFamily:
    """Pull back the target norms along morphisms: rho_i = d_H o F_i.
    Each pullback is automatically subadditive and inversion invariant;
    whether the family separates is a property to check."""
    names, values = [], []
    for M in morphisms:
        if M.target.norm is None:
            raise ValueError(f"morphism {M.name}: target carries no norm")
        names.append(M.name)
        values.append([M.target.norm[M.arrow_map[g]]
                       for g in range(len(G.arrows))])
    return SeminormFamily(names, values)


def check_seminorm_family(G, fam: SeminormFamily) -> ValidationReport:
    rep = ValidationReport(subject="seminorm family")
    zero = LawCheck("each seminorm vanishes on unit arrows")
    sub = LawCheck("each seminorm is subadditive")
    symm = LawCheck("each seminorm is inversion invariant")
    sep = LawCheck("joint kernel = unit arrows")
    rep.add(zero, sub, symm, sep)
    for i, rho in enumerate(fam.values):
        nm = fam.names[i]
        for g in range(len(G.arrows)):
            if G.is_unit(g):
                zero.tick()
                if rho[g] != 0:
                    zero.fail(seminorm=nm, g=G.arrows[g], rho=str(rho[g]))
            symm.tick()
            if rho[G.inv(g)] != rho[g]:
                symm.fail(seminorm=nm, g=G.arrows[g])
        for (g, h), k in G.compose.items():
            sub.tick()
            if rho[k] > rho[g] + rho[h]:
                sub.fail(seminorm=nm, g=G.arrows[g], h=G.arrows[h])
    for g in range(len(G.arrows)):
        if G.is_unit(g):
            continue
        sep.tick()
        if all(rho[g] == 0 for rho in fam.values):
            sep.fail(g=G.arrows[g])
    return rep


# ---------------------------------------------------------------------------
# finite categories with inverses (composability is a primitive relation)


@dataclass
class CategoryWithInverses:
    """Finite category with an involutive inverse, given by tables.

    Unlike groupoids, composability here is NOT assumed to be detected by
    the unit arrows g^-1 g: it is taken as primitive (the transport
    category is the motivating case).  Source/target agreement is checked
    through composability classes.
    """

    arrows: list
    compose: dict
    inverse: list
    norm: list | None = None
    seminorms: SeminormFamily | None = None

    def m(self, g, h):
        try:
            return self.compose[(g, h)]
        except KeyError:
            raise ValueError("arrows not composable") from None

    def inv(self, g):
        return self.inverse[g]

    def unit_like(self) -> set:
        """The arrows of the form h^-1 h."""
        return {
            self.compose[(self.inverse[h], h)]
            for h in range(len(self.arrows))
            if (self.inverse[h], h) in self.compose
        }


def check_category_with_inverses(
    C: CategoryWithInverses, strict_norm: bool = True,
    joint_kernel: bool = True,
) -> ValidationReport:
    """Laws for a (semi)normed category with inverses.

    Algebra: composability is stable under composing (source/target
    bookkeeping), associativity holds where defined, the inverse is an
    involutive antimorphism, inverse pairs compose, and the source of
    g^-1 is the target of g (via composability classes).

    Norm (when strict_norm): zero exactly on the arrows h^-1 h,
    subadditive, inversion invariant.  Seminorms: vanish on h^-1 h,
    subadditive, inversion invariant, and (when joint_kernel) the joint
    kernel consists of such arrows only.
    """
    rep = ValidationReport(subject=f"category[{len(C.arrows)} arrows]")
    n = len(C.arrows)
    comp, inv = C.compose, C.inverse

    stab = LawCheck("composability stable under composition")
    assoc = LawCheck("associativity")
    invo = LawCheck("inverse is an involution")
    ipair = LawCheck("(inv g, g) and (g, inv g) compose")
    anti = LawCheck("inverse is an antimorphism")
    ends = LawCheck("source of inv g = target of g (composability classes)")
    rep.add(stab, assoc, invo, ipair, anti, ends)

    for g in range(n):
        invo.tick()
        if inv[inv[g]] != g:
            invo.fail(g=C.arrows[g])
        ipair.tick()
        if (inv[g], g) not in comp or (g, inv[g]) not in comp:
            ipair.fail(g=C.arrows[g])

    for (g, h), gh in comp.items():
        anti.tick()
        if comp.get((inv[h], inv[g])) != inv[gh]:
            anti.fail(g=C.arrows[g], h=C.arrows[h])
        for k in range(n):
            stab.tick(2)
            if ((h, k) in comp) != ((gh, k) in comp):
                stab.fail(side="right", g=C.arrows[g], h=C.arrows[h],
                          k=C.arrows[k])
            if ((k, g) in comp) != ((k, gh) in comp):
                stab.fail(side="left", g=C.arrows[g], h=C.arrows[h],
                          k=C.arrows[k])
            if (h, k) in comp:
                assoc.tick()
                hk = comp[(h, k)]
                if comp.get((gh, k)) != comp.get((g, hk)) or (gh, k) not in comp:
                    assoc.fail(g=C.arrows[g], h=C.arrows[h], k=C.arrows[k])

    # L(x) = who can precede x; equal L-sets <=> equal targets
    L = [frozenset(k for k in range(n) if (k, g) in comp) for g in range(n)]
    for g in range(n):
        for k in range(n):
            ends.tick()
            if ((inv[g], k) in comp) != (L[k] == L[g]):
                ends.fail(g=C.arrows[g], k=C.arrows[k])

    units = C.unit_like()
    if C.norm is not None and strict_norm:
        zero = LawCheck("d = 0 exactly on arrows h^-1 h")
        sub = LawCheck("d subadditive")
        symm = LawCheck("d inversion invariant")
        rep.add(zero, sub, symm)
        d = C.norm
        for g in range(n):
            zero.tick()
            if (d[g] == 0) != (g in units):
                zero.fail(g=C.arrows[g], d=str(d[g]), unit_like=g in units)
            symm.tick()
            if d[inv[g]] != d[g]:
                symm.fail(g=C.arrows[g])
        for (g, h), k in comp.items():
            sub.tick()
            if d[k] > d[g] + d[h]:
                sub.fail(g=C.arrows[g], h=C.arrows[h])

    if C.seminorms is not None:
        szero = LawCheck("seminorms vanish on arrows h^-1 h")
        ssub = LawCheck("seminorms subadditive")
        ssym = LawCheck("seminorms inversion invariant")
        rep.add(szero, ssub, ssym)
        for i, rho in enumerate(C.seminorms.values):
            nm = C.seminorms.names[i]
            for g in range(n):
                if g in units:
                    szero.tick()
                    if rho[g] != 0:
                        szero.fail(seminorm=nm, g=C.arrows[g])
                ssym.tick()
                if rho[inv[g]] != rho[g]:
                    ssym.fail(seminorm=nm, g=C.arrows[g])
            for (g, h), k in comp.items():
                ssub.tick()
                if rho[k] > rho[g] + rho[h]:
                    ssub.fail(seminorm=nm, g=C.arrows[g], h=C.arrows[h])
        if joint_kernel:
            sker = LawCheck("joint seminorm kernel  subset of arrows h^-1 h")
            rep.add(sker)
            for g in range(n):
                if g in units:
                    continue
                sker.tick()
                if all(rho[g] == 0 for rho in C.seminorms.values):
                    sker.fail(g=C.arrows[g])
    return rep
