"""Pointed monoids in C_n-sets, their monoid algebras, and the splitting.

A pointed monoid M gives the Green functor R̲[M] = R̲ □ A̅[M], where A̅[M] is
the sum of representables on the nonzero orbits with multiplication induced
by M.  The relative cyclic nerve of M is a simplicial pointed C_n-set; its
equivariant cellular chains, boxed degreewise against the twisted cyclic
nerve of R̲, map to the twisted cyclic nerve of R̲[M] by multiplication.
Homology agreement of that map in bounded degrees is the checkable form of
the splitting.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from . import spans
from .fgab import AbHom, identity_matrix
from .green import BoxPresentation, box, box_hom, box_list
from .hochschild import (
    MackeyComplex,
    MackeyHomology,
    SimplicialMackey,
    moore_complex,
    twisted_cyclic_nerve,
)
from .mackey import (
    GreenFunctor,
    GroupContext,
    MackeyFunctor,
    MackeyHom,
    representable,
)


class PointedGMonoid:
    """Finite pointed monoid with a C_n-action by monoid maps fixing 0 and 1."""

    def __init__(self, ctx: GroupContext, elements, zero, one, table, action):
        self.ctx = ctx
        self.elements = tuple(elements)
        self.zero = zero
        self.one = one
        self.table = {(a, b): table[(a, b)] for a in self.elements for b in self.elements}
        self.action = dict(action)
        self._validate()

    @staticmethod
    def from_lists(ctx, elements, zero, one, rows, action_perm):
        """Table given as rows aligned with `elements`; action as a permutation list."""
        table = {}
        for a, row in zip(elements, rows):
            for b, v in zip(elements, row):
                table[(a, b)] = v
        action = dict(zip(elements, action_perm))
        return PointedGMonoid(ctx, elements, zero, one, table, action)

    @staticmethod
    def from_json(ctx, data):
        return PointedGMonoid.from_lists(
            ctx, data["elements"], data["zero"], data["one"], data["table"], data["action"]
        )

    def to_json(self):
        return {
            "elements": list(self.elements),
            "zero": self.zero,
            "one": self.one,
            "table": [[self.table[(a, b)] for b in self.elements] for a in self.elements],
            "action": [self.action[a] for a in self.elements],
        }

    def _validate(self):
        els = set(self.elements)
        if self.zero not in els or self.one not in els:
            raise ValueError("basepoint and unit must be elements")
        for a in els:
            if self.table[(self.zero, a)] != self.zero or self.table[(a, self.zero)] != self.zero:
                raise ValueError("0 must be absorbing")
            if self.table[(self.one, a)] != a or self.table[(a, self.one)] != a:
                raise ValueError("1 must be a two-sided unit")
        for a in els:
            for b in els:
                for c in els:
                    if self.mult(self.mult(a, b), c) != self.mult(a, self.mult(b, c)):
                        raise ValueError(f"associativity fails at ({a},{b},{c})")
        if set(self.action) != els or set(self.action.values()) != els:
            raise ValueError("action must be a permutation of the elements")
        if self.action[self.zero] != self.zero or self.action[self.one] != self.one:
            raise ValueError("action must fix 0 and 1")
        for a in els:
            for b in els:
                if self.act(1, self.mult(a, b)) != self.mult(self.act(1, a), self.act(1, b)):
                    raise ValueError("action must be by monoid maps")
        a = {e: e for e in els}
        for _ in range(self.ctx.n):
            a = {e: self.action[a[e]] for e in els}
        if any(a[e] != e for e in els):
            raise ValueError("action order must divide n")

    def mult(self, a, b):
        return self.table[(a, b)]

    def act(self, k: int, a):
        for _ in range(k % self.ctx.n):
            a = self.action[a]
        return a


@dataclass
class OrbitData:
    """Orbit bookkeeping for a finite pointed C_n-set (basepoint excluded)."""

    reps: tuple
    stabs: tuple
    locate: dict  # element -> (orbit index, translation a with m = g^a · rep)


def orbit_data(ctx: GroupContext, elements, act, basepoint) -> OrbitData:
    reps = []
    stabs = []
    locate = {}
    for m in elements:
        if m == basepoint or m in locate:
            continue
        idx = len(reps)
        orbit = []
        cur = m
        while cur not in locate:
            locate[cur] = (idx, len(orbit))
            orbit.append(cur)
            cur = act(1, cur)
        reps.append(m)
        stabs.append(ctx.n // len(orbit))
    return OrbitData(tuple(reps), tuple(stabs), locate)


def monoid_orbits(m: PointedGMonoid) -> OrbitData:
    return orbit_data(m.ctx, m.elements, m.act, m.zero)


def element_span(ctx, od: OrbitData, m, level: int):
    """The span-basis datum of "evaluate at m" in A̅[M](G/C_level).

    m must be fixed by C_level; writing m = g^a · rep, the normalized span
    anchors the orbit representative and carries translation -a.
    """
    i, a = od.locate[m]
    y = spans.normalize_y(ctx.n, od.stabs[i], level, -a)
    return (i, (level, y))


def bredon_green(ctx: GroupContext, m: PointedGMonoid) -> GreenFunctor:
    """A̅[M]: representables on the nonzero orbits, multiplication from M."""
    od = monoid_orbits(m)
    rep = representable(ctx, od.stabs)
    n = ctx.n
    mult = {}
    unit = {}
    for d in ctx.divisors:
        basis = rep.span_basis[d]
        pos = rep.span_pos[d]
        k = len(basis)
        table = []
        for (i, sp1) in basis:
            rowtab = []
            for (j, sp2) in basis:
                row = [0] * k
                prod = spans.span_product(n, od.stabs, od.stabs, d, (i,) + sp1, (j,) + sp2)
                for ((oi, oj, delta), c, y), mlt in prod.items():
                    v = m.mult(od.reps[oi], m.act(delta, od.reps[oj]))
                    if v == m.zero:
                        continue
                    i2, a = od.locate[v]
                    y2 = spans.normalize_y(n, od.stabs[i2], d, y - a)
                    row[pos[(i2, (c, y2))]] += mlt
                rowtab.append(tuple(row))
            table.append(tuple(rowtab))
        mult[d] = tuple(table)
        u = [0] * k
        u[pos[element_span(ctx, od, m.one, d)]] = 1
        unit[d] = tuple(u)
    green = GreenFunctor(rep, mult, unit)
    green.orbit_data = od
    return green


def monoid_algebra(r, m: PointedGMonoid) -> BoxPresentation:
    """R̲[M] = R̲ □ A̅[M] with the induced Green structure."""
    r = getattr(r, "green", r)
    if r.ctx != m.ctx:
        raise ValueError("context mismatch")
    return box(r, bredon_green(m.ctx, m), green=True)


# ---------------------------------------------------------------------------
# the relative cyclic nerve of a pointed monoid


@dataclass
class SimplicialPointedGSet:
    """Truncated simplicial pointed C_n-set; None encodes the basepoint.

    The extra cyclic operator τ_j (rotate, then act by the generator on the
    wrapped coordinate) is recorded; only the underlying simplicial
    C_n-structure is consumed downstream.
    """

    ctx: GroupContext
    degrees: list          # list of tuples (nonzero simplices)
    faces: list            # faces[j][i]: dict simplex -> simplex | None
    degeneracies: list
    tau: list              # tau[j]: dict simplex -> simplex

    def act(self, k, simplex):
        return self._action(k, simplex)


def cyclic_nerve_monoid(m: PointedGMonoid, k_max: int) -> SimplicialPointedGSet:
    """N^cyc_{C_n} M truncated at k_max; j-simplices are smash powers M^∧(j+1)."""
    ctx = m.ctx
    degrees = []
    nonzero = [e for e in m.elements if e != m.zero]
    cur = [(e,) for e in nonzero]
    degrees.append(tuple(cur))
    for j in range(1, k_max + 1):
        cur = [t + (e,) for t in cur for e in nonzero]
        degrees.append(tuple(cur))

    def smash(tup):
        return None if m.zero in tup else tup

    faces = [None]
    for j in range(1, k_max + 1):
        fj = []
        for i in range(j):
            fj.append({
                t: smash(t[:i] + (m.mult(t[i], t[i + 1]),) + t[i + 2:])
                for t in degrees[j]
            })
        fj.append({
            t: smash((m.mult(m.act(1, t[j]), t[0]),) + t[1:j])
            for t in degrees[j]
        })
        faces.append(fj)
    degens = []
    for j in range(k_max):
        degens.append([
            {t: t[: i + 1] + (m.one,) + t[i + 1:] for t in degrees[j]}
            for i in range(j + 1)
        ])
    tau = []
    for j in range(k_max + 1):
        tau.append({t: (m.act(1, t[j]),) + t[:j] for t in degrees[j]})
    x = SimplicialPointedGSet(ctx, degrees, faces, degens, tau)
    x._monoid = m
    x._action = lambda k, t: None if t is None else tuple(m.act(k, e) for e in t)
    return x


def _relabel_hom(ctx, src_rep, src_od: OrbitData, dst_rep, dst_od: OrbitData, fmap) -> MackeyHom:
    """Mackey hom A̅_{src} → A̅_{dst} induced by an equivariant pointed map.

    fmap sends source orbit representatives to elements of the target set
    (None for the basepoint); spans relabel their anchor along it.
    """
    n = ctx.n
    maps = {}
    for d in ctx.divisors:
        rows = []
        width = dst_rep.level[d].num_generators
        for (i, (c, y)) in src_rep.span_basis[d]:
            v = fmap(src_od.reps[i])
            if v is None:
                rows.append((0,) * width)
                continue
            i2, a = dst_od.locate[v]
            y2 = spans.normalize_y(n, dst_od.stabs[i2], d, y - a)
            row = [0] * width
            row[dst_rep.span_pos[d][(i2, (c, y2))]] = 1
            rows.append(tuple(row))
        maps[d] = AbHom(src_rep.level[d], dst_rep.level[d], rows)
    return MackeyHom(src_rep, dst_rep, maps)


@dataclass
class CellularChains:
    """Bredon cellular chains of a simplicial pointed C_n-set, Mackey-extended."""

    simplicial: SimplicialMackey
    complex: MackeyComplex
    orbit_data: list  # per degree


def cellular_chains(x: SimplicialPointedGSet, k_max: int) -> CellularChains:
    ctx = x.ctx
    if k_max > len(x.degrees) - 1:
        raise ValueError("simplicial set truncated too low")
    ods = []
    reps = []
    for j in range(k_max + 1):
        od = orbit_data(ctx, x.degrees[j], x._action, None)
        ods.append(od)
        reps.append(representable(ctx, od.stabs))
    faces = [None]
    for j in range(1, k_max + 1):
        faces.append([
            _relabel_hom(ctx, reps[j], ods[j], reps[j - 1], ods[j - 1], x.faces[j][i].get)
            for i in range(j + 1)
        ])
    degens = []
    for j in range(k_max):
        degens.append([
            _relabel_hom(ctx, reps[j], ods[j], reps[j + 1], ods[j + 1], x.degeneracies[j][i].get)
            for i in range(j + 1)
        ])
    simp = SimplicialMackey(ctx, reps, faces, degens)
    simp.check_identities()
    return CellularChains(simp, moore_complex(simp), ods)


# ---------------------------------------------------------------------------
# the splitting comparison


@dataclass
class SplittingReport:
    checks: list = field(default_factory=list)
    homology_left: dict = field(default_factory=dict)
    homology_right: dict = field(default_factory=dict)

    def note(self, ok, msg):
        self.checks.append((bool(ok), msg))

    @property
    def passed(self):
        return all(ok for ok, _ in self.checks)

    def __repr__(self):
        lines = [("ok  " if ok else "FAIL") + " " + m for ok, m in self.checks]
        return "SplittingReport(\n  " + "\n  ".join(lines) + "\n)"


def splitting_check(r, m: PointedGMonoid, max_k: int) -> SplittingReport:
    """HC(R̲) □ C̲^cell(N^cyc M) → HC(R̲[M]): homology agreement in degrees ≤ max_k.

    The right-hand side is the degreewise box with diagonal structure maps;
    the comparison map multiplies the image of HC(R̲) against the Yoneda
    image of the cellular chains inside HC(R̲[M]).
    """
    r = getattr(r, "green", r)
    ctx = r.ctx
    report = SplittingReport()
    k_max = max_k + 1

    am = bredon_green(ctx, m)
    od = am.orbit_data
    rm_pres = box(r, am, green=True)
    rm = rm_pres.result
    nerve_rm = twisted_cyclic_nerve(rm, k_max, green=True)
    nerve_r = twisted_cyclic_nerve(r, k_max)
    cells = cellular_chains(cyclic_nerve_monoid(m, k_max), k_max)

    # unit-against-A̅[M] inclusion R → R[M]
    iota_maps = {}
    for d in ctx.divisors:
        rows = []
        for i in range(r.level[d].num_generators):
            gen = identity_matrix(r.level[d].num_generators)[i]
            rows.append(rm_pres.expand(d, d, [gen, am.unit[d]]))
        iota_maps[d] = AbHom(r.level[d], rm.level[d], rows)
    iota = MackeyHom(r.underlying, rm.underlying, iota_maps)

    # degreewise data
    z_pres = []
    z_faces = [None]
    phis = []
    for j in range(k_max + 1):
        zp = box(nerve_r.degrees[j], cells.simplicial.degrees[j], green=False)
        z_pres.append(zp)

        alpha = box_hom(
            nerve_r.presentations[j],
            nerve_rm.presentations[j],
            [iota] * (j + 1),
        )
        # Yoneda image of each cell orbit: the class of its R[M]-monomial tuple
        beta_values = {}
        for oi, rep_tuple in enumerate(cells.orbit_data[j].reps):
            s = cells.orbit_data[j].stabs[oi]
            slot_rows = []
            for mm in rep_tuple:
                u = [0] * am.level[s].num_generators
                u[am.underlying.span_pos[s][element_span(ctx, od, mm, s)]] = 1
                slot_rows.append(rm_pres.expand(s, s, [r.unit[s], u]))
            w = nerve_rm.presentations[j].expand(s, s, slot_rows)
            beta_values[oi] = w
        hc_rm_j = nerve_rm.presentations[j].result

        maps = {}
        for d in ctx.divisors:
            rows = []
            for (e, (x_idx, c_idx)) in zp.tags[d]:
                alpha_row = alpha.maps[e].matrix[x_idx]
                (oi, sp) = cells.simplicial.degrees[j].span_basis[e][c_idx]
                beta_row = spans.apply_span(
                    hc_rm_j.underlying, cells.orbit_data[j].stabs[oi], e, sp, beta_values[oi]
                )
                prod = hc_rm_j.multiply(e, alpha_row, beta_row)
                rows.append(hc_rm_j.underlying.tr_full(e, d).apply(prod))
            maps[d] = AbHom(zp.mackey.level[d], hc_rm_j.level[d], rows)
        phis.append(MackeyHom(zp.mackey, hc_rm_j.underlying, maps))

    for j in range(1, k_max + 1):
        z_faces.append([
            box_hom(z_pres[j], z_pres[j - 1], [nerve_r.face(j, i), cells.simplicial.face(j, i)])
            for i in range(j + 1)
        ])

    # chain map: Φ commutes with the alternating-sum boundaries
    for j in range(1, k_max + 1):
        bz = z_faces[j][0]
        for i in range(1, j + 1):
            bz = bz.sub(z_faces[j][i]) if i % 2 else bz.add(z_faces[j][i])
        brm = moore_complex_boundary(nerve_rm, j)
        lhs = bz.compose(phis[j - 1])
        rhs = phis[j].compose(brm)
        report.note(lhs == rhs, f"comparison is a chain map at degree {j}")

    # homology comparison through the induced maps
    z_complex = MackeyComplex(
        [p.mackey for p in z_pres],
        [None] + [
            _alternating(z_faces[j]) for j in range(1, k_max + 1)
        ],
        check=True,
    )
    rm_complex = moore_complex(nerve_rm, check=False)
    for k in range(max_k + 1):
        hz = MackeyHomology(z_complex, k)
        hrm = MackeyHomology(rm_complex, k)
        induced = hz.induced_hom(phis[k], hrm)
        report.note(
            induced.is_isomorphism(),
            f"H_{k}: box side ≅ HC(R[M]) side via the comparison map",
        )
        report.homology_left[k] = {d: hz.mackey.level[d].canonical_form for d in ctx.divisors}
        report.homology_right[k] = {d: hrm.mackey.level[d].canonical_form for d in ctx.divisors}
    return report


def _alternating(homs):
    b = homs[0]
    for i in range(1, len(homs)):
        b = b.sub(homs[i]) if i % 2 else b.add(homs[i])
    return b


def moore_complex_boundary(x: SimplicialMackey, j: int) -> MackeyHom:
    return _alternating(x.faces[j])
