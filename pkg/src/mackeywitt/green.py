"""Box products of Mackey functors and Green-functor structure on them.

The k-fold box product is presented by generators tagged (e, tuple): a
sub-level e | d together with one generator of each factor at level e.
Relations are multilinearity, the Weyl-diagonal identification for the
cyclic group C_d/C_e, and prime-index Frobenius relations (transfer one
slot up ≡ restrict every other slot down).  Transfers re-tag, restrictions
follow the double-coset formula, and the Weyl generator acts diagonally.

The tag data is kept on the quotient presentation, so morphisms out of a
box product are written down on tags and certified well-defined against
the relations.
"""

from __future__ import annotations

from itertools import product
from math import gcd

from .fgab import AbHom, FgAbGroup, identity_matrix, in_rowspan, solve_left
from .mackey import (
    GreenFunctor,
    GroupContext,
    MackeyFunctor,
    MackeyHom,
    divisors,
    prime_edges,
    prime_factors,
)


class BoxPresentation:
    """A box product together with its tagged generating data."""

    def __init__(self, factors, result, tags, tag_pos):
        self.factors = tuple(factors)
        self.result = result
        self.tags = tags          # d -> tuple of (e, gen_index_tuple)
        self.tag_pos = tag_pos    # d -> {tag: position}

    @property
    def mackey(self) -> MackeyFunctor:
        r = self.result
        return r.underlying if isinstance(r, GreenFunctor) else r

    def expand(self, d: int, e: int, slot_rows) -> tuple[int, ...]:
        """Multilinear expansion of per-slot element rows into tag coordinates."""
        out = [0] * len(self.tags[d])
        pos = self.tag_pos[d]
        k = len(slot_rows)
        indices = [[i for i, c in enumerate(row) if c] for row in slot_rows]
        for combo in product(*indices):
            coeff = 1
            for s in range(k):
                coeff *= slot_rows[s][combo[s]]
            out[pos[(e, combo)]] += coeff
        return tuple(out)

    def hom_on_tags(self, d: int, target: FgAbGroup, fn, check: bool = True) -> AbHom:
        """AbHom out of level d defined by a function on tags."""
        rows = [fn(e, tup) for (e, tup) in self.tags[d]]
        return AbHom(self.mackey.level[d], target, rows, check=check)


def _unwrap(factor):
    return factor.underlying if isinstance(factor, GreenFunctor) else factor


def box_list(factors, green: bool | None = None, name: str = "") -> BoxPresentation:
    """Box product of a list of Mackey functors over one group context.

    With green=True (or when every factor is a Green functor and green is
    None) the result carries the induced Green structure.
    """
    if not factors:
        raise ValueError("need at least one factor")
    factors = [getattr(f, "green", f) for f in factors]
    macks = [_unwrap(f) for f in factors]
    ctx = macks[0].ctx
    for f in macks:
        if f.ctx != ctx:
            raise ValueError("context mismatch between box factors")
    if green is None:
        green = all(isinstance(f, GreenFunctor) for f in factors)
    if green and not all(isinstance(f, GreenFunctor) for f in factors):
        raise ValueError("green structure requires Green factors")
    n = ctx.n
    k = len(macks)

    tags = {}
    tag_pos = {}
    level = {}
    for d in ctx.divisors:
        tg = []
        for e in divisors(d):
            ranges = [range(f.level[e].num_generators) for f in macks]
            for tup in product(*ranges):
                tg.append((e, tup))
        tags[d] = tuple(tg)
        tag_pos[d] = {t: i for i, t in enumerate(tg)}

    pres = BoxPresentation(factors, None, tags, tag_pos)

    def expand(d, e, slot_rows):
        out = [0] * len(tags[d])
        pos = tag_pos[d]
        indices = [[i for i, c in enumerate(row) if c] for row in slot_rows]
        for combo in product(*indices):
            coeff = 1
            for s, row in enumerate(slot_rows):
                coeff *= row[combo[s]]
            out[pos[(e, combo)]] += coeff
        return out

    def unit_rows(d, e, tup):
        return [
            identity_matrix(f.level[e].num_generators)[i]
            for f, i in zip(macks, tup)
        ]

    for d in ctx.divisors:
        rels = []
        ntags = len(tags[d])
        for e in divisors(d):
            gen_counts = [f.level[e].num_generators for f in macks]
            # multilinearity: relations of each factor in each slot
            for s, f in enumerate(macks):
                for r in f.level[e].relations:
                    others = [range(c) for t, c in enumerate(gen_counts) if t != s]
                    for rest in product(*others):
                        row = [0] * ntags
                        for i, c in enumerate(r):
                            if c:
                                tup = rest[:s] + (i,) + rest[s:]
                                row[tag_pos[d][(e, tup)]] += c
                        rels.append(tuple(row))
            # Weyl-diagonal identification for the generator of C_d/C_e
            if e != d:
                tw = [f.weyl_power(e, n // d).matrix for f in macks]
                for tup in product(*[range(c) for c in gen_counts]):
                    row = expand(d, e, [tw[s][tup[s]] for s in range(k)])
                    row[tag_pos[d][(e, tup)]] -= 1
                    rels.append(tuple(row))
        # Frobenius: transfer one slot up == restrict the other slots down
        for e in divisors(d):
            for p in prime_factors(d // e):
                f_lv = e * p
                res_rows = [f.res[(e, f_lv)].matrix for f in macks]
                tr_rows = [f.tr[(e, f_lv)].matrix for f in macks]
                counts_e = [f.level[e].num_generators for f in macks]
                counts_f = [f.level[f_lv].num_generators for f in macks]
                for s in range(k):
                    others = [range(counts_f[t]) for t in range(k) if t != s]
                    for x in range(counts_e[s]):
                        for rest in product(*others):
                            up_slots = []
                            down_slots = []
                            ri = 0
                            for t in range(k):
                                if t == s:
                                    up_slots.append(tr_rows[s][x])
                                    down_slots.append(identity_matrix(counts_e[s])[x])
                                else:
                                    j = rest[ri]
                                    ri += 1
                                    up_slots.append(identity_matrix(counts_f[t])[j])
                                    down_slots.append(res_rows[t][j])
                            row_up = expand(d, f_lv, up_slots)
                            row_down = expand(d, e, down_slots)
                            rels.append(tuple(a - b for a, b in zip(row_up, row_down)))
        level[d] = FgAbGroup(ntags, rels)

    # structure maps
    res = {}
    tr = {}
    for (dlo, dhi) in prime_edges(ctx):
        rows = []
        for (e, tup) in tags[dlo]:
            rows.append(tuple(
                1 if t == (e, tup) else 0 for t in tags[dhi]
            ))
        tr[(dlo, dhi)] = AbHom(level[dlo], level[dhi], rows, check=False)

        rows = []
        for (e, tup) in tags[dhi]:
            g0 = gcd(dlo, e)
            l = e * dlo // g0
            acc = [0] * len(tags[dlo])
            for j in range(dhi // l):
                slot_rows = []
                for f, i in zip(macks, tup):
                    hom = f.res_full(e, g0).compose(f.weyl_power(g0, j * (n // dhi)))
                    slot_rows.append(hom.matrix[i])
                row = expand(dlo, g0, slot_rows)
                acc = [a + b for a, b in zip(acc, row)]
            rows.append(tuple(acc))
        res[(dlo, dhi)] = AbHom(level[dhi], level[dlo], rows)

    weyl = {}
    for d in ctx.divisors:
        rows = []
        for (e, tup) in tags[d]:
            slot_rows = [f.weyl[e].matrix[i] for f, i in zip(macks, tup)]
            rows.append(tuple(expand(d, e, slot_rows)))
        weyl[d] = AbHom(level[d], level[d], rows)

    result = MackeyFunctor(ctx, level, res, tr, weyl, name=name or "box")
    pres.result = result
    if not green:
        return pres

    mult = {}
    unit = {}
    for d in ctx.divisors:
        table = []
        for (e, tup) in tags[d]:
            rowtab = []
            for (f_lv, tup2) in tags[d]:
                g0 = gcd(e, f_lv)
                l = e * f_lv // g0
                acc = [0] * len(tags[d])
                for j in range(d // l):
                    slot_rows = []
                    for s, fct in enumerate(factors):
                        m = _unwrap(fct)
                        x = m.res_full(e, g0).matrix[tup[s]]
                        y = m.res_full(f_lv, g0).compose(m.weyl_power(g0, j * (n // d))).matrix[tup2[s]]
                        slot_rows.append(fct.multiply(g0, x, y))
                    row = expand(d, g0, slot_rows)
                    acc = [a + b for a, b in zip(acc, row)]
                rowtab.append(tuple(acc))
            table.append(tuple(rowtab))
        mult[d] = tuple(table)
        unit[d] = tuple(expand(d, d, [fct.unit[d] for fct in factors]))
    pres.result = GreenFunctor(result, mult, unit)
    return pres


def box(m, n_, green: bool | None = None) -> BoxPresentation:
    """Binary box product M □ N."""
    return box_list([m, n_], green=green)


def box_power(r, k: int, green: bool | None = None) -> BoxPresentation:
    """k-fold box power with flattened tags (k ≥ 1)."""
    if k < 1:
        raise ValueError("k must be at least 1")
    return box_list([r] * k, green=green)


def box_swap_hom(pres: BoxPresentation, swapped: BoxPresentation) -> MackeyHom:
    """The tag-swap morphism box(M, N) → box(N, M)."""
    src = pres.mackey
    tgt = swapped.mackey
    maps = {}
    for d in src.ctx.divisors:
        rows = []
        for (e, tup) in pres.tags[d]:
            rows.append(tuple(
                1 if t == (e, tuple(reversed(tup))) else 0 for t in swapped.tags[d]
            ))
        maps[d] = AbHom(src.level[d], tgt.level[d], rows)
    return MackeyHom(src, tgt, maps)


def full_transfer_identification(pres: BoxPresentation) -> MackeyHom:
    """For a 1-fold box power of R: the canonical isomorphism onto R.

    A class tagged (e, x) is the transfer of x up to the ambient level; the
    Frobenius relations make this an isomorphism R^{□1} ≅ R.
    """
    if len(pres.factors) != 1:
        raise ValueError("expects a 1-fold box power")
    target = _unwrap(pres.factors[0])
    src = pres.mackey
    maps = {}
    for d in src.ctx.divisors:
        rows = []
        for (e, (i,)) in pres.tags[d]:
            gen = identity_matrix(target.level[e].num_generators)[i]
            rows.append(target.tr_full(e, d).apply(gen))
        maps[d] = AbHom(src.level[d], target.level[d], rows)
    return MackeyHom(src, target, maps)


def box_hom(src: BoxPresentation, dst: BoxPresentation, homs) -> MackeyHom:
    """Box functoriality: the map □ f_s induced by per-factor Mackey homs.

    homs[s] must map src.factors[s] to dst.factors[s] levelwise; tags map
    slotwise with multilinear expansion.
    """
    if len(homs) != len(src.factors) or len(homs) != len(dst.factors):
        raise ValueError("one hom per factor required")
    s_mack = src.mackey
    d_mack = dst.mackey
    maps = {}
    for d in s_mack.ctx.divisors:
        rows = []
        for (e, tup) in src.tags[d]:
            slot_rows = [homs[s].maps[e].matrix[i] for s, i in enumerate(tup)]
            rows.append(dst.expand(d, e, slot_rows))
        maps[d] = AbHom(s_mack.level[d], d_mack.level[d], rows)
    return MackeyHom(s_mack, d_mack, maps)


def unit_iso(pres: BoxPresentation) -> MackeyHom:
    """The unitality isomorphism A̅ □ M → M (first factor must be burnside()).

    A tag-e class [C_e/C_c] ⊗ m is the transfer of the unit from level c, so
    the Frobenius relations send it to tr(res(m)) through level c.
    """
    if len(pres.factors) != 2:
        raise ValueError("expects a binary box product")
    m = _unwrap(pres.factors[1])
    src = pres.mackey
    maps = {}
    for d in src.ctx.divisors:
        rows = []
        for (e, (a_idx, m_idx)) in pres.tags[d]:
            c = divisors(e)[a_idx]
            gen = identity_matrix(m.level[e].num_generators)[m_idx]
            v = m.res_full(e, c).apply(gen)
            rows.append(m.tr_full(c, d).apply(v))
        maps[d] = AbHom(src.level[d], m.level[d], rows)
    return MackeyHom(src, m, maps)


def representable_rule_iso(ctx: GroupContext, t1, t2):
    """The canonical map A̅_{T1} □ A̅_{T2} → A̅_{T1×T2} on span tags.

    Returns (hom, product_representable); the hom being an isomorphism is
    the conformance contract for the box presentation.
    """
    from . import spans
    from .mackey import representable

    t1, t2 = tuple(t1), tuple(t2)
    r1 = representable(ctx, t1)
    r2 = representable(ctx, t2)
    pres = box(r1, r2, green=False)
    stabs, index = spans.product_orbits(ctx.n, t1, t2)
    rp = representable(ctx, stabs)
    maps = {}
    for d in ctx.divisors:
        rows = []
        for (e, (p1, p2)) in pres.tags[d]:
            i, sp1 = r1.span_basis[e][p1]
            j, sp2 = r2.span_basis[e][p2]
            prod = spans.span_product(ctx.n, t1, t2, e, (i,) + sp1, (j,) + sp2)
            row = [0] * rp.level[d].num_generators
            for (orbkey, c, y), mlt in prod.items():
                orb = index[orbkey]
                comp = spans.compose_spans(
                    ctx.n, stabs[orb], e, d, (c, y), spans.transfer_span(ctx.n, e, d)
                )
                for sp, m2 in comp.items():
                    row[rp.span_pos[d][(orb, sp)]] += mlt * m2
            rows.append(tuple(row))
        maps[d] = AbHom(pres.mackey.level[d], rp.level[d], rows)
    return MackeyHom(pres.mackey, rp, maps), rp


# ---------------------------------------------------------------------------
# quotients by Green ideals


def quotient_by_subgroups(g: GreenFunctor, rows_per_level) -> tuple[GreenFunctor, MackeyHom]:
    """Quotient a Green functor by levelwise subgroups (assumed ideal-closed).

    Well-definedness of the descended structure maps and multiplication is
    certified by the AbHom constructor; a non-closed input fails loudly.
    """
    m = g.underlying
    ctx = m.ctx
    level = {}
    for d in ctx.divisors:
        old = m.level[d]
        level[d] = FgAbGroup(old.num_generators, tuple(old.relations) + tuple(rows_per_level.get(d, ())))
    res = {}
    tr = {}
    for (dlo, dhi) in prime_edges(ctx):
        res[(dlo, dhi)] = AbHom(level[dhi], level[dlo], m.res[(dlo, dhi)].matrix)
        tr[(dlo, dhi)] = AbHom(level[dlo], level[dhi], m.tr[(dlo, dhi)].matrix)
    weyl = {d: AbHom(level[d], level[d], m.weyl[d].matrix) for d in ctx.divisors}
    out_m = MackeyFunctor(ctx, level, res, tr, weyl, name=f"{m.name}/ideal")
    out = GreenFunctor(out_m, g.mult, g.unit)
    proj = MackeyHom(
        m, out_m,
        {d: AbHom(m.level[d], level[d], identity_matrix(m.level[d].num_generators), check=False)
         for d in ctx.divisors},
        check=False,
    )
    return out, proj


def quotient_by_green_ideal(g: GreenFunctor, gens) -> GreenFunctor:
    """Quotient by the Green ideal generated by (level, element-row) pairs.

    The ideal closure iterates multiplication by every generator together
    with res, tr, and weyl images until the levelwise subgroup lattices
    stabilize.
    """
    m = g.underlying
    ctx = m.ctx
    n = ctx.n
    rows: dict[int, list] = {d: [] for d in ctx.divisors}
    hnf: dict[int, tuple] = {d: m.level[d].subgroup_hnf(()) for d in ctx.divisors}
    queue = []

    def push(d, row):
        row = tuple(row)
        if solve_left(hnf[d], row) is not None:
            return
        rows[d].append(row)
        hnf[d] = m.level[d].subgroup_hnf(tuple(rows[d]))
        queue.append((d, row))

    for d, row in gens:
        push(d, tuple(row))

    while queue:
        d, row = queue.pop()
        k = m.level[d].num_generators
        for j in range(k):
            push(d, g.multiply(d, row, identity_matrix(k)[j]))
        push(d, m.weyl[d].apply(row))
        for p in prime_factors(d):
            push(d // p, m.res[(d // p, d)].apply(row))
        for p in prime_factors(n // d):
            if n % (d * p) == 0:
                push(d * p, m.tr[(d, d * p)].apply(row))

    return quotient_by_subgroups(g, {d: tuple(rows[d]) for d in ctx.divisors})[0]
