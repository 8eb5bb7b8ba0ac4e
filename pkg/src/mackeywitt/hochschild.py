"""Twisted cyclic nerve and twisted Hochschild homology of a Green functor.

Degree j of the nerve is the (j+1)-fold box power; inner faces multiply
adjacent slots, the last face rotates the final slot to the front, twists
it by the distinguished generator, and multiplies.  Homology is taken from
the unnormalized (Moore) complex, which has the same homology as the
normalized one.
"""

from __future__ import annotations

from .fgab import AbHom, FgAbGroup, Subquotient, identity_matrix
from .green import (
    BoxPresentation,
    box_power,
    full_transfer_identification,
    quotient_by_green_ideal,
    quotient_by_subgroups,
)
from .mackey import GreenFunctor, MackeyFunctor, MackeyHom, prime_edges


class TruncationTooShortError(ValueError):
    """Requested degree exceeds what the constructed truncation supports."""


class SimplicialIdentityError(AssertionError):
    """A face/degeneracy identity failed; indicates a construction bug."""


class SimplicialMackey:
    """A finitely truncated simplicial Mackey functor.

    faces[j][i] : X_j → X_{j-1} for 1 ≤ j ≤ k_max, 0 ≤ i ≤ j;
    degeneracies[j][i] : X_j → X_{j+1} for 0 ≤ j < k_max, 0 ≤ i ≤ j.
    """

    def __init__(self, ctx, degrees, faces, degeneracies, presentations=None):
        self.ctx = ctx
        self.degrees = list(degrees)
        self.faces = list(faces)
        self.degeneracies = list(degeneracies)
        self.presentations = presentations

    @property
    def max_degree(self) -> int:
        return len(self.degrees) - 1

    def face(self, j: int, i: int) -> MackeyHom:
        return self.faces[j][i]

    def degeneracy(self, j: int, i: int) -> MackeyHom:
        return self.degeneracies[j][i]

    def check_identities(self):
        """Verify all simplicial identities inside the truncation."""
        k = self.max_degree
        for m in range(2, k + 1):
            for j in range(1, m + 1):
                for i in range(j):
                    lhs = self.face(m, j).compose(self.face(m - 1, i))
                    rhs = self.face(m, i).compose(self.face(m - 1, j - 1))
                    if lhs != rhs:
                        raise SimplicialIdentityError(f"d_{i} d_{j} at degree {m}")
        for m in range(0, k - 1):
            for j in range(m + 1):
                for i in range(j + 1):
                    lhs = self.degeneracy(m, j).compose(self.degeneracy(m + 1, i))
                    rhs = self.degeneracy(m, i).compose(self.degeneracy(m + 1, j + 1))
                    if lhs != rhs:
                        raise SimplicialIdentityError(f"s_{i} s_{j} at degree {m}")
        for m in range(0, k):
            for j in range(m + 1):
                for i in range(m + 2):
                    comp = self.degeneracy(m, j).compose(self.face(m + 1, i))
                    if i < j:
                        ref = self.face(m, i).compose(self.degeneracy(m - 1, j - 1)) if m >= 1 else None
                        if ref is not None and comp != ref:
                            raise SimplicialIdentityError(f"d_{i} s_{j} at degree {m}")
                    elif i in (j, j + 1):
                        if comp != MackeyHom.identity(self.degrees[m]):
                            raise SimplicialIdentityError(f"d_{i} s_{j} != id at degree {m}")
                    else:
                        ref = self.face(m, i - 1).compose(self.degeneracy(m - 1, j)) if m >= 1 else None
                        if ref is not None and comp != ref:
                            raise SimplicialIdentityError(f"d_{i} s_{j} at degree {m}")


class MackeyComplex:
    """Chain complex of Mackey functors with ∂∘∂ = 0 certified levelwise."""

    def __init__(self, degrees, boundaries, check: bool = True):
        self.degrees = list(degrees)
        self.boundaries = list(boundaries)  # boundaries[j] : X_j → X_{j-1}, j ≥ 1
        if check:
            for j in range(2, len(self.degrees)):
                comp = self.boundaries[j].compose(self.boundaries[j - 1])
                if not comp.is_zero():
                    raise SimplicialIdentityError(f"∂∘∂ != 0 at degree {j}")

    @property
    def max_degree(self):
        return len(self.degrees) - 1


def moore_complex(x: SimplicialMackey, check: bool = True) -> MackeyComplex:
    boundaries = [None]
    for j in range(1, x.max_degree + 1):
        b = x.face(j, 0)
        for i in range(1, j + 1):
            if i % 2:
                b = b.sub(x.face(j, i))
            else:
                b = b.add(x.face(j, i))
        boundaries.append(b)
    return MackeyComplex(x.degrees, boundaries, check=check)


def _face_hom(src: BoxPresentation, dst: BoxPresentation, r, i: int, j: int, check: bool) -> MackeyHom:
    """Face d_i from the (j+1)-slot box power to the j-slot one."""
    mack_src = src.mackey
    mack_dst = dst.mackey
    m = r.underlying if isinstance(r, GreenFunctor) else r
    maps = {}
    for d in mack_src.ctx.divisors:
        rows = []
        for (e, tup) in src.tags[d]:
            gens = identity_matrix(m.level[e].num_generators)
            if i < j:
                prod = r.mult[e][tup[i]][tup[i + 1]]
                slot_rows = [gens[t] for t in tup[:i]] + [prod] + [gens[t] for t in tup[i + 2:]]
            else:
                twisted = m.weyl[e].matrix[tup[j]]
                prod = r.multiply(e, twisted, gens[tup[0]])
                slot_rows = [prod] + [gens[t] for t in tup[1:j]]
            rows.append(dst.expand(d, e, slot_rows))
        maps[d] = AbHom(mack_src.level[d], mack_dst.level[d], rows, check=check)
    return MackeyHom(mack_src, mack_dst, maps, check=check)


def _degeneracy_hom(src: BoxPresentation, dst: BoxPresentation, r, i: int, check: bool) -> MackeyHom:
    mack_src = src.mackey
    mack_dst = dst.mackey
    m = r.underlying if isinstance(r, GreenFunctor) else r
    maps = {}
    for d in mack_src.ctx.divisors:
        rows = []
        for (e, tup) in src.tags[d]:
            gens = identity_matrix(m.level[e].num_generators)
            slot_rows = [gens[t] for t in tup[: i + 1]] + [r.unit[e]] + [gens[t] for t in tup[i + 1:]]
            rows.append(dst.expand(d, e, slot_rows))
        maps[d] = AbHom(mack_src.level[d], mack_dst.level[d], rows, check=check)
    return MackeyHom(mack_src, mack_dst, maps, check=check)


def twisted_cyclic_nerve(r, k_max: int, green: bool = False, check: bool = True) -> SimplicialMackey:
    """HC^G(R; twisted by the distinguished generator), truncated at k_max.

    With green=True every degree carries its box-power Green structure
    (slower; needed when the consumer multiplies nerve classes).
    """
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    r = getattr(r, "green", r)
    pres = [box_power(r, j + 1, green=green) for j in range(k_max + 1)]
    degrees = [p.mackey for p in pres]
    faces: list = [None]
    for j in range(1, k_max + 1):
        faces.append([_face_hom(pres[j], pres[j - 1], r, i, j, check) for i in range(j + 1)])
    degens = []
    for j in range(k_max):
        degens.append([_degeneracy_hom(pres[j], pres[j + 1], r, i, check) for i in range(j + 1)])
    x = SimplicialMackey(degrees[0].ctx, degrees, [None] + faces[1:], degens, presentations=pres)
    if check:
        x.check_identities()
    return x


class MackeyHomology:
    """Levelwise homology of a Mackey complex at one degree, with projections."""

    def __init__(self, cx: MackeyComplex, k: int):
        if k + 1 > cx.max_degree:
            raise TruncationTooShortError(
                f"homology at degree {k} needs degree {k + 1} (have {cx.max_degree})"
            )
        self.k = k
        mid = cx.degrees[k]
        ctx = mid.ctx
        self.ctx = ctx
        self.subquotients = {}
        zero = FgAbGroup(0)
        for d in ctx.divisors:
            d_in = cx.boundaries[k + 1].maps[d]
            if k >= 1:
                d_out = cx.boundaries[k].maps[d]
            else:
                d_out = AbHom(mid.level[d], zero, [() for _ in range(mid.level[d].num_generators)], check=False)
            comp = d_in.compose(d_out)
            if not comp.is_zero():
                raise SimplicialIdentityError("∂∘∂ != 0 at homology assembly")
            from .fgab import preimage_basis

            cycles = preimage_basis(d_out.matrix, d_out.target.relations)
            self.subquotients[d] = Subquotient(mid.level[d], cycles, d_in.matrix)

        level = {d: self.subquotients[d].group for d in ctx.divisors}
        res = {}
        tr = {}
        for (dlo, dhi) in prime_edges(ctx):
            res[(dlo, dhi)] = self.subquotients[dhi].induced(mid.res[(dlo, dhi)], self.subquotients[dlo])
            tr[(dlo, dhi)] = self.subquotients[dlo].induced(mid.tr[(dlo, dhi)], self.subquotients[dhi])
        weyl = {d: self.subquotients[d].induced(mid.weyl[d], self.subquotients[d]) for d in ctx.divisors}
        self.mackey = MackeyFunctor(ctx, level, res, tr, weyl, name=f"H_{k}")

    def induced_hom(self, chain_map_at_k, other: "MackeyHomology") -> MackeyHom:
        """Push a chain map (at degree k) to a map of homology Mackey functors."""
        maps = {
            d: self.subquotients[d].induced(chain_map_at_k.maps[d], other.subquotients[d])
            for d in self.ctx.divisors
        }
        return MackeyHom(self.mackey, other.mackey, maps, check=False)


def hh(r, k: int, k_max: int | None = None, nerve: SimplicialMackey | None = None) -> MackeyFunctor:
    """Twisted Hochschild homology H̲H̲_k as a Mackey functor.

    Needs the nerve truncated to at least k+1; a prebuilt nerve may be
    passed to amortize construction across degrees.
    """
    if nerve is None:
        nerve = twisted_cyclic_nerve(r, (k_max if k_max is not None else k + 1))
    if k + 1 > nerve.max_degree:
        raise TruncationTooShortError(f"nerve truncated at {nerve.max_degree}, need {k + 1}")
    cx = moore_complex(nerve, check=False)
    return MackeyHomology(cx, k).mackey


def hh0_oracle(r) -> GreenFunctor:
    """Degree-0 oracle: the strict coequalizer of id and the generator.

    Computed as the quotient by the Green ideal generated by g·x − x over
    every level and generator.
    """
    r = getattr(r, "green", r)
    m = r.underlying
    gens = []
    for d in m.ctx.divisors:
        w = m.weyl[d]
        for i in range(m.level[d].num_generators):
            row = list(w.matrix[i])
            row[i] -= 1
            gens.append((d, tuple(row)))
    return quotient_by_green_ideal(r, gens)


def hh0_green(r, nerve: SimplicialMackey | None = None):
    """HH_0 presented as a quotient of R itself (Green structure descends).

    Returns (green_quotient, boundary_image_rows) where the rows, per
    level, span the image of ∂_1 transported along R^{□1} ≅ R.
    """
    r = getattr(r, "green", r)
    if nerve is None:
        nerve = twisted_cyclic_nerve(r, 1)
    iota = full_transfer_identification(nerve.presentations[0])
    if not iota.is_isomorphism():
        raise AssertionError("R^{□1} → R identification must be an isomorphism")
    cx = moore_complex(nerve, check=False)
    boundary = cx.boundaries[1].compose(iota)
    rows = {d: boundary.maps[d].matrix for d in r.ctx.divisors}
    quotient, _ = quotient_by_subgroups(r, rows)
    return quotient, rows


# ---------------------------------------------------------------------------
# simplicial operators and edgewise subdivision


def apply_monotone(x: SimplicialMackey, f: tuple[int, ...], target_degree: int) -> MackeyHom:
    """X(f) : X_b → X_a for a monotone map f : [a] → [b], via face/degeneracy peeling."""
    a = len(f) - 1
    b = target_degree
    f = tuple(f)
    if any(f[i] > f[i + 1] for i in range(a)):
        raise ValueError("map is not monotone")
    if f and (f[0] < 0 or f[-1] > b):
        raise ValueError("map out of range")
    image = set(f)
    missing = [v for v in range(b + 1) if v not in image]
    if missing:
        v = max(missing)
        f2 = tuple(t if t < v else t - 1 for t in f)
        return x.face(b, v).compose(apply_monotone(x, f2, b - 1))
    if a == b:
        return MackeyHom.identity(x.degrees[b])
    p = next(i for i in range(a) if f[i] == f[i + 1])
    f2 = f[:p] + f[p + 1:]
    return apply_monotone(x, f2, b).compose(x.degeneracy(a - 1, p))


def edgewise_subdivision(x: SimplicialMackey, r: int, check: bool = True) -> SimplicialMackey:
    """sd_r X with (sd_r X)_j = X_{r(j+1)-1} and block-repeated structure maps."""
    if r < 1:
        raise ValueError("r must be positive")
    out_max = (x.max_degree + 1) // r - 1
    if out_max < 0:
        raise TruncationTooShortError("input truncation too short for any output degree")
    degrees = [x.degrees[r * (j + 1) - 1] for j in range(out_max + 1)]

    def block_delta(i, j):
        # δ_i repeated across r blocks: [rj-1] → [r(j+1)-1]
        out = []
        for t in range(r):
            for y in range(j):
                out.append(t * (j + 1) + (y if y < i else y + 1))
        return tuple(out)

    def block_sigma(i, j):
        # σ_i repeated across r blocks: [r(j+2)-1] → [r(j+1)-1]
        out = []
        for t in range(r):
            for y in range(j + 2):
                out.append(t * (j + 1) + (y if y <= i else y - 1))
        return tuple(out)

    faces: list = [None]
    for j in range(1, out_max + 1):
        faces.append([
            apply_monotone(x, block_delta(i, j), r * (j + 1) - 1) for i in range(j + 1)
        ])
    degens = []
    for j in range(out_max):
        degens.append([
            apply_monotone(x, block_sigma(i, j), r * (j + 1) - 1) for i in range(j + 1)
        ])
    out = SimplicialMackey(x.ctx, degrees, faces, degens)
    if check:
        out.check_identities()
    return out


def restrict_simplicial(x: SimplicialMackey, j: int, check: bool = False) -> SimplicialMackey:
    """Apply i_J^* degreewise; structure maps keep their matrices."""
    from .mackey import restrict

    degrees = [restrict(m, j) for m in x.degrees]
    ctx = degrees[0].ctx

    def push(hom: MackeyHom, src, dst) -> MackeyHom:
        maps = {d: hom.maps[d] for d in ctx.divisors}
        return MackeyHom(src, dst, maps, check=check)

    faces: list = [None]
    for m in range(1, x.max_degree + 1):
        faces.append([push(h, degrees[m], degrees[m - 1]) for h in x.faces[m]])
    degens = []
    for m in range(x.max_degree):
        degens.append([push(h, degrees[m], degrees[m + 1]) for h in x.degeneracies[m]])
    return SimplicialMackey(ctx, degrees, faces, degens)
