"""Structural decompositions tying the three computation routes together.

Route (a) sums the full-lattice weights over the finite level-zero crystal.
Route (b) peels the level-one block character of the short subsystem into
level-r blocks and transports them back through the splitting.  Route (c)
concatenates the basic highest path onto every crystal element, raises
greedily to find its component, and reads each component's top key.  The
headline checks are (a) = (b) as characters and (b) = (c) as multisets.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import paths as P
from .characters import (
    Character,
    char_sum,
    dominance_leq,
    decompose_hd,
    finite_key,
    graded_multiplicity,
    hd_below_short,
    hd_delta,
    hd_finite_part,
    hd_key,
    i_sh_char,
    i_sh_hd,
    peel_demazure,
)
from .crystals import (
    NODE_CAP,
    CrystalGraph,
    classically_highest,
    degree,
    full_weight,
    generate_level_zero,
    level_zero_cached,
)
from .demazure import demazure_character, demazure_params
from .rootdata import RootSystem, Weight

RAISE_CAP = 10**4


class DecompositionError(RuntimeError):
    pass


# -- highest elements under a dominant weight --------------------------------

def highest_candidates(rs: RootSystem, Lambda: Weight, lam: Weight,
                       graph: CrystalGraph | None = None):
    """Anchored representatives whose pairing profiles stay above the
    thresholds set by Lambda, one per eligible projected element.

    Null-root shifts leave every profile unchanged (the null root pairs to
    zero with all coroots), so each representative stands for its whole
    shift family.
    """
    if graph is None:
        graph = generate_level_zero(rs, lam)
    out = []
    for pos, path in enumerate(graph.nodes):
        if all(P.min_h(rs, path, i) >= -Lambda[i] for i in rs.nodes):
            out.append(pos)
    return graph, out


# -- route (c): components of the concatenated crystal ------------------------

@dataclass
class Component:
    mu_coeffs: tuple
    n: int
    members: list  # positions into the crystal graph
    top_path: P.Path  # highest path of the component


@dataclass
class DemazureImage:
    graph: CrystalGraph
    components: list

    def multiset(self):
        return sorted((c.mu_coeffs, c.n) for c in self.components)


def _raise_to_highest(rs: RootSystem, path: P.Path, cap: int) -> P.Path:
    for _ in range(cap):
        for i in rs.nodes:
            up = P.e_op(rs, i, path)
            if up is not None:
                path = up
                break
        else:
            return path
    raise DecompositionError("raising exceeded the step cap")


def decompose_tensor_image(rs: RootSystem, lam: Weight, cap: int = NODE_CAP,
                           raise_cap: int = RAISE_CAP,
                           graph: CrystalGraph | None = None,
                           Lambda: Weight | None = None) -> DemazureImage:
    """Group the concatenations of the highest straight path of ``Lambda``
    with every crystal element by the highest path of their component, and
    read each component's top (dominance-maximal) restricted key.

    ``Lambda`` defaults to the basic level-one weight.  Any positive multiple
    of it is allowed: those keep every finite pairing zero, which is what
    makes the top-key read meaningful."""
    if Lambda is None:
        Lambda = rs.fundamental(0)
    if any(Lambda[i] != 0 for i in rs.finite_nodes) or Lambda[0] < 1 or Lambda[-1] != 0:
        raise DecompositionError("the tensor base must be a positive multiple "
                                 "of the basic level-one weight")
    if graph is None:
        graph = generate_level_zero(rs, lam, cap)
    base = P.straight(Lambda)
    buckets: dict = {}
    for pos, path in enumerate(graph.nodes):
        top = _raise_to_highest(rs, P.concat(base, path), raise_cap)
        buckets.setdefault(top, []).append(pos)

    graph2, highest = highest_candidates(rs, Lambda, lam, graph=graph)
    tops_expected = {P.concat(base, graph.nodes[pos]) for pos in highest}
    if set(buckets) != tops_expected:
        raise DecompositionError("component tops do not match the highest candidates")

    components = []
    for top, members in sorted(buckets.items(), key=lambda kv: min(kv[1])):
        keys = [hd_key(rs, full_weight(graph, pos)) for pos in members]
        maxima = [k for k in set(keys) if all(dominance_leq(rs, k2, k) for k2 in keys)]
        if len(maxima) != 1 or keys.count(maxima[0]) != 1:
            raise DecompositionError(f"component top key is not unique: {maxima}")
        top_key = maxima[0]
        mu = hd_finite_part(top_key)
        if any(c < 0 for c in mu):
            raise DecompositionError(f"component top {top_key} is not dominant")
        components.append(Component(tuple(mu), int(hd_delta(top_key)), members, top))
    return DemazureImage(graph, components)


# -- the short-subsystem bridge ------------------------------------------------

def lam_bar_coeffs(rs: RootSystem, lam: Weight) -> tuple:
    """Coefficients of the restricted weight on the short chain."""
    return tuple(lam[i] for i in rs.short_nodes)


def lam_prime(rs: RootSystem, lam: Weight) -> Weight:
    """The part of lam invisible to the short subsystem (may be fractional)."""
    return rs.sub(lam, rs.include_sh(rs.restrict_sh(lam)))


def sh_embed(rs: RootSystem, lam: Weight, short_path: P.Path) -> P.Path:
    """Transport a short-system path: split each direction and add the
    straight line of the invisible part.  The result has integral directions
    whenever the input directions lie in the restricted orbit."""
    lp = lam_prime(rs, lam)
    dirs = []
    for nu in short_path.dirs:
        d = rs.add(rs.include_sh(nu), lp)
        if any(isinstance(c, Fraction) for c in d):
            raise DecompositionError(f"embedded direction {d} is not integral")
        dirs.append(d)
    return P.make_path(dirs, short_path.sigmas)


@lru_cache(maxsize=None)
def _short_block_char(sh: RootSystem, level: int, nu_coeffs: tuple, m: int) -> Character:
    spec = demazure_params(sh, level, nu_coeffs, m)
    return demazure_character(spec, restrict_to_hd=True)


def short_block_char(rs: RootSystem, level: int, nu_coeffs, m: int) -> Character:
    """Restricted character of a short-system block of the given level."""
    return Character(_short_block_char(rs.short_system(), level, tuple(nu_coeffs), m))


def short_level_one_char(rs: RootSystem, lam: Weight, m: int = 0) -> Character:
    return short_block_char(rs, 1, lam_bar_coeffs(rs, lam), m)


def peel_short_filtration(rs: RootSystem, lam: Weight, tie_break=None):
    """Peel the level-one short block character into level-r pieces."""
    sh = rs.short_system()
    ch = short_level_one_char(rs, lam)

    def char_of(nu_key, m):
        return short_block_char(rs, rs.r, nu_key, m)

    return peel_demazure(sh, ch, char_of, tie_break=tie_break)


def lam_prime_hd(rs: RootSystem, lam: Weight) -> tuple:
    """Restricted key of the invisible part of lam (grading entry zero)."""
    lp = hd_finite_part(i_sh_hd(rs, lam_bar_coeffs(rs, lam) + (0,)))
    return tuple(a - b for a, b in zip(lam[1:-1], lp, strict=True)) + (0,)


def weyl_filtration_multiset(rs: RootSystem, lam: Weight):
    """The multiset of (mu coefficients, grading shift, multiplicity).

    Simply laced types contribute the single block at the weight itself;
    otherwise the short-system peel is transported through the splitting and
    shifted by the invisible part of lam.
    """
    coeffs = finite_key(rs, lam)
    if rs.is_simply_laced:
        return [(coeffs, 0, 1)]
    lpk = hd_finite_part(lam_prime_hd(rs, lam))
    out = []
    for nu_key, m, mult in peel_short_filtration(rs, lam):
        pushed = hd_finite_part(i_sh_hd(rs, nu_key + (0,)))
        mu = tuple(a + b for a, b in zip(pushed, lpk, strict=True))
        if any(Fraction(c).denominator != 1 or c < 0 for c in mu):
            raise DecompositionError(f"filtration weight {mu} is not dominant integral")
        out.append((tuple(int(c) for c in mu), m, mult))
    return out


def path_side_char(rs: RootSystem, lam: Weight, cap: int = NODE_CAP,
                   graph: CrystalGraph | None = None) -> Character:
    """Route (a): the full-lattice weight sum over the finite crystal."""
    if graph is None:
        graph = generate_level_zero(rs, lam, cap)
    ch = Character()
    for path in graph.nodes:
        key = hd_key(rs, path.endpoint())
        ch[key] = ch[key] + 1
    return ch


def filtration_char(rs: RootSystem, filtration) -> Character:
    """Route (b): the blocks of the filtration, summed at their shifts."""
    pieces = []
    for mu, m, mult in filtration:
        spec = demazure_params(rs, 1, mu, m)
        pieces.append(demazure_character(spec, restrict_to_hd=True).scaled(mult))
    return char_sum(pieces)


def short_restriction_identity(rs: RootSystem, lam: Weight,
                               graph: CrystalGraph | None = None):
    """Both short-projection identities, reported as (ok, detail lines).

    First: the part of the path-side sum supported below lam along short
    roots equals the transported level-one short block character.  Second:
    the same projection applied to the full level-one block character equals
    the transported level-r short block character.
    """
    lines = []
    ok = True
    lam_prime_key = lam_prime_hd(rs, lam)

    lhs = path_side_char(rs, lam, graph=graph).projected(hd_below_short(rs, lam))
    rhs = i_sh_char(rs, short_level_one_char(rs, lam)).shifted(lam_prime_key)
    if lhs != rhs:
        ok = False
        lines.append(f"path-side projection differs: {lhs.added(rhs, -1)}")

    lam_coeffs = finite_key(rs, lam)
    full = demazure_character(demazure_params(rs, 1, lam_coeffs, 0), restrict_to_hd=True)
    lhs2 = full.projected(hd_below_short(rs, lam))
    rhs2 = i_sh_char(
        rs, short_block_char(rs, rs.r, lam_bar_coeffs(rs, lam), 0)
    ).shifted(lam_prime_key)
    if lhs2 != rhs2:
        ok = False
        lines.append(f"block projection differs: {lhs2.added(rhs2, -1)}")
    return ok, lines


def short_demazure_identity(rs: RootSystem, lam: Weight, m: int) -> bool:
    """Projection identity for the level-one block at an arbitrary shift."""
    lam_prime_key = lam_prime_hd(rs, lam)
    lam_coeffs = finite_key(rs, lam)
    full = demazure_character(demazure_params(rs, 1, lam_coeffs, m), restrict_to_hd=True)
    lhs = full.projected(hd_below_short(rs, lam))
    rhs = i_sh_char(
        rs, short_block_char(rs, rs.r, lam_bar_coeffs(rs, lam), m)
    ).shifted(lam_prime_key)
    return lhs == rhs


# -- the full verification report ---------------------------------------------

@dataclass
class VerifyReport:
    lam_coeffs: tuple
    crystal_size: int
    factor_sizes: dict
    filtration: list
    image_multiset: list
    checks: dict
    graded: dict

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def verify_main(rs: RootSystem, lam: Weight, cap: int = NODE_CAP,
                raise_cap: int = RAISE_CAP) -> VerifyReport:
    """Run all three routes for one weight and cross-check every identity."""
    graph = level_zero_cached(rs, lam, cap)
    a_char = path_side_char(rs, lam, graph=graph)

    filtration = weyl_filtration_multiset(rs, lam)
    b_char = filtration_char(rs, filtration)

    image = decompose_tensor_image(rs, lam, cap, raise_cap, graph=graph)
    b_multiset = sorted(
        (mu, m) for mu, m, mult in filtration for _ in range(mult)
    )

    checks = {
        "char_a_eq_b": a_char == b_char,
        "multiset_b_eq_c": b_multiset == image.multiset(),
        "partition": sorted(p for comp in image.components for p in comp.members)
        == list(range(len(graph))),
    }

    factor_sizes = {}
    prod = 1
    for i in rs.finite_nodes:
        if lam[i]:
            size = len(level_zero_cached(rs, rs.varpi(i), cap))
            factor_sizes[i] = size
            prod *= size ** lam[i]
    checks["dimension_product"] = prod == len(graph)

    graded = {}
    hd_decomp = decompose_hd(rs, a_char)
    support = sorted({mu for (mu, m) in hd_decomp})
    highest = classically_highest(graph)
    graded_ok = True
    for mu in support:
        direct = {}
        for pos in highest:
            key = hd_key(rs, full_weight(graph, pos))
            if hd_finite_part(key) == mu:
                deg = -degree(graph, pos)
                direct[deg] = direct.get(deg, 0) + 1
        series = graded_multiplicity(rs, a_char, _coeffs_from_key(rs, mu))
        graded[mu] = series
        if series != direct:
            graded_ok = False
    checks["graded_multiplicities"] = graded_ok

    if not rs.is_simply_laced:
        ok, _ = short_restriction_identity(rs, lam, graph=graph)
        checks["short_restriction"] = ok

    return VerifyReport(
        lam_coeffs=finite_key(rs, lam),
        crystal_size=len(graph),
        factor_sizes=factor_sizes,
        filtration=filtration,
        image_multiset=image.multiset(),
        checks=checks,
        graded=graded,
    )


def _coeffs_from_key(rs: RootSystem, key) -> tuple:
    # finite keys of dominant weights are exactly their coefficient tuples
    return tuple(int(c) for c in key)
