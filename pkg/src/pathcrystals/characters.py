"""Finitely supported integer formal sums over weight lattices.

A character is a dict from hashable weight keys to nonzero integers.  Three
key shapes circulate: full affine keys ``(c_0..c_n, c_delta)``, restricted
keys ``(c_1..c_n, c_delta)`` obtained by dropping the affine fundamental
coordinate, and finite keys ``(c_1..c_n)``.  The restriction map erases the
level, which is exactly what lets level-zero path weights be compared with
level-one crystal weights.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from . import crystals as C
from .rootdata import RootSystem, Weight, normalize_entry, normalize_weight


class CharacterError(ValueError):
    pass


class Character(dict):
    """Integer-coefficient formal sum; zero coefficients are never stored."""

    def __missing__(self, key):
        return 0

    @classmethod
    def monomial(cls, key, coeff: int = 1):
        ch = cls()
        if coeff:
            ch[normalize_weight(key)] = coeff
        return ch

    def added(self, other, sign: int = 1) -> "Character":
        out = Character(self)
        for k, v in other.items():
            new = out[k] + sign * v
            if new:
                out[k] = new
            else:
                out.pop(k, None)
        return out

    def scaled(self, c: int) -> "Character":
        if c == 0:
            return Character()
        return Character({k: c * v for k, v in self.items()})

    def convolved(self, other) -> "Character":
        out = Character()
        for k1, v1 in self.items():
            for k2, v2 in other.items():
                k = tuple(normalize_entry(a + b) for a, b in zip(k1, k2, strict=True))
                new = out[k] + v1 * v2
                if new:
                    out[k] = new
                else:
                    out.pop(k, None)
        return out

    def shifted(self, key) -> "Character":
        return Character(
            {tuple(normalize_entry(a + b) for a, b in zip(k, key, strict=True)): v
             for k, v in self.items()}
        )

    def projected(self, predicate) -> "Character":
        return Character({k: v for k, v in self.items() if predicate(k)})

    def mass(self) -> int:
        return sum(self.values())


def char_sum(chars) -> Character:
    out = Character()
    for ch in chars:
        out = out.added(ch)
    return out


# -- key shapes ------------------------------------------------------------

def hd_key(rs: RootSystem, x: Weight) -> tuple:
    """Drop the affine fundamental coordinate: (c_1..c_n, c_delta)."""
    if rs.is_cl(x):
        raise CharacterError("restriction needs a full affine weight")
    return normalize_weight(x[1:])


def finite_key(rs: RootSystem, x: Weight) -> tuple:
    """Finite pairings only."""
    return normalize_weight(x[1 : rs.rank + 1])


def restrict_hd(rs: RootSystem, ch: Character) -> Character:
    out = Character()
    for k, v in ch.items():
        key = hd_key(rs, k)
        new = out[key] + v
        if new:
            out[key] = new
        else:
            out.pop(key, None)
    return out


def hd_finite_part(key) -> tuple:
    return key[:-1]


def hd_delta(key):
    return key[-1]


# -- lattice predicates ------------------------------------------------------

def _alpha_expand_diff(rs: RootSystem, lam_finite, key_finite):
    diff = [a - b for a, b in zip(lam_finite, key_finite, strict=True)]
    return rs.classical_alpha_expand((0,) + tuple(diff))


def in_q_plus(rs: RootSystem, lam_finite, key_finite) -> bool:
    """lam - key is a nonnegative integer sum of simple roots."""
    coeffs = _alpha_expand_diff(rs, lam_finite, key_finite)
    return all(Fraction(c).denominator == 1 and c >= 0 for c in coeffs)


def in_q_plus_short(rs: RootSystem, lam_finite, key_finite) -> bool:
    """lam - key is a nonnegative integer sum of short simple roots."""
    coeffs = _alpha_expand_diff(rs, lam_finite, key_finite)
    for node, c in zip(rs.finite_nodes, coeffs):
        if Fraction(c).denominator != 1:
            return False
        if node in rs.short_nodes:
            if c < 0:
                return False
        elif c != 0:
            return False
    return True


def hd_below_short(rs: RootSystem, lam: Weight):
    """Predicate on restricted keys for membership in lam - Q_+^sh + Z delta."""
    lam_f = finite_key(rs, lam)

    def pred(key):
        return in_q_plus_short(rs, lam_f, hd_finite_part(key))

    return pred


def hd_below(rs: RootSystem, lam: Weight):
    """Predicate on restricted keys for membership in lam - Q_+ + Z delta."""
    lam_f = finite_key(rs, lam)

    def pred(key):
        return in_q_plus(rs, lam_f, hd_finite_part(key))

    return pred


# -- the short-lattice character pushforward ---------------------------------

def i_sh_hd(rs: RootSystem, key) -> tuple:
    """Push a restricted key of the short system through the splitting.

    The finite part is expanded over the short simple roots and re-read as
    pairings in the ambient system; the grading entry is carried across.
    """
    sh = rs.short_system()
    finite = sh.classical_alpha_expand((0,) + tuple(key[:-1]))
    pair = [Fraction(0)] * rs.rank
    for j, node in enumerate(rs.short_nodes):
        for i in rs.finite_nodes:
            pair[i - 1] += finite[j] * rs.cartan[i][node]
    return normalize_weight(tuple(pair) + (key[-1],))


def i_sh_char(rs: RootSystem, ch: Character) -> Character:
    out = Character()
    for k, v in ch.items():
        key = i_sh_hd(rs, k)
        new = out[key] + v
        if new:
            out[key] = new
        else:
            out.pop(key, None)
    return out


# -- finite-type irreducible characters --------------------------------------

@lru_cache(maxsize=None)
def _finite_char_cached(rs: RootSystem, mu_coeffs) -> Character:
    graph = C.finite_closure(rs, mu_coeffs)
    ch = Character()
    for path in graph.nodes:
        key = path.endpoint()[1:]
        ch[key] = ch[key] + 1
    assert ch.mass() == rs.weyl_dimension(mu_coeffs)
    return ch

def finite_char(rs: RootSystem, mu_coeffs) -> Character:
    """Character of the irreducible finite-type module, on finite keys."""
    if any(c < 0 for c in mu_coeffs):
        raise CharacterError("need a dominant weight")
    return Character(_finite_char_cached(rs, tuple(mu_coeffs)))


# -- graded decomposition over finite irreducibles ---------------------------

def decompose_finite(rs: RootSystem, ch: Character) -> dict:
    """Write a finite-key character as a sum of irreducible characters.

    Repeatedly strips a dominance-maximal support weight; a negative
    multiplicity or a non-dominant maximum means the input was not a genuine
    module character.
    """
    residue = Character(ch)
    out: dict = {}
    while residue:
        keys = sorted(residue)
        maximal = [
            k for k in keys
            if not any(k2 != k and in_q_plus(rs, k2, k) for k2 in keys)
        ]
        top = maximal[-1]
        if any(c < 0 for c in top):
            raise CharacterError(f"maximal weight {top} is not dominant")
        mult = residue[top]
        if mult < 0:
            raise CharacterError(f"negative multiplicity at {top}")
        residue = residue.added(finite_char(rs, top).scaled(mult), sign=-1)
        if any(v < 0 for v in residue.values()):
            raise CharacterError(f"negative residue after stripping {top}")
        out[top] = out.get(top, 0) + mult
    return out


def decompose_hd(rs: RootSystem, ch: Character) -> dict:
    """Decompose a restricted character slice-by-slice in the grading:
    returns {(mu, m): multiplicity} over dominant finite weights mu."""
    slices: dict = {}
    for key, v in ch.items():
        slices.setdefault(hd_delta(key), Character())[hd_finite_part(key)] = v
    out = {}
    for m, slice_ch in sorted(slices.items()):
        for mu, mult in decompose_finite(rs, slice_ch).items():
            out[(mu, m)] = mult
    return out


def graded_multiplicity(rs: RootSystem, ch: Character, mu_coeffs) -> dict:
    """Multiplicity series of one irreducible inside a restricted character,
    as a map exponent -> coefficient in the grading variable."""
    mu_key = finite_key(rs, rs.weight_of(mu_coeffs))
    series = {}
    for (nu, m), mult in decompose_hd(rs, ch).items():
        if nu == mu_key:
            series[m] = series.get(m, 0) + mult
    return series


# -- peeling into level-r building blocks -------------------------------------

def dominance_leq(rs: RootSystem, key1, key2) -> bool:
    """key1 precedes key2: finite parts differ by Q_+ and the grading of
    key1 is at least that of key2."""
    return hd_delta(key1) >= hd_delta(key2) and in_q_plus(
        rs, hd_finite_part(key2), hd_finite_part(key1)
    )


def peel_demazure(rs: RootSystem, ch: Character, char_of, tie_break=None):
    """Strip a restricted character into the given building-block characters.

    ``char_of(nu_coeffs, m)`` must return the restricted character of the
    block with top key ``nu + m delta``.  Maximal support keys are stripped
    greedily; ties among incomparable maxima default to (grading ascending,
    pairings descending), and the result is independent of that choice for
    genuine inputs.
    """
    if tie_break is None:
        tie_break = lambda key: (hd_delta(key), tuple(-c for c in hd_finite_part(key)))
    residue = Character(ch)
    out = []
    while residue:
        keys = sorted(residue)
        maximal = [
            k for k in keys
            if not any(k2 != k and dominance_leq(rs, k, k2) for k2 in keys)
        ]
        maximal = [k for k in maximal if residue[k] > 0]
        dominant = [k for k in maximal if all(c >= 0 for c in hd_finite_part(k))]
        if not dominant:
            raise CharacterError(
                f"no dominant maximal key while residue remains: {dict(residue)}"
            )
        top = min(dominant, key=tie_break)
        mult = residue[top]
        nu = hd_finite_part(top)
        m = hd_delta(top)
        out.append((nu, m, mult))
        residue = residue.added(char_of(nu, m).scaled(mult), sign=-1)
        if any(v < 0 for v in residue.values()):
            raise CharacterError(
                f"negative residue after stripping block {(nu, m)}: {dict(residue)}"
            )
    return out


# -- serialization -------------------------------------------------------------

def char_to_json(ch: Character) -> list:
    return [
        {"weight": [str(c) if isinstance(c, Fraction) else c for c in k], "coeff": v}
        for k, v in sorted(ch.items(), key=lambda kv: tuple(map(str, kv[0])))
    ]
