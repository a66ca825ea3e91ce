"""Demazure crystals as path sets, and their characters two independent ways.

A Demazure crystal is built by applying full lowering strings along a word
inside the path model of the ambient highest-weight crystal; its character
is the plain weight sum over the node set.  A divided-difference construction
of the same character is kept alongside as a cross-check oracle: the two
computations share nothing but the word.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import paths as P
from .characters import Character, restrict_hd
from .crystals import NODE_CAP, CrystalGraph, GenerationError
from .rootdata import RootSystem, Weight


@dataclass(frozen=True)
class DemazureSpec:
    """The triple (level, classical dominant weight, grading shift) resolved
    into a dominant affine weight and the word reaching the extremal target.

    ``word`` satisfies target = s_{word[0]} ... s_{word[-1]} (Lambda); string
    closures are applied along the word from its last letter to its first.
    """

    rs: RootSystem
    level: int
    lam_coeffs: tuple
    m: int
    Lambda: Weight
    word: tuple

    @property
    def target(self) -> Weight:
        return self.rs.weyl_apply(self.word, self.Lambda)


def demazure_params(rs: RootSystem, level: int, lam_coeffs, m: int = 0) -> DemazureSpec:
    """Resolve (level, lam, m): dominantize w_0(lam) + level Lambda_0 + m delta."""
    if level < 1:
        raise ValueError("level must be positive")
    lam_coeffs = tuple(lam_coeffs)
    if len(lam_coeffs) != rs.rank or any(c < 0 for c in lam_coeffs):
        raise ValueError("need nonnegative coefficients, one per finite node")
    lowest = rs.antidominantize_finite(rs.weight_of(lam_coeffs))
    target = rs.add(lowest, rs.weight_of((0,) * rs.rank, delta=m, level=level))
    Lam, word = rs.dominantize(target)
    spec = DemazureSpec(rs, level, lam_coeffs, m, Lam, word)
    assert spec.target == target
    return spec


def f_string_closure(rs: RootSystem, paths, i: int, cap: int = NODE_CAP):
    """Close an ordered node set under the full lowering string at one node."""
    out = dict.fromkeys(paths)
    for path in paths:
        cur = path
        while True:
            cur = P.f_op(rs, i, cur)
            if cur is None:
                break
            out[cur] = None
            if len(out) > cap:
                raise GenerationError(f"node cap {cap} exceeded")
    return list(out)


def demazure_crystal_for_word(rs: RootSystem, Lambda: Weight, word, cap: int = NODE_CAP):
    """Node set grown from the straight highest path by string closures,
    applied along the word from the innermost letter outwards."""
    nodes = [P.straight(Lambda)]
    for i in reversed(word):
        nodes = f_string_closure(rs, nodes, i, cap)
    return nodes


def demazure_crystal(spec: DemazureSpec, cap: int = NODE_CAP):
    return demazure_crystal_for_word(spec.rs, spec.Lambda, spec.word, cap)


def demazure_graph(spec: DemazureSpec, cap: int = NODE_CAP) -> CrystalGraph:
    """The Demazure node set with the operator edges staying inside it."""
    rs = spec.rs
    nodes = demazure_crystal(spec, cap)
    index = {p: k for k, p in enumerate(nodes)}
    f_edges = {}
    e_edges = {}
    for pos, path in enumerate(nodes):
        for i in rs.nodes:
            down = P.f_op(rs, i, path)
            if down is not None and down in index:
                f_edges[(pos, i)] = (index[down], 0)
            up = P.e_op(rs, i, path)
            if up is not None:
                if up not in index:
                    raise GenerationError("raising left the Demazure node set")
                e_edges[(pos, i)] = (index[up], 0)
    return CrystalGraph(rs, list(nodes), index, f_edges, e_edges, [nodes[0]], tuple(rs.nodes))


def demazure_character(spec: DemazureSpec, restrict_to_hd: bool = False,
                       cap: int = NODE_CAP) -> Character:
    """Weight sum over the Demazure crystal's nodes."""
    ch = Character()
    for path in demazure_crystal(spec, cap):
        key = path.endpoint()
        ch[key] = ch[key] + 1
    if restrict_to_hd:
        ch = restrict_hd(spec.rs, ch)
    return ch


def _divided_difference(rs: RootSystem, i: int, ch: Character) -> Character:
    """Signed alpha_i-string sum between each weight and its reflection."""
    out = Character()
    alpha = rs.simple_root(i)
    for key, coeff in ch.items():
        k = key[i]
        if k >= 0:
            for j in range(k + 1):
                w = rs.sub(key, rs.scale(j, alpha))
                new = out[w] + coeff
                if new:
                    out[w] = new
                else:
                    out.pop(w, None)
        else:
            for j in range(1, -k):
                w = rs.add(key, rs.scale(j, alpha))
                new = out[w] - coeff
                if new:
                    out[w] = new
                else:
                    out.pop(w, None)
    return out


def demazure_character_oracle(spec: DemazureSpec, restrict_to_hd: bool = False) -> Character:
    """The same character by divided differences, sharing only the word."""
    ch = Character.monomial(spec.Lambda)
    for i in reversed(spec.word):
        ch = _divided_difference(spec.rs, i, ch)
    if restrict_to_hd:
        ch = restrict_hd(spec.rs, ch)
    return ch
