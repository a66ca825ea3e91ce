"""Crystal generation by operator closure, and the level-zero bookkeeping.

A crystal graph is the closure of a seed path under the chosen root
operators, deduplicated by canonical form.  For level-zero dominant weights
the closure is run on anchored representatives: every produced path is
shifted by the unique null-root multiple that puts its initial direction
back into the finite Weyl orbit of the seed weight.  The shift removed at
each step is recorded on the edge, because the finite-node operators must
never need one while the affine node may.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from math import gcd

from . import paths as P
from .rootdata import RootSystem, Weight

NODE_CAP = 10**6


class GenerationError(RuntimeError):
    pass


@dataclass
class CrystalGraph:
    rs: RootSystem
    nodes: list  # Paths in BFS discovery order
    index: dict  # Path -> position
    f_edges: dict  # (pos, i) -> (pos, shift)
    e_edges: dict  # (pos, i) -> (pos, shift)
    seeds: list
    ops: tuple
    shifts_seen: set = field(default_factory=set)

    def __len__(self):
        return len(self.nodes)

    def weights(self):
        return [p.endpoint() for p in self.nodes]


def _closure(rs, seed_paths, ops, cap, normalizer=None):
    nodes = []
    index = {}
    f_edges = {}
    e_edges = {}
    shifts_seen = set()

    def intern(path):
        shift = 0
        if normalizer is not None:
            path, shift = normalizer(path)
        pos = index.get(path)
        if pos is None:
            pos = len(nodes)
            if pos >= cap:
                raise GenerationError(f"node cap {cap} exceeded")
            nodes.append(path)
            index[path] = pos
        return pos, shift

    for seed in seed_paths:
        if not P.is_integral(rs, seed):
            raise P.PathError("seed path is not integral")
        intern(seed)
    head = 0
    while head < len(nodes):
        pos = head
        head += 1
        path = nodes[pos]
        for i in ops:
            down = P.f_op(rs, i, path)
            if down is not None:
                tgt, sh = intern(down)
                f_edges[(pos, i)] = (tgt, sh)
                shifts_seen.add(sh)
            up = P.e_op(rs, i, path)
            if up is not None:
                tgt, sh = intern(up)
                e_edges[(pos, i)] = (tgt, sh)
                shifts_seen.add(sh)
    return CrystalGraph(rs, nodes, index, f_edges, e_edges, list(seed_paths), tuple(ops), shifts_seen)


def generate(rs: RootSystem, seed: P.Path, ops, cap: int = NODE_CAP) -> CrystalGraph:
    """Breadth-first closure of a seed under both root operators."""
    return _closure(rs, [seed], tuple(ops), cap)


def d_lambda(rs: RootSystem, lam: Weight) -> int:
    """Generator of the null-root offsets inside the affine orbit of lam:
    the gcd of the finite pairings.  Verified again during generation."""
    if rs.level(lam) != 0 or lam[-1] != 0:
        raise ValueError("expected a classical level-zero weight")
    d = 0
    for i in rs.finite_nodes:
        d = gcd(d, abs(lam[i]))
    if d == 0:
        raise ValueError("the zero weight has no offset generator")
    return d


def generate_level_zero(rs: RootSystem, lam: Weight, cap: int = NODE_CAP) -> CrystalGraph:
    """Closure from the straight path to ``lam`` over anchored representatives.

    Every operator output is shifted by a null-root multiple so that its
    initial direction lies in the finite orbit of ``lam``; the node set is
    then finite and in bijection with the projected finite crystal.
    """
    if rs.level(lam) != 0 or lam[-1] != 0 or any(lam[i] < 0 for i in rs.finite_nodes):
        raise ValueError("expected a dominant classical level-zero weight")
    seed = P.straight(lam)
    if all(c == 0 for c in lam):
        return _closure(rs, [seed], tuple(rs.nodes), cap)
    d = d_lambda(rs, lam)

    def normalizer(path):
        offset = path.initial_direction()[-1]
        if offset == 0:
            return path, 0
        if offset % d != 0:
            raise GenerationError(
                f"initial-direction offset {offset} is not a multiple of {d}"
            )
        minus = tuple([0] * (rs.rank + 1)) + (-offset,)
        return P.shift(path, minus), offset // d

    graph = _closure(rs, [seed], tuple(rs.nodes), cap, normalizer=normalizer)
    nonzero = {abs(s) for s in graph.shifts_seen if s != 0}
    if not nonzero or min(nonzero) != 1:
        raise GenerationError("declared offset generator was never attained")
    return graph


_LEVEL_ZERO_CACHE: dict = {}


def level_zero_cached(rs: RootSystem, lam: Weight, cap: int = NODE_CAP) -> CrystalGraph:
    """Shared read-only instances of the anchored level-zero crystals."""
    key = (rs.letter, rs.rank, lam)
    graph = _LEVEL_ZERO_CACHE.get(key)
    if graph is None:
        graph = generate_level_zero(rs, lam, cap)
        _LEVEL_ZERO_CACHE[key] = graph
    return graph


def degree(graph: CrystalGraph, pos: int) -> int:
    """Negated null-root coefficient of the endpoint of an anchored node."""
    deg = -graph.nodes[pos].endpoint()[-1]
    return deg


def full_weight(graph: CrystalGraph, pos: int) -> Weight:
    return graph.nodes[pos].endpoint()


def classically_highest(graph: CrystalGraph) -> list:
    """Positions whose paths admit no raising at any finite node."""
    rs = graph.rs
    out = []
    for pos, path in enumerate(graph.nodes):
        if all(P.eps_phi(rs, i, path)[0] == 0 for i in rs.finite_nodes):
            out.append(pos)
    return out


def compatible_lift_check(graph: CrystalGraph) -> list:
    """Violations of the anchored-lift compatibility rules.

    Finite-node edges must never remove a shift; the affine lowering out of
    a node that admits an affine raising must not either.
    """
    rs = graph.rs
    bad = []
    for (pos, i), (tgt, shift) in list(graph.e_edges.items()) + list(graph.f_edges.items()):
        if i != 0 and shift != 0:
            bad.append(("finite", pos, i, shift))
    for (pos, i), (tgt, shift) in graph.f_edges.items():
        if i == 0 and (pos, 0) in graph.e_edges and shift != 0:
            bad.append(("affine", pos, 0, shift))
    return bad


def finite_closure(rs: RootSystem, mu_coeffs, cap: int = NODE_CAP) -> CrystalGraph:
    """Finite-type crystal: closure of the classical straight path under the
    finite-node operators only."""
    seed = P.straight(rs.cl(rs.weight_of(mu_coeffs)))
    return _closure(rs, [seed], tuple(rs.finite_nodes), cap)


# -- exports ---------------------------------------------------------------

def node_id(path: P.Path) -> str:
    blob = repr((path.dirs, tuple(str(s) for s in path.sigmas)))
    return hashlib.sha1(blob.encode()).hexdigest()[:12]


def graph_to_json(graph: CrystalGraph, with_degrees: bool = False) -> dict:
    nodes = []
    for pos, path in enumerate(graph.nodes):
        rec = {
            "id": node_id(path),
            "weight": list(path.endpoint()),
            "path": P.path_to_json(path),
        }
        if with_degrees:
            rec["degree"] = degree(graph, pos)
        nodes.append(rec)
    edges = [
        {"source": node_id(graph.nodes[pos]), "node": i, "target": node_id(graph.nodes[tgt])}
        for (pos, i), (tgt, _) in sorted(graph.f_edges.items())
    ]
    return {"nodes": nodes, "edges": edges}


def graph_to_dot(graph: CrystalGraph) -> str:
    lines = ["digraph crystal {"]
    for path in graph.nodes:
        lines.append(f'  "{node_id(path)}" [label="{list(path.endpoint())}"];')
    for (pos, i), (tgt, _) in sorted(graph.f_edges.items()):
        lines.append(
            f'  "{node_id(graph.nodes[pos])}" -> "{node_id(graph.nodes[tgt])}" [label="{i}"];'
        )
    lines.append("}")
    return "\n".join(lines)
