"""Untwisted affine root-system data for the finite types A-G.

Weights are plain tuples of exact numbers.  A weight of the affine lattice
carries ``rank + 2`` entries ``(c_0, ..., c_n, c_delta)``: the coefficients on
the affine fundamental weights followed by the null-root coefficient.  A
classical (cl-projected) weight drops the last entry.  With this choice the
pairing against the i-th simple coroot is a coordinate read, and simple
reflections are integer column updates.

Node labels follow the standard tables (finite nodes 1..n, affine node 0);
for G2 node 1 is the long simple root and node 2 the short one.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

Weight = tuple  # (c_0, ..., c_n[, c_delta]) with int or Fraction entries

ITERATION_CAP = 100_000


class RootDataError(ValueError):
    pass


def _chain_cartan(n: int) -> list[list[int]]:
    c = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i in range(n - 1):
        c[i][i + 1] = -1
        c[i + 1][i] = -1
    return c


def _finite_tables(letter: str, rank: int):
    """Finite Cartan matrix, theta marks, comarks, r, short nodes, tau data."""
    n = rank
    if letter == "A":
        if n < 1:
            raise RootDataError("type A needs rank >= 1")
        return _chain_cartan(n), [1] * n, [1] * n, 1, (), None
    if letter == "B":
        if n < 2:
            raise RootDataError("type B needs rank >= 2")
        c = _chain_cartan(n)
        c[n - 1][n - 2] = -2  # <alpha_{n-1}, alpha_n^vee> = -2
        marks = [1] + [2] * (n - 1)
        comarks = [1] + [2] * (n - 2) + [1]
        tau = tuple(range(n - 1, 1, -1)) + (0,) + tuple(range(1, n))
        return c, marks, comarks, 2, (n,), (tau, n)
    if letter == "C":
        if n < 2:
            raise RootDataError("type C needs rank >= 2")
        c = _chain_cartan(n)
        c[n - 2][n - 1] = -2  # <alpha_n, alpha_{n-1}^vee> = -2
        marks = [2] * (n - 1) + [1]
        comarks = [1] * n
        tau = tuple(range(n, 0, -1)) + (0,)
        return c, marks, comarks, 2, tuple(range(1, n)), (tau, 1)
    if letter == "D":
        if n < 4:
            raise RootDataError("type D needs rank >= 4")
        c = _chain_cartan(n - 1)
        for row in c:
            row.append(0)
        c.append([0] * n)
        c[n - 1][n - 1] = 2
        c[n - 3][n - 1] = c[n - 1][n - 3] = -1
        c[n - 2][n - 1] = c[n - 1][n - 2] = 0
        marks = [1] + [2] * (n - 3) + [1, 1]
        return c, marks, list(marks), 1, (), None
    if letter == "G":
        if n != 2:
            raise RootDataError("type G needs rank 2")
        c = [[2, -1], [-3, 2]]  # node 1 long, node 2 short
        return c, [2, 3], [2, 1], 3, (2,), ((1, 2, 0, 1), 2)
    if letter == "F":
        if n != 4:
            raise RootDataError("type F needs rank 4")
        c = _chain_cartan(4)
        c[2][1] = -2  # <alpha_2, alpha_3^vee> = -2
        return c, [2, 3, 4, 2], [2, 3, 2, 1], 2, (3, 4), ((2, 3, 1, 2, 3, 4, 0, 1, 2), 3)
    if letter == "E":
        raise RootDataError("type E exceeds the supported rank table")
    raise RootDataError(f"unknown type letter {letter!r}")


def solve_exact(matrix, rhs):
    """Solve a small square linear system by fraction-exact elimination."""
    n = len(rhs)
    a = [[Fraction(matrix[i][j]) for j in range(n)] + [Fraction(rhs[i])] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [v * inv for v in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[col])]
    return tuple(a[i][n] for i in range(n))


def normalize_entry(v):
    if isinstance(v, Fraction):
        return int(v) if v.denominator == 1 else v
    return v


def normalize_weight(x) -> Weight:
    return tuple(normalize_entry(v) for v in x)


class RootSystem:
    """Affine root-system instance for one finite type and rank.

    All derived tables (affine Cartan matrix, root enumerations, the short
    subsystem bridge) are computed once in the constructor; instances are
    immutable and shared through :func:`root_system`.
    """

    def __init__(self, letter: str, rank: int):
        cartan, marks, comarks, r, short_nodes, tau = _finite_tables(letter, rank)
        self.letter = letter
        self.rank = rank
        self.finite_cartan = tuple(tuple(row) for row in cartan)
        self.theta_coeffs = (0,) + tuple(marks)  # theta on alpha_1..alpha_n, padded
        self.comarks = (1,) + tuple(comarks)  # a_i^vee with a_0^vee = 1
        self.r = r
        self.short_nodes = short_nodes
        self._tau = tau

        n = rank
        # affine Cartan: row 0 / column 0 from theta and theta^vee
        chat = [[0] * (n + 1) for _ in range(n + 1)]
        chat[0][0] = 2
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                chat[i][j] = cartan[i - 1][j - 1]
        for j in range(1, n + 1):
            chat[0][j] = -sum(comarks[i - 1] * cartan[i - 1][j - 1] for i in range(1, n + 1))
            chat[j][0] = -sum(marks[i - 1] * cartan[j - 1][i - 1] for i in range(1, n + 1))
        self.cartan = tuple(tuple(row) for row in chat)

        for i in range(n + 1):
            for j in range(n + 1):
                if (self.cartan[i][j] == 0) != (self.cartan[j][i] == 0):
                    raise RootDataError("affine Cartan matrix fails the GCM symmetry test")
        # theta is long: <theta, theta^vee> = 2
        if sum(self.comarks[i] * -self.cartan[i][0] for i in range(1, n + 1)) != 2:
            raise RootDataError("marks/comarks tables are inconsistent")

        if tau is not None:
            self._check_tau()

    def __repr__(self):
        return f"RootSystem({self.letter}{self.rank})"

    @property
    def nodes(self) -> range:
        return range(self.rank + 1)

    @property
    def finite_nodes(self) -> range:
        return range(1, self.rank + 1)

    @property
    def is_simply_laced(self) -> bool:
        return self.r == 1

    # -- weights ---------------------------------------------------------

    def zero(self, cl: bool = False) -> Weight:
        return (0,) * (self.rank + 1 + (0 if cl else 1))

    def simple_root(self, i: int, cl: bool = False) -> Weight:
        """alpha_i in the fundamental-weight basis; delta entry 1 iff i == 0."""
        if i not in self.nodes:
            raise RootDataError(f"unknown node index {i}")
        col = [self.cartan[k][i] for k in self.nodes]
        if not cl:
            col.append(1 if i == 0 else 0)
        return tuple(col)

    def fundamental(self, i: int) -> Weight:
        if i not in self.nodes:
            raise RootDataError(f"unknown node index {i}")
        return tuple(1 if k == i else 0 for k in range(self.rank + 2))

    def delta(self) -> Weight:
        return tuple(0 for _ in range(self.rank + 1)) + (1,)

    def varpi(self, i: int) -> Weight:
        """Classical fundamental weight Lambda_i - a_i^vee Lambda_0, delta = 0."""
        if i not in self.finite_nodes:
            raise RootDataError(f"{i} is not a finite node")
        w = [0] * (self.rank + 2)
        w[i] = 1
        w[0] = -self.comarks[i]
        return tuple(w)

    def weight_of(self, varpi_coeffs, delta: int = 0, level: int = 0) -> Weight:
        """Sum of varpi multiples plus level * Lambda_0 plus delta * delta."""
        if len(varpi_coeffs) != self.rank:
            raise RootDataError("need one coefficient per finite node")
        w = [0] * (self.rank + 2)
        for i, c in enumerate(varpi_coeffs, start=1):
            w[i] += c
            w[0] -= c * self.comarks[i]
        w[0] += level
        w[-1] += delta
        return tuple(w)

    def pairing(self, x: Weight, i: int):
        return x[i]

    def level(self, x: Weight):
        return sum(self.comarks[i] * x[i] for i in self.nodes)

    def is_cl(self, x: Weight) -> bool:
        if len(x) == self.rank + 2:
            return False
        if len(x) == self.rank + 1:
            return True
        raise RootDataError(f"weight of length {len(x)} does not fit rank {self.rank}")

    def cl(self, x: Weight) -> Weight:
        return x[: self.rank + 1] if not self.is_cl(x) else x

    def add(self, x: Weight, y: Weight) -> Weight:
        return tuple(normalize_entry(a + b) for a, b in zip(x, y, strict=True))

    def sub(self, x: Weight, y: Weight) -> Weight:
        return tuple(normalize_entry(a - b) for a, b in zip(x, y, strict=True))

    def scale(self, c, x: Weight) -> Weight:
        return tuple(normalize_entry(c * a) for a in x)

    # -- reflections -----------------------------------------------------

    def reflect(self, i: int, x: Weight) -> Weight:
        """s_i(x) = x - <x, alpha_i^vee> alpha_i, on either lattice."""
        c = x[i]
        if c == 0:
            return x
        alpha = self.simple_root(i, cl=self.is_cl(x))
        return tuple(normalize_entry(a - c * b) for a, b in zip(x, alpha))

    def weyl_apply(self, word, x: Weight) -> Weight:
        """Apply s_{word[0]} ... s_{word[-1]} to x (rightmost letter first)."""
        for i in reversed(word):
            x = self.reflect(i, x)
        return x

    def is_dominant(self, x: Weight) -> bool:
        return all(x[i] >= 0 for i in self.nodes)

    def dominantize(self, x: Weight):
        """Dominant representative and a word with x = s_{j_1}...s_{j_k} Lambda.

        Reflects at the lowest violated node each step; terminates for
        integral weights of positive level.
        """
        if self.level(x) <= 0:
            raise RootDataError("dominantize needs a positive-level weight")
        if any(not isinstance(v, int) for v in x):
            raise RootDataError("dominantize needs an integral weight")
        word = []
        for _ in range(ITERATION_CAP):
            neg = next((i for i in self.nodes if x[i] < 0), None)
            if neg is None:
                return x, tuple(word)
            word.append(neg)
            x = self.reflect(neg, x)
        raise RootDataError("dominantize exceeded the iteration cap")

    def antidominantize_finite(self, lam: Weight) -> Weight:
        """w_0(lam) for a classical weight: all finite pairings become <= 0."""
        if self.level(lam) != 0 or (len(lam) == self.rank + 2 and lam[-1] != 0):
            raise RootDataError("expected a classical (level-zero) weight")
        x = lam
        for _ in range(ITERATION_CAP):
            pos = next((i for i in self.finite_nodes if x[i] > 0), None)
            if pos is None:
                return x
            x = self.reflect(pos, x)
        raise RootDataError("antidominantize exceeded the iteration cap")

    # -- finite root enumeration ----------------------------------------

    @lru_cache(maxsize=None)
    def positive_roots_alpha(self) -> tuple:
        """Positive finite roots as coefficient tuples on (alpha_1..alpha_n)."""
        n = self.rank
        simple = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
        seen = set(simple)
        frontier = list(simple)
        while frontier:
            nxt = []
            for gamma in frontier:
                for i in range(1, n + 1):
                    p = sum(gamma[j] * self.finite_cartan[i - 1][j] for j in range(n))
                    refl = list(gamma)
                    refl[i - 1] -= p
                    refl = tuple(refl)
                    if all(v >= 0 for v in refl) and refl not in seen:
                        seen.add(refl)
                        nxt.append(refl)
            frontier = nxt
        return tuple(sorted(seen))

    @lru_cache(maxsize=None)
    def positive_coroots(self) -> tuple:
        """Positive coroots as coefficient tuples on (alpha_1^vee..alpha_n^vee)."""
        n = self.rank
        simple = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
        seen = set(simple)
        frontier = list(simple)
        while frontier:
            nxt = []
            for gv in frontier:
                for i in range(1, n + 1):
                    p = sum(gv[j] * self.finite_cartan[j][i - 1] for j in range(n))
                    refl = list(gv)
                    refl[i - 1] -= p
                    refl = tuple(refl)
                    if all(v >= 0 for v in refl) and refl not in seen:
                        seen.add(refl)
                        nxt.append(refl)
            frontier = nxt
        return tuple(sorted(seen))

    def weyl_dimension(self, varpi_coeffs) -> int:
        """Dimension of the irreducible finite-type module, by the product formula."""
        num = 1
        den = 1
        for gv in self.positive_coroots():
            num *= sum(d * (c + 1) for d, c in zip(gv, varpi_coeffs))
            den *= sum(gv)
        assert num % den == 0
        return num // den

    def classical_alpha_expand(self, x: Weight):
        """Coefficients on (alpha_1..alpha_n) of the classical part of x."""
        rhs = [x[i] for i in self.finite_nodes]
        return solve_exact(self.finite_cartan, rhs)

    # -- short subsystem -------------------------------------------------

    def _require_short(self):
        if self.is_simply_laced:
            raise RootDataError("short-subsystem operations need a non-simply-laced type")

    def short_system(self) -> "RootSystem":
        self._require_short()
        return root_system("A", len(self.short_nodes))

    def restrict_sh(self, x: Weight) -> Weight:
        """Project an affine weight to the lattice of the short subsystem."""
        self._require_short()
        if self.is_cl(x):
            raise RootDataError("restrict_sh expects a full affine weight")
        c0 = self.r * self.level(x) - sum(x[i] for i in self.short_nodes)
        coords = [c0] + [x[i] for i in self.short_nodes] + [x[-1]]
        return normalize_weight(tuple(coords))

    def include_sh(self, y: Weight) -> Weight:
        """Splitting of restrict_sh: short simple roots, Lambda_0 and delta map
        to their namesakes upstairs.  Coordinates may come out fractional."""
        self._require_short()
        sh = self.short_system()
        k = sh.rank
        if len(y) != k + 2:
            raise RootDataError("include_sh expects a full short-lattice weight")
        lv = sh.level(y)
        finite = solve_exact(sh.finite_cartan, [y[j] for j in sh.finite_nodes])
        out = [Fraction(0)] * (self.rank + 2)
        for j, node in enumerate(self.short_nodes):
            alpha = self.simple_root(node)
            for p in range(self.rank + 2):
                out[p] += finite[j] * alpha[p]
        out[0] += Fraction(lv, self.r)
        out[-1] += y[-1]
        return normalize_weight(tuple(out))

    def tau_data(self):
        """Word over the affine nodes and the short node it transports to
        the lowest short root level; hardcoded per type, validated on build."""
        self._require_short()
        if self._tau is None:
            raise RootDataError("no tau word for this type")
        return self._tau

    def short_theta_alpha(self) -> Weight:
        """Highest root of the short subsystem: sum of the short simple roots."""
        self._require_short()
        out = self.zero()
        for i in self.short_nodes:
            out = self.add(out, self.simple_root(i))
        return out

    def _check_tau(self):
        word, j = self._tau
        target = self.sub(self.delta(), self.short_theta_alpha())
        if self.weyl_apply(word, self.simple_root(j)) != target:
            raise RootDataError("tau word does not transport alpha_j correctly")


    def to_json(self) -> dict:
        return {"type": self.letter, "rank": self.rank}


@lru_cache(maxsize=None)
def root_system(letter: str, rank: int) -> RootSystem:
    return RootSystem(letter, rank)


def root_system_from_json(payload: dict) -> RootSystem:
    return root_system(payload["type"], int(payload["rank"]))
