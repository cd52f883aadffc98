"""Built-in classification data for real Lie algebras of dimension <= 5.

Bracket lists below are 1-based ``(i, j, k, c)`` quadruples, exactly as
printed in the usual ``A_{n,i}`` tables (basis X1..Xn).  A_5_40 and n6_20_1
use their printed e-bases.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Mapping

from ..algebra import GradedDecomposition, LieAlgebra

DEFAULT_GRID = tuple(Fraction(x) for x in ("-1", "-1/2", "-1/3", "1/3", "1/2", "1"))


class CatalogError(KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else ""


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    dim: int
    recipe: Callable[..., list]
    params: tuple = ()
    constraint: Callable[..., bool] | None = None
    constraint_text: str = ""
    endpoints: Mapping = field(default_factory=dict)
    decomposition: GradedDecomposition | None = None
    flags: frozenset = frozenset()
    labels: tuple = ()
    fixed: Mapping = field(default_factory=dict)
    ifps: str | None = None

    def in_range(self, values: Mapping) -> bool:
        if set(values) != set(self.params):
            return False
        return self.constraint is None or bool(self.constraint(**values))

    def samples(self, grid=DEFAULT_GRID) -> list[dict]:
        if not self.params:
            return [{}]
        per = []
        for p in self.params:
            vals = set(grid) | set(self.endpoints.get(p, ()))
            per.append(sorted(vals))
        out = [dict(zip(self.params, combo)) for combo in product(*per)]
        return [s for s in out if self.in_range(s)]

    def build(self, values: Mapping | None = None) -> LieAlgebra:
        values = {k: Fraction(v) for k, v in (values or {}).items()}
        if not self.in_range(values):
            raise ValueError(
                f"{self.name}: parameters {format_params(values) or '(none)'} outside range"
                + (f" {self.constraint_text}" if self.constraint_text else ""))
        quads = self.recipe(**{**self.fixed, **values})
        label = self.name if not values else f"{self.name}[{format_params(values)}]"
        return LieAlgebra.from_constants(label, self.dim, [(i - 1, j - 1, k - 1, c) for i, j, k, c in quads],
                                         self.labels)


def format_params(values: Mapping) -> str:
    return ",".join(f"{k}={v}" for k, v in sorted(values.items()))


def _d(h=(), layers=(), z=(), nested=None) -> GradedDecomposition:
    """Decomposition from 1-based index lists."""
    m = lambda t: tuple(i - 1 for i in t)
    return GradedDecomposition(m(h), tuple(m(layer) for layer in layers), m(z), nested)


NIL = frozenset({"nilpotent", "solvable"})
SOLV = frozenset({"solvable"})
PERF = frozenset({"perfect"})

# Table rows: the last nonzero k-column is Z'.
ROW_2 = _d(h=[1], z=[2])
ROW_3 = _d(h=[1], z=[2, 3])
ROW_4A = _d(h=[1], z=[2, 3, 4])
ROW_4B = _d(h=[1], layers=[[2, 3]], z=[4])
ROW_4C = _d(h=[1, 2], z=[3, 4])
ROW_5A = _d(h=[1], z=[2, 3, 4, 5])
ROW_5B = _d(h=[1], layers=[[2, 3], [4]], z=[5])
ROW_5C = _d(h=[1], layers=[[2, 3, 4]], z=[5])
ROW_5D = _d(h=[1, 2], layers=[[3, 4]], z=[5])
ROW_5E = _d(h=[1, 2, 3], z=[4, 5])


def _rows_5() -> dict:
    rows = {}
    names = lambda r: [f"A_5_{i}" for i in r]
    for n in names([1, 2]) + names(range(7, 19)):
        rows[n] = ROW_5A
    for n in names([3, 4, 30, 31]):
        rows[n] = ROW_5B
    for n in names([5, 6]) + names(range(19, 30)):
        rows[n] = ROW_5C
    for n in names(range(32, 38)):
        rows[n] = ROW_5D
    for n in names([38, 39]):
        rows[n] = ROW_5E
    return rows


# Decomposition metadata for the dimension-5 families whose constants are not built in.
TABLE_DIM5 = _rows_5()


def _entry(name, dim, recipe, **kw) -> CatalogEntry:
    return CatalogEntry(name, dim, recipe, **kw)


def _builtin() -> list[CatalogEntry]:
    F = Fraction
    E = []
    E.append(_entry("A_1_1", 1, lambda: [], decomposition=_d(z=[1]), flags=NIL | {"abelian"}))
    E.append(_entry("A_2_1", 2, lambda: [(1, 2, 2, 1)], decomposition=ROW_2, flags=SOLV))

    E.append(_entry("A_3_1", 3, lambda: [(1, 2, 3, 1)], decomposition=ROW_3, flags=NIL))
    E.append(_entry("A_3_2", 3, lambda: [(1, 2, 2, 1), (1, 2, 3, 1), (1, 3, 3, 1)],
                    decomposition=ROW_3, flags=SOLV))
    a35 = lambda a: [(1, 2, 2, a), (1, 3, 3, 1)]
    a35_kw = dict(decomposition=ROW_3, flags=SOLV)
    E.append(_entry("A_3_5", 3, a35, params=("a",), constraint=lambda a: 0 < abs(a) <= 1,
                    constraint_text="0 < |a| <= 1", endpoints={"a": (F(-1), F(1))}, **a35_kw))
    E.append(_entry("A_3_3", 3, a35, fixed={"a": F(1)}, **a35_kw))
    E.append(_entry("A_3_4", 3, a35, fixed={"a": F(-1)}, **a35_kw))
    a37 = lambda a: [(1, 2, 2, a), (1, 2, 3, 1), (1, 3, 2, -1), (1, 3, 3, a)]
    E.append(_entry("A_3_7", 3, a37, params=("a",), constraint=lambda a: a >= 0,
                    constraint_text="a >= 0", endpoints={"a": (F(0),)}, **a35_kw))
    E.append(_entry("A_3_6", 3, a37, fixed={"a": F(0)}, **a35_kw))
    E.append(_entry("A_3_8", 3, lambda: [(1, 2, 2, 1), (1, 3, 3, -1), (2, 3, 1, 1)],
                    flags=PERF | {"simple"}, ifps="sl2_n_hom"))
    E.append(_entry("A_3_9", 3, lambda: [(1, 2, 3, 1), (2, 3, 1, 1), (3, 1, 2, 1)],
                    flags=PERF | {"simple"}, ifps="o3_n_hom"))

    E.append(_entry("A_4_1", 4, lambda: [(1, 2, 3, 1), (1, 3, 4, 1)], decomposition=ROW_4A, flags=NIL))
    E.append(_entry("A_4_2", 4, lambda a: [(1, 2, 2, 1), (1, 2, 3, 1), (1, 3, 3, 1), (1, 4, 4, a)],
                    params=("a",), constraint=lambda a: a != 0, constraint_text="a != 0",
                    decomposition=ROW_4A, flags=SOLV))
    E.append(_entry("A_4_3", 4, lambda: [(1, 2, 3, 1), (1, 4, 4, 1)], decomposition=ROW_4A, flags=SOLV))
    E.append(_entry("A_4_4", 4, lambda: [(1, 2, 2, 1), (1, 2, 3, 1), (1, 3, 3, 1), (1, 3, 4, 1), (1, 4, 4, 1)],
                    decomposition=ROW_4A, flags=SOLV))
    E.append(_entry("A_4_5", 4, lambda a, b: [(1, 2, 2, b), (1, 3, 3, a), (1, 4, 4, 1)],
                    params=("a", "b"), constraint=lambda a, b: a * b != 0 and -1 <= a <= b <= 1,
                    constraint_text="ab != 0, -1 <= a <= b <= 1",
                    endpoints={"a": (F(-1), F(1)), "b": (F(-1), F(1))},
                    decomposition=ROW_4A, flags=SOLV))
    E.append(_entry("A_4_6", 4, lambda a, b: [(1, 2, 2, 2), (1, 2, 3, 1), (1, 3, 2, -1), (1, 3, 3, b), (1, 4, 4, a)],
                    params=("a", "b"), constraint=lambda a, b: a != 0 and b >= 0,
                    constraint_text="a != 0, b >= 0", endpoints={"b": (F(0),)},
                    decomposition=ROW_4A, flags=SOLV))
    E.append(_entry("A_4_7", 4, lambda: [(1, 2, 2, 1), (1, 2, 3, 1), (1, 3, 3, 1), (1, 4, 4, 2), (2, 3, 4, -1)],
                    decomposition=ROW_4B, flags=SOLV))
    a49 = lambda b: [(1, 2, 2, b), (1, 3, 3, 1), (1, 4, 4, 1 + b), (2, 3, 4, -1)]
    E.append(_entry("A_4_9", 4, a49, params=("b",), constraint=lambda b: -1 <= b <= 1,
                    constraint_text="-1 <= b <= 1", endpoints={"b": (F(-1), F(1))},
                    decomposition=ROW_4B, flags=SOLV))
    E.append(_entry("A_4_8", 4, a49, fixed={"b": F(-1)}, decomposition=ROW_4B, flags=SOLV))
    a411 = lambda a: [(1, 2, 2, a), (1, 2, 3, 1), (1, 3, 2, -1), (1, 3, 3, a), (1, 4, 4, 2 * a), (2, 3, 4, -1)]
    E.append(_entry("A_4_11", 4, a411, params=("a",), constraint=lambda a: a >= 0,
                    constraint_text="a >= 0", endpoints={"a": (F(0),)},
                    decomposition=ROW_4B, flags=SOLV))
    E.append(_entry("A_4_10", 4, a411, fixed={"a": F(0)}, decomposition=ROW_4B, flags=SOLV))
    E.append(_entry("A_4_12", 4, lambda: [(1, 3, 4, 1), (1, 4, 3, -1), (2, 3, 3, -1), (2, 4, 4, -1)],
                    decomposition=ROW_4C, flags=SOLV))

    E.append(_entry("A_5_39", 5, lambda: [(1, 2, 3, -1), (1, 4, 5, -1), (1, 5, 4, 1), (2, 4, 4, -1), (2, 5, 5, -1)],
                    decomposition=_d(h=[1, 2, 3], z=[4, 5], nested=_d(h=[1], z=[2, 3])), flags=SOLV))
    E.append(_entry("A_5_40", 5, lambda: [(1, 2, 1, 2), (1, 3, 2, -1), (2, 3, 3, 2), (1, 4, 5, 1),
                                          (2, 4, 4, 1), (2, 5, 5, -1), (3, 5, 4, 1)],
                    labels=tuple(f"e{i}" for i in range(1, 6)), flags=PERF, ifps="sl_affine_2"))
    E.append(_entry("n6_20_1", 6, lambda: [(1, 3, 3, 1), (1, 5, 2, 1), (1, 6, 5, 1), (4, 6, 2, 1), (5, 6, 4, 1)],
                    labels=tuple(f"e{i}" for i in range(1, 7)),
                    decomposition=_d(h=[1, 3], layers=[[5, 6], [4]], z=[2], nested=_d(h=[1], z=[3])),
                    flags=SOLV))
    return E


BUILTIN: tuple = tuple(_builtin())

ALIASES = {"sl2": "A_3_8", "o3": "A_3_9", "sl2xR2": "A_5_40"}
