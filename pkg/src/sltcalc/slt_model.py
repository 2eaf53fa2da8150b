"""Combinatorial models of the two smoothable slt families.

* ``X_{a,d,m}`` (class T, normal): the cyclic quotient of type
  ``(dm^2, dma - 1)`` with ``m/2 < a < m``, ``gcd(a, m) = 1``.
* ``X_{a,m}`` (non-normal): a cyclic quotient of the normal crossing germ,
  whose normalization consists of the two charts ``X_o`` of type ``(m, a)``
  and ``X_e`` of type ``(m, b)``, ``b = m - a``.

Both are indexed by the plus expansion ``a/b = [q_1, ..., q_k]``: the
exceptional curves are ``E^i_j`` with ``(i, j)`` in ``I = I_o + I_e`` (odd and
even rows), and every curve carries the weights ``rho, lambda-bar, lambda-hat,
lambda, mu-bar, mu-hat, mu``.  The weights are computed from the plus
Euclidean tables; the constructors then check them against the independent
toric resolution from :mod:`sltcalc.cyclic_quotient` (rays, ``lambda`` as
minus convergents, ``mu`` as minus remainders).

Lexicographic order on ``I`` is not the chain order.  ``chain_order`` lists
indices from the ``(1, 0)`` end of the cone; on the odd side it agrees with
lex order, the ``k+1`` block sits in the middle and the even rows follow in
decreasing lex order.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable

from .contfrac import EuclidData, PlusCF, plus_expand, tables
from .cyclic_quotient import (
    CyclicQuotientSurface,
    PullbackMatrix,
    ResolutionChain,
    pullback_coeffs,
    resolve,
)

Index = tuple[int, int]

__all__ = [
    "Index",
    "Weights",
    "ClassTModel",
    "NonNormalModel",
    "build_classT",
    "build_nonnormal",
    "chain_neighbors",
    "gorenstein_index",
    "boundary_identities",
    "model_to_json",
    "admissible_classT",
    "admissible_nonnormal",
    "iter_classT",
    "iter_nonnormal",
    "dumps",
]


@dataclass(frozen=True)
class Weights:
    """Weight row of one exceptional curve.  ``None`` marks undefined entries
    (the bar/hat parts of the non-normal model live on one side only)."""

    rho: int | None
    lbar: int | None
    lhat: int | None
    lam: int
    mubar: int | None
    muhat: int | None
    mu: int


@dataclass(frozen=True, eq=False)
class _Base:
    a: int
    m: int
    q: tuple[int, ...]
    eu: EuclidData
    indexO: tuple[Index, ...]
    indexE: tuple[Index, ...]
    weights: dict

    @property
    def b(self) -> int:
        return self.m - self.a

    @property
    def k(self) -> int:
        return len(self.q)

    def qi(self, i: int) -> int:
        return self.q[i - 1]

    @property
    def index(self) -> tuple[Index, ...]:
        """All of ``I`` in lexicographic order."""
        return tuple(sorted(self.indexO + self.indexE))

    def is_odd(self, idx: Index) -> bool:
        return idx in self._odd_set

    @property
    def _odd_set(self):
        return frozenset(self.indexO)

    def lam(self, idx: Index) -> int:
        return self.weights[idx].lam

    def mu(self, idx: Index) -> int:
        return self.weights[idx].mu

    def P(self, i: int) -> int:
        return self.eu.P(i)

    def Q(self, i: int) -> int:
        return self.eu.Q(i)

    def PQ(self, i: int) -> int:
        return self.eu.PQ(i)

    def r(self, i: int) -> int:
        return self.eu.r(i)


@dataclass(frozen=True, eq=False)
class ClassTModel(_Base):
    d: int = 1
    surface: CyclicQuotientSurface = None
    chain: ResolutionChain = None
    chainPosition: dict = field(default_factory=dict)
    odd_k: bool = False

    normal = True

    @property
    def order(self) -> int:
        return self.d * self.m * self.m

    @property
    def weight_s(self) -> int:
        return self.d * self.m * self.a - 1

    @property
    def chain_order(self) -> tuple[Index, ...]:
        inv = {p: idx for idx, p in self.chainPosition.items()}
        return tuple(inv[p] for p in range(1, len(inv) + 1))

    @property
    def alpha(self) -> PullbackMatrix:
        return _alpha_cache(self.surface)

    def alpha_at(self, iota: Index, eta: Index) -> Fraction:
        return self.alpha(self.chainPosition[iota], self.chainPosition[eta])

    @property
    def index_e_bar(self) -> tuple[Index, ...]:
        """``I_e`` plus the boundary curve ``(k+1, d)`` seen from the even side."""
        return self.indexE + ((self.k + 1, self.d),)

    def extended(self, i: int, j: int) -> Weights:
        """Weight formulas evaluated at any ``(i, j)``, also outside ``I``."""
        return _normal_weights(self.eu, self.a, self.b, self.d, i, j)

    @property
    def label(self) -> str:
        return f"X_{{{self.a},{self.d},{self.m}}}"


@dataclass(frozen=True, eq=False)
class NonNormalModel(_Base):
    chartO: CyclicQuotientSurface = None
    chainO: ResolutionChain = None
    chartE: CyclicQuotientSurface = None
    chainE: ResolutionChain = None
    chainPosition: dict = field(default_factory=dict)
    swapped: bool = False

    normal = False

    @property
    def a_inv(self) -> int:
        return pow(self.a, -1, self.m)

    @property
    def b_inv(self) -> int:
        return pow(self.b, -1, self.m)

    @property
    def index_e_bar(self) -> tuple[Index, ...]:
        return self.indexE

    def chart_of(self, idx: Index) -> str:
        return "o" if idx in self._odd_set else "e"

    def chain_order_chart(self, chart: str) -> tuple[Index, ...]:
        idxs = self.indexO if chart == "o" else self.indexE
        return tuple(sorted(idxs, key=lambda i: self.chainPosition[i]))

    @property
    def chain_order(self) -> tuple[Index, ...]:
        return self.chain_order_chart("o") + self.chain_order_chart("e")

    def alpha_at(self, iota: Index, eta: Index) -> Fraction:
        """Pullback coefficient; zero across the two charts."""
        co, ce = self.chart_of(iota), self.chart_of(eta)
        if co != ce:
            return Fraction(0)
        surf = self.chartO if co == "o" else self.chartE
        return _alpha_cache(surf)(self.chainPosition[iota], self.chainPosition[eta])

    @property
    def label(self) -> str:
        return f"X_{{{self.a},{self.m}}}"


_ALPHA: dict = {}


def _alpha_cache(surface: CyclicQuotientSurface) -> PullbackMatrix:
    key = (surface.r, surface.s)
    if key not in _ALPHA:
        _ALPHA[key] = pullback_coeffs(surface)
    return _ALPHA[key]


# ---------------------------------------------------------------------------
# weight formulas


def _pp(eu: EuclidData, i: int, j: int) -> tuple[int, int]:
    return eu.P(i - 2) + (j - 1) * eu.P(i - 1), eu.Q(i - 2) + (j - 1) * eu.Q(i - 1)


def _rho(eu: EuclidData, i: int, j: int) -> int:
    r_next = eu.r(i) if i <= eu.k + 1 else 0
    return eu.r(i - 1) - (j - 1) * r_next


def _normal_weights(eu, a, b, d, i, j) -> Weights:
    rho = _rho(eu, i, j)
    PP, QQ = _pp(eu, i, j)
    far_l, far_h = -PP + d * a * rho, -QQ + d * b * rho
    if i % 2 == 1:
        lbar, lhat, mubar, muhat = PP, QQ, far_l, far_h
    else:
        lbar, lhat, mubar, muhat = far_l, far_h, PP, QQ
    return Weights(rho, lbar, lhat, lbar + lhat, mubar, muhat, mubar + muhat)


def _nonnormal_weights(eu, i, j) -> Weights:
    rho = _rho(eu, i, j)
    PP, QQ = _pp(eu, i, j)
    if i % 2 == 1:
        return Weights(rho, PP, QQ, PP + QQ, None, None, rho)
    return Weights(rho, None, None, rho, PP, QQ, PP + QQ)


def _index_sets(q, d, normal):
    k = len(q)
    odd, even = [], []
    for i in range(1, k + 2):
        if i % 2 == 1:
            if i < k + 1:
                odd += [(i, j) for j in range(1, q[i - 1] + 1)]
            else:
                odd += [(i, j) for j in range(1, (d if normal else 1) + 1)]
        elif i <= k:
            top = q[i - 1] if (i < k or not normal) else q[k - 1] - 1
            even += [(i, j) for j in range(1, top + 1)]
    return tuple(odd), tuple(even)


def _slope_order(rays: dict) -> dict:
    """Chain positions from ray slopes; rays sit inside a cone starting at (1, 0)."""
    key = {idx: Fraction(v[1], v[0]) if v[0] else None for idx, v in rays.items()}
    inf = [idx for idx, s in key.items() if s is None]
    finite = sorted((idx for idx in key if key[idx] is not None), key=lambda i: key[i])
    return {idx: pos for pos, idx in enumerate(finite + inf, start=1)}


def admissible_classT(a: int, d: int, m: int) -> bool:
    return m >= 2 and d >= 1 and a < m and 2 * a > m and gcd(a, m) == 1


def admissible_nonnormal(a: int, m: int) -> bool:
    return m >= 2 and 0 < a < m and gcd(a, m) == 1


def build_classT(a: int, d: int, m: int, allow_odd: bool = False) -> ClassTModel:
    """Model of ``X_{a,d,m}``.

    For odd ``k`` the model is built from the even-length expansion
    ``[q_1, ..., q_k - 1, 1]`` of ``a/b``; that path is only enabled with
    ``allow_odd`` since the closed formulas are stated for even ``k`` and the
    odd case is checked by the oracles alone.

    >>> M = build_classT(5, 1, 7)
    >>> M.chain.selfInt
    (-2, -2, -5, -4)
    """
    a, d, m = int(a), int(d), int(m)
    if not admissible_classT(a, d, m):
        raise ValueError(f"need gcd(a, m) = 1, m/2 < a < m, d >= 1: got a={a}, d={d}, m={m}")
    b = m - a
    q = plus_expand(Fraction(a, b)).terms
    odd_k = len(q) % 2 == 1
    if odd_k:
        if not allow_odd:
            raise ValueError(f"a/b = {list(q)} has odd length; pass allow_odd=True")
        q = q[:-1] + (q[-1] - 1, 1)
    eu = tables("plus", q, (a, b))
    indexO, indexE = _index_sets(q, d, True)
    weights = {idx: _normal_weights(eu, a, b, d, *idx) for idx in indexO + indexE}
    surface, chain = resolve(d * m * m, d * m * a - 1)
    rays = {idx: (w.lhat, w.lam) for idx, w in weights.items()}
    pos = _slope_order(rays)
    model = ClassTModel(
        a=a, m=m, q=q, eu=eu, indexO=indexO, indexE=indexE, weights=weights,
        d=d, surface=surface, chain=chain, chainPosition=pos, odd_k=odd_k,
    )
    _check_classT(model)
    return model


def _check_classT(model: ClassTModel):
    surf, chain = model.surface, model.chain
    if len(model.index) != chain.k:
        raise AssertionError(f"{model.label}: |I| = {len(model.index)} but the chain has {chain.k} curves")
    for idx, w in model.weights.items():
        p = model.chainPosition[idx]
        if chain.rays[p] != (w.lhat, w.lam):
            raise AssertionError(f"{model.label}: ray of {idx} is {(w.lhat, w.lam)}, chain has {chain.rays[p]}")
        if surf.lam(p) != w.lam or surf.mu(p) != w.mu:
            raise AssertionError(f"{model.label}: weights of {idx} disagree with the resolution")
        if (model.weight_s * w.lam - w.mu) % model.order:
            raise AssertionError(f"{model.label}: {idx} is not semi-invariant")


def build_nonnormal(a: int, m: int) -> NonNormalModel:
    """Model of ``X_{a,m}``; ``a < m - a`` is normalized by exchanging charts.

    >>> N = build_nonnormal(3, 5)
    >>> N.indexO, N.indexE
    (((1, 1), (3, 1)), ((2, 1), (2, 2)))
    """
    a, m = int(a), int(m)
    if not admissible_nonnormal(a, m):
        raise ValueError(f"need 0 < a < m and gcd(a, m) = 1: got a={a}, m={m}")
    swapped = 2 * a < m
    if swapped:
        a = m - a
    b = m - a
    if b == a:  # m = 2, a = 1
        raise ValueError("X_{1,2} has a = b; not covered")
    q = plus_expand(Fraction(a, b)).terms
    if len(q) % 2:
        raise ValueError(f"a/b = {list(q)} has odd length; the non-normal model needs even k")
    eu = tables("plus", q, (a, b))
    indexO, indexE = _index_sets(q, 1, False)
    weights = {idx: _nonnormal_weights(eu, *idx) for idx in indexO + indexE}
    chartO, chainO = resolve(m, a)
    chartE, chainE = resolve(m, b)
    pos = {}
    pos.update(_slope_order({idx: (weights[idx].lhat, weights[idx].lam) for idx in indexO}))
    # even chart: the toric ray of E^i_j is (mu - mu-hat, mu) = (mu-bar, mu)
    pos.update(_slope_order({idx: (weights[idx].mubar, weights[idx].mu) for idx in indexE}))
    model = NonNormalModel(
        a=a, m=m, q=q, eu=eu, indexO=indexO, indexE=indexE, weights=weights,
        chartO=chartO, chainO=chainO, chartE=chartE, chainE=chainE,
        chainPosition=pos, swapped=swapped,
    )
    _check_nonnormal(model)
    return model


def _check_nonnormal(model: NonNormalModel):
    for chart, surf, chain, idxs in (
        ("o", model.chartO, model.chainO, model.indexO),
        ("e", model.chartE, model.chainE, model.indexE),
    ):
        if len(idxs) != chain.k:
            raise AssertionError(f"{model.label}: chart {chart} has {chain.k} curves, index set {len(idxs)}")
        for idx in idxs:
            w = model.weights[idx]
            p = model.chainPosition[idx]
            # member exponents in chart e are (mu, lambda) of the weight table
            first, second = (w.lam, w.mu) if chart == "o" else (w.mu, w.lam)
            ray = (w.lhat, w.lam) if chart == "o" else (w.mubar, w.mu)
            if chain.rays[p] != ray:
                raise AssertionError(f"{model.label}: ray of {idx} is {ray}, chart {chart} has {chain.rays[p]}")
            if (surf.lam(p), surf.mu(p)) != (first, second):
                raise AssertionError(f"{model.label}: weights of {idx} disagree with chart {chart}")


def chain_neighbors(model, iota: Index) -> tuple[Index | None, Index | None]:
    """Left and right neighbours of ``iota`` in its resolution chain."""
    pos = model.chainPosition[iota]
    if model.normal:
        members = model.index
    else:
        members = model.indexO if model.chart_of(iota) == "o" else model.indexE
    by_pos = {model.chainPosition[i]: i for i in members}
    return by_pos.get(pos - 1), by_pos.get(pos + 1)


def gorenstein_index(model) -> int:
    if model.normal:
        r, s = model.order, model.weight_s
        idx = r // gcd(r, s + 1)
        if idx != model.m:
            raise AssertionError(f"{model.label}: index {idx} != m")
        return idx
    return model.m


def boundary_identities(model: ClassTModel) -> list[dict]:
    """Check the gluing identities at the ``k``/``k+1`` junction.

    Returns one record per identity with ``ok`` set; callers treat any
    ``ok = False`` as a failure.
    """
    if not model.normal:
        raise TypeError("boundary identities are a class T notion")
    k, d = model.k, model.d
    ext = model.extended(k, model.qi(k))
    top = model.weights[(k + 1, d)]
    out = [
        dict(name="mu^k_{q_k} = mu^{k+1}_d", expected=top.mu, got=ext.mu),
        dict(name="lambda^k_{q_k} = lambda^{k+1}_d", expected=top.lam, got=ext.lam),
        dict(name="mu-bar^k_{q_k} = mu-bar^{k+1}_d", expected=top.mubar, got=ext.mubar),
    ]
    for j in range(1, d + 1):
        out.append(dict(name=f"rho^{{k+1}}_{j} = 1", expected=1, got=model.weights[(k + 1, j)].rho))
    for rec in out:
        rec["ok"] = rec["expected"] == rec["got"]
    return out


def model_to_json(model) -> dict:
    """Interchange document; every integer is written as a decimal string."""
    s = str
    doc = {
        "q": [s(x) for x in model.q],
        "index_o": [[s(i), s(j)] for i, j in model.indexO],
        "index_e": [[s(i), s(j)] for i, j in model.indexE],
        "weights": {
            f"{i},{j}": {
                key: (None if val is None else s(val))
                for key, val in vars(model.weights[(i, j)]).items()
            }
            for i, j in model.index
        },
        "chain_order": [[s(i), s(j)] for i, j in model.chain_order],
        "gorenstein_index": s(gorenstein_index(model)),
    }
    if model.normal:
        doc["kind"] = "classT"
        doc["params"] = {"a": s(model.a), "d": s(model.d), "m": s(model.m)}
        doc["type"] = [s(model.order), s(model.weight_s)]
        doc["rays"] = [[s(x), s(y)] for x, y in model.chain.rays]
        doc["self_intersections"] = [s(x) for x in model.chain.selfInt]
        doc["odd_k"] = model.odd_k
    else:
        doc["kind"] = "nonnormal"
        doc["params"] = {"a": s(model.a), "m": s(model.m)}
        doc["swapped"] = model.swapped
        doc["charts"] = {
            name: {
                "type": [s(surf.r), s(surf.s)],
                "rays": [[s(x), s(y)] for x, y in chain.rays],
                "self_intersections": [s(x) for x in chain.selfInt],
                "boundary": "Delta_" + name,
            }
            for name, surf, chain in (("o", model.chartO, model.chainO), ("e", model.chartE, model.chainE))
        }
    return doc


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2)


def iter_classT(max_m: int, max_d: int, allow_odd: bool = False) -> Iterable[ClassTModel]:
    for m in range(3, max_m + 1):
        for a in range(m // 2 + 1, m):
            for d in range(1, max_d + 1):
                if not admissible_classT(a, d, m):
                    continue
                if len(plus_expand(Fraction(a, m - a))) % 2 and not allow_odd:
                    continue
                yield build_classT(a, d, m, allow_odd=allow_odd)


def iter_nonnormal(max_m: int) -> Iterable[NonNormalModel]:
    for m in range(3, max_m + 1):
        for a in range(m // 2 + 1, m):
            if admissible_nonnormal(a, m) and len(plus_expand(Fraction(a, m - a))) % 2 == 0:
                yield build_nonnormal(a, m)
