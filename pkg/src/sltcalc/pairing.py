"""Local intersection numbers of decomposed divisor vectors.

Two routes are kept side by side:

* :func:`pair` evaluates the closed form in terms of the summary statistics
  ``sigma, tau`` and the bilinear forms ``O`` (on ``I_o``) and ``E`` (on
  ``I_e-bar``).  It depends on the odd/even split of its arguments.
* :func:`toric_pair_oracle` sums ``nu_i nu'_j alpha^i_j`` over the totals,
  straight from the pullback coefficients of the resolution.

The two agree whenever the vectors are split the canonical way (odd part on
``I_o``, even part on ``I_e-bar``).  The special elements ``phi``, ``psi`` and
``theta`` and the recursions for ``nu(n)^2`` are built on top of ``pair``.
"""
from __future__ import annotations

import weakref
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import Iterable

from .cyclic_quotient import pair_divisors
from .fullsheaf import DivisorVector, nu

__all__ = [
    "ibar_e",
    "FormTables",
    "SummaryStats",
    "stats",
    "pair",
    "toric_pair_oracle",
    "delta",
    "element",
    "PHI_READINGS",
    "phi",
    "theta",
    "psi",
    "psi_pairs",
    "prev_lex",
    "phi_identity",
    "theta_identity",
    "psi_identity",
    "psi_expected",
    "nu_squared",
    "small_range_end",
    "i_small",
    "i_large",
    "j_large",
    "nu_squared_bounds",
    "cross_term_check",
    "CROSS_TERM_READINGS",
    "cross_term_hypotheses",
    "cross_term_order",
]

Index = tuple[int, int]


def ibar_e(model) -> tuple[Index, ...]:
    """Even-side index set, with ``(k+1, d)`` appended in the class T case."""
    return tuple(sorted(model.index_e_bar))


# ---------------------------------------------------------------------------
# forms and statistics


@dataclass(frozen=True)
class FormTables:
    O: dict
    E: dict

    @classmethod
    def of(cls, model) -> "FormTables":
        w = model.weights
        odd = sorted(model.indexO)
        even = ibar_e(model)
        O = {(i, j): (w[i].lam * w[j].lbar if i < j else w[i].lbar * w[j].lam)
             for i in odd for j in odd}
        E = {(i, j): (_mu(model, i) * _mubar(model, j) if i < j else _mubar(model, i) * _mu(model, j))
             for i in even for j in even}
        return cls(O, E)

    def Oform(self, x, y) -> int:
        return sum(a * b * self.O[i, j] for i, a in x.items() for j, b in y.items())

    def Eform(self, x, y) -> int:
        return sum(a * b * self.E[i, j] for i, a in x.items() for j, b in y.items())

    def symmetric(self) -> bool:
        return all(self.O[i, j] == self.O[j, i] for i, j in self.O) and \
            all(self.E[i, j] == self.E[j, i] for i, j in self.E)


_FORMS: "weakref.WeakKeyDictionary" = weakref.WeakKeyDictionary()


def _forms(model) -> FormTables:
    hit = _FORMS.get(model)
    if hit is None:
        hit = _FORMS[model] = FormTables.of(model)
    return hit


def _mu(model, idx):
    return model.weights[idx].mu


def _mubar(model, idx):
    return model.weights[idx].mubar


@dataclass(frozen=True)
class SummaryStats:
    sigma: int
    tau: int
    sigma_bar: int
    tau_bar: int


def stats(model, v: DivisorVector) -> SummaryStats:
    w = model.weights
    return SummaryStats(
        sum(c * w[i].lam for i, c in v.odd.items()),
        sum(c * w[i].mu for i, c in v.even.items()),
        sum(c * w[i].lbar for i, c in v.odd.items()),
        sum(c * w[i].mubar for i, c in v.even.items()),
    )


def _check_split(model, v: DivisorVector):
    odd, even = set(model.indexO), set(model.index_e_bar)
    bad = [i for i in v.odd if i not in odd] + [i for i in v.even if i not in even]
    if bad:
        raise ValueError(f"vector not split along I_o / I_e-bar: {bad}")


def pair(model, v: DivisorVector, w: DivisorVector) -> Fraction:
    """Closed-form pairing of two decomposed vectors.

    >>> from sltcalc.slt_model import build_classT
    >>> M = build_classT(5, 1, 7)
    >>> pair(M, nu(M, 6), nu(M, 6))
    Fraction(4, 1)
    """
    _check_split(model, v)
    _check_split(model, w)
    F = _forms(model)
    sv, sw = stats(model, v), stats(model, w)
    diff = F.Eform(v.even, w.even) - F.Oform(v.odd, w.odd)
    if model.normal:
        d, m, a = model.d, model.m, model.a
        num = ((d * m * a - 1) * sv.sigma * sw.sigma + sv.sigma * sw.tau + sv.tau * sw.sigma
               - (d * m * a + 1) * sv.tau * sw.tau)
        return Fraction(num, d * m * m) + diff
    return Fraction(model.a * (sv.sigma * sw.sigma - sv.tau * sw.tau), model.m) + diff


def toric_pair_oracle(model, v, w) -> Fraction:
    """``sum nu_i nu'_j alpha^i_j`` over the totals; the split is ignored."""
    x = v.total if isinstance(v, DivisorVector) else dict(v)
    y = w.total if isinstance(w, DivisorVector) else dict(w)
    if model.normal:
        k = model.chain.k
        dx, dy = [0] * k, [0] * k
        for i, c in x.items():
            dx[model.chainPosition[i] - 1] += c
        for i, c in y.items():
            dy[model.chainPosition[i] - 1] += c
        return pair_divisors(model.alpha, dx, dy)
    return sum((a * b * model.alpha_at(i, j) for i, a in x.items() for j, b in y.items()), Fraction(0))


# ---------------------------------------------------------------------------
# special elements


def delta(model, i: int, j: int) -> tuple[str, Index]:
    """Part and index of ``delta^{i,j}``.  In the class T case ``(k, q_k)``
    names the boundary curve ``(k+1, d)`` on the even side."""
    if model.normal and i == model.k and j == model.qi(model.k):
        return "e", (model.k + 1, model.d)
    idx = (i, j)
    if idx not in model.weights:
        raise KeyError(idx)
    return ("o" if i % 2 else "e"), idx


def element(model, terms: Iterable[tuple[int, Index]]) -> DivisorVector:
    o, e = Counter(), Counter()
    for c, (i, j) in terms:
        part, idx = delta(model, i, j)
        (o if part == "o" else e)[idx] += c
    return DivisorVector({i: c for i, c in o.items() if c}, {i: c for i, c in e.items() if c})


PHI_READINGS = ("literal", "corrected")


def phi(model, i: int, j: int, reading: str = "corrected") -> DivisorVector:
    """``-delta^{i,1} + delta^{i,j} + (j-1) delta^{i+1,1}``.  The literal
    reading puts the last term on ``(i+1, j)``."""
    if reading not in PHI_READINGS:
        raise ValueError(reading)
    last = (i + 1, 1) if reading == "corrected" else (i + 1, j)
    return element(model, [(-1, (i, 1)), (1, (i, j)), (j - 1, last)])


def theta(model, i: int, j: int) -> DivisorVector:
    if not 1 <= i <= model.k - 1:
        raise ValueError(f"theta needs 1 <= i <= k - 1, got {i}")
    return element(model, [(-1, (i, model.qi(i) - j + 1)), (1, (i + 2, 1)), (j, (i + 1, 1))])


def prev_lex(model, idx: Index) -> Index | None:
    """Lex predecessor of ``idx`` inside its own part (``I_o`` or ``I_e-bar``)."""
    pool = sorted(model.indexO) if idx[0] % 2 else list(ibar_e(model))
    p = pool.index(idx)
    return pool[p - 1] if p else None


def _psi_admissible(model, iota, eta) -> bool:
    i1, i2 = iota[0], eta[0]
    return (i1 % 2 == i2 % 2 and 1 <= i2 <= model.k and 1 <= eta[1] <= model.qi(i2)
            and iota <= (i2, 1))


def _psi_sum_rows(model, iota, eta):
    return [i for i in range(2, model.k + 2) if i % 2 == iota[0] % 2 and iota <= (i, 1) <= eta]


def psi(model, iota: Index, eta: Index) -> DivisorVector:
    """``psi(iota, eta)`` for ``iota`` in ``I_o`` or ``I_e-bar`` and ``eta = (i2, j2)``
    of the same row parity with ``iota <= (i2, 1)``."""
    if not _psi_admissible(model, iota, eta):
        raise ValueError(f"psi{iota, eta} is not admissible")
    i2, j2 = eta
    terms = []
    pv = prev_lex(model, iota)
    if pv is not None:
        terms.append((-1, pv))
    terms.append((1, iota))
    terms += [(model.qi(i - 1), (i, 1)) for i in _psi_sum_rows(model, iota, eta)]
    terms += [(-1, (i2, 1)), (1, eta), (j2, (i2 + 1, 1))]
    return element(model, terms)


def psi_pairs(model) -> Iterable[tuple[Index, Index]]:
    for iota in sorted(model.indexO) + list(ibar_e(model)):
        for i2 in range(1, model.k + 1):
            if i2 % 2 != iota[0] % 2:
                continue
            for j2 in range(1, model.qi(i2) + 1):
                if iota <= (i2, 1):
                    yield iota, (i2, j2)


def _both_routes(model, v):
    a, b = pair(model, v, v), toric_pair_oracle(model, v, v)
    return a, b


def phi_identity(model, i, j, reading="corrected") -> dict:
    v = phi(model, i, j, reading)
    st = stats(model, v)
    sq, orc = _both_routes(model, v)
    want_s, want_b = (j - 1) * model.PQ(i - 1), (j - 1) * model.P(i - 1)
    ok = sq == orc == j - 1 and st.sigma == st.tau == want_s and st.sigma_bar == st.tau_bar == want_b
    return {"ok": ok, "square": sq, "oracle": orc, "stats": st, "expected_square": j - 1}


def theta_identity(model, i, j) -> dict:
    v = theta(model, i, j)
    st = stats(model, v)
    sq, orc = _both_routes(model, v)
    want_s, want_b = j * model.PQ(i - 1), j * model.P(i - 1)
    ok = sq == orc == j and st.sigma == st.tau == want_s and st.sigma_bar == st.tau_bar == want_b
    return {"ok": ok, "square": sq, "oracle": orc, "stats": st, "expected_square": j}


def psi_expected(model, iota, eta) -> dict:
    """Values of ``sigma, tau, sigma-bar, tau-bar`` and the square for ``psi``.

    ``sigma = tau = j2 PQ_{i2-1}``; both bars are ``j2 P_{i2-1}`` except
    ``tau-bar`` gains 1 at ``iota = (2,1)`` and ``sigma-bar`` loses 1 at
    ``iota = (1,1)``; the square is ``j2`` plus the ``q_{i-1}`` coefficients
    placed on the ``(i, 1)`` with ``iota <= (i, 1) <= eta``.
    """
    i2, j2 = eta
    base = j2 * model.P(i2 - 1)
    return {
        "sigma": j2 * model.PQ(i2 - 1),
        "sigma_bar": base - (1 if iota == (1, 1) else 0),
        "tau_bar": base + (1 if iota == (2, 1) else 0),
        "square": j2 + sum(model.qi(i - 1) for i in _psi_sum_rows(model, iota, eta)),
    }


def psi_identity(model, iota, eta) -> dict:
    v = psi(model, iota, eta)
    st = stats(model, v)
    sq, orc = _both_routes(model, v)
    want = psi_expected(model, iota, eta)
    ok = (sq == orc == want["square"] and st.sigma == st.tau == want["sigma"]
          and st.sigma_bar == want["sigma_bar"] and st.tau_bar == want["tau_bar"])
    return {"ok": ok, "square": sq, "oracle": orc, "stats": st, "expected": want}


# ---------------------------------------------------------------------------
# nu(n)^2 and its bounds


def nu_squared(model, n: int) -> Fraction:
    v = nu(model, n)
    return pair(model, v, v)


def small_range_end(model) -> int:
    """``m - PQ_{k-1}``: the first ``n`` governed by the large-``n`` bound."""
    return model.m - model.PQ(model.k - 1)


def _PQ(model, i):
    return 1 if i == -1 else model.PQ(i)


def i_small(model, n: int) -> int:
    return max(i for i in range(model.k) if model.PQ(i) <= n)


def i_large(model, n: int) -> int:
    return min(i for i in range(model.k) if model.m - n <= model.PQ(i))


def j_large(model, n: int) -> int:
    """``ceil((m - n) / PQ_{i(n)-1}) - 1`` with ``PQ_{-1} = 1``."""
    return ceil(Fraction(model.m - n, _PQ(model, i_large(model, n) - 1))) - 1


def nu_squared_bounds(model, n: int) -> dict:
    """Evaluate whichever bound applies to ``n``.

    Small ``n`` (below :func:`small_range_end`): ``nu(n)^2 >= n / PQ_{i(n)}``,
    and the reverse inequality is reported as ``reverse_holds``.
    Large ``n``: ``nu(n)^2 >= sum_{max(i(n),1) <= h <= k} q_h - j(n)``.
    """
    sq = nu_squared(model, n)
    if n < small_range_end(model):
        i = i_small(model, n)
        rhs = Fraction(n, model.PQ(i))
        return {"range": "small", "n": n, "i": i, "square": sq, "rhs": rhs,
                "holds": sq >= rhs, "reverse_holds": sq <= rhs}
    i, j = i_large(model, n), j_large(model, n)
    rhs = sum(model.qi(h) for h in range(max(i, 1), model.k + 1)) - j
    return {"range": "large", "n": n, "i": i, "j": j, "square": sq, "rhs": Fraction(rhs),
            "holds": sq >= rhs, "reverse_holds": None}


def _first_beyond(model, v: DivisorVector, part: str) -> Index | None:
    pool = list(ibar_e(model)) if part == "e" else sorted(model.indexO)
    sup = v.even if part == "e" else v.odd
    top = max((i for i, c in sup.items() if c), default=None)
    rest = [x for x in pool if top is None or x > top]
    return rest[0] if rest else None


def cross_term_check(model, n: int) -> list[dict]:
    """Replay the recursive description of ``nu(n)`` and check the cross terms.

    Small ``n`` with ``n = j PQ_i + n'``:

    * ``n' = 0``: ``nu(n) = psi(start, (i+1, j))``;
    * ``0 < n' < PQ_{i-1}``: ``nu(n) = nu(n') + psi(eta, (i+1, j))`` with
      ``eta`` the first index after the support of ``nu(n')`` on the side of
      row ``i+1``, and ``nu(n') . psi = 0``;
    * otherwise ``nu(n) = nu(n') + phi(i+1, j+1)`` and ``nu(n') . phi = 0``.

    Large ``n``: ``nu(n) = nu(n + j PQ_{i-1}) - theta(i, j)`` with cross term
    ``j``, and ``nu(n) . theta(i', j') = j'`` whenever ``i(n) <= i' - 1``.
    """
    out = []
    target = nu(model, n)
    if n < small_range_end(model):
        i = i_small(model, n)
        if i < 1:
            return out
        j, rem = divmod(n, model.PQ(i))
        if rem == 0:
            start = (2, 1) if i % 2 else (1, 1)
            v = psi(model, start, (i + 1, j))
            out.append({"step": "psi_start", "ok": v.same_as(target)})
        elif rem < model.PQ(i - 1):
            base = nu(model, rem)
            eta = _first_beyond(model, base, "e" if i % 2 else "o")
            if eta is None:
                out.append({"step": "psi_step", "ok": False, "why": "no index beyond support"})
            else:
                ps = psi(model, eta, (i + 1, j))
                out.append({"step": "psi_step", "ok": (base + ps).same_as(target)
                            and pair(model, base, ps) == 0, "cross": pair(model, base, ps)})
        else:
            base = nu(model, rem)
            ph = phi(model, i + 1, j + 1)
            out.append({"step": "phi_step", "ok": (base + ph).same_as(target)
                        and pair(model, base, ph) == 0, "cross": pair(model, base, ph)})
        return out
    i, j = i_large(model, n), j_large(model, n)
    if i >= 1 and j >= 1 and n + j * model.PQ(i - 1) <= model.m - 1:
        up = nu(model, n + j * model.PQ(i - 1))
        th = theta(model, i, j)
        cross = pair(model, up, th)
        out.append({"step": "theta_step", "ok": (up - th).same_as(target) and cross == j, "cross": cross})
    for ii in range(max(i + 1, 1), model.k):
        for jj in range(1, model.qi(ii) + 1):
            c = pair(model, target, theta(model, ii, jj))
            out.append({"step": "nu_theta", "theta": (ii, jj), "ok": c == jj, "cross": c})
    return out


# ---------------------------------------------------------------------------
# vanishing of cross terms

CROSS_TERM_READINGS = ("componentwise", "support")


def cross_term_hypotheses(model, v: DivisorVector, w: DivisorVector) -> bool:
    """Balance conditions: ``sigma = tau`` for both and ``sigma-bar = tau-bar`` for ``w``."""
    a, b = stats(model, v), stats(model, w)
    return a.sigma == a.tau and b.sigma == b.tau and b.sigma_bar == b.tau_bar


def cross_term_order(v: DivisorVector, w: DivisorVector, reading: str = "support") -> bool:
    """``v <= w`` on each part.  ``support``: every index charged by ``v`` is
    lex ``<=`` every index charged by ``w``.  ``componentwise``: ``v_i <= w_i``."""
    if reading == "componentwise":
        return all(v_part.get(x, 0) <= w_part.get(x, 0)
                   for v_part, w_part in ((v.odd, w.odd), (v.even, w.even))
                   for x in set(v_part) | set(w_part))
    if reading == "support":
        for v_part, w_part in ((v.odd, w.odd), (v.even, w.even)):
            sv = [x for x, c in v_part.items() if c]
            sw = [x for x, c in w_part.items() if c]
            if sv and sw and max(sv) > min(sw):
                return False
        return True
    raise ValueError(reading)
