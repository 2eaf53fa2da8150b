"""Integer expansions over the weight tables of an slt model.

Three systems, all indexed by the plus expansion ``a/b = [q_1, ..., q_k]``
(``k`` even):

* lambda-sequences ``(j_1, l_2, j_3, ..., j_{k-1}, l_k)`` with value
  ``lambda^1_{j_1} + sum_{odd i >= 3} (l_{i-1} lambda^i_1 + lambda^i_{j_i}) + l_k lambda^{k+1}_1``;
* mu-sequences ``(l_1, j_2, ..., l_{k-1}, j_k)`` with value
  ``sum_{even i} (l_{i-1} mu^i_1 + mu^i_{j_i})``;
* tau-sequences ``(t_1, ..., t_k)`` with value ``sum t_i (P_{i-1} + Q_{i-1})``.

Every entry tuple is stored 0-based but documented 1-based: ``entries[i-1]``
is the entry at position ``i``.  ``lambda^i_0 = mu^i_0 = 0``.

Each system has a predicate (``is_*_sequence``), an expansion algorithm
(greedy for lambda/mu, the carry/rewrite procedure for tau) and an
exhaustive enumerator.  The predicates come in two readings.  ``"literal"``
transcribes the defining conditions as stated; ``"corrected"`` applies the
minimal repairs that make the predicate agree with the image of the
expansion algorithm (which is what the order-isomorphism needs):

* lambda, condition (iii) also fires at the top, ``l_k = q_k``;
* lambda, condition (ii)(c) compares ``l_{i_2+1}`` with ``q_{i_2+1}``;
* mu, condition (ii)(c) compares ``l_{i_1-1}`` with ``q_{i_1-1}``;
* tau, the first clause of condition (ii) stops at ``i_0 < k - 1``.

``reconcile`` lists every tuple where the two readings differ.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = [
    "LambdaSeq",
    "MuSeq",
    "TauSeq",
    "READINGS",
    "lam_value",
    "mu_value",
    "mu_index",
    "is_lambda_sequence",
    "is_mu_sequence",
    "is_tau_sequence",
    "lambda_valuation",
    "mu_valuation",
    "tau_valuation",
    "lambda_expand",
    "mu_expand",
    "tau_expand",
    "tau_step1",
    "enumerate_sequences",
    "sequence_order_key",
    "star_condition",
    "remainder_inequality_check",
    "tau_unit_check",
    "reconcile",
]

READINGS = ("literal", "corrected")


@dataclass(frozen=True)
class LambdaSeq:
    entries: tuple[int, ...]

    def j(self, i: int) -> int:
        assert i % 2 == 1
        return self.entries[i - 1]

    def l(self, i: int) -> int:  # noqa: E743
        assert i % 2 == 0
        return self.entries[i - 1]


@dataclass(frozen=True)
class MuSeq:
    entries: tuple[int, ...]

    def l(self, i: int) -> int:  # noqa: E743
        assert i % 2 == 1
        return self.entries[i - 1]

    def j(self, i: int) -> int:
        assert i % 2 == 0
        return self.entries[i - 1]


@dataclass(frozen=True)
class TauSeq:
    entries: tuple[int, ...]

    def t(self, i: int) -> int:
        return self.entries[i - 1]


def _entries(seq) -> tuple[int, ...]:
    return tuple(seq.entries) if hasattr(seq, "entries") else tuple(int(x) for x in seq)


def _arity(model, entries):
    if len(entries) != model.k:
        raise ValueError(f"expected {model.k} entries for k = {model.k}, got {len(entries)}")
    if any(x < 0 for x in entries):
        raise ValueError("entries must be non-negative")


def _need_even(model):
    if model.k % 2:
        raise ValueError("expansions need an even number of plus terms")


# ---------------------------------------------------------------------------
# weights with the empty-term convention


def lam_value(model, i: int, j: int) -> int:
    if j == 0:
        return 0
    return model.lam((i, j))


def mu_index(model, i: int, j: int):
    """Curve carrying ``mu^i_j``.  In the class T case ``(k, q_k)`` is not a
    curve; its extended weight is that of ``(k+1, d)``."""
    if model.normal and i == model.k and j == model.qi(model.k):
        return (model.k + 1, model.d)
    return (i, j)


def mu_value(model, i: int, j: int) -> int:
    if j == 0:
        return 0
    return model.mu(mu_index(model, i, j))


# ---------------------------------------------------------------------------
# valuations


def lambda_valuation(model, L) -> int:
    e = _entries(L)
    _arity(model, e)
    k = model.k
    total = lam_value(model, 1, e[0])
    for i in range(3, k, 2):
        total += e[i - 2] * lam_value(model, i, 1) + lam_value(model, i, e[i - 1])
    return total + e[k - 1] * lam_value(model, k + 1, 1)


def mu_valuation(model, M) -> int:
    e = _entries(M)
    _arity(model, e)
    total = 0
    for i in range(2, model.k + 1, 2):
        total += e[i - 2] * mu_value(model, i, 1) + mu_value(model, i, e[i - 1])
    return total


def tau_valuation(model, T) -> int:
    e = _entries(T)
    _arity(model, e)
    return sum(x * model.PQ(i) for i, x in enumerate(e))


# ---------------------------------------------------------------------------
# predicates


def is_lambda_sequence(model, entries, reading: str = "corrected") -> bool:
    """Membership in the set of lambda-sequences."""
    _need_even(model)
    e = _entries(entries)
    _arity(model, e)
    if reading not in READINGS:
        raise ValueError(reading)
    fixed = reading == "corrected"
    k, q = model.k, model.qi
    E = dict(enumerate(e, start=1))
    if not any(e):
        return False
    # (i) bounds
    for i in range(1, k + 1):
        if i % 2 == 0:
            if E[i] > (q(i) + 1 if i != k else q(k)):
                return False
        elif E[i] > q(i) or (i != 1 and E[i] == 1):
            return False
    for i0 in range(2, k + 1, 2):
        # (ii) overfull l needs a zero window of odd rows around it
        if E[i0] == q(i0) + 1:
            found = False
            for i1 in range(1, i0, 2):
                for i2 in range(i0 + 1, k, 2):
                    if any(E[x] != q(x) for x in range(i1 + 1, i2, 2) if x != i0):
                        continue
                    if any(E[x] for x in range(i1, i2 + 1, 2)):
                        continue
                    if i1 >= 3 and not E[i1 - 1] < q(i1 - 1):
                        continue
                    if not E[i2 + 1] < (q(i2 + 1) if fixed else q(i2)):
                        continue
                    found = True
                    break
                if found:
                    break
            if not found:
                return False
        # (iii) full l followed by a j >= 2
        if i0 < k:
            fires = E[i0] == q(i0) and E[i0 + 1] >= 2
        else:
            fires = fixed and E[k] == q(k)
        if fires:
            found = False
            for i3 in range(1, i0, 2):
                if any(E[x] != q(x) for x in range(i3 + 1, i0 + 1, 2)):
                    continue
                if any(E[x] for x in range(i3, i0, 2)):
                    continue
                if i3 >= 3 and not E[i3 - 1] < q(i3 - 1):
                    continue
                found = True
                break
            if not found:
                return False
    return True


def is_mu_sequence(model, entries, reading: str = "corrected") -> bool:
    """Membership in the set of mu-sequences; ``j_i = 0`` means the term is absent."""
    _need_even(model)
    e = _entries(entries)
    _arity(model, e)
    if reading not in READINGS:
        raise ValueError(reading)
    fixed = reading == "corrected"
    k, q = model.k, model.qi
    E = dict(enumerate(e, start=1))
    E[0] = 0
    if not any(e):
        return False
    for i in range(1, k + 1):
        if i % 2 == 1:
            if E[i] > q(i) + 1:
                return False
        elif E[i] != 0 and not 2 <= E[i] <= q(i):
            return False
    for i0 in range(1, k, 2):
        if E[i0] == q(i0) + 1:
            found = False
            for i1 in range(0, i0, 2):
                for i2 in range(i0 + 1, k + 1, 2):
                    if any(E[x] != q(x) for x in range(i1 + 1, i2, 2) if x != i0):
                        continue
                    if any(E[x] for x in range(i1, i2 + 1, 2)):
                        continue
                    if i1 >= 2 and not E[i1 - 1] < (q(i1 - 1) if fixed else q(i1)):
                        continue
                    if i2 <= k - 2 and not E[i2 + 1] < q(i2 + 1):
                        continue
                    found = True
                    break
                if found:
                    break
            if not found:
                return False
        if E[i0] == q(i0) and E[i0 + 1] >= 2:
            found = False
            for i3 in range(0, i0, 2):
                if any(E[x] != q(x) for x in range(i3 + 1, i0, 2)):
                    continue
                if any(E[x] for x in range(i3, i0, 2)):
                    continue
                if i3 >= 2 and not E[i3 - 1] < q(i3 - 1):
                    continue
                found = True
                break
            if not found:
                return False
    return True


def _tau_bounds_ok(model, E) -> bool:
    k, q = model.k, model.qi
    return all(E[i] <= q(i) for i in range(1, k)) and E[k] < q(k)


def is_tau_sequence(model, entries, reading: str = "corrected") -> bool:
    e = _entries(entries)
    _arity(model, e)
    if reading not in READINGS:
        raise ValueError(reading)
    k, q = model.k, model.qi
    E = dict(enumerate(e, start=1))
    if not any(e) or not _tau_bounds_ok(model, E):
        return False
    # literally the first clause also covers i_0 = k - 1, where it would ask
    # for t_k = q_k against the bound t_k < q_k
    top = k - 1 if reading == "corrected" else k
    for i0 in range(2, top):
        if E[i0 - 1] > 0 and E[i0] == q(i0) and E[i0 + 1] != q(i0 + 1):
            return False
    if k >= 3 and E[k - 2] > 0 and E[k - 1] == q(k - 1) and E[k] != q(k) - 1:
        return False
    return True


# ---------------------------------------------------------------------------
# expansion algorithms


def _check_n(model, n: int, hi: int):
    if not 1 <= n <= hi:
        raise ValueError(f"need 1 <= n <= {hi}, got {n}")


def lambda_expand(model, n: int) -> LambdaSeq:
    """Greedy lambda-expansion, highest block first.

    Inside an odd block ``h >= 3`` the largest ``lambda^h_j <= n`` with
    ``j >= 2`` is taken first, then as many ``lambda^h_1`` as fit; the first
    block takes whatever is left as ``lambda^1_{j_1} = j_1``.

    >>> from sltcalc.slt_model import build_classT
    >>> lambda_expand(build_classT(5, 1, 7), 5).entries
    (2, 1)
    """
    _need_even(model)
    _check_n(model, n, model.m - 1)
    k = model.k
    out = [0] * k
    t = n
    top = lam_value(model, k + 1, 1)
    out[k - 1], t = divmod(t, top)
    for h in range(k - 1, 0, -2):
        if h == 1:
            out[0], t = t, 0
            break
        js = [j for j in range(2, model.qi(h) + 1) if lam_value(model, h, j) <= t]
        if js:
            out[h - 1] = js[-1]
            t -= lam_value(model, h, js[-1])
        out[h - 2], t = divmod(t, lam_value(model, h, 1))
    if t or out[0] > model.qi(1):
        raise AssertionError(f"lambda-expansion of {n} did not terminate cleanly")
    return LambdaSeq(tuple(out))


def mu_expand(model, n: int) -> MuSeq:
    """Greedy mu-expansion over even blocks, using the extended ``mu^k_{q_k}``."""
    _need_even(model)
    _check_n(model, n, model.m - 1)
    k = model.k
    out = [0] * k
    t = n
    for h in range(k, 0, -2):
        js = [j for j in range(2, model.qi(h) + 1) if mu_value(model, h, j) <= t]
        if js:
            out[h - 1] = js[-1]
            t -= mu_value(model, h, js[-1])
        out[h - 2], t = divmod(t, mu_value(model, h, 1))
    if t:
        raise AssertionError(f"mu-expansion of {n} left {t}")
    return MuSeq(tuple(out))


def tau_step1(model, t: int) -> list[int]:
    """Bounded representation of ``t`` built by adding 1 repeatedly with carries."""
    k, q = model.k, model.qi
    rep = [0] * (k + 1)  # 1-based
    for _ in range(t):
        if rep[1] < q(1):
            rep[1] += 1
            continue
        i0 = 1
        while i0 + 1 < k and rep[i0 + 1] == q(i0 + 1):
            i0 += 1
        for i in range(i0 % 2 or 2, i0 + 1, 2):
            rep[i] = 0
        rep[i0 + 1] += 1
        bound = q(i0 + 1) if i0 + 1 < k else q(k) - 1
        if rep[i0 + 1] > bound:
            raise ValueError(f"{t} is past the top of the tau range")
    return rep[1:]


def tau_expand(model, t: int) -> TauSeq:
    """tau-expansion of ``0 < t < m - 2``: step 1 representation, then the
    rewrite ``(.. t_{i-1}, q_i, t_{i+1} ..) -> (.. t_{i-1}-1, 0, t_{i+1}+1 ..)``
    until no position violates the chained condition."""
    if not 0 < t < model.m - 2:
        raise ValueError(f"need 0 < t < m - 2 = {model.m - 2}, got {t}")
    k, q = model.k, model.qi
    rep = [0] + tau_step1(model, t)
    while True:
        for i0 in range(2, k):
            nxt_ok = rep[i0 + 1] < q(i0 + 1) if i0 < k - 1 else rep[k] <= q(k) - 2
            if rep[i0 - 1] > 0 and rep[i0] == q(i0) and nxt_ok:
                rep[i0 - 1] -= 1
                rep[i0] = 0
                rep[i0 + 1] += 1
                break
        else:
            break
    out = TauSeq(tuple(rep[1:]))
    if not is_tau_sequence(model, out) or tau_valuation(model, out) != t:
        raise AssertionError(f"tau-expansion of {t} failed: {out.entries}")
    return out


# ---------------------------------------------------------------------------
# enumeration


def sequence_order_key(entries) -> tuple[int, ...]:
    """Sort key for the order on sequences: the last differing entry decides."""
    return tuple(reversed(_entries(entries)))


def _box(model, kind):
    k, q = model.k, model.qi
    ranges = []
    for i in range(1, k + 1):
        if kind == "lambda":
            if i % 2:
                ranges.append(range(q(i) + 1))
            else:
                ranges.append(range(q(i) + (2 if i != k else 1)))
        elif kind == "mu":
            ranges.append(range(q(i) + 2) if i % 2 else [0, *range(2, q(i) + 1)])
        else:
            ranges.append(range(q(i) + 1) if i < k else range(q(k)))
    return itertools.product(*ranges)


_PRED = {"lambda": is_lambda_sequence, "mu": is_mu_sequence, "tau": is_tau_sequence}
_VAL = {"lambda": lambda_valuation, "mu": mu_valuation, "tau": tau_valuation}
_WRAP = {"lambda": LambdaSeq, "mu": MuSeq, "tau": TauSeq}


def enumerate_sequences(model, kind: str, reading: str = "corrected", full_tau: bool = False) -> list:
    """All sequences of ``kind`` passing the predicate, in increasing order.

    For tau only the expansion domain ``0 < t < m - 2`` is kept unless
    ``full_tau``; the predicate also admits the maximal sequence
    ``(q_1, ..., q_{k-1}, q_k - 1)`` of value ``m - 2``.
    """
    if kind not in _PRED:
        raise ValueError(kind)
    pred, val = _PRED[kind], _VAL[kind]
    out = []
    for e in _box(model, kind):
        if not pred(model, e, reading):
            continue
        if kind == "tau" and not full_tau and val(model, e) >= model.m - 2:
            continue
        out.append(_WRAP[kind](e))
    out.sort(key=sequence_order_key)
    return out


def reconcile(model, kind: str) -> list[dict]:
    """Tuples inside the bound box where the literal predicate and the
    expansion image disagree."""
    if kind == "lambda":
        image = {lambda_expand(model, n).entries for n in range(1, model.m)}
    elif kind == "mu":
        image = {mu_expand(model, n).entries for n in range(1, model.m)}
    else:
        image = {tau_expand(model, t).entries for t in range(1, model.m - 2)}
    out = []
    for e in _box(model, kind):
        lit = _PRED[kind](model, e, "literal")
        if kind == "tau" and lit and tau_valuation(model, e) >= model.m - 2:
            continue
        if lit != (e in image):
            out.append({"entries": list(e), "literal": lit, "in_image": e in image,
                        "value": _VAL[kind](model, e)})
    return out


# ---------------------------------------------------------------------------
# auxiliary inequalities


def _partial(model, E, upto: int) -> int:
    """``lambda^1_{j_1} + sum_{3 <= i <= upto, odd} (l_{i-1} lambda^i_1 + lambda^i_{j_i})``."""
    total = lam_value(model, 1, E[1])
    for i in range(3, upto + 1, 2):
        total += E[i - 1] * lam_value(model, i, 1) + lam_value(model, i, E[i])
    return total


def star_condition(model, L, h: int) -> bool:
    e = _entries(L)
    _arity(model, e)
    k = model.k
    if not 1 <= h <= k - 1:
        raise ValueError(f"need 1 <= h <= k - 1, got {h}")
    E = dict(enumerate(e, start=1))
    PQ = model.PQ
    if E[1] > model.qi(1) or any(E[i] > model.qi(i) for i in range(3, k, 2)):
        return False  # weights undefined outside the bound box
    if h % 2 == 1:
        return _partial(model, E, h) < PQ(h)
    s = _partial(model, E, h - 1) + E[h] * lam_value(model, h + 1, 1)
    if not s < PQ(h - 1) + PQ(h):
        return False
    nxt = E.get(h + 1, 0) if h + 1 <= k - 1 else 0
    if E[h] < model.qi(h) or nxt >= 2:
        return s < PQ(h)
    return True


def _signed_remainder_sum(model, t: Sequence[int], i0: int) -> int:
    return sum((-1) ** (i - 1) * t[i - 1] * model.r(i) for i in range(i0, model.k + 1))


def remainder_inequality_check(model, t: Sequence[int], i0: int) -> bool:
    """Strict bounds for ``sum_{i >= i0} (-1)^{i-1} t_i r_i``: in
    ``(-r_{i0-1}, 0)`` for even ``i0`` and ``(0, r_{i0-1})`` for odd."""
    t = _entries(t)
    _arity(model, t)
    k, q = model.k, model.qi
    if any(t[i - 1] > q(i) for i in range(1, k)) or t[k - 1] > q(k) - 1:
        raise ValueError("t violates t_i <= q_i (i < k), t_k <= q_k - 1")
    if not 1 <= i0 <= k or t[i0 - 1] <= 0:
        raise ValueError("need t_{i0} > 0")
    s = _signed_remainder_sum(model, t, i0)
    bound = model.r(i0 - 1)
    return -bound < s < 0 if i0 % 2 == 0 else 0 < s < bound


def tau_unit_check(model) -> bool:
    """For every tau-sequence whose first non-zero entry sits at an odd
    position ``i0``: the signed remainder sum is 1 exactly for the shape
    ``i0 = k-1, t_{k-1} = 1, t_k = q_k - 1`` (k even) or ``i0 = k, t_k = 1``
    (k odd)."""
    k = model.k
    for seq in enumerate_sequences(model, "tau", full_tau=True):
        t = seq.entries
        i0 = next(i for i in range(1, k + 1) if t[i - 1])
        if i0 % 2 == 0:
            continue
        is_one = _signed_remainder_sum(model, t, i0) == 1
        if k % 2 == 0:
            shape = i0 == k - 1 and t[k - 2] == 1 and t[k - 1] == model.qi(k) - 1
        else:
            shape = i0 == k and t[k - 1] == 1
        if is_one != shape:
            return False
    return True


def iter_lambda_image(model) -> Iterable[LambdaSeq]:
    for n in range(1, model.m):
        yield lambda_expand(model, n)
