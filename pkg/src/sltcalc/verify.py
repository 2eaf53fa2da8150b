"""Verification sweeps and the discrepancy ledger.

Every check compares a closed formula against an independent route and
returns a :class:`CheckResult`.  Where a statement taken literally differs
from the validated behaviour, each instance is written to the
:class:`Ledger` under a known claim id (see :data:`KNOWN_CLAIMS`).  A
disagreement that is not covered by a known claim is a *finding*; the sweep
fails if there is any.

Ledger lines are JSON objects
``{claim, ref, instance, expected, got, verdict}`` with verdict one of
``erratum`` (documented divergence), ``convention`` (a reading we had to fix)
or ``finding``.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Callable, Iterable

from .contfrac import (
    classT_cf,
    eval_minus,
    eval_plus,
    minus_expand,
    plus_expand,
    riemenschneider_transform,
    tables,
)
from .cyclic_quotient import pullback_coeffs, pullback_oracle, resolve
from .expansions import (
    enumerate_sequences,
    lambda_valuation,
    mu_valuation,
    reconcile,
    tau_valuation,
)
from .fullsheaf import (
    DivisorVector,
    fullsheaf_degrees,
    fullsheaf_oracle,
    nonnormal_degrees,
    nonnormal_oracle,
    nu,
    s_t_of,
    t_min_bruteforce,
    t_min_closed_form,
    chart_anchor,
    literal_congruence,
    weight_congruence,
    member_weight_check,
)
from .index_bound import B_max, B_max_enumerated, verify_index_bound
from .pairing import (
    cross_term_hypotheses,
    cross_term_order,
    cross_term_check,
    ibar_e,
    nu_squared,
    nu_squared_bounds,
    pair,
    phi,
    phi_identity,
    psi,
    psi_identity,
    psi_pairs,
    theta,
    theta_identity,
    toric_pair_oracle,
)
from .slt_model import boundary_identities, iter_classT, iter_nonnormal

__all__ = [
    "KNOWN_CLAIMS",
    "LedgerEntry",
    "Ledger",
    "CheckResult",
    "SweepConfig",
    "check_contfrac",
    "check_pullback",
    "check_transforms",
    "check_expansions",
    "check_fullsheaf",
    "check_pairing",
    "check_special",
    "check_bounds",
    "check_index_bound",
    "check_cross_terms",
    "run_all",
    "jsonable",
]

# claim id -> (statement it concerns, what was changed)
KNOWN_CLAIMS: dict[str, tuple[str, str]] = {
    "minus-tail": ("minus expansion of m/b from a/b",
                   "last block of 2's has length q_k - 1, not q_k + 1 (even k)"),
    "classT-k1": ("plus expansion of (dma-1)/(dmb+1)",
                  "symbolic rule does not apply for k = 1; direct expansion used"),
    "lambda-clauses": ("definition of lambda-sequences",
                       "carry clause also fires at the top block when l_k = q_k; "
                       "clause (ii)(c) compares l_{i2+1} with q_{i2+1}"),
    "mu-clauses": ("definition of mu-sequences",
                   "clause (ii)(c) compares l_{i1-1} with q_{i1-1}"),
    "tau-clauses": ("definition of tau-sequences",
                    "first clause of (ii) only for 1 < i0 < k-1"),
    "tau-top": ("tau-sequences vs 0 < t < m-2",
                "predicate also admits (q_1, .., q_{k-1}, q_k - 1) of value m - 2"),
    "phi-superscript": ("definition of phi", "last term is (j-1) delta^{i+1,1}"),
    "theta-square": ("theta identity", "the identity is theta(i,j)^2 = j"),
    "psi-subscript": ("sigma of psi(iota, (i'',1))", "P_{i''-1} + Q_{i''-1}, not P_{i''+1} + Q_{i''+1}"),
    "psi-sigma-bar": ("sigma-bar of psi", "j'' P_{i''-1} - 1 when iota = (1,1)"),
    "psi-square": ("square of psi", "sum also contains q_{i'-1} when iota = (i', 1)"),
    "psi-neighbour": ("definition of psi", "iota^l / iota^r read as lex predecessor inside I_o / I_e-bar"),
    "small-n-direction": ("small-n bound on nu(n)^2", "inequality is >=, the printed <= fails"),
    "large-n-range": ("large-n bound on nu(n)^2", "sum over h starts at max(i(n), 1)"),
    "cross-term-order": ("vanishing of cross terms", "nu <= nu~ read as support order, not componentwise"),
}


@dataclass
class LedgerEntry:
    claim: str
    ref: str
    instance: dict
    expected: object
    got: object
    verdict: str

    def to_json(self) -> dict:
        return jsonable({"claim": self.claim, "ref": self.ref, "instance": self.instance,
                         "expected": self.expected, "got": self.got, "verdict": self.verdict})


@dataclass
class Ledger:
    entries: list[LedgerEntry] = field(default_factory=list)

    def add(self, claim: str, instance: dict, expected, got, verdict: str = "erratum"):
        ref = KNOWN_CLAIMS[claim][0] if claim in KNOWN_CLAIMS else claim
        if claim not in KNOWN_CLAIMS:
            verdict = "finding"
        self.entries.append(LedgerEntry(claim, ref, instance, expected, got, verdict))

    def finding(self, claim: str, instance: dict, expected, got):
        self.entries.append(LedgerEntry(claim, claim, instance, expected, got, "finding"))

    @property
    def findings(self) -> list[LedgerEntry]:
        return [e for e in self.entries if e.verdict == "finding"]

    def counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for e in self.entries:
            out[e.claim] = out.get(e.claim, 0) + 1
        return dict(sorted(out.items()))

    def write(self, path):
        with open(path, "w") as fh:
            for e in self.entries:
                fh.write(json.dumps(e.to_json(), sort_keys=True) + "\n")


@dataclass
class CheckResult:
    name: str
    cases: int = 0
    failures: int = 0
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.cases > 0 and self.failures == 0

    def tick(self, ok: bool) -> bool:
        self.cases += 1
        if not ok:
            self.failures += 1
        return ok

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"[{tag}] {self.name}: {self.cases} cases, {self.failures} failures"


@dataclass
class SweepConfig:
    max_r_cf: int = 500
    max_r_pullback: int = 100
    max_m: int = 12
    max_d: int = 3
    max_m_nonnormal: int = 20
    random_vectors: int = 200
    seed: int = 0
    slack: int = 4
    max_M_enum: int = 15

    def normal_models(self):
        return list(iter_classT(self.max_m, self.max_d))

    def nonnormal_models(self):
        return list(iter_nonnormal(self.max_m_nonnormal))


def jsonable(x):
    """Integers and rationals become strings; containers are converted recursively."""
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, dict):
        return {_key(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = sorted(x, key=repr) if isinstance(x, (set, frozenset)) else x
        return [jsonable(v) for v in items]
    if hasattr(x, "__dataclass_fields__"):
        return {k: jsonable(getattr(x, k)) for k in x.__dataclass_fields__}
    return str(x)


def _key(k):
    if isinstance(k, tuple):
        return ",".join(str(v) for v in k)
    return str(k)


def _inst(model, **kw) -> dict:
    return {"model": model.label, **kw}


# ---------------------------------------------------------------------------
# continued fractions and pullbacks


def check_contfrac(max_r: int = 500) -> CheckResult:
    res = CheckResult(f"continued-fraction round trips, r <= {max_r}")
    for r in range(2, max_r + 1):
        for s in range(1, r):
            if gcd(r, s) != 1:
                continue
            f = Fraction(r, s)
            p, mn = plus_expand(f), minus_expand(f)
            ok = eval_plus(p) == f and eval_minus(mn) == f
            for cf, kind in ((p, "plus"), (mn, "minus")):
                eu = tables(kind, cf.terms, (r, s))
                for i in range(0, eu.k + 1):
                    want = (-1) ** i if kind == "plus" else -1
                    ok &= eu.P(i) * eu.Q(i - 1) - eu.Q(i) * eu.P(i - 1) == want
            res.tick(ok)
    return res


def check_pullback(max_r: int = 100) -> CheckResult:
    res = CheckResult(f"pullback closed form vs linear system, r <= {max_r}")
    for r in range(2, max_r + 1):
        for s in range(1, r):
            if gcd(r, s) != 1:
                continue
            surf, chain = resolve(r, s)
            closed = pullback_coeffs(surf)
            res.tick(all(pullback_oracle(surf, i, chain) == closed.row(i) for i in chain.curves))
    return res


def check_transforms(ledger: Ledger, max_m: int = 60) -> CheckResult:
    res = CheckResult(f"symbolic continued-fraction transforms, m <= {max_m}")
    for m in range(3, max_m + 1):
        for a in range(m // 2 + 1, m):
            if gcd(a, m) != 1:
                continue
            q = plus_expand(Fraction(a, m - a)).terms
            ta, tb = riemenschneider_transform(a, m, "corrected")
            res.tick(ta.agrees and tb.agrees)
            _, printed = riemenschneider_transform(a, m, "printed")
            if not printed.agrees:
                ledger.add("minus-tail", {"a": a, "m": m, "q": list(q)}, printed.predicted, printed.truth)
            for d in (1, 2, 3):
                t = classT_cf(a, m - a, d)
                if not t.supported:
                    ledger.add("classT-k1", {"a": a, "d": d, "m": m}, None, t.truth, "convention")
                else:
                    res.tick(t.agrees)
    return res


# ---------------------------------------------------------------------------
# expansions


def check_expansions(models: Iterable, ledger: Ledger) -> CheckResult:
    res = CheckResult("lambda/mu/tau order isomorphisms")
    for M in models:
        m = M.m
        for kind, val, want in (("lambda", lambda_valuation, m - 1), ("mu", mu_valuation, m - 1),
                                ("tau", tau_valuation, m - 3)):
            seqs = enumerate_sequences(M, kind)
            vals = [val(M, s) for s in seqs]
            res.tick(vals == list(range(1, want + 1)))
            claim = {"lambda": "lambda-clauses", "mu": "mu-clauses", "tau": "tau-clauses"}[kind]
            for rec in reconcile(M, kind):
                ledger.add(claim, _inst(M, entries=rec["entries"], value=rec["value"]),
                           rec["literal"], rec["in_image"])
        top = enumerate_sequences(M, "tau", full_tau=True)
        if len(top) == m - 2:
            ledger.add("tau-top", _inst(M), m - 3, m - 2, "convention")
        else:
            res.tick(False)
    return res


# ---------------------------------------------------------------------------
# full sheaf


def check_fullsheaf(normal: Iterable, nonnormal: Iterable, ledger: Ledger, slack: int = 4) -> CheckResult:
    res = CheckResult("degrees of F(-nK) vs alpha-minimal oracle, T_min closed form")
    for M in normal:
        res.tick(all(r["ok"] for r in boundary_identities(M)))
        for n in range(1, M.m):
            want = fullsheaf_degrees(M, n)
            got = fullsheaf_oracle(M, n, slack=slack)
            if not res.tick(want == got):
                ledger.finding("degree formula", _inst(M, n=n), want, got)
            v = nu(M, n)
            st = s_t_of(M, v)
            tmin = t_min_closed_form(M, n)
            res.tick(tmin == t_min_bruteforce(M, n))
            res.tick(literal_congruence(M, v, n) and weight_congruence(M, v, n))
            res.tick(st in tmin)
        for n in range(1, 3 * M.m):
            res.tick(member_weight_check(M, n))
    for M in nonnormal:
        for n in range(1, M.m):
            for chart in ("o", "e"):
                want = nonnormal_degrees(M, n, chart)
                got = nonnormal_oracle(M, n, chart, slack=slack)
                if not res.tick(want == got):
                    ledger.finding("non-normal degree formula", _inst(M, n=n, chart=chart), want, got)
                if chart == "o":
                    res.tick(chart_anchor(M, got))
        for n in range(1, 3 * M.m):
            res.tick(member_weight_check(M, n))
    return res


# ---------------------------------------------------------------------------
# pairing


ANCHORS_517 = {1: 1, 2: 2, 3: 3, 4: 2, 6: 4}


def check_pairing(models: Iterable, ledger: Ledger, random_vectors: int = 200, seed: int = 0) -> CheckResult:
    res = CheckResult(f"pairing closed form vs toric oracle ({random_vectors} random vectors per model)")
    rng = random.Random(seed)
    for M in models:
        for n in range(1, M.m):
            v = nu(M, n)
            a, b = pair(M, v, v), toric_pair_oracle(M, v, v)
            if not res.tick(a == b):
                ledger.finding("pairing formula", _inst(M, n=n), b, a)
        if M.normal and (M.a, M.d, M.m) == (5, 1, 7):
            for n, want in ANCHORS_517.items():
                res.tick(nu_squared(M, n) == want)
        res.tick(nu_squared(M, M.m - 1) == sum(M.q))
        odd, even = sorted(M.indexO), ibar_e(M)
        for _ in range(random_vectors):
            x = DivisorVector({i: rng.randint(-3, 3) for i in odd}, {i: rng.randint(-3, 3) for i in even})
            y = DivisorVector({i: rng.randint(-3, 3) for i in odd}, {i: rng.randint(-3, 3) for i in even})
            a, b = pair(M, x, y), toric_pair_oracle(M, x, y)
            if not res.tick(a == b and pair(M, y, x) == a):
                ledger.finding("pairing formula (random)", _inst(M, x=x, y=y), b, a)
    return res


def check_special(models: Iterable, ledger: Ledger) -> CheckResult:
    res = CheckResult("phi/psi/theta identities and nu(n).theta = j")
    for M in models:
        k = M.k
        for i in range(1, k + 1):
            for j in range(1, M.qi(i) + 1):
                r = phi_identity(M, i, j)
                res.tick(r["ok"])
                try:
                    lit = phi_identity(M, i, j, "literal")
                    ok_lit, got = lit["ok"], lit["square"]
                except KeyError as exc:
                    ok_lit, got = False, f"undefined index {exc.args[0]}"
                if not ok_lit:
                    ledger.add("phi-superscript", _inst(M, i=i, j=j), j - 1, got)
        for i in range(1, k):
            for j in range(1, M.qi(i) + 1):
                r = theta_identity(M, i, j)
                res.tick(r["ok"])
                if r["ok"] and (i, j) == (1, 1):
                    # the identity as printed equates a vector with an integer
                    ledger.add("theta-square", _inst(M, i=i, j=j), "theta(i,j) = j", r["square"])
        for iota, eta in psi_pairs(M):
            r = psi_identity(M, iota, eta)
            res.tick(r["ok"])
            if not r["ok"]:
                ledger.finding("psi identities", _inst(M, iota=iota, eta=eta), r["expected"], r["stats"])
                continue
            st = r["stats"]
            i2, j2 = eta
            inst = _inst(M, iota=iota, eta=eta)
            if j2 == 1:
                printed = M.PQ(i2 + 1) if i2 + 1 <= k else None
                if printed != st.sigma:
                    ledger.add("psi-subscript", inst, printed, st.sigma)
            if st.sigma_bar != j2 * M.P(i2 - 1):
                ledger.add("psi-sigma-bar", inst, j2 * M.P(i2 - 1), st.sigma_bar)
            printed_sq = _psi_square_printed(M, iota, eta)
            if printed_sq != r["square"]:
                ledger.add("psi-square", inst, printed_sq, r["square"])
        if any(True for _ in psi_pairs(M)):
            ledger.add("psi-neighbour", _inst(M), "chain neighbour", "lex predecessor", "convention")
        for n in range(1, M.m):
            for rec in cross_term_check(M, n):
                if rec["step"] == "nu_theta":
                    res.tick(rec["ok"])
    return res


def _psi_square_printed(M, iota, eta) -> int:
    i1, i2, j2 = iota[0], eta[0], eta[1]
    par = 0 if i1 % 2 else 1
    return j2 + sum(M.qi(i) for i in range(i1 + 1, i2) if i % 2 == par)


def check_bounds(models: Iterable, ledger: Ledger) -> CheckResult:
    res = CheckResult("lower bounds on nu(n)^2 and the recursions behind them")
    for M in models:
        for n in range(1, M.m):
            b = nu_squared_bounds(M, n)
            res.tick(b["holds"])
            res.tick(nu_squared(M, n).denominator == 1)
            if b["range"] == "small" and not b["reverse_holds"]:
                ledger.add("small-n-direction", _inst(M, n=n),
                           f"nu^2 <= {b['rhs']}", b["square"])
            if b["range"] == "large" and b["i"] == 0:
                ledger.add("large-n-range", _inst(M, n=n), "h from i(n) = 0", "h from 1", "convention")
            for rec in cross_term_check(M, n):
                if rec["step"] != "nu_theta":
                    if not res.tick(rec["ok"]):
                        ledger.finding("recursion " + rec["step"], _inst(M, n=n), "ok", rec)
    return res


def check_index_bound(models: Iterable, ledger: Ledger, max_M_enum: int = 15) -> CheckResult:
    res = CheckResult("Gorenstein index bound and B(M, N)")
    for M_ in range(1, max_M_enum + 1):
        res.tick(B_max(M_, 1) == B_max_enumerated(M_, 1))
        for N in range(1, 11):
            res.tick(B_max(M_, N) == N * B_max(M_, 1))
    for M in models:
        for n in range(1, 2 * M.m + 1):
            if n % M.m == 0:
                continue
            r = verify_index_bound(M, n)
            if not res.tick(r["ok"]):
                ledger.finding("index bound", _inst(M, n=n), "index <= B", r)
    return res


def check_cross_terms(models: Iterable, ledger: Ledger) -> CheckResult:
    """Cross terms vanish under the support-order reading; the componentwise
    reading is evaluated as well and its counterexamples are logged."""
    res = CheckResult("vanishing cross terms under the support order")
    for M in models:
        pool = [nu(M, n) for n in range(1, M.m)]
        special = []
        for i in range(1, M.k + 1):
            for j in range(1, M.qi(i) + 1):
                special.append(phi(M, i, j))
        for i in range(1, M.k):
            for j in range(1, M.qi(i) + 1):
                special.append(theta(M, i, j))
        special += [psi(M, iota, eta) for iota, eta in psi_pairs(M)]
        for A in pool + special:
            for B in special + pool:
                if not cross_term_hypotheses(M, A, B):
                    continue
                zero = pair(M, A, B) == 0
                if cross_term_order(A, B, "support"):
                    res.tick(zero)
                if cross_term_order(A, B, "componentwise") and not zero:
                    ledger.add("cross-term-order", _inst(M, A=A, B=B), 0, pair(M, A, B))
    return res


# ---------------------------------------------------------------------------


def run_all(cfg: SweepConfig | None = None, ledger: Ledger | None = None,
            progress: Callable[[str], None] | None = None) -> tuple[list[CheckResult], Ledger]:
    cfg = cfg or SweepConfig()
    ledger = ledger if ledger is not None else Ledger()
    normal, nonnormal = cfg.normal_models(), cfg.nonnormal_models()
    both = normal + nonnormal
    small = [M for M in both if M.m <= min(cfg.max_m, 10)]
    steps = [
        lambda: check_contfrac(cfg.max_r_cf),
        lambda: check_pullback(cfg.max_r_pullback),
        lambda: check_transforms(ledger),
        lambda: check_expansions(both, ledger),
        lambda: check_fullsheaf(normal, nonnormal, ledger, cfg.slack),
        lambda: check_pairing(both, ledger, cfg.random_vectors, cfg.seed),
        lambda: check_special(both, ledger),
        lambda: check_bounds(both, ledger),
        lambda: check_index_bound(both, ledger, cfg.max_M_enum),
        lambda: check_cross_terms(small, ledger),
    ]
    results = []
    for step in steps:
        r = step()
        results.append(r)
        if progress:
            progress(r.line())
    return results, ledger

