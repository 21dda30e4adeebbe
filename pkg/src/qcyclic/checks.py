"""Verification targets shared by the CLI and the acceptance tests.

Each ``check_*`` function returns a JSON-ready dict with an ``entries`` list
(one per sub-check, each carrying ``pass`` or ``skipped``) and a rolled-up
``status``.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .codes import (
    DEFAULT_BUDGET,
    build_code,
    dual,
    even_weight_subcode,
    expected_dimension,
    extend,
    intersection_generator,
    hull_dimension,
    is_duadic_pair,
    is_even_like_duadic_pair,
    is_lcd,
)
from .derived import (
    classify_type,
    delsarte_side,
    gray_image_self_orthogonal,
    subfield_subcode,
    subfield_subcode_kernel,
    trace_code,
)
from .distance import (
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    exact_distribution,
    macwilliams,
    verify_distance_theorem,
)
from .errors import BudgetExceeded, HypothesisViolated, InapplicableM
from .galois import FieldContext, build_context
from .poly import Poly, poly_divmod, x_n_minus_1
from .weights import (
    defining_set_size,
    sweep_w2_w4_coupling,
    verify_av_containment,
    verify_gcd_lemma,
    verify_partial_theorem,
)

LA_MAX_N = 255


def rollup(entries: Sequence[dict]) -> str:
    if any(e.get("pass") is False for e in entries):
        return "fail"
    if not entries or any("skipped" in e for e in entries):
        return "partial"
    return "pass"


def _result(target: str, entries: list[dict], **extra) -> dict:
    return {"target": target, "entries": entries, "status": rollup(entries), **extra}


def _ctx(m: int, moduli: dict[int, int] | None) -> FieldContext:
    return build_context(m, moduli=moduli)


def check_lemma41(a_range: Iterable[int], m_range: Iterable[int], l_range: Iterable[int]) -> dict:
    mismatches, checked = [], 0
    for a in a_range:
        for m in m_range:
            for l in l_range:
                try:
                    r = verify_gcd_lemma(a, m, l)
                except HypothesisViolated:
                    continue
                checked += 1
                if not r.match:
                    mismatches.append([a, m, l, r.predicted, r.actual])
    entry = {"checked": checked, "mismatches": mismatches, "pass": checked > 0 and not mismatches, "method": "exact"}
    return _result("lemma41", [entry])


def check_lemma43_46(ms: Iterable[int]) -> dict:
    entries = []
    for m in ms:
        try:
            r = verify_av_containment(m)
        except InapplicableM as exc:
            entries.append({"m": m, "skipped": str(exc)})
            continue
        entries.append(
            {"m": m, "v": r.v, "a_max": r.a_max, "coprime": r.coprime,
             "witnesses": list(r.witnesses), "pass": r.contained, "method": "exact"}
        )
    return _result("lemma43_46", entries)


def check_lemma521(max_a: int) -> dict:
    bad = sweep_w2_w4_coupling(max_a)
    return _result("lemma521", [{"max_a": max_a, "violations": bad[:20], "count": len(bad), "pass": not bad, "method": "exact"}])


def check_thm522_partial(ms: Iterable[int]) -> dict:
    entries = []
    for m in ms:
        try:
            r = verify_partial_theorem(m)
        except InapplicableM as exc:
            entries.append({"m": m, "skipped": str(exc)})
            continue
        entries.append(
            {"m": m, "v1": r.v1, "v2": r.v2, "a_max": r.a_max,
             "contained_T40": r.contained_T40, "contained_T21": r.contained_T21,
             "contained_2av_T41": r.contained_2av_T41, "witnesses": list(r.witnesses),
             "pass": r.ok, "method": "exact"}
        )
    return _result("thm522_partial", entries)


def check_duadic(ms: Iterable[int], moduli=None) -> dict:
    entries = []
    for m in ms:
        C0, C1 = build_code(0, m, _ctx(m, moduli)), build_code(1, m, _ctx(m, moduli))
        got = is_duadic_pair(C0, C1, -1)
        expected = m % 2 == 1
        entries.append({"m": m, "duadic": got, "expected": expected, "pass": got == expected, "method": "exact"})
    return _result("duadic", entries)


def check_lcd(ms: Iterable[int], moduli=None) -> dict:
    entries = []
    for m in ms:
        for i in (0, 1):
            C = build_code(i, m, _ctx(m, moduli))
            hull = is_lcd(C)
            e = {"m": m, "i": i, "lcd": hull, "expected": m % 2 == 0, "method": "exact"}
            ok = hull == e["expected"]
            if C.n <= LA_MAX_N:
                hd = hull_dimension(C)
                e["hull_dim_linear_algebra"] = hd
                ok &= (hd == 0) == hull
            e["pass"] = ok
            entries.append(e)
    return _result("lcd", entries)


def check_dual_identities(ms: Iterable[int], moduli=None, lcm_max_m: int = 4) -> dict:
    entries = []
    for m in ms:
        ctx = _ctx(m, moduli)
        C0, C1 = build_code(0, m, ctx), build_code(1, m, ctx)
        D0, D1 = dual(C0), dual(C1)
        if m % 2 == 0:
            ok = D0 == even_weight_subcode(C1) and D1 == even_weight_subcode(C0)
        else:
            ok = D0 == even_weight_subcode(C0) and D1 == even_weight_subcode(C1)
        e = {"m": m, "dual_is_even_subcode": ok, "double_dual": dual(D0) == C0 and dual(D1) == C1}
        if m % 2 == 1:
            e["even_like_duadic_duals"] = is_even_like_duadic_pair(D0, D1, -1)
        if m <= lcm_max_m:
            rep = poly_divmod(x_n_minus_1(C0.n), Poly(4, [1, 1]))[0]
            e["intersection_is_repetition"] = intersection_generator(C0, C1) == rep
        e["pass"] = all(v for k, v in e.items() if k != "m")
        e["method"] = "exact"
        entries.append(e)
    return _result("dual_identities", entries)


def check_delsarte(ms: Iterable[int], moduli=None) -> dict:
    entries = []
    for m in ms:
        for i in (0, 1):
            C = build_code(i, m, _ctx(m, moduli))
            Tr = trace_code(C)
            S = subfield_subcode(C)
            Sd = subfield_subcode(dual(C))
            e = {
                "m": m, "i": i, "trace_k": Tr.k, "subfield_k": S.k,
                "delsarte": Tr == delsarte_side(C),
                "dimension_sum": Tr.k + Sd.k == C.n,
                "subfield_matches_kernel": S.linear == subfield_subcode_kernel(C),
                "subfield_bound": S.k >= 2 * C.k - C.n,
                "method": "exact",
            }
            e["pass"] = e["delsarte"] and e["dimension_sum"] and e["subfield_matches_kernel"] and e["subfield_bound"]
            entries.append(e)
    return _result("delsarte", entries)


def check_type2(ms: Iterable[int], budget: int = DEFAULT_BUDGET, samples: int = DEFAULT_SAMPLES,
                seed: int = DEFAULT_SEED, moduli=None) -> dict:
    entries = []
    for m in ms:
        if m % 2 == 0:
            entries.append({"m": m, "skipped": "self-duality of the extension is claimed for odd m only"})
            continue
        for i in (0, 1):
            X = extend(build_code(i, m, _ctx(m, moduli)))
            v = classify_type(X, budget, samples, seed)
            e = {"m": m, "i": i, "n": X.n, "k": X.k, **v.to_dict(),
                 "gray_self_orthogonal": gray_image_self_orthogonal(X) if v.self_orthogonal else None}
            e["pass"] = v.self_dual and v.type_ii in ("proven", "sampled_consistent") and bool(e["gray_self_orthogonal"])
            entries.append(e)
    return _result("type2", entries, seed=seed, samples=samples)


def check_dims(ms: Iterable[int], moduli=None, divide_max_m: int = 6) -> dict:
    entries = []
    for m in ms:
        ctx = _ctx(m, moduli)
        for i in (0, 1):
            C = build_code(i, m, ctx)
            e = {"m": m, "i": i, "n": C.n, "deg_g": C.g.degree, "k": C.k,
                 "expected_k": expected_dimension(i, m), "T_size_formula": defining_set_size(i, m),
                 "method": "exact"}
            ok = C.g.degree == len(C.T) == e["T_size_formula"] and C.k == e["expected_k"]
            if m <= divide_max_m:
                e["divides_x^n-1"] = poly_divmod(x_n_minus_1(C.n), C.g)[1].is_zero
                ok &= e["divides_x^n-1"]
            e["pass"] = ok
            entries.append(e)
    return _result("dims", entries)


DEFAULT_THEOREM_CASES = [
    ("odd_codes", 5), ("odd_codes", 7), ("odd_codes", 9),
    ("odd_duals", 3), ("odd_duals", 5), ("odd_duals", 7),
    ("even_c0", 10), ("even_c0", 12), ("even_c0", 14),
    ("even_c1_dual", 6), ("even_c1_dual", 10), ("even_c1_dual", 12),
    ("even_c1_partial", 30),
]


def check_distance_theorems(cases: Sequence[tuple[str, int]] = DEFAULT_THEOREM_CASES) -> dict:
    entries = []
    for which, m in cases:
        try:
            r = verify_distance_theorem(which, m)
        except InapplicableM as exc:
            entries.append({"which": which, "m": m, "skipped": str(exc)})
            continue
        d = r.to_dict()
        d["method"] = "bound"
        entries.append(d)
    return _result("distance_theorems", entries)


def check_macwilliams_roundtrip(ms: Iterable[int], budget: int = DEFAULT_BUDGET, moduli=None) -> dict:
    entries = []
    for m in ms:
        ctx = _ctx(m, moduli)
        for i in (0, 1):
            C = build_code(i, m, ctx)
            for name, code in (("code", C), ("dual", dual(C)), ("subfield", subfield_subcode(C)), ("trace", trace_code(C))):
                try:
                    W, how = exact_distribution(code, budget)
                except BudgetExceeded:
                    continue
                k_dual = code.n - code.k
                back = macwilliams(macwilliams(W, k_dual), code.k)
                entries.append({"m": m, "i": i, "code": name, "route": how, "pass": back == W, "method": "exact"})
    return _result("macwilliams", entries)


def check_all(fast: bool = False, budget: int = DEFAULT_BUDGET, samples: int = DEFAULT_SAMPLES,
              seed: int = DEFAULT_SEED, moduli=None) -> dict:
    top = 5 if fast else 6
    parts = [
        check_lemma41(range(2, 10), range(1, 11), range(1, 11)),
        check_lemma43_46(range(5, 15)),
        check_lemma521(10**5 if fast else 10**6),
        check_thm522_partial([30]),
        check_duadic([1, 3, 5], moduli),
        check_duadic([2, 4], moduli),
        check_lcd([2, 4], moduli),
        check_dual_identities(range(1, top + 1), moduli),
        check_delsarte(range(1, 4 if fast else 5), moduli),
        check_type2([1, 3], budget, min(samples, 1000) if fast else samples, seed, moduli),
        check_dims(range(1, top + 1), moduli),
        check_distance_theorems(),
        check_macwilliams_roundtrip(range(1, 5), budget, moduli),
    ]
    entries = [{"target": p["target"], "status": p["status"], "pass": p["status"] != "fail"} for p in parts]
    return {"target": "all", "entries": entries, "parts": parts, "status": rollup(entries)}
