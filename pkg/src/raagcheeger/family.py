"""Family-level reports and machine verification of the graph <-> vector
space dictionary.

A finite prefix of a family can disprove expansion (a zero Cheeger value, an
unbounded valence) but never prove it, so report verdicts are limited to
``consistent-with-expander``, ``not-expander`` and ``inconclusive``.

Per-index computations are independent; the verifiers accept a ``jobs``
argument and fold worker results in input order, so output is identical for
any degree of parallelism.
"""

from __future__ import annotations

import multiprocessing
from dataclasses import dataclass, field as dc_field, replace
from fractions import Fraction
from functools import partial
from typing import Callable, Iterable, Sequence

from .budgets import DEFAULT_BUDGETS, BudgetError, Budgets
from .fields import Field
from .graphs import (
    CheegerUndefinedError,
    SimplicialGraph,
    cheeger_graph_exact,
    is_connected,
    max_valence,
    spectral_cheeger_bounds,
)
from .pairing import (
    PairingTriple,
    augment_triple,
    cheeger_constant_coordinate,
    cheeger_constant_exhaustive,
    is_alternating,
    is_pairing_connected_exhaustive,
    q_valence_coordinate,
    q_valence_exhaustive,
)
from .raag import RaagTriple, build_triple, max_centralizer_rank

VERDICT_CONSISTENT = "consistent-with-expander"
VERDICT_NOT_EXPANDER = "not-expander"
VERDICT_INCONCLUSIVE = "inconclusive"


# -- report structures -------------------------------------------------------


def _format_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, Fraction):
        return str(v)
    return f"{v:.6f}"


@dataclass(frozen=True)
class FamilyEntry:
    index: int
    kind: str                      # "graph" or "triple"
    field: str | None
    size: int                      # vertex count or dim V
    valence: int | None
    valence_method: str | None
    cheeger: Fraction | None       # exact value when known
    cheeger_lower: float | None = None
    cheeger_upper: float | None = None
    method: str = "exact"          # exact | spectral | undefined | inconclusive
    note: str = ""

    def to_json_dict(self) -> dict:
        return {
            "index": self.index,
            "kind": self.kind,
            "field": self.field,
            "size": self.size,
            "valence": self.valence,
            "valence_method": self.valence_method,
            "cheeger": None if self.cheeger is None else str(self.cheeger),
            "cheeger_lower": self.cheeger_lower,
            "cheeger_upper": self.cheeger_upper,
            "method": self.method,
            "note": self.note,
        }


@dataclass(frozen=True)
class FamilyReport:
    entries: tuple[FamilyEntry, ...]
    prefix_infimum: Fraction | float | None
    prefix_infimum_kind: str | None    # "exact" or "spectral-lower"
    valence_bound: int | None
    verdict: str

    def to_json_dict(self) -> dict:
        inf = self.prefix_infimum
        return {
            "entries": [e.to_json_dict() for e in self.entries],
            "prefix_infimum": str(inf) if isinstance(inf, Fraction) else inf,
            "prefix_infimum_kind": self.prefix_infimum_kind,
            "valence_bound": self.valence_bound,
            "verdict": self.verdict,
        }

    def to_csv(self) -> str:
        lines = ["index,n,dimV,valence,qvalence,h_graph,h_triple,method,checks_passed"]
        for e in self.entries:
            if e.kind == "graph":
                h = _format_value(e.cheeger)
                if e.cheeger is None and e.cheeger_lower is not None:
                    h = f"[{e.cheeger_lower:.6f};{e.cheeger_upper:.6f}]"
                row = [str(e.index), str(e.size), "", str(e.valence or 0), "", h, "", e.method, ""]
            else:
                row = [
                    str(e.index), "", str(e.size),
                    "", "" if e.valence is None else str(e.valence),
                    "", _format_value(e.cheeger), e.method, "",
                ]
            lines.append(",".join(row))
        return "\n".join(lines) + "\n"


def _assemble_report(entries: list[FamilyEntry], valence_bound: int | None) -> FamilyReport:
    best = None
    best_kind = None
    disproved = False
    inconclusive = False
    observed_valence = 0
    for e in entries:
        if e.valence is not None and e.valence > observed_valence:
            observed_valence = e.valence
        if e.method == "inconclusive":
            inconclusive = True
            continue
        if e.cheeger is not None:
            value, kind = e.cheeger, "exact"
            if value == 0:
                disproved = True
        elif e.cheeger_lower is not None:
            value, kind = e.cheeger_lower, "spectral-lower"
        else:
            continue
        if best is None or value < best:
            best, best_kind = value, kind
    if valence_bound is not None and observed_valence > valence_bound:
        disproved = True
    if disproved:
        verdict = VERDICT_NOT_EXPANDER
    elif inconclusive:
        verdict = VERDICT_INCONCLUSIVE
    else:
        verdict = VERDICT_CONSISTENT
    return FamilyReport(
        tuple(entries), best, best_kind,
        valence_bound if valence_bound is not None else observed_valence,
        verdict,
    )


def graph_family_report(
    graphs: Sequence[SimplicialGraph],
    mode: str = "exact",
    budgets: Budgets = DEFAULT_BUDGETS,
    valence_bound: int | None = None,
    jobs: int = 1,
) -> FamilyReport:
    """Per-graph Cheeger metrics with expander bookkeeping over a finite prefix.

    ``mode="exact"`` brute-forces each graph within budget and falls back to
    spectral bounds past it; ``mode="spectral"`` goes straight to the bounds.
    A disconnected graph is recorded as exact zero in either mode.
    """
    if mode not in ("exact", "spectral"):
        raise ValueError(f"unknown mode {mode!r}")
    worker = partial(_graph_entry, mode=mode, budgets=budgets)
    entries = [
        replace(e, index=i) for i, e in enumerate(_pmap(worker, list(graphs), jobs))
    ]
    return _assemble_report(entries, valence_bound)


def _graph_entry(graph: SimplicialGraph, mode: str, budgets: Budgets) -> FamilyEntry:
    n = graph.n_vertices
    val = max_valence(graph)
    if n < 2:
        return FamilyEntry(0, "graph", None, n, val, "graph", None, method="undefined",
                           note="no admissible subset")
    if not is_connected(graph):
        return FamilyEntry(0, "graph", None, n, val, "graph", Fraction(0),
                           method="exact", note="disconnected")
    if mode == "exact":
        try:
            res = cheeger_graph_exact(graph, budgets)
            return FamilyEntry(0, "graph", None, n, val, "graph", res.value, method="exact")
        except BudgetError:
            pass
    lower, upper = spectral_cheeger_bounds(graph)
    note = "budget exceeded; spectral fallback" if mode == "exact" else ""
    return FamilyEntry(0, "graph", None, n, val, "graph", None,
                       cheeger_lower=lower, cheeger_upper=upper, method="spectral", note=note)


def triple_family_report(
    triples: Sequence,
    budgets: Budgets = DEFAULT_BUDGETS,
    valence_bound: int | None = None,
    jobs: int = 1,
) -> FamilyReport:
    """Per-triple dim V, q-valence and Cheeger value over a finite prefix.

    Fields may differ across indices.  A triple past the enumeration budgets
    is recorded as an inconclusive entry rather than failing the report.
    """
    worker = partial(_triple_entry, budgets=budgets)
    entries = [
        replace(e, index=i) for i, e in enumerate(_pmap(worker, list(triples), jobs))
    ]
    return _assemble_report(entries, valence_bound)


def _triple_entry(t, budgets: Budgets) -> FamilyEntry:
    pt: PairingTriple = getattr(t, "pairing", t)
    n = pt.dim_v
    try:
        qval, qmethod = q_valence_exhaustive(pt, budgets), "exhaustive"
    except BudgetError:
        qval, qmethod = q_valence_coordinate(pt), "coordinate"
    try:
        report = cheeger_constant_exhaustive(pt, budgets)
    except BudgetError as err:
        return FamilyEntry(0, "triple", pt.field.name, n, qval, qmethod, None,
                           method="inconclusive", note=str(err))
    if report.value is None:
        return FamilyEntry(0, "triple", pt.field.name, n, qval, qmethod, None,
                           method="undefined", note="dim V < 2")
    return FamilyEntry(0, "triple", pt.field.name, n, qval, qmethod, report.value,
                       method="exact")


# -- verification records ----------------------------------------------------


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    witness: dict | None = None

    def to_json_dict(self) -> dict:
        out = {"name": self.name, "passed": self.passed}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass(frozen=True)
class ItemVerification:
    index: int
    label: str
    checks: tuple[CheckResult, ...]
    data: dict = dc_field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json_dict(self) -> dict:
        return {
            "index": self.index,
            "label": self.label,
            "passed": self.passed,
            "checks": [c.to_json_dict() for c in self.checks],
            "data": self.data,
        }


@dataclass(frozen=True)
class VerificationRecord:
    kind: str
    checked: int
    failed: int
    items: tuple[ItemVerification, ...]

    @property
    def passed(self) -> bool:
        return self.failed == 0

    def to_json_dict(self, verbose: bool = False) -> dict:
        out = {
            "kind": self.kind,
            "checked": self.checked,
            "failed": self.failed,
            "failures": [it.to_json_dict() for it in self.items if not it.passed],
        }
        if verbose:
            out["items"] = [it.to_json_dict() for it in self.items]
        return out

    def to_csv(self) -> str:
        lines = ["index,n,dimV,valence,qvalence,h_graph,h_triple,method,checks_passed"]
        for it in self.items:
            d = it.data
            lines.append(",".join([
                str(it.index),
                str(d.get("n", "")),
                str(d.get("dimV", "")),
                str(d.get("valence", "")),
                str(d.get("qvalence", "")),
                d.get("h_graph", ""),
                d.get("h_triple", ""),
                d.get("method", ""),
                f"{sum(1 for c in it.checks if c.passed)}/{len(it.checks)}",
            ]))
        return "\n".join(lines) + "\n"


def _graph_label(graph: SimplicialGraph) -> str:
    edges = ";".join(f"{u}-{v}" for u, v in graph.edges)
    return f"n={graph.n_vertices}[{edges}]"


def _exact_or_none(graph: SimplicialGraph, budgets: Budgets) -> Fraction | None:
    try:
        return cheeger_graph_exact(graph, budgets).value
    except CheegerUndefinedError:
        return None


def _fmt(v) -> str:
    return "undefined" if v is None else str(v)


def _record(kind: str, items: list[ItemVerification]) -> VerificationRecord:
    items = [
        ItemVerification(i, it.label, it.checks, it.data) for i, it in enumerate(items)
    ]
    failed = sum(1 for it in items if not it.passed)
    return VerificationRecord(kind, len(items), failed, tuple(items))


def verify_main_theorem(
    graphs: Iterable[SimplicialGraph],
    field: Field,
    budgets: Budgets = DEFAULT_BUDGETS,
    jobs: int = 1,
) -> VerificationRecord:
    """Machine-check the dictionary on each graph: Cheeger equality between
    the graph and its cohomology triple (exhaustive and coordinate routes),
    dimension = vertex count, centralizer rank = q-valence + 1, and
    pairing-connectedness = connectedness.  This is the primary regression
    gate; failures carry witnesses.
    """
    worker = partial(_verify_one_graph, field=field, budgets=budgets)
    return _record("main-theorem", _pmap(worker, list(graphs), jobs))


def _verify_one_graph(graph: SimplicialGraph, field: Field, budgets: Budgets) -> ItemVerification:
    triple = build_triple(graph, field)
    n = graph.n_vertices
    h_graph = _exact_or_none(graph, budgets)
    exh = cheeger_constant_exhaustive(triple, budgets)
    coord = cheeger_constant_coordinate(triple, budgets)
    try:
        qval, qmethod = q_valence_exhaustive(triple, budgets), "exhaustive"
    except BudgetError:
        qval, qmethod = q_valence_coordinate(triple), "coordinate"
    connected = is_connected(graph)
    p_connected = is_pairing_connected_exhaustive(triple, budgets)
    cent = max_centralizer_rank(graph) if n else None
    checks = [
        CheckResult(
            "h-graph-equals-h-triple",
            h_graph == exh.value,
            None if h_graph == exh.value else {"h_graph": _fmt(h_graph), "h_triple": _fmt(exh.value)},
        ),
        CheckResult(
            "h-coordinate-equals-exhaustive",
            coord.value == exh.value,
            None if coord.value == exh.value else {"coordinate": _fmt(coord.value), "exhaustive": _fmt(exh.value)},
        ),
        CheckResult(
            "dimV-equals-rank",
            triple.pairing.dim_v == n,
            None if triple.pairing.dim_v == n else {"dimV": triple.pairing.dim_v, "vertices": n},
        ),
        CheckResult(
            "centralizer-rank-equals-qvalence-plus-1",
            cent == qval + 1 if cent is not None else True,
            None if cent is None or cent == qval + 1 else
            {"max_centralizer_rank": cent, "q_valence": qval, "q_valence_method": qmethod},
        ),
        CheckResult(
            "pairing-connected-iff-connected",
            p_connected == connected,
            None if p_connected == connected else
            {"pairing_connected": p_connected, "graph_connected": connected},
        ),
    ]
    data = {
        "n": n,
        "dimV": triple.pairing.dim_v,
        "valence": max_valence(graph),
        "qvalence": qval,
        "h_graph": _fmt(h_graph),
        "h_triple": _fmt(exh.value),
        "method": f"exhaustive+{qmethod}",
    }
    return ItemVerification(0, _graph_label(graph), tuple(checks), data)


def verify_augmentation(
    graphs: Iterable[SimplicialGraph],
    field: Field | None = None,
    pivot: int = 0,
    budgets: Budgets = DEFAULT_BUDGETS,
    jobs: int = 1,
) -> VerificationRecord:
    """Check the pivot augmentation per graph: the Cheeger value may only go
    up, coordinate q-valence by at most one, and the alternating property
    flips from true to false."""
    if field is None:
        field = Field.gf(2)
    worker = partial(_verify_one_augmentation, field=field, pivot=pivot, budgets=budgets)
    return _record("augmentation", _pmap(worker, list(graphs), jobs))


def _verify_one_augmentation(
    graph: SimplicialGraph, field: Field, pivot: int, budgets: Budgets
) -> ItemVerification:
    triple = build_triple(graph, field)
    augmented = augment_triple(triple, pivot)
    h_orig = cheeger_constant_exhaustive(triple, budgets).value
    h_aug = cheeger_constant_exhaustive(augmented, budgets).value
    if h_orig is None:
        monotone = h_aug is None
    else:
        monotone = h_aug is not None and h_aug >= h_orig
    d_orig = q_valence_coordinate(triple)
    d_aug = q_valence_coordinate(augmented)
    alt_orig = is_alternating(triple)
    alt_aug = is_alternating(augmented)
    checks = [
        CheckResult(
            "cheeger-monotone-under-augmentation",
            monotone,
            None if monotone else {"h": _fmt(h_orig), "h_augmented": _fmt(h_aug)},
        ),
        CheckResult(
            "qvalence-grows-at-most-one",
            d_aug <= d_orig + 1,
            None if d_aug <= d_orig + 1 else {"d": d_orig, "d_augmented": d_aug},
        ),
        CheckResult(
            "alternating-flips",
            alt_orig and not alt_aug,
            None if alt_orig and not alt_aug else {"alternating": alt_orig, "alternating_augmented": alt_aug},
        ),
    ]
    data = {
        "n": graph.n_vertices,
        "dimV": triple.pairing.dim_v,
        "qvalence": d_orig,
        "h_graph": _fmt(h_orig),
        "h_triple": _fmt(h_aug),
        "method": "exhaustive",
    }
    return ItemVerification(0, _graph_label(graph), tuple(checks), data)


def field_invariance_check(
    graphs: Iterable[SimplicialGraph],
    fields: Sequence[Field],
    budgets: Budgets = DEFAULT_BUDGETS,
    jobs: int = 1,
) -> VerificationRecord:
    """Check that Cheeger value, q-valence and pairing-connectedness of the
    cohomology triple agree across every listed field."""
    if not fields:
        raise ValueError("field_invariance_check needs at least one field")
    worker = partial(_verify_one_invariance, fields=tuple(fields), budgets=budgets)
    return _record("field-invariance", _pmap(worker, list(graphs), jobs))


def _verify_one_invariance(
    graph: SimplicialGraph, fields: tuple[Field, ...], budgets: Budgets
) -> ItemVerification:
    h_by_field = {}
    d_by_field = {}
    conn_by_field = {}
    for f in fields:
        triple = build_triple(graph, f)
        h_by_field[f.name] = cheeger_constant_exhaustive(triple, budgets).value
        d_by_field[f.name] = q_valence_coordinate(triple)
        conn_by_field[f.name] = is_pairing_connected_exhaustive(triple, budgets)
    def invariant(d: dict) -> bool:
        vals = list(d.values())
        return all(v == vals[0] for v in vals)
    checks = [
        CheckResult("h-field-invariant", invariant(h_by_field),
                    None if invariant(h_by_field) else {k: _fmt(v) for k, v in h_by_field.items()}),
        CheckResult("qvalence-field-invariant", invariant(d_by_field),
                    None if invariant(d_by_field) else dict(d_by_field)),
        CheckResult("pairing-connected-field-invariant", invariant(conn_by_field),
                    None if invariant(conn_by_field) else dict(conn_by_field)),
    ]
    first = fields[0].name
    data = {
        "n": graph.n_vertices,
        "dimV": graph.n_vertices,
        "qvalence": d_by_field[first],
        "h_triple": _fmt(h_by_field[first]),
        "method": "+".join(f.name for f in fields),
    }
    return ItemVerification(0, _graph_label(graph), tuple(checks), data)


# -- parallel fold -----------------------------------------------------------


def _pmap(fn: Callable, items: list, jobs: int) -> list:
    """Order-preserving map, optionally across processes.  Results depend only
    on the inputs, never on the worker count."""
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with multiprocessing.Pool(processes=jobs) as pool:
        return pool.map(fn, items, chunksize=max(1, len(items) // (jobs * 4)))
