"""
Summary and rate reports rendered with Jinja2.
"""

import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

from jinja2 import BaseLoader, Environment

from src.solvers.base import TraceRecord
from src.utils.logger import get_logger

logger = get_logger(__name__)

env = Environment(loader=BaseLoader(), trim_blocks=True, lstrip_blocks=True)

CONTRACTION_REL_SLACK = 1e-10
CONTRACTION_ABS_SLACK = 1e-14


def render_template(template_str: str, **kwargs) -> str:
    """Render Jinja2 template with provided context."""
    template = env.from_string(template_str)
    return template.render(**kwargs)


@dataclass
class RateViolation:
    iter: int
    r_prev: float
    r_next: float
    bound: float


@dataclass
class RateAudit:
    """Per-iteration check R_k² ≤ (1 − √(αt_k))·R²_{k−1}."""
    checked: int = 0
    violations: List[RateViolation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def worst_ratio(self) -> Optional[float]:
        ratios = [v.r_next / v.bound if v.bound > 0 else math.inf for v in self.violations]
        return max(ratios) if ratios else None


def audit_contraction(
    trace: Sequence[TraceRecord],
    alpha: float,
    rel_slack: float = CONTRACTION_REL_SLACK,
    abs_slack: float = CONTRACTION_ABS_SLACK,
) -> RateAudit:
    """
    Check the geometric contraction factor on consecutive trace rows.

    Rows without Rk_sq (floor exits) are skipped; the absolute slack is
    relative to R_0².
    """
    audit = RateAudit()
    if not trace or trace[0].Rk_sq is None:
        return audit
    floor = abs_slack * max(trace[0].Rk_sq, 0.0)

    for prev, cur in zip(trace, trace[1:]):
        if prev.Rk_sq is None or cur.Rk_sq is None or cur.t_k is None or prev.Rk_sq <= 0:
            continue
        factor = 1.0 - math.sqrt(min(alpha * cur.t_k, 1.0))
        bound = factor * prev.Rk_sq
        audit.checked += 1
        if cur.Rk_sq > bound * (1.0 + rel_slack) + floor:
            audit.violations.append(RateViolation(cur.iter, prev.Rk_sq, cur.Rk_sq, bound))
    return audit


SUMMARY_MARKDOWN_TEMPLATE = """# Benchmark summary: {{ problem }}

- data: {{ data }}
- alpha: {{ alpha }}
- eta: {{ eta }}, gamma: {{ gamma }}, tol: {{ tol }}
- criterion: {{ criterion }}, rootfinder: {{ rootfinder }}

{% for block in blocks %}
## mu = {{ block.mu }}

F* = {{ block.f_star }} (reference {{ block.reference }}{% if not block.reached_floor %}, floor not reached{% endif %})

| solver | iter | cpu | f-ev | g-ev | p-ev | MVM | f-diff | status |
|---|---|---|---|---|---|---|---|---|
{% for c in block.cells %}
| {{ c.label }} | {{ c.iter }} | {{ "%.3f"|format(c.cpu) }} | {{ c.f_ev }} | {{ c.g_ev }} | {{ c.p_ev }} | {{ c.mvm }} | {{ "%.2e"|format(c.f_diff) }} | {{ c.status }} |
{% endfor %}

{% endfor %}
{% if notes %}
## Notes

{% for note in notes %}
- {{ note }}
{% endfor %}
{% endif %}
"""

SUMMARY_TEXT_TEMPLATE = """{{ "=" * 78 }}
BENCHMARK SUMMARY: {{ problem }}
{{ "=" * 78 }}
data={{ data }} alpha={{ alpha }} eta={{ eta }} gamma={{ gamma }} tol={{ tol }}
criterion={{ criterion }} rootfinder={{ rootfinder }}
{% for block in blocks %}

mu={{ block.mu }}  F*={{ block.f_star }}  reference={{ block.reference }}{% if not block.reached_floor %} (floor not reached){% endif %}

{{ "%-18s %7s %9s %8s %8s %8s %8s %10s  %s"|format("solver", "iter", "cpu", "f-ev", "g-ev", "p-ev", "MVM", "f-diff", "status") }}
{{ "-" * 78 }}
{% for c in block.cells %}
{{ "%-18s %7d %9.3f %8d %8d %8d %8d %10.2e  %s"|format(c.label, c.iter, c.cpu, c.f_ev, c.g_ev, c.p_ev, c.mvm, c.f_diff, c.status) }}
{% endfor %}
{% endfor %}
{% if notes %}

NOTES
{% for note in notes %}
  * {{ note }}
{% endfor %}
{% endif %}
"""

RATE_MARKDOWN_TEMPLATE = """# Rate report: {{ problem }}

Each GeoPG-family iteration must satisfy R_k^2 <= (1 - sqrt(alpha t_k)) R_{k-1}^2 (relative slack {{ rel_slack }}).

| cell | checked | violations | worst R_k^2 / bound | result |
|---|---|---|---|---|
{% for a in audits %}
| {{ a.label }} | {{ a.checked }} | {{ a.violations }} | {{ a.worst }} | {{ "PASS" if a.ok else "FAIL" }} |
{% endfor %}

Overall: {{ "PASS" if ok else "FAIL" }}
"""

RATE_TEXT_TEMPLATE = """{{ "=" * 78 }}
RATE REPORT: {{ problem }}
{{ "=" * 78 }}
{% for a in audits %}
{{ "%-30s checked=%-6d violations=%-4d %s"|format(a.label, a.checked, a.violations, "PASS" if a.ok else "FAIL") }}
{% endfor %}
Overall: {{ "PASS" if ok else "FAIL" }}
"""


def summary_context(report: Any) -> Dict[str, Any]:
    """Template context for an ExperimentReport."""
    blocks = []
    for block in report.mu_blocks:
        cells = []
        for cell in block.cells:
            r = cell.result
            cells.append({
                "label": cell.label,
                "iter": r.iterations,
                "cpu": r.elapsed,
                "f_ev": r.counters.f_ev,
                "g_ev": r.counters.g_ev,
                "p_ev": r.counters.p_ev,
                "mvm": r.counters.mvm,
                "f_diff": abs(r.F - block.reference.f_star),
                "status": r.status.value,
            })
        blocks.append({
            "mu": f"{block.mu:.6e}",
            "f_star": f"{block.reference.f_star:.15e}",
            "reference": block.reference.solver.value,
            "reached_floor": block.reference.reached_floor,
            "cells": cells,
        })
    return {
        "problem": report.problem,
        "data": report.data,
        "alpha": report.alpha,
        "eta": report.eta,
        "gamma": report.gamma,
        "tol": report.tol,
        "criterion": report.criterion,
        "rootfinder": report.rootfinder,
        "blocks": blocks,
        "notes": report.notes,
    }


def generate_summary(report: Any, output_format: str = "markdown") -> str:
    """One table per μ: iter, cpu, counters, f-diff, status."""
    template = SUMMARY_MARKDOWN_TEMPLATE if output_format == "markdown" else SUMMARY_TEXT_TEMPLATE
    return render_template(template, **summary_context(report))


def generate_rate_report(report: Any, output_format: str = "markdown") -> str:
    audits = []
    for block in report.mu_blocks:
        for cell in block.cells:
            if cell.audit is None:
                continue
            worst = cell.audit.worst_ratio
            audits.append({
                "label": f"{cell.label} mu={block.mu:.3e}",
                "checked": cell.audit.checked,
                "violations": len(cell.audit.violations),
                "worst": "-" if worst is None else f"{worst:.6f}",
                "ok": cell.audit.ok,
            })
    template = RATE_MARKDOWN_TEMPLATE if output_format == "markdown" else RATE_TEXT_TEMPLATE
    return render_template(
        template,
        problem=report.problem,
        audits=audits,
        ok=all(a["ok"] for a in audits),
        rel_slack=CONTRACTION_REL_SLACK,
    )
