"""
Command Implementations

One function per `dgl` sub-command. Each takes already parsed models and
returns a CommandResult: the JSON report, the process exit code and a short
human-readable summary. The CLI and the API both call these.

Exit codes: 0 check passed / certificate found, 1 check failed / no
certificate. Input errors (2) and invariant violations (3) propagate as
exceptions and are mapped by the caller.
"""

import logging
import time
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from ..config import settings
from ..dgl.checks import check_chain_map, check_d_squared, check_minimal, render_in
from ..dgl.dgl import Dgl
from ..dgl.homology import homology_report
from ..errors import InputError
from ..models.diagonal import diagonal_model
from ..models.fatwedge import MapModel, fat_wedge_model
from ..models.invariants import check_product_invariants
from ..models.product import binary_product, power_model
from .certify import SecatResult, cat, secat_upper_bound, tc
from .modelfile import write_model
from .problem import SearchOptions
from .reports import CommandReport, secat_report

logger = logging.getLogger(__name__)

BANNER = "=" * 60


@dataclass
class CommandResult:
    report: CommandReport
    exit_code: int
    summary: List[str] = field(default_factory=list)
    model_text: Optional[str] = None


class _Clock:
    """Per-phase wall-clock timings, reported only when enabled"""

    def __init__(self, enabled: bool):
        self.enabled = enabled
        self.timings: Dict[str, float] = {}
        self._start = time.perf_counter()

    def lap(self, phase: str):
        now = time.perf_counter()
        self.timings[phase] = round(now - self._start, 6)
        self._start = now

    def result(self) -> Optional[Dict[str, float]]:
        return self.timings if self.enabled else None


def degree_bound(N: Optional[int]) -> int:
    """Validated degree bound (default from settings)"""
    N = settings.DEFAULT_MAX_DEGREE if N is None else N
    if N < 1:
        raise InputError(f"Degree bound must be >= 1, got {N}")
    if N > settings.MAX_DEGREE_LIMIT:
        raise InputError(f"Degree bound {N} exceeds MAX_DEGREE_LIMIT={settings.MAX_DEGREE_LIMIT}")
    return N


def _frame(title: str, lines: List[str]) -> List[str]:
    return [BANNER, title, BANNER, *lines, BANNER]


# ============================================================================
# Model commands
# ============================================================================

def check_command(model: MapModel, N: Optional[int] = None, inputs: Optional[Dict[str, Any]] = None,
                  timings: bool = False) -> CommandResult:
    """d² = 0, minimality and the stage filtration"""
    N = degree_bound(N)
    clock = _Clock(timings)
    L = model.dgl
    checks = [check_d_squared(L, N), check_minimal(L)]
    clock.lap("checks")
    passed = all(c.passed for c in checks)
    stages = L.stages
    details = {"checks": checks, "stages": stages, "domain": list(model.domain_ids)}

    lines = [f"{c.check}: {'passed' if c.passed else 'FAILED'}" for c in checks]
    for c in checks:
        lines += [f"  {v.generator} (degree {v.degree}): {v.residual}" for v in c.violations]
    lines.append("stages: " + ", ".join(f"{gid}={s}" for gid, s in stages.items()))
    report = CommandReport(command="check", inputs=inputs or {}, degree_bound=N,
                           status="ok" if passed else "failed", details=details,
                           timings=clock.result())
    return CommandResult(report, 0 if passed else 1, _frame(f"CHECK {L.name}", lines))


def homology_command(model: MapModel, N: Optional[int] = None, inputs: Optional[Dict[str, Any]] = None,
                     timings: bool = False) -> CommandResult:
    N = degree_bound(N)
    clock = _Clock(timings)
    report = homology_report(model.dgl, N)
    clock.lap("homology")
    lines = [f"H_{d}: {dim}" for d, dim in report.dims.items()]
    return CommandResult(
        CommandReport(command="homology", inputs=inputs or {}, degree_bound=N, status="ok",
                      details=report, timings=clock.result()),
        0,
        _frame(f"HOMOLOGY {model.dgl.name} (degrees 1..{N})", lines),
    )


def _model_details(L: Dgl) -> Dict[str, Any]:
    return {
        "name": L.name,
        "generators": len(L),
        "omitted": [g.id for g in L.omitted],
        "model": write_model(L),
    }


def product_command(left: MapModel, right: MapModel, N: Optional[int] = None,
                    inputs: Optional[Dict[str, Any]] = None, timings: bool = False) -> CommandResult:
    N = degree_bound(N)
    clock = _Clock(timings)
    P = binary_product(left.dgl, right.dgl, N)
    clock.lap("product")
    text = write_model(P.dgl)
    lines = [f"{len(P.dgl)} generator(s), {len(P.omitted)} omitted above degree {N}"]
    return CommandResult(
        CommandReport(command="product", inputs=inputs or {}, degree_bound=N, status="ok",
                      details=_model_details(P.dgl), timings=clock.result()),
        0,
        _frame(f"PRODUCT {P.dgl.name}", lines),
        model_text=text,
    )


def power_command(model: MapModel, copies: int, N: Optional[int] = None, run_checks: bool = False,
                  inputs: Optional[Dict[str, Any]] = None, timings: bool = False) -> CommandResult:
    N = degree_bound(N)
    clock = _Clock(timings)
    P = power_model(model.dgl, copies, N)
    clock.lap("power")
    details = _model_details(P.dgl)
    lines = [f"{len(P.dgl)} generator(s), {len(P.omitted)} omitted above degree {N}"]
    passed = True
    if run_checks:
        invariants = check_product_invariants(P)
        clock.lap("checks")
        passed = invariants.passed
        details["invariants"] = invariants
        lines += [f"{c.check}: {'passed' if c.passed else 'FAILED'}" for c in invariants.checks]
        if invariants.quasi_iso is not None:
            lines.append(f"quasi_iso: {'passed' if invariants.quasi_iso.passed else 'FAILED'}")
    return CommandResult(
        CommandReport(command="power", inputs=inputs or {}, degree_bound=N,
                      status="ok" if passed else "failed", details=details, timings=clock.result()),
        0 if passed else 1,
        _frame(f"POWER {P.dgl.name}", lines),
        model_text=write_model(P.dgl),
    )


def diagonal_command(model: MapModel, copies: int, N: Optional[int] = None,
                     inputs: Optional[Dict[str, Any]] = None, timings: bool = False) -> CommandResult:
    N = degree_bound(N)
    clock = _Clock(timings)
    delta = diagonal_model(model.dgl, copies, N)
    clock.lap("diagonal")
    chain_map = check_chain_map(delta, N)
    clock.lap("checks")
    images = {g.id: render_in(delta.target, delta.image(g.id)) for g in delta.source.generators}
    lines = [f"delta({gid}) = {text}" for gid, text in images.items()]
    lines.append(f"chain_map: {'passed' if chain_map.passed else 'FAILED'}")
    return CommandResult(
        CommandReport(command="diagonal", inputs=inputs or {}, degree_bound=N,
                      status="ok" if chain_map.passed else "failed",
                      details={"images": images, "chain_map": chain_map}, timings=clock.result()),
        0 if chain_map.passed else 1,
        _frame(f"DIAGONAL {model.dgl.name} -> {delta.target.name}", lines),
    )


def fatwedge_command(model: MapModel, n: int, N: Optional[int] = None,
                     inputs: Optional[Dict[str, Any]] = None, timings: bool = False) -> CommandResult:
    N = degree_bound(N)
    clock = _Clock(timings)
    fw = fat_wedge_model(model, n, N)
    clock.lap("fatwedge")
    details = {
        "n": n,
        "kept": fw.kept.ids,
        "removed": list(fw.removed),
        "u_generators": sorted(fw.u_ids),
        "model": write_model(fw.kept),
    }
    lines = [
        f"kept: {len(fw.kept)} generator(s), removed: {len(fw.removed)}, |U| = {len(fw.u_ids)}",
        "removed: " + (", ".join(fw.removed) or "-"),
    ]
    return CommandResult(
        CommandReport(command="fatwedge", inputs=inputs or {}, degree_bound=N, status="ok",
                      details=details, timings=clock.result()),
        0,
        _frame(f"FAT WEDGE {fw.kept.name}", lines),
    )


# ============================================================================
# Certificate commands
# ============================================================================

def _certificate_result(command: str, result: SecatResult, subject: str, label: str,
                        inputs: Optional[Dict[str, Any]], clock: _Clock) -> CommandResult:
    details = secat_report(result, subject, label)
    found = details.certificate is not None
    transcript = details.outcomes[-1].transcript if details.outcomes else []

    lines = [details.statement, ""]
    for outcome in details.outcomes:
        if outcome.status == "certificate":
            lines.append(f"n={outcome.n}: certificate ({outcome.explored} node(s))")
        else:
            kind = "exhaustive" if outcome.exhaustive else "inconclusive"
            lines.append(f"n={outcome.n}: no certificate, {kind}: {outcome.reason}")
            if outcome.residual:
                lines.append(f"  residual on {outcome.generator}: {outcome.residual}")
    if found:
        lines.append("")
        lines += [f"alpha({gid}) = {text}" for gid, text in details.certificate.images.items()]
    if details.replacement is not None:
        lines.append("")
        lines.append(f"replacement ({details.replacement.strategy}): W = "
                     + ", ".join(details.replacement.relative))

    report = CommandReport(
        command=command,
        inputs=inputs or {},
        degree_bound=result.degree_bound,
        status="certificate" if found else "no_certificate",
        certificate=details.certificate.images if found else None,
        transcript=transcript,
        details=details,
        timings=clock.result(),
    )
    return CommandResult(report, 0 if found else 1, _frame(f"{label.upper()} {subject}", lines))


def _max_n(max_n: Optional[int]) -> int:
    max_n = settings.DEFAULT_MAX_N if max_n is None else max_n
    if max_n < 0:
        raise InputError(f"--max-n must be >= 0, got {max_n}")
    return max_n


def secat_command(model: MapModel, n: Optional[int] = None, max_n: Optional[int] = None, N: Optional[int] = None,
                  options: Optional[SearchOptions] = None, inputs: Optional[Dict[str, Any]] = None,
                  timings: bool = False) -> CommandResult:
    """
    Certificate search for a map model

    With only n, tries that n. With max_n, tries n (default 0) up to max_n.
    """
    N = degree_bound(N)
    clock = _Clock(timings)
    if n is not None and n < 0:
        raise InputError(f"--n must be >= 0, got {n}")
    low = 0 if n is None else n
    high = n if (n is not None and max_n is None) else _max_n(max_n)
    if high < low:
        raise InputError(f"--max-n {high} is below --n {low}")
    result = secat_upper_bound(model, high, N, options or settings.search_options(), min_n=low)
    clock.lap("search")
    return _certificate_result("secat", result, model.dgl.name, "secat", inputs, clock)


def cat_command(model: MapModel, max_n: Optional[int] = None, N: Optional[int] = None,
                options: Optional[SearchOptions] = None, inputs: Optional[Dict[str, Any]] = None,
                timings: bool = False) -> CommandResult:
    N = degree_bound(N)
    clock = _Clock(timings)
    result = cat(model.dgl, _max_n(max_n), N, options or settings.search_options())
    clock.lap("search")
    return _certificate_result("cat", result, model.dgl.name, "cat", inputs, clock)


def tc_command(model: MapModel, max_n: Optional[int] = None, N: Optional[int] = None,
               options: Optional[SearchOptions] = None, inputs: Optional[Dict[str, Any]] = None,
               timings: bool = False) -> CommandResult:
    N = degree_bound(N)
    clock = _Clock(timings)
    result = tc(model.dgl, _max_n(max_n), N, options or settings.search_options())
    clock.lap("search")
    return _certificate_result("tc", result, model.dgl.name, "tc", inputs, clock)
