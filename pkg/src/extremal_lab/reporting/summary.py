"""Plain-text summaries printed by the command line."""

import math
from typing import List, Sequence

from ..models import CheckResult, RateReport


def _number(value: float) -> str:
    return f"{value:.3e}" if math.isfinite(value) else "n/a"


class SummaryGenerator:
    """Builds the PASS/FAIL table of a verification run and the rate table of a study."""

    def check_table(self, checks: Sequence[CheckResult]) -> str:
        width = max((len(c.name) for c in checks), default=10)
        lines = [f"{'check':<{width}}  {'value':>10}  {'threshold':>10}  status"]
        for c in checks:
            status = "PASS" if c.passed else "FAIL"
            lines.append(f"{c.name:<{width}}  {_number(c.value):>10}  {_number(c.threshold):>10}  {status}")
            if c.detail and not c.passed:
                lines.append(f"{'':<{width}}  {c.detail}")
        lines.append(self.verdict(checks))
        return "\n".join(lines)

    def verdict(self, checks: Sequence[CheckResult]) -> str:
        failed = [c.name for c in checks if not c.passed]
        if not failed:
            return f"All {len(checks)} checks passed"
        return f"{len(failed)} of {len(checks)} checks FAILED: {', '.join(failed)}"

    def rate_table(self, report: RateReport) -> str:
        lines = [
            f"{report.label}: cap = {report.capacity:.6f}, predicted limit = {report.predicted_limit:.6f}",
            f"{'n':>4}  {'rho2':>10}  {'rhoinf':>10}  {'root2':>8}  {'rootinf':>8}",
        ]
        for e in report.entries:
            if not e.converged:
                lines.append(f"{e.degree:>4}  not converged: {e.message}")
                continue
            lines.append(
                f"{e.degree:>4}  {_number(e.rho2):>10}  {_number(e.rho_inf):>10}"
                f"  {e.root2:>8.5f}  {e.root_inf:>8.5f}"
            )
        if report.degenerate:
            lines.append("Degenerate: f is reproduced exactly at every degree")
        return "\n".join(lines)

    def recommendations(self, checks: Sequence[CheckResult]) -> List[str]:
        """Follow-up hints for failed checks."""
        hints = {
            "rate_law": "Increase the truncation N or the multistart count.",
            "pole_law": "Raise degrees or tighten optimizer.stationarity_tol.",
            "minset": "Inspect the minimal set with the minset subcommand and its S-property samples.",
            "interpolation_certificate": "Critical points may be unconverged; rerun with more iterations.",
            "closed_form": "Check the optimizer with gradient=finite_difference.",
        }
        out: List[str] = []
        for c in checks:
            if c.passed:
                continue
            for prefix, hint in hints.items():
                if c.name.startswith(prefix) and hint not in out:
                    out.append(hint)
        return out
