"""Border basis schemes: generators, gradings, separating tuples and re-embeddings."""

import json

from . import _bbs

__all__ = ["BbsError", "commands", "run"]

EXIT_OK, EXIT_REJECTED, EXIT_BUDGET, EXIT_USAGE = 0, 1, 2, 3


class BbsError(RuntimeError):
    """A report that carries an error; `reason` and `report` hold the details."""

    def __init__(self, exit_code, report):
        err = report.get("error", {})
        super().__init__(err.get("message", "bbs error"))
        self.exit_code = exit_code
        self.reason = err.get("reason")
        self.report = report


def commands():
    return list(_bbs.commands())


def run(command, ideal=None, *, gb_budget=10_000_000, search_budget=1_000_000, seed=0, mu_max=8,
        eliminate=None, check=True):
    """Runs a command and returns its report as a dict.

    `eliminate` takes a list of variable names. With `check`, a nonzero exit raises BbsError.
    """
    if eliminate is not None and not isinstance(eliminate, str):
        eliminate = ",".join(eliminate)
    code, text = _bbs.run(command, ideal, gb_budget, search_budget, seed, mu_max, eliminate)
    report = json.loads(text)
    if check and code != EXIT_OK:
        raise BbsError(code, report)
    return report
