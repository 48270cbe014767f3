"""External MaxSAT solver adapter.

A solver is either a shell command that receives the WCNF file path as its
last argument, or a callable mapping WCNF text to solver output text. Output
follows the MaxSAT Evaluation conventions: ``s`` status, ``o`` cost and ``v``
model lines, where the model is either signed literals or a 0/1 string.
"""

from __future__ import annotations

import logging
import os
import shlex
import subprocess
import tempfile
from collections.abc import Callable
from dataclasses import dataclass, field

from ..errors import EncoderBugError, SolverError
from ..parsing import Parsing
from ..text import Text
from .decoding import decode
from .encoding import WcnfInstance, encode
from .wcnf import wcnf_text

logger = logging.getLogger(__name__)

SOLVER_ENV = "LZEND_SOLVER"
# MaxSAT Evaluation solvers exit 10/20/30 for SAT/UNSAT/OPTIMUM
ACCEPTED_EXIT_CODES = (0, 10, 20, 30)

SolverCommand = str | Callable[[str], str]


@dataclass
class Model:
    assignment: dict[int, bool] = field(default_factory=dict)
    reported_cost: int | None = None
    status: str = "OPTIMUM FOUND"


def default_solver() -> str | None:
    return os.environ.get(SOLVER_ENV) or None


def parse_solver_output(output: str, num_vars: int) -> Model:
    """Parse ``s``/``o``/``v`` lines. Variables absent from the model are false.

    The last ``o`` line wins. Raises SolverError when no status line exists
    or a value line cannot be read.
    """
    status = None
    cost = None
    true_vars: set[int] = set()
    bits: str | None = None
    seen_v = False
    for line in output.splitlines():
        words = line.split()
        if not words:
            continue
        tag = words[0]
        if tag == "s":
            status = " ".join(words[1:])
        elif tag == "o":
            try:
                cost = int(words[1])
            except (IndexError, ValueError):
                raise SolverError(f"unparsable cost line {line!r}", output) from None
        elif tag == "v":
            seen_v = True
            rest = words[1:]
            if len(rest) == 1 and set(rest[0]) <= {"0", "1"} and len(rest[0]) > 1:
                bits = (bits or "") + rest[0]
                continue
            for w in rest:
                try:
                    lit = int(w)
                except ValueError:
                    raise SolverError(f"unparsable value line {line!r}", output) from None
                if lit > 0:
                    true_vars.add(lit)
    if status is None:
        raise SolverError("solver printed no status line", output)
    if not status.startswith("UNSAT") and bits is None and not seen_v:
        raise SolverError(f"solver printed no model (status {status!r})", output)
    if bits is not None:
        true_vars |= {i + 1 for i, b in enumerate(bits) if b == "1"}
    assignment = {v: v in true_vars for v in range(1, num_vars + 1)}
    return Model(assignment, cost, status)


def run_solver(instance: WcnfInstance, solver: SolverCommand, legacy: bool = False, timeout: float | None = None) -> Model:
    content = wcnf_text(instance, legacy)
    if callable(solver):
        return parse_solver_output(solver(content), instance.num_vars)
    argv = shlex.split(solver)
    if not argv:
        raise SolverError("empty solver command")
    fd, path = tempfile.mkstemp(suffix=".wcnf", prefix="lzend-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(content)
        try:
            proc = subprocess.run(argv + [path], capture_output=True, text=True, timeout=timeout)
        except FileNotFoundError:
            raise SolverError(f"solver not found: {argv[0]}") from None
        except subprocess.TimeoutExpired as exc:
            raise SolverError(f"solver timed out after {timeout} s", str(exc.stdout or "")) from None
    finally:
        os.unlink(path)
    captured = proc.stdout + proc.stderr
    if proc.returncode not in ACCEPTED_EXIT_CODES:
        raise SolverError(f"solver exited with status {proc.returncode}", captured)
    return parse_solver_output(proc.stdout, instance.num_vars)


def solve(text: Text, solver: SolverCommand, legacy: bool = False, timeout: float | None = None) -> Parsing:
    """Optimal parsing through encode, external solve and decode."""
    if text.n == 0:
        return Parsing(())
    instance, varmap = encode(text)
    model = run_solver(instance, solver, legacy, timeout)
    if model.status.startswith("UNSAT"):
        raise EncoderBugError("solver reports the hard clauses unsatisfiable")
    if model.status != "OPTIMUM FOUND":
        raise SolverError(f"solver did not prove optimality (status {model.status!r})")
    parsing = decode(model, varmap, text, instance)
    if model.reported_cost is not None and model.reported_cost != parsing.size:
        logger.warning("solver reported cost %d but decoded parsing has %d phrases", model.reported_cost, parsing.size)
    return parsing
