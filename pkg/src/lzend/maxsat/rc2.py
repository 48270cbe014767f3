"""In-process RC2 backend (requires python-sat).

``solve_wcnf`` maps WCNF text to MaxSAT Evaluation style output, so it can be
passed wherever a solver command is accepted. Run as a module it behaves as
an external solver: ``python -m lzend.maxsat.rc2 FILE.wcnf``.
"""

from __future__ import annotations

import sys


def solve_wcnf(content: str, bits: bool = False) -> str:
    from pysat.examples.rc2 import RC2
    from pysat.formula import WCNF

    formula = WCNF(from_string=content)
    with RC2(formula) as rc2:
        model = rc2.compute()
        if model is None:
            return "s UNSATISFIABLE\n"
        lines = ["s OPTIMUM FOUND", f"o {rc2.cost}"]
    if bits:
        lines.append("v " + "".join("1" if lit > 0 else "0" for lit in model))
    else:
        lines.append("v " + " ".join(map(str, model)) + " 0")
    return "\n".join(lines) + "\n"


def solve_wcnf_bits(content: str) -> str:
    return solve_wcnf(content, bits=True)


def main(argv=None) -> int:
    args = sys.argv[1:] if argv is None else argv
    if len(args) != 1:
        print("usage: python -m lzend.maxsat.rc2 FILE.wcnf", file=sys.stderr)
        return 2
    with open(args[0]) as fh:
        sys.stdout.write(solve_wcnf(fh.read()))
    return 0


if __name__ == "__main__":
    sys.exit(main())
