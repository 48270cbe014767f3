"""WCNF serialization.

The default dialect is the post-2022 MaxSAT Evaluation format
(``h <lits> 0`` for hard clauses, ``<weight> <lits> 0`` for soft ones).
The legacy dialect prefixes ``p wcnf <vars> <clauses> <top>`` and writes hard
clauses with weight ``top`` = number of soft clauses + 1.
"""

from __future__ import annotations

import io
from typing import TextIO

from .encoding import WcnfInstance


def _clause(weight, lits) -> str:
    return " ".join([str(weight), *map(str, lits), "0"])


def write_wcnf(instance: WcnfInstance, sink: TextIO, legacy: bool = False) -> None:
    if legacy:
        top = len(instance.soft) + 1
        sink.write(f"p wcnf {instance.num_vars} {len(instance.hard) + len(instance.soft)} {top}\n")
        hard_tag = top
    else:
        hard_tag = "h"
    for clause in instance.hard:
        sink.write(_clause(hard_tag, clause) + "\n")
    for weight, clause in instance.soft:
        sink.write(_clause(weight, clause) + "\n")


def wcnf_text(instance: WcnfInstance, legacy: bool = False) -> str:
    buf = io.StringIO()
    write_wcnf(instance, buf, legacy)
    return buf.getvalue()


def read_wcnf(content: str) -> WcnfInstance:
    """Parse either dialect back into an instance (comments ignored)."""
    inst = WcnfInstance()
    top = None
    for raw in content.splitlines():
        words = raw.split()
        if not words or words[0] == "c":
            continue
        if words[0] == "p":
            inst.num_vars = int(words[2])
            top = int(words[4]) if len(words) > 4 else None
            continue
        if words[-1] != "0":
            raise ValueError(f"clause line not terminated by 0: {raw!r}")
        lits = [int(w) for w in words[1:-1]]
        if words[0] == "h" or (top is not None and int(words[0]) >= top):
            inst.hard.append(lits)
        else:
            inst.soft.append((int(words[0]), lits))
        inst.num_vars = max([inst.num_vars, *map(abs, lits)])
    return inst
