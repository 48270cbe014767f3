"""Weighted CNF encoding of optimal LZ-End parsing.

Variables:
  p_i      position i starts a phrase (every position 1..n)
  r_{i->j} position i copies position j, for j < i with T[j] = T[i]
Leftmost-occurrence flags are constants and are folded into the clauses.
One soft clause (not p_i) per position, so the optimum cost counts phrases.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field

from ..errors import ContractViolation
from ..parsing import SINGLETON, Parsing
from ..text import Text

PAIRWISE_LIMIT = 4


class VarPool:
    def __init__(self, top: int = 0):
        self.top = top

    def fresh(self) -> int:
        self.top += 1
        return self.top


def exactly_one(literals: Sequence[int], pool: VarPool) -> tuple[list[list[int]], list[int]]:
    """Clauses forcing exactly one literal true, plus the auxiliary variables.

    At-most-one is pairwise up to four literals and a sequential counter
    (one auxiliary per literal but the last) beyond that.
    """
    lits = list(literals)
    k = len(lits)
    if k == 0:
        raise ContractViolation("exactly_one needs at least one literal")
    clauses = [lits[:]]
    if k <= PAIRWISE_LIMIT:
        for a in range(k):
            for b in range(a + 1, k):
                clauses.append([-lits[a], -lits[b]])
        return clauses, []
    # s_t <=> some x_1..x_t is true (one direction suffices for AMO)
    s = [pool.fresh() for _ in range(k - 1)]
    clauses.append([-lits[0], s[0]])
    for t in range(1, k - 1):
        clauses.append([-lits[t], s[t]])
        clauses.append([-s[t - 1], s[t]])
        clauses.append([-lits[t], -s[t - 1]])
    clauses.append([-lits[k - 1], -s[k - 2]])
    return clauses, s


@dataclass
class VarMap:
    n: int = 0
    p_vars: dict[int, int] = field(default_factory=dict)
    c_fixed: dict[int, bool] = field(default_factory=dict)
    r_vars: dict[tuple[int, int], int] = field(default_factory=dict)
    aux_vars: list[int] = field(default_factory=list)
    # (literals, auxiliaries) of every sequential counter, in creation order
    counters: list[tuple[tuple[int, ...], tuple[int, ...]]] = field(default_factory=list)

    @property
    def num_vars(self) -> int:
        return len(self.p_vars) + len(self.r_vars) + len(self.aux_vars)

    def refs(self, i: int) -> list[int]:
        """M_i: earlier positions holding the same symbol as i."""
        return sorted(j for (a, j) in self.r_vars if a == i)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "num_vars": self.num_vars,
            "p": [[i, v] for i, v in sorted(self.p_vars.items())],
            "c": [i for i, c in sorted(self.c_fixed.items()) if c],
            "r": [[i, j, v] for (i, j), v in sorted(self.r_vars.items())],
            "aux": list(self.aux_vars),
            "counters": [[list(lits), list(aux)] for lits, aux in self.counters],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> VarMap:
        n = data["n"]
        leftmost = set(data["c"])
        return cls(
            n=n,
            p_vars={i: v for i, v in data["p"]},
            c_fixed={i: i in leftmost for i in range(1, n + 1)},
            r_vars={(i, j): v for i, j, v in data["r"]},
            aux_vars=list(data["aux"]),
            counters=[(tuple(lits), tuple(aux)) for lits, aux in data.get("counters", [])],
        )


@dataclass
class WcnfInstance:
    num_vars: int = 0
    hard: list[list[int]] = field(default_factory=list)
    soft: list[tuple[int, list[int]]] = field(default_factory=list)

    def check(self) -> None:
        for clause in self.hard + [c for _, c in self.soft]:
            if not clause:
                raise ContractViolation("empty clause")
            if any(lit == 0 or abs(lit) > self.num_vars for lit in clause):
                raise ContractViolation(f"literal out of range in {clause}")
        if any(w != 1 for w, _ in self.soft):
            raise ContractViolation("soft clauses must have unit weight")

    def first_violated(self, assignment: Mapping[int, bool]) -> int | None:
        """Index of the first hard clause falsified by ``assignment``."""
        for idx, clause in enumerate(self.hard):
            if not any(assignment.get(abs(lit), False) == (lit > 0) for lit in clause):
                return idx
        return None

    def cost(self, assignment: Mapping[int, bool]) -> int:
        return sum(
            w for w, clause in self.soft if not any(assignment.get(abs(lit), False) == (lit > 0) for lit in clause)
        )


def encode(text: Text) -> tuple[WcnfInstance, VarMap]:
    n = text.n
    vm = VarMap(n=n)
    if n == 0:
        return WcnfInstance(), vm
    sym = text.symbols
    pool = VarPool()
    for i in range(1, n + 1):
        vm.p_vars[i] = pool.fresh()
        vm.c_fixed[i] = text.is_leftmost(i)
    occ: dict[int, list[int]] = {}
    M: dict[int, list[int]] = {}
    for i in range(1, n + 1):
        M[i] = list(occ.get(sym[i - 1], ()))
        occ.setdefault(sym[i - 1], []).append(i)
        for j in M[i]:
            vm.r_vars[i, j] = pool.fresh()
    p, r = vm.p_vars, vm.r_vars

    hard: list[list[int]] = [[p[i]] for i in range(1, n + 1) if vm.c_fixed[i]]
    for i in range(2, n + 1):
        if vm.c_fixed[i]:
            continue
        clauses, aux = exactly_one([r[i, j] for j in M[i]], pool)
        hard.extend(clauses)
        if aux:
            vm.aux_vars.extend(aux)
            vm.counters.append((tuple(r[i, j] for j in M[i]), tuple(aux)))
    for i in range(2, n + 1):
        for j in M[i]:
            if j == 1 or sym[j - 2] != sym[i - 2]:
                hard.append([-r[i, j], p[i]])
            else:
                hard.append([-r[i, j], p[i], r[i - 1, j - 1]])
            if i < n:
                hard.append([-r[i, j], -p[i + 1], p[j + 1]])
            else:
                hard.append([-r[i, j], p[j + 1]])
    soft = [(1, [-p[i]]) for i in range(1, n + 1)]
    inst = WcnfInstance(pool.top, hard, soft)
    inst.check()
    return inst, vm


def assignment_from_parsing(parsing: Parsing, varmap: VarMap, sources: Sequence[int | None] | None = None) -> dict[int, bool]:
    """Truth assignment induced by a valid parsing.

    ``sources`` overrides the phrases' recorded source ends (for example the
    witnesses reported by ``validate``).
    """
    value = {v: False for v in range(1, varmap.num_vars + 1)}
    for idx, ph in enumerate(parsing.phrases):
        value[varmap.p_vars[ph.start]] = True
        if ph.kind == SINGLETON:
            continue
        src = sources[idx] if sources is not None else ph.source_end
        if src is None:
            raise ContractViolation(f"phrase {idx + 1} has no source end")
        offset = src - ph.end
        for i in range(ph.start, ph.end + 1):
            value[varmap.r_vars[i, i + offset]] = True
    for lits, aux in varmap.counters:
        seen = False
        for lit, s in zip(lits, aux):
            seen = seen or value[lit]
            value[s] = seen
    return value
