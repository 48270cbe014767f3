from .decoding import decode
from .encoding import VarMap, VarPool, WcnfInstance, assignment_from_parsing, encode, exactly_one
from .solver import Model, default_solver, parse_solver_output, run_solver, solve
from .wcnf import read_wcnf, wcnf_text, write_wcnf

__all__ = [
    "Model",
    "VarMap",
    "VarPool",
    "WcnfInstance",
    "assignment_from_parsing",
    "decode",
    "default_solver",
    "encode",
    "exactly_one",
    "parse_solver_output",
    "read_wcnf",
    "run_solver",
    "solve",
    "wcnf_text",
    "write_wcnf",
]
