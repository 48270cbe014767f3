from __future__ import annotations

from ..errors import EncoderBugError, InconsistentModelError
from ..parsing import COPY, SINGLETON, Parsing, Phrase, validate
from ..text import Text
from .encoding import VarMap, WcnfInstance, encode


def decode(model, varmap: VarMap, text: Text, instance: WcnfInstance | None = None) -> Parsing:
    """Turn a model of the hard clauses into a parsing.

    Phrases start where p_i holds; a copy's source end is the position its
    last symbol references. The hard clauses are re-derived from ``text``
    when ``instance`` is not given.
    """
    if varmap.n != text.n:
        raise InconsistentModelError(f"variable map is for length {varmap.n}, text has {text.n}")
    if instance is None:
        instance = encode(text)[0]
    value = model.assignment
    bad = instance.first_violated(value)
    if bad is not None:
        raise InconsistentModelError(f"model violates hard clause {bad + 1}: {instance.hard[bad]}")
    n = text.n
    starts = [i for i in range(1, n + 1) if i == 1 or value.get(varmap.p_vars[i], False)]
    phrases = []
    for k, s in enumerate(starts):
        e = starts[k + 1] - 1 if k + 1 < len(starts) else n
        if varmap.c_fixed[e]:
            phrases.append(Phrase(s, e - s + 1, SINGLETON))
            continue
        refs = [j for j in varmap.refs(e) if value.get(varmap.r_vars[e, j], False)]
        if len(refs) != 1:
            raise InconsistentModelError(f"position {e} references {len(refs)} positions")
        phrases.append(Phrase(s, e - s + 1, COPY, refs[0]))
    parsing = Parsing(tuple(phrases))
    report = validate(text, parsing)
    if not report:
        raise EncoderBugError(f"decoded parsing is invalid: {report.describe()}")
    return parsing
