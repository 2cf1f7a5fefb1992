"""Intentic truthmaking toolkit."""

import json

from ._core import ParseError, Rejected, TranslateError, check, frames_fuzz, parse, run
from ._core import entail as _entail
from ._core import pa_prove as _pa_prove


def entail(gamma, proof, constants=()):
    """Translate and extract a proof given as a dict or JSON text."""
    text = proof if isinstance(proof, str) else json.dumps(proof)
    return json.loads(_entail(list(gamma), text, list(constants)))


def pa_prove(goal, depth=12, efq=False, extras=()):
    r = _pa_prove(goal, depth, efq, list(extras))
    if r["proof"] is not None:
        r["proof"] = json.loads(r["proof"])
    return r


__all__ = ["ParseError", "Rejected", "TranslateError", "check", "entail", "frames_fuzz", "pa_prove", "parse", "run"]
