"""Algorithmic equiresolution of basic objects over Q[eps]/(eps^m).

Thin dict-level wrappers over the compiled core; every operation takes and
returns schema-1 documents (see the JSON contract in the README).
"""

import json as _json

from equires._core import (  # noqa: F401
    AlgorithmStuck,
    BadInput,
    delta,
    order,
)
from equires import _core


def _run(fn, doc, m=0):
    text = doc if isinstance(doc, str) else _json.dumps(doc)
    return _json.loads(fn(text, m))


def sing(doc, m=0):
    """Sing(B) per chart: {"charts": {chart_id: [generators]}}."""
    return _run(_core.sing, doc, m)


def resolve(doc, m=0):
    """Resolve the fiber of a basic object; returns the resolution tree."""
    return _run(_core.resolve, doc, m)


def equires(doc, m=0):
    """Equiresolution over A; returns {"e", "ell", "equisolvable", ...}."""
    return _run(_core.equires, doc, m)


def principalize(doc, m=0):
    """Equiprincipalization of an id-triple (b = 1)."""
    return _run(_core.principalize, doc, m)


def embedded(doc, m=0):
    """Embedded-variety equiresolution; returns {"eta", "success", ...}."""
    return _run(_core.embedded, doc, m)
