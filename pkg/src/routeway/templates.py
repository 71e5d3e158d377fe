"""Parameter substitution on statement text.

A parameter occurs in a text either as a bare token delimited by non-word
characters (``x<y`` contains ``x`` and ``y``, ``xy`` contains neither) or as an
explicit placeholder ``{x}``.  Placeholders are how juxtaposed products are
written: the template ``{c}{x}<{c}{y}`` under ``c=:2, x=:a, y=:b`` becomes
``2a<2b``.  Braces around names that are not parameters are left alone.
"""

from __future__ import annotations

import re
from collections.abc import Mapping

IDENT_PATTERN = r"[^\W\d][\w']*"
_IDENT = re.compile(rf"{IDENT_PATTERN}\Z")
_PLACEHOLDER = re.compile(r"\{(" + IDENT_PATTERN + r")\}")
_WS = re.compile(r"\s+")


def is_identifier(name: str) -> bool:
    return bool(_IDENT.match(name))


def normalize(text: str) -> str:
    """Trim and collapse internal whitespace runs."""
    return _WS.sub(" ", text.strip())


def render(text: str) -> str:
    """Drop placeholder braces and normalize; used when comparing instances."""
    return normalize(_PLACEHOLDER.sub(r"\1", text))


def substitute(text: str, bindings: Mapping[str, str]) -> str:
    """Replace every parameter occurrence simultaneously.

    Substituted terms are never rescanned, so ``x=:y, y=:x`` swaps.
    """
    if not bindings:
        return text
    names = sorted(bindings, key=len, reverse=True)
    alternation = "|".join(re.escape(name) for name in names)
    pattern = re.compile(
        r"\{(" + alternation + r")\}|(?<![\w'])(" + alternation + r")(?![\w'])"
    )
    return pattern.sub(lambda m: bindings[m.group(1) or m.group(2)], text)


def occurring_parameters(text: str, params: tuple[str, ...] | list[str]) -> set[str]:
    """Which of ``params`` occur in ``text``."""
    found: set[str] = set()
    for name in params:
        bare = re.compile(r"(?<![\w'])" + re.escape(name) + r"(?![\w'])")
        if "{" + name + "}" in text or bare.search(text):
            found.add(name)
    return found
