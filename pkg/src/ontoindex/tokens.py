"""Shared tokenization used for page content, term names, and synonym phrases."""

from __future__ import annotations

import re

# Maximal runs of alphanumerics; underscore splits like any other punctuation.
_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)


def tokenize(text: str) -> list[str]:
    """Case-fold and split on any non-alphanumeric character, keeping order."""
    return _TOKEN_RE.findall(text.casefold())


def canonical_name(name: str) -> str:
    return name.strip().casefold()
