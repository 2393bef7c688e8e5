"""Ring corpora: the built-in default list and line-oriented corpus files."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from ..descriptors import RingDescriptor
from ..dsl import format_ring, parse_ring
from ..errors import CorpusError, SemanticError, SpecSyntaxError
from ..rings import layout

DEFAULT_SPECS = (
    "Z2", "Z3", "Z4", "Z6", "Z7", "Z8", "Z9", "Z12",
    "GF(2^2)", "GF(2^3)", "GF(3^2)", "Q(Z2,[0,0,1])",
    "M2(Z2)", "M2(Z3)", "M2(Z4)",
    "T2(Z2)", "T2(Z4)", "T3(Z2)",
    "Z2[C2]", "Z2[C3]", "Z2[S3]", "Z3[Q8]", "Z2[D4]",
    "Z3 x Z4", "Z12 x Z7",
    "ZZ", "POLY(Z2)", "POLY(Z4)",
)


@dataclass(frozen=True)
class CorpusConfig:
    max_size: int | None = None
    path: str | Path | None = None


def size_of(d: RingDescriptor) -> int | None:
    """Cardinality of a finite descriptor, ``None`` for symbolic rings."""
    return layout(d).size if d.finite else None


def parse_corpus(text: str, source: str = "<corpus>") -> list[RingDescriptor]:
    """One ring spec per line; ``#`` starts a comment."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            out.append(parse_ring(line))
        except (SpecSyntaxError, SemanticError) as exc:
            raise CorpusError(f"{source}:{lineno}: {line!r}: {exc}") from None
    return out


def corpus(config: CorpusConfig | None = None) -> list[RingDescriptor]:
    """Descriptors from ``config.path`` (or the default list), filtered by size.

    Symbolic rings have no size and always pass the filter.
    """
    config = config or CorpusConfig()
    if config.path is not None:
        path = Path(config.path)
        rings = parse_corpus(path.read_text(), str(path))
    else:
        rings = [parse_ring(s) for s in DEFAULT_SPECS]
    if config.max_size is None:
        return rings
    return [d for d in rings if (size_of(d) or 0) <= config.max_size]


def describe(rings: list[RingDescriptor]) -> list[str]:
    return [format_ring(d) for d in rings]
