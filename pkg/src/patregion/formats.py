"""Text, JSON and CSV encodings shared by the command line and the library."""

from __future__ import annotations

import csv
import io
import json
import os
import tempfile
from fractions import Fraction
from typing import Iterable, Sequence

from .colouring import ColouredPermutation
from .errors import PatternError
from .geometry.linalg import RatVector, format_rational, frac
from .permcore import Permutation


def parse_permutation(text: str) -> Permutation:
    return Permutation(text)


def parse_pattern_list(text: str) -> tuple:
    """Comma-separated patterns; each pattern is compact digits or space-separated values."""
    items = [t.strip() for t in text.split(",") if t.strip()]
    if not items:
        raise PatternError("empty pattern list")
    return tuple(Permutation(t) for t in items)


def permutation_text(p: Sequence[int]) -> str:
    return " ".join(map(str, p))


def label_json(label):
    if isinstance(label, ColouredPermutation):
        return label.to_json()
    if isinstance(label, tuple):
        return list(label)
    return label


def label_text(label) -> str:
    if isinstance(label, ColouredPermutation):
        return str(label)
    if isinstance(label, tuple):
        return permutation_text(label)
    return str(label)


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not text:
        raise PatternError("empty coordinate")
    try:
        return frac(text)
    except (ValueError, ZeroDivisionError):
        raise PatternError(f"cannot parse rational {text!r}") from None


def parse_point(text: str, labels: Sequence) -> RatVector:
    """Either ``a,b,c,...`` in the order of ``labels`` or ``pattern=value`` pairs (others zero)."""
    labels = tuple(labels)
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if parts and all("=" in p for p in parts):
        mapping = {}
        for p in parts:
            key, value = p.split("=", 1)
            perm = Permutation(key)
            if perm not in labels:
                raise PatternError(f"{key} is not a coordinate of this space")
            mapping[perm] = parse_rational(value)
        return RatVector.from_mapping(labels, mapping)
    if len(parts) != len(labels):
        raise PatternError(f"expected {len(labels)} coordinates, got {len(parts)}")
    return RatVector(labels, tuple(parse_rational(p) for p in parts))


def rows_to_csv(header: Iterable, rows: Iterable[Iterable]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(list(header))
    for r in rows:
        w.writerow(list(r))
    return buf.getvalue()


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, default=_json_default) + "\n"


def _json_default(x):
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, ColouredPermutation):
        return x.to_json()
    raise TypeError(f"cannot serialize {type(x).__name__}")


def write_atomic(path: str, text: str) -> None:
    """Write ``text`` to ``path`` through a temporary file in the same directory."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
