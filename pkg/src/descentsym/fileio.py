"""
Text formats.

Multiset files hold one entry per line, ``<permutation> [x <multiplicity>]``.
A permutation is either a digit string (degree at most 9) or comma-separated
values.  ``#`` starts a comment and blank lines are skipped.
"""

from __future__ import annotations

from .permcore import InvalidWordError, Perm, PermMultiset, check_perm


class ParseError(ValueError):
    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


def parse_perm(token: str) -> Perm:
    token = token.strip()
    if "," in token:
        try:
            values = [int(x) for x in token.split(",")]
        except ValueError:
            raise InvalidWordError(f"bad permutation {token!r}") from None
    else:
        if not token.isdigit():
            raise InvalidWordError(f"bad permutation {token!r}")
        if len(token) > 9:
            raise InvalidWordError(
                f"{token!r}: digit strings are limited to degree 9, use commas")
        values = [int(c) for c in token]
    return check_perm(values)


def format_perm(p: Perm) -> str:
    if len(p) <= 9:
        return "".join(map(str, p))
    return ",".join(map(str, p))


def parse_multiset(text: str) -> PermMultiset:
    counts: dict[Perm, int] = {}
    degree = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) == 1:
            mult = 1
        elif len(fields) == 3 and fields[1] == "x":
            if not fields[2].isdigit() or int(fields[2]) < 1:
                raise ParseError(lineno, f"bad multiplicity {fields[2]!r}")
            mult = int(fields[2])
        else:
            raise ParseError(lineno, f"expected '<permutation> [x <multiplicity>]', got {line!r}")
        try:
            p = parse_perm(fields[0])
        except InvalidWordError as e:
            raise ParseError(lineno, str(e)) from None
        if degree is None:
            degree = len(p)
        elif len(p) != degree:
            raise ParseError(lineno, f"degree {len(p)} differs from earlier degree {degree}")
        counts[p] = counts.get(p, 0) + mult
    return PermMultiset(counts, n=degree)


def format_multiset(B: PermMultiset) -> str:
    lines = []
    for p, m in B.items():
        lines.append(format_perm(p) if m == 1 else f"{format_perm(p)} x {m}")
    return "\n".join(lines) + ("\n" if lines else "")


def compact(B: PermMultiset) -> str:
    """One-line canonical form, used as a sort key in reports."""
    return " ".join(format_perm(p) if m == 1 else f"{format_perm(p)}x{m}" for p, m in B.items())
