"""Canonical text output shared by all element types."""

from fractions import Fraction

from .core import format_rational


def _coeff_parts(c):
    """Return (negative?, text-of-absolute-value or None for 1, is_rational)."""
    if isinstance(c, (int, Fraction)):
        c = Fraction(c)
        neg = c < 0
        a = -c if neg else c
        return neg, (None if a == 1 else format_rational(a)), True
    return False, "(%s)" % (c,), False


def format_linear(items) -> str:
    """Format ``[(monomial_text, coeff), ...]`` in the given order.

    An empty monomial text is the unit; ``"x + y + 1/2*z"`` style.
    """
    out = []
    for mono, c in items:
        neg, a, _ = _coeff_parts(c)
        if not mono:
            body = a if a is not None else "1"
        elif a is None:
            body = mono
        else:
            body = a + "*" + mono
        if not out:
            out.append("-" + body if neg else body)
        else:
            out.append(("- " if neg else "+ ") + body)
    return " ".join(out) if out else "0"


def format_word(labels, exps=None) -> str:
    """``x*y^2*z`` from a sequence of labels (repeats collapsed to powers)."""
    parts = []
    i = 0
    labels = list(labels)
    while i < len(labels):
        j = i
        while j < len(labels) and labels[j] == labels[i]:
            j += 1
        k = j - i
        parts.append(labels[i] if k == 1 else "%s^%d" % (labels[i], k))
        i = j
    return "*".join(parts)
