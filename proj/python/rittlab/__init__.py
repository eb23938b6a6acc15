"""Exponential polynomials over number fields: Ritt factorization, gcds,
certified zero counting and E-function coefficient tools."""

import json

from ._rittlab import RittlabError, Session, bessel_series, leibniz_constants, winding_count

__all__ = [
    "RittlabError",
    "Session",
    "bessel_series",
    "leibniz_constants",
    "winding_count",
    "run",
    "factor",
    "gcd",
    "divides",
    "zeros",
]


def _rect_args(rect):
    if rect is None:
        return []
    return ["--rect", *[str(v) for v in rect]]


def run(verb, *args, session=None):
    """Run a command verb; returns (document, exit code). Raises on errors."""
    s = session if session is not None else Session()
    text, code = s.run(verb, [str(a) for a in args])
    doc = json.loads(text)
    if code == 2:
        raise RittlabError(f"{doc['error']}: {doc['detail']}")
    return doc, code


def factor(expr, session=None):
    return run("factor", expr, session=session)[0]


def gcd(f, g, session=None):
    return run("gcd", f, g, session=session)[0]["result"]


def divides(f, g, session=None):
    """Quotient g / f as a string, or None when f does not divide g."""
    return run("divides", f, g, session=session)[0]["result"]


def zeros(expr, rect, tol=1e-9, session=None):
    doc, _ = run("zeros", expr, *_rect_args(rect), "--tol", repr(tol), session=session)
    return [(complex(z["approx"]["re"], z["approx"]["im"]), z["multiplicity"]) for z in doc["zeros"]]
