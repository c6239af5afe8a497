"""Deterministic JSON reports.

Identical inputs must serialize to identical bytes: keys are sorted,
rationals are rendered as "p/q" strings, cyclotomic values as
coefficient lists, and no timestamps or machine identifiers appear.
Every report carries the package version and an echo of its inputs.
"""

import json
from fractions import Fraction

VERSION = "0.1.0"


def _canonical(value):
    if isinstance(value, dict):
        return {str(k): _canonical(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_canonical(v) for v in value]
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, Fraction):
        return (str(value.numerator) if value.denominator == 1
                else f"{value.numerator}/{value.denominator}")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        return value
    if hasattr(value, "coeffs"):  # cyclotomic residue
        return {"cyclotomic": [_canonical(c) for c in value.coeffs],
                "order": value.field.e}
    return repr(value)


def make_report(command, inputs, checks, extra=None):
    """Assemble the standard report shape.

    checks: list of dicts with at least name and status ("pass"/"fail");
    failures should carry a witness entry.
    """
    body = {
        "version": VERSION,
        "command": command,
        "inputs": _canonical(inputs),
        "checks": [_canonical(c) for c in checks],
        "ok": all(c.get("status") == "pass" for c in checks),
    }
    if extra:
        for key, value in extra.items():
            body[key] = _canonical(value)
    return body


def dump_report(report, stream):
    """Serialize with sorted keys and stable separators; byte-stable."""
    text = json.dumps(_canonical(report), sort_keys=True, indent=2,
                      ensure_ascii=True)
    stream.write(text + "\n")


def report_bytes(report):
    return (json.dumps(_canonical(report), sort_keys=True, indent=2,
                       ensure_ascii=True) + "\n").encode("ascii")
