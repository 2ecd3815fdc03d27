"""Flat ``key = value`` run configuration files.

Blank lines and ``#`` comments are ignored. Every key must be known to the
command being run; numbers are parsed as decimals.
"""

from __future__ import annotations

from pathlib import Path

from .errors import InvalidConfig

PROBE_KEYS = {
    "family": ("example1", "constant", "linear", "identity_x"),
    "a": float,
    "b": float,
    "c": float,
    "samples": int,
    "seed": int,
    "scale": float,
}

BVP_KEYS = {
    "lambda1": float,
    "lambda2": float,
    "mu1": float,
    "mu2": float,
    "T": float,
    "grid_n": int,
    "f_slope": float,
    "g_slope": float,
    "forcing": ("cos", "sin", "const"),
    "amplitude": float,
    "alpha": float,
    "beta": float,
    "tolerance": float,
    "max_iterations": int,
}

EXAMPLE1_KEYS = {
    "tolerance": float,
    "max_iterations": int,
    "samples": int,
    "seed": int,
}

BVP_REQUIRED = ("lambda1", "lambda2", "mu1", "mu2", "T")


def parse_text(text: str, schema: dict, source: str = "<config>") -> dict:
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InvalidConfig(f"{source}:{lineno}: expected 'key = value', got {raw!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in schema:
            raise InvalidConfig(f"{source}:{lineno}: unknown key {key!r}")
        if key in out:
            raise InvalidConfig(f"{source}:{lineno}: duplicate key {key!r}")
        kind = schema[key]
        if isinstance(kind, tuple):
            if value not in kind:
                raise InvalidConfig(f"{source}:{lineno}: {key} must be one of {', '.join(kind)}")
            out[key] = value
            continue
        try:
            if kind is int:
                out[key] = int(value)
            else:
                out[key] = float(value)
        except ValueError:
            raise InvalidConfig(f"{source}:{lineno}: {key}: not a number: {value!r}") from None
    return out


def load(path, schema: dict) -> dict:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise InvalidConfig(f"cannot read config {p}: {exc}") from exc
    return parse_text(text, schema, str(p))
