"""Witnesses for a 1-subdivided transitive tournament inside a host.

A certificate lists the base vertices ``b_1..b_k`` (positions are 1-based,
vertex ids 0-based) and, for every position pair ``i < j``, the connector
``w`` with ``b_i -> w -> b_j``.  The on-disk form is JSON with the keys
``k``, ``base`` and ``connectors`` (a list of ``{"i", "j", "w"}`` records).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .tournament import Tournament


class CertificateFormatError(ValueError):
    pass


@dataclass(frozen=True)
class SubdivisionCertificate:
    k: int
    base: tuple[int, ...]
    connectors: dict[tuple[int, int], int] = field(default_factory=dict)

    @property
    def vertex_count(self) -> int:
        return len(self.base) + len(self.connectors)

    def vertices(self) -> set[int]:
        return set(self.base) | set(self.connectors.values())

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "base": list(self.base),
            "connectors": [{"i": i, "j": j, "w": w}
                           for (i, j), w in sorted(self.connectors.items())],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SubdivisionCertificate":
        try:
            k = data["k"]
            base = data["base"]
            records = data["connectors"]
            connectors: dict[tuple[int, int], int] = {}
            for rec in records:
                key = (rec["i"], rec["j"])
                if key in connectors:
                    raise CertificateFormatError(f"duplicate connector record for pair {key}")
                connectors[key] = rec["w"]
        except (KeyError, TypeError) as exc:
            raise CertificateFormatError(f"malformed certificate: missing or bad field {exc}") from exc
        values = [k, *base, *connectors.values(), *(x for key in connectors for x in key)]
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in values):
            raise CertificateFormatError("certificate fields must be integers")
        return cls(k, tuple(base), connectors)

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=1) + "\n"

    @classmethod
    def loads(cls, text: str) -> "SubdivisionCertificate":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise CertificateFormatError(f"certificate is not valid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise CertificateFormatError("certificate must be a JSON object")
        return cls.from_dict(data)


def write_certificate(cert: SubdivisionCertificate, path: str | Path) -> None:
    Path(path).write_text(cert.dumps())


def read_certificate(path: str | Path) -> SubdivisionCertificate:
    return SubdivisionCertificate.loads(Path(path).read_text())


@dataclass(frozen=True)
class VerificationReport:
    accepted: bool
    clause: str | None = None
    pair: tuple[int, int] | None = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.accepted

    def __str__(self) -> str:
        if self.accepted:
            return "accept"
        where = f" at pair {self.pair}" if self.pair is not None else ""
        return f"reject [{self.clause}]{where}: {self.detail}"


def _reject(clause: str, detail: str, pair=None) -> VerificationReport:
    return VerificationReport(False, clause, pair, detail)


def verify_certificate(T: Tournament, cert: SubdivisionCertificate) -> VerificationReport:
    """Check every structural and edge condition; report the first failure.

    Clauses are checked in this order: ``shape``, ``range``,
    ``base-distinct``, ``connector-distinct``, ``connector-disjoint``,
    ``edge``.
    """
    k = cert.k
    if not isinstance(k, int) or k < 1:
        return _reject("shape", f"k must be a positive integer, got {k!r}")
    if len(cert.base) != k:
        return _reject("shape", f"expected {k} base vertices, got {len(cert.base)}")
    expected = {(i, j) for i in range(1, k + 1) for j in range(i + 1, k + 1)}
    keys = set(cert.connectors)
    if keys != expected:
        extra = sorted(keys - expected)
        missing = sorted(expected - keys)
        if missing:
            return _reject("shape", "no connector for this pair", missing[0])
        return _reject("shape", "connector for a pair outside 1 <= i < j <= k", extra[0])

    for pos, b in enumerate(cert.base, start=1):
        if not (isinstance(b, int) and 0 <= b < T.n):
            return _reject("range", f"base vertex {b!r} at position {pos} not in host")
    for pair in sorted(cert.connectors):
        w = cert.connectors[pair]
        if not (isinstance(w, int) and 0 <= w < T.n):
            return _reject("range", f"connector {w!r} not in host", pair)

    seen: dict[int, int] = {}
    for pos, b in enumerate(cert.base, start=1):
        if b in seen:
            return _reject("base-distinct", f"vertex {b} used as base twice", (seen[b], pos))
        seen[b] = pos
    used: dict[int, tuple[int, int]] = {}
    for pair in sorted(cert.connectors):
        w = cert.connectors[pair]
        if w in used:
            return _reject("connector-distinct", f"vertex {w} also connects {used[w]}", pair)
        used[w] = pair
    for pair in sorted(cert.connectors):
        w = cert.connectors[pair]
        if w in seen:
            return _reject("connector-disjoint", f"connector {w} is base vertex {seen[w]}", pair)

    for (i, j) in sorted(cert.connectors):
        w = cert.connectors[(i, j)]
        bi, bj = cert.base[i - 1], cert.base[j - 1]
        if not T.beats(bi, w):
            return _reject("edge", f"missing edge {bi}->{w}", (i, j))
        if not T.beats(w, bj):
            return _reject("edge", f"missing edge {w}->{bj}", (i, j))
    return VerificationReport(True)
