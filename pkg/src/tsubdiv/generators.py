"""Host tournament constructions and the ``.tourn`` text format.

Randomness comes from numpy's PCG64 bit generator, read through its raw
64-bit output so that streams do not depend on numpy's distribution code.
Derived seeds (retries, sweep cells) are drawn from ``SeedSequence`` with a
spawn key, see :func:`derive_seed`.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .tournament import Tournament, TournamentError

SEED_MAX = (1 << 64) - 1


class TournamentFormatError(TournamentError):
    """Parse failure in a ``.tourn`` file; the message names line and column."""


def check_seed(seed: int) -> int:
    if not isinstance(seed, (int, np.integer)) or not 0 <= seed <= SEED_MAX:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed!r}")
    return int(seed)


def derive_seed(seed: int, *path: int) -> int:
    """Child seed for ``path`` (e.g. attempt number), a pure function of both."""
    ss = np.random.SeedSequence(entropy=check_seed(seed), spawn_key=tuple(int(p) for p in path))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def raw_words(seed: int, count: int) -> np.ndarray:
    bitgen = np.random.PCG64(check_seed(seed))
    return np.asarray(bitgen.random_raw(count), dtype=np.uint64)


def random_bits(seed: int, count: int) -> np.ndarray:
    """``count`` fair bits, consumed least-significant first from each word."""
    words = raw_words(seed, -(-count // 64))
    bits = np.unpackbits(words.astype("<u8").view(np.uint8), bitorder="little")
    return bits[:count].astype(bool)


def uniforms(seed: int, count: int) -> np.ndarray:
    """``count`` doubles in ``[0, 1)`` built from the top 53 bits of each word."""
    return (raw_words(seed, count) >> np.uint64(11)).astype(np.float64) * 2.0 ** -53


def random_tournament(n: int, seed: int) -> Tournament:
    """Uniform random tournament: pair ``(i, j)``, ``i < j``, in row-major
    order takes bit ``e`` of the stream and is oriented ``i -> j`` when set."""
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    iu, ju = np.triu_indices(n, 1)
    bits = random_bits(seed, iu.size)
    adj = np.zeros((n, n), dtype=bool)
    adj[iu[bits], ju[bits]] = True
    adj[ju[~bits], iu[~bits]] = True
    return Tournament(adj)


def transitive(n: int) -> Tournament:
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    return Tournament(np.triu(np.ones((n, n), dtype=bool), k=1))


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    if q % 2 == 0:
        return q == 2
    d = 3
    while d * d <= q:
        if q % d == 0:
            return False
        d += 2
    return True


def quadratic_residues(q: int) -> frozenset[int]:
    return frozenset(x * x % q for x in range(1, q))


@dataclass(frozen=True)
class RotationalSymbolSet:
    """Residues ``S`` mod odd ``n`` with exactly one of ``d``, ``n - d`` in ``S``."""

    n: int
    symbols: frozenset[int]

    def __post_init__(self) -> None:
        n = self.n
        if n < 3 or n % 2 == 0:
            raise ValueError(f"rotational modulus must be odd and >= 3, got {n}")
        object.__setattr__(self, "symbols", frozenset(int(s) for s in self.symbols))
        bad = [s for s in self.symbols if not 1 <= s < n]
        if bad:
            raise ValueError(f"symbols {sorted(bad)} not in 1..{n - 1}")
        for d in range(1, n):
            if (d in self.symbols) == ((n - d) in self.symbols):
                state = "both" if d in self.symbols else "neither"
                raise ValueError(f"{state} of {d} and {n - d} in symbol set")


def rotational(symbols: RotationalSymbolSet) -> Tournament:
    n = symbols.n
    diff = (np.arange(n)[None, :] - np.arange(n)[:, None]) % n
    return Tournament(np.isin(diff, sorted(symbols.symbols)))


def paley(q: int) -> Tournament:
    """Quadratic-residue tournament on ``Z_q`` for a prime ``q = 3 mod 4``."""
    if not is_prime(q):
        raise ValueError(f"Paley tournament needs a prime order, got {q}")
    if q % 4 != 3:
        raise ValueError(
            f"Paley tournament needs q = 3 (mod 4), got q = {q} = {q % 4} (mod 4); "
            "otherwise -1 is a residue and the relation is symmetric")
    return rotational(RotationalSymbolSet(q, quadratic_residues(q)))


def least_paley_order(n: int) -> int:
    """Smallest prime ``q = 3 (mod 4)`` with ``q >= n``."""
    q = max(3, n)
    while not (q % 4 == 3 and is_prime(q)):
        q += 1
    return q


# -- .tourn files --------------------------------------------------------

def format_tournament(T: Tournament) -> str:
    lines = [f"tournament {T.n}"]
    chars = np.where(T.adjacency, "1", "0")
    np.fill_diagonal(chars, "-")
    lines.extend("".join(row) for row in chars)
    return "\n".join(lines) + "\n"


def parse_tournament(text: str) -> Tournament:
    lines = text.split("\n")
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise TournamentFormatError("line 1: empty file")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "tournament":
        raise TournamentFormatError(f"line 1: expected 'tournament <n>', got {lines[0]!r}")
    try:
        n = int(head[1])
    except ValueError:
        raise TournamentFormatError(f"line 1: bad vertex count {head[1]!r}") from None
    if n < 1:
        raise TournamentFormatError(f"line 1: vertex count must be >= 1, got {n}")
    rows = [ln.rstrip() for ln in lines[1:]]
    if len(rows) != n:
        raise TournamentFormatError(f"line {len(lines) + 1}: expected {n} rows, got {len(rows)}")
    adj = np.zeros((n, n), dtype=bool)
    for u, row in enumerate(rows):
        lineno = u + 2
        if len(row) != n:
            raise TournamentFormatError(f"line {lineno}: expected {n} characters, got {len(row)}")
        chars = np.frombuffer(row.encode("utf-32-le"), dtype="<u4")
        ok = (chars == ord("0")) | (chars == ord("1"))
        ok[u] = chars[u] == ord("-")
        if not ok.all():
            v = int(np.flatnonzero(~ok)[0])
            what = "diagonal must be '-'" if v == u else f"unexpected {row[v]!r}"
            raise TournamentFormatError(f"line {lineno}, column {v + 1}: {what}")
        adj[u] = chars == ord("1")
    clash = np.argwhere(np.triu(adj == adj.T, k=1))
    if clash.size:
        u, v = (int(x) for x in clash[0])
        state = "both" if adj[u, v] else "neither"
        raise TournamentFormatError(
            f"line {u + 2}, column {v + 1}: {state} of {u}->{v} and {v}->{u} "
            f"(see line {v + 2}, column {u + 1})")
    return Tournament(adj)


def write_tournament(T: Tournament, path: str | Path) -> None:
    Path(path).write_text(format_tournament(T))


def read_tournament(path: str | Path) -> Tournament:
    return parse_tournament(Path(path).read_text())
