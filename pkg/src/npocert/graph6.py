"""graph6 encoding (https://users.cecs.anu.edu.au/~bdm/data/formats.txt).

Only the part of the format needed for graphs with at most 64 vertices is
implemented: the one-byte size prefix for n <= 62 and the four-byte prefix
``~`` + 18 bits for 63 <= n <= 64.
"""

from __future__ import annotations

from typing import IO, Iterable, Iterator

from .graph import Graph, GraphError, MAX_VERTICES

HEADER = ">>graph6<<"


class Graph6Error(GraphError):
    pass


def _size_prefix(n: int) -> str:
    if n <= 62:
        return chr(63 + n)
    return "~" + "".join(chr(63 + ((n >> s) & 0x3F)) for s in (12, 6, 0))


def encode_graph6(g: Graph) -> str:
    bits = []
    for j in range(1, g.n):
        row = g.rows[j]
        for i in range(j):
            bits.append((row >> i) & 1)
    bits.extend([0] * (-len(bits) % 6))
    body = [
        chr(63 + int("".join(map(str, bits[t : t + 6])), 2))
        for t in range(0, len(bits), 6)
    ]
    return _size_prefix(g.n) + "".join(body)


def decode_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(HEADER):
        s = s[len(HEADER) :]
    if not s:
        raise Graph6Error("empty graph6 string")
    for ch in s:
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"byte {ord(ch)!r} outside the printable graph6 range")
    if s[0] != "~":
        n, body = ord(s[0]) - 63, s[1:]
    else:
        if len(s) < 4 or s[1] == "~":
            raise Graph6Error("unsupported or truncated size prefix")
        n = 0
        for ch in s[1:4]:
            n = (n << 6) | (ord(ch) - 63)
        body = s[4:]
        if n <= 62:
            raise Graph6Error("long size prefix used for n <= 62")
    if not 1 <= n <= MAX_VERTICES:
        raise Graph6Error(f"vertex count {n} outside 1..{MAX_VERTICES}")
    nbits = n * (n - 1) // 2
    if len(body) != (nbits + 5) // 6:
        raise Graph6Error(
            f"expected {(nbits + 5) // 6} data bytes for n={n}, got {len(body)}"
        )
    value = 0
    for ch in body:
        value = (value << 6) | (ord(ch) - 63)
    pad = 6 * len(body) - nbits
    if value & ((1 << pad) - 1):
        raise Graph6Error("nonzero padding bits")
    value >>= pad
    rows = [0] * n
    t = nbits - 1
    for j in range(1, n):
        for i in range(j):
            if (value >> t) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            t -= 1
    return Graph(n, tuple(rows))


def read_graph6(stream: IO[str]) -> Iterator[tuple[int, Graph]]:
    """Yield ``(line_number, graph)`` for each non-blank line of ``stream``."""
    for lineno, line in enumerate(stream, start=1):
        line = line.strip()
        if not line:
            continue
        try:
            yield lineno, decode_graph6(line)
        except GraphError as exc:
            raise Graph6Error(f"line {lineno}: {exc}") from exc


def write_graph6(stream: IO[str], graphs: Iterable[Graph]) -> int:
    count = 0
    for g in graphs:
        stream.write(encode_graph6(g) + "\n")
        count += 1
    return count
