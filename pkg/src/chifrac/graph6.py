"""graph6 codec (bit-exact) and a plain edge-list text format.

graph6 short form covers n <= 62; the 3-byte long form (n <= 258047) is
also handled. Parse errors report the line number and byte offset.
"""

from __future__ import annotations

from typing import Iterable, Iterator, TextIO

from .errors import Graph6FormatError, GraphInputError
from .graph import Graph

_HEADER = ">>graph6<<"


def encode_graph6(g: Graph) -> str:
    n = g.n
    if n <= 62:
        out = [n + 63]
    elif n <= 258047:
        out = [126, (n >> 12) + 63, ((n >> 6) & 63) + 63, (n & 63) + 63]
    else:
        raise GraphInputError(f"graph6 encoding supports n <= 258047, got {n}")
    acc = 0
    nbits = 0
    for j in range(1, n):
        col = g.rows[j]
        for i in range(j):
            acc = (acc << 1) | (col >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(acc + 63)
                acc = 0
                nbits = 0
    if nbits:
        out.append((acc << (6 - nbits)) + 63)
    return "".join(chr(c) for c in out)


def decode_graph6(text: str, *, line: int | None = None) -> Graph:
    """Decode one graph6 string (optionally prefixed by the format header)."""
    s = text.strip()
    if s.startswith(_HEADER):
        s = s[len(_HEADER):]
    if not s:
        raise Graph6FormatError("empty graph6 string", line=line, offset=0)
    data = s.encode("ascii", errors="replace")
    for off, byte in enumerate(data):
        if not 63 <= byte <= 126:
            raise Graph6FormatError(f"byte 0x{byte:02x} outside graph6 range 63..126",
                                    line=line, offset=off)
    pos = 0
    if data[0] == 126:
        if len(data) >= 2 and data[1] == 126:
            raise Graph6FormatError("8-byte size form not supported", line=line, offset=1)
        if len(data) < 4:
            raise Graph6FormatError("truncated long-form size", line=line, offset=len(data))
        n = ((data[1] - 63) << 12) | ((data[2] - 63) << 6) | (data[3] - 63)
        pos = 4
    else:
        n = data[0] - 63
        pos = 1
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    if len(data) - pos < nbytes:
        raise Graph6FormatError(
            f"need {nbytes} edge bytes for n={n}, found {len(data) - pos}",
            line=line, offset=len(data))
    if len(data) - pos > nbytes:
        raise Graph6FormatError("trailing bytes after edge data", line=line, offset=pos + nbytes)
    rows = [0] * n
    bit = 0
    for j in range(1, n):
        for i in range(j):
            byte = data[pos + bit // 6]
            if (byte - 63) >> (5 - bit % 6) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            bit += 1
    if nbits % 6:
        tail = data[pos + nbytes - 1] - 63
        if tail & ((1 << (6 - nbits % 6)) - 1):
            raise Graph6FormatError("nonzero padding bits", line=line, offset=pos + nbytes - 1)
    return Graph(n, tuple(rows))


def read_graph6(stream: TextIO | Iterable[str]) -> Iterator[Graph]:
    """Yield graphs from a stream of graph6 lines (blank lines skipped)."""
    for lineno, raw in enumerate(stream, start=1):
        s = raw.strip()
        if not s:
            continue
        yield decode_graph6(s, line=lineno)


# ---------------- edge-list text format ----------------


def format_edge_list(g: Graph, *, comment: str | None = None) -> str:
    """Render "n m" then one "u v" line per edge; optional leading comment."""
    lines = []
    if comment:
        for part in comment.splitlines():
            lines.append(f"# {part}")
    edges = g.edges()
    lines.append(f"{g.n} {len(edges)}")
    lines.extend(f"{u} {v}" for u, v in edges)
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    header: tuple[int, int] | None = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        s = raw.strip()
        if not s or s.startswith("#"):
            continue
        parts = s.split()
        if len(parts) != 2:
            raise GraphInputError(f"line {lineno}: expected two integers, got {s!r}")
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise GraphInputError(f"line {lineno}: expected two integers, got {s!r}") from exc
        if header is None:
            header = (a, b)
        else:
            edges.append((a, b))
    if header is None:
        raise GraphInputError("edge list has no header line")
    n, m = header
    if len(edges) != m:
        raise GraphInputError(f"header promises {m} edges, found {len(edges)}")
    return Graph.from_edges(n, edges)
