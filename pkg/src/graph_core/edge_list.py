"""
Edge-list text files: header "N M", then M lines "u v"; '#' starts a comment line
"""
import logging
from pathlib import Path
from typing import List, Tuple, Union

from errors import EdgeListFormatError, GraphError
from .graph import Graph, from_edge_list

logger = logging.getLogger(__name__)


def _parse_ints(line: str, line_number: int, expected: int) -> List[int]:
    fields = line.split()
    if len(fields) != expected:
        raise EdgeListFormatError(f"expected {expected} integers, got {len(fields)}: {line!r}", line_number)
    try:
        return [int(f) for f in fields]
    except ValueError:
        raise EdgeListFormatError(f"non-integer field in {line!r}", line_number)


def parse_edge_list(text: str) -> Graph:
    """Parse edge-list text into a Graph"""
    header = None
    edges: List[Tuple[int, int]] = []
    edge_lines: List[int] = []

    for line_number, raw in enumerate(text.split('\n'), start=1):
        line = raw.strip()
        if not line or line.startswith('#'):
            continue
        if header is None:
            n, m = _parse_ints(line, line_number, 2)
            if n < 1 or m < 0:
                raise EdgeListFormatError(f"invalid header N={n} M={m}", line_number)
            header = (n, m)
            continue
        u, v = _parse_ints(line, line_number, 2)
        if not (0 <= u < header[0] and 0 <= v < header[0]):
            raise EdgeListFormatError(f"endpoint outside [0, {header[0]}) in {line!r}", line_number)
        if u == v:
            raise EdgeListFormatError(f"self-loop at node {u}", line_number)
        edges.append((u, v))
        edge_lines.append(line_number)

    if header is None:
        raise EdgeListFormatError("missing 'N M' header")
    n, m = header
    if len(edges) != m:
        last = edge_lines[-1] if edge_lines else None
        raise EdgeListFormatError(f"header declares {m} edges but file lists {len(edges)}", last)

    try:
        return from_edge_list(n, edges)
    except GraphError as e:
        raise EdgeListFormatError(str(e))


def format_edge_list(g: Graph) -> str:
    edges = g.edges()
    lines = [f"{g.n} {len(edges)}"]
    lines.extend(f"{u} {v}" for u, v in edges)
    return '\n'.join(lines) + '\n'


def read_edge_list_file(path: Union[str, Path]) -> Graph:
    """Read a graph from an edge-list file"""
    path = Path(path)
    try:
        g = parse_edge_list(path.read_text(encoding='utf-8'))
        logger.info(f"Loaded graph: {path} (n={g.n}, edges={g.edge_count})")
        return g
    except EdgeListFormatError as e:
        logger.error(f"Failed to parse edge list {path}: {e}")
        raise
    except UnicodeDecodeError as e:
        logger.error(f"Failed to decode edge list {path}: {e}")
        raise EdgeListFormatError(f"{path}: not UTF-8 text (byte {e.start})") from e


def write_edge_list_file(g: Graph, path: Union[str, Path]) -> Path:
    """Write a graph as an edge-list file (LF line endings)"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w', encoding='utf-8', newline='\n') as fh:
        fh.write(format_edge_list(g))
    logger.info(f"Wrote graph: {path} (n={g.n}, edges={g.edge_count})")
    return path
