"""Graph-file parsing and serialization, benchmark CSV, synthetic datasets.

File format (line-oriented, '#'-prefixed comment lines and blank lines
ignored)::

    mode directed|undirected          one header line per file
    t # <id> <pos|neg|template>       block start
    v <vid> <label>                   vertex ids dense 0..n-1 per block
    e <src> <dst>                     edge within the block

Undirected mode symmetrizes edges at load; labels are interned
dataset-wide. All parse errors carry a 1-based line number.
"""

from __future__ import annotations

import csv
import heapq
import io
import math
import sys
from dataclasses import dataclass

from ._rng import SplitMix64
from .graphs import (
    Dataset,
    Example,
    ExampleClass,
    LabeledGraph,
    build_graph,
)
from .miner import MineResult

CLASS_TAGS = ("pos", "neg", "template")


class GraphFileError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class GraphSyntaxError(GraphFileError):
    pass


class NonDenseVertexIds(GraphFileError):
    pass


class UnknownClassTag(GraphFileError):
    pass


class DuplicateBlockId(GraphFileError):
    pass


class DatasetLoadError(ValueError):
    pass


class InfeasibleEdgeTarget(ValueError):
    pass


@dataclass
class _Block:
    block_id: int
    tag: str
    start_line: int
    labels: list[str]
    edges: list[tuple[int, int, int]]  # (src, dst, line)


def _finish_block(block: _Block, undirected: bool) -> tuple[int, str, LabeledGraph]:
    n = len(block.labels)
    for src, dst, line in block.edges:
        if not (0 <= src < n and 0 <= dst < n):
            raise GraphSyntaxError(
                f"edge ({src}, {dst}) outside vertex range 0..{n - 1}", line
            )
    graph = build_graph(
        n, [(s, d) for s, d, _ in block.edges], block.labels, undirected
    )
    return block.block_id, block.tag, graph


def parse_graphs(text: str) -> list[tuple[int, str, LabeledGraph]]:
    """Parse a graph file into (block_id, class_tag, graph) triples."""
    undirected: bool | None = None
    blocks: list[tuple[int, str, LabeledGraph]] = []
    seen_ids: set[int] = set()
    current: _Block | None = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if undirected is None:
            if fields[0] != "mode" or len(fields) != 2 or fields[1] not in (
                "directed",
                "undirected",
            ):
                raise GraphSyntaxError(
                    "expected header 'mode directed|undirected'", lineno
                )
            undirected = fields[1] == "undirected"
            continue
        kind = fields[0]
        if kind == "t":
            if current is not None:
                blocks.append(_finish_block(current, undirected))
            if len(fields) != 4 or fields[1] != "#":
                raise GraphSyntaxError("expected 't # <id> <class>'", lineno)
            try:
                block_id = int(fields[2])
            except ValueError:
                raise GraphSyntaxError(f"non-integer block id {fields[2]!r}", lineno)
            tag = fields[3]
            if tag not in CLASS_TAGS:
                raise UnknownClassTag(f"unknown class tag {tag!r}", lineno)
            if block_id in seen_ids:
                raise DuplicateBlockId(f"duplicate block id {block_id}", lineno)
            seen_ids.add(block_id)
            current = _Block(block_id, tag, lineno, [], [])
        elif kind == "v":
            if current is None:
                raise GraphSyntaxError("vertex line outside a block", lineno)
            if len(fields) != 3:
                raise GraphSyntaxError("expected 'v <vid> <label>'", lineno)
            try:
                vid = int(fields[1])
            except ValueError:
                raise GraphSyntaxError(f"non-integer vertex id {fields[1]!r}", lineno)
            if vid != len(current.labels):
                raise NonDenseVertexIds(
                    f"vertex id {vid} breaks dense 0..n-1 numbering "
                    f"(expected {len(current.labels)})",
                    lineno,
                )
            current.labels.append(sys.intern(fields[2]))
        elif kind == "e":
            if current is None:
                raise GraphSyntaxError("edge line outside a block", lineno)
            if len(fields) != 3:
                raise GraphSyntaxError("expected 'e <src> <dst>'", lineno)
            try:
                src, dst = int(fields[1]), int(fields[2])
            except ValueError:
                raise GraphSyntaxError("non-integer edge endpoint", lineno)
            current.edges.append((src, dst, lineno))
        else:
            raise GraphSyntaxError(f"unrecognized line kind {kind!r}", lineno)

    if current is not None:
        blocks.append(_finish_block(current, undirected))
    return blocks


def build_dataset(
    blocks: list[tuple[int, str, LabeledGraph]],
    n_pos_threshold: int,
    n_neg_threshold: int,
) -> Dataset:
    """Assemble a Dataset from parsed blocks; exactly one template required.

    Example graphs keep their block order and get contiguous graph ids
    starting at 0.
    """
    templates = [g for _, tag, g in blocks if tag == "template"]
    if len(templates) != 1:
        raise DatasetLoadError(
            f"expected exactly one template block, found {len(templates)}"
        )
    examples = []
    next_id = 0
    for _, tag, graph in blocks:
        if tag == "template":
            continue
        cls = ExampleClass.POSITIVE if tag == "pos" else ExampleClass.NEGATIVE
        examples.append(Example(next_id, cls, graph))
        next_id += 1
    return Dataset(
        template=templates[0],
        examples=tuple(examples),
        n_pos_threshold=n_pos_threshold,
        n_neg_threshold=n_neg_threshold,
    )


def _edge_lines(graph: LabeledGraph, ids: list[int] | None = None) -> list[str]:
    """Render edges; undirected graphs emit each edge once as 'u v' with u <= v."""
    names = ids if ids is not None else list(range(graph.n))
    if graph.undirected_input:
        pairs = sorted({(min(u, v), max(u, v)) for u, v in graph.edges})
    else:
        pairs = sorted(graph.edges)
    return [f"e {names[u]} {names[v]}" for u, v in pairs]


def write_graphs(dataset: Dataset) -> str:
    """Serialize a dataset in the graph file format (template block first)."""
    mode = "undirected" if dataset.template.undirected_input else "directed"
    lines = [f"mode {mode}"]
    lines.append("t # 0 template")
    lines.extend(
        f"v {v} {dataset.template.labels[v]}" for v in dataset.template.vertices()
    )
    lines.extend(_edge_lines(dataset.template))
    for ex in dataset.examples:
        lines.append(f"t # {ex.graph_id + 1} {ex.cls.value}")
        lines.extend(f"v {v} {ex.graph.labels[v]}" for v in ex.graph.vertices())
        lines.extend(_edge_lines(ex.graph))
    return "\n".join(lines) + "\n"


def write_patterns(results: list[MineResult]) -> str:
    """Serialize mined patterns with their coverage and timing metadata.

    Vertex and edge lines use the pattern's original template ids.
    """
    lines: list[str] = []
    for res in results:
        g = res.pattern
        ids = list(res.subset)
        lines.append(
            f"p # {res.index} size={g.n} pos={res.positive_covered} "
            f"neg={res.negative_covered} time_ms={res.elapsed_ms:.3f}"
        )
        lines.extend(f"v {ids[v]} {g.labels[v]}" for v in g.vertices())
        lines.extend(_edge_lines(g, ids))
        lines.append("")
    return "\n".join(lines) + "\n" if lines else ""


@dataclass(frozen=True)
class PatternBlock:
    index: int
    size: int
    pos: int
    neg: int
    time_ms: float
    subset: tuple[int, ...]
    labels: dict[int, str]
    edges: tuple[tuple[int, int], ...]  # original template ids, as written


def parse_patterns(text: str) -> list[PatternBlock]:
    """Read back a write_patterns file (original template ids preserved)."""
    out: list[PatternBlock] = []
    header: dict | None = None
    vertices: dict[int, str] = {}
    edges: list[tuple[int, int]] = []

    def finish() -> None:
        nonlocal header, vertices, edges
        if header is not None:
            out.append(
                PatternBlock(
                    index=header["index"],
                    size=header["size"],
                    pos=header["pos"],
                    neg=header["neg"],
                    time_ms=header["time_ms"],
                    subset=tuple(sorted(vertices)),
                    labels=dict(vertices),
                    edges=tuple(edges),
                )
            )
        header, vertices, edges = None, {}, []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if fields[0] == "p":
            finish()
            if len(fields) != 7 or fields[1] != "#":
                raise GraphSyntaxError("malformed pattern header", lineno)
            try:
                kv = dict(f.split("=", 1) for f in fields[3:])
                header = {
                    "index": int(fields[2]),
                    "size": int(kv["size"]),
                    "pos": int(kv["pos"]),
                    "neg": int(kv["neg"]),
                    "time_ms": float(kv["time_ms"]),
                }
            except (KeyError, ValueError):
                raise GraphSyntaxError("malformed pattern header", lineno)
        elif fields[0] == "v":
            if header is None:
                raise GraphSyntaxError("vertex line outside a pattern block", lineno)
            vertices[int(fields[1])] = sys.intern(fields[2])
        elif fields[0] == "e":
            if header is None:
                raise GraphSyntaxError("edge line outside a pattern block", lineno)
            edges.append((int(fields[1]), int(fields[2])))
        else:
            raise GraphSyntaxError(f"unrecognized line kind {fields[0]!r}", lineno)
    finish()
    return out


def write_bench_csv(
    records: list[tuple[str, int, float, str, int]]
) -> str:
    """CSV with header strategy,index,elapsed_ms,dataset,seed; rows keep input order."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["strategy", "index", "elapsed_ms", "dataset", "seed"])
    for strategy, index, elapsed_ms, dataset_tag, seed in records:
        writer.writerow([strategy, index, f"{elapsed_ms:.3f}", dataset_tag, seed])
    return buf.getvalue()


@dataclass(frozen=True)
class SynthParams:
    n_graphs: int
    vertex_range: tuple[int, int]
    target_avg_edges: int
    n_labels: int
    positive_fraction: float
    seed: int

    def __post_init__(self) -> None:
        lo, hi = self.vertex_range
        if lo < 2 or hi < lo:
            raise ValueError("vertex_range lower bound must be >= 2 and range nonempty")
        if self.n_labels < 1:
            raise ValueError("n_labels must be >= 1")
        if not (0.0 <= self.positive_fraction <= 1.0):
            raise ValueError("positive_fraction must lie in [0, 1]")
        if self.n_graphs < 0:
            raise ValueError("n_graphs must be non-negative")


def _label_symbols(k: int) -> list[str]:
    if k <= 26:
        return [chr(ord("a") + i) for i in range(k)]
    return [f"l{i}" for i in range(k)]


def _random_tree(rng: SplitMix64, n: int) -> list[tuple[int, int]]:
    """Uniform random labeled spanning tree via a Pruefer sequence."""
    if n == 1:
        return []
    if n == 2:
        return [(0, 1)]
    seq = [rng.below(n) for _ in range(n - 2)]
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for v in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, v))
        degree[v] -= 1
        if degree[v] == 1:
            heapq.heappush(leaves, v)
    edges.append((heapq.heappop(leaves), heapq.heappop(leaves)))
    return edges


def _random_connected_graph(
    rng: SplitMix64, n: int, target_edges: int, labels: list[str]
) -> LabeledGraph:
    tree = _random_tree(rng, n)
    max_edges = n * (n - 1) // 2
    want = min(max(target_edges + rng.below(5) - 2, n - 1), max_edges)
    tree_set = {(min(u, v), max(u, v)) for u, v in tree}
    spare = [
        (u, v)
        for u in range(n)
        for v in range(u + 1, n)
        if (u, v) not in tree_set
    ]
    rng.shuffle(spare)
    edges = sorted(tree_set) + spare[: want - len(tree_set)]
    vlabels = [labels[rng.below(len(labels))] for _ in range(n)]
    return build_graph(n, edges, vlabels, undirected=True)


def gen_synthetic(params: SynthParams) -> Dataset:
    """Seed-deterministic dataset with connected graphs matching the target
    statistics; thresholds default to ceil(5% of the positives) and 0."""
    lo, hi = params.vertex_range
    if params.target_avg_edges < lo - 1:
        raise InfeasibleEdgeTarget(
            f"target_avg_edges {params.target_avg_edges} is below the spanning "
            f"tree minimum {lo - 1} for every vertex count in range"
        )
    rng = SplitMix64(params.seed)
    labels = _label_symbols(params.n_labels)

    graphs = []
    for _ in range(params.n_graphs):
        n = rng.randrange(lo, hi)
        graphs.append(_random_connected_graph(rng, n, params.target_avg_edges, labels))
    template = _random_connected_graph(rng, hi, params.target_avg_edges, labels)

    n_pos = round(params.positive_fraction * params.n_graphs)
    classes = [ExampleClass.POSITIVE] * n_pos + [ExampleClass.NEGATIVE] * (
        params.n_graphs - n_pos
    )
    rng.shuffle(classes)

    examples = tuple(
        Example(i, cls, g) for i, (cls, g) in enumerate(zip(classes, graphs))
    )
    return Dataset(
        template=template,
        examples=examples,
        n_pos_threshold=math.ceil(0.05 * n_pos),
        n_neg_threshold=0,
    )
