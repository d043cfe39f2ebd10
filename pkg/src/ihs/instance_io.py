"""Plain-text instance files.

Format::

    ihs-graph 1 <directed|undirected> <n> <m>
    u v                  (m edge or arc lines, decimal ids)
    planted <count> <ids...>                     (optional trailer)
    params [delta=<f>] [p=<f>] [k=<int>] [seed=<u64>]   (optional trailer)

Serialization is canonical (edges lexicographically sorted, single spaces,
keys in the fixed order above, trailing newline), so generate / parse / write
round-trips are byte-identical.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .graphs import Digraph, Graph, GraphError
from .models import ModelParams

MAGIC = "ihs-graph"
VERSION = "1"
_PARAM_KEYS = ("delta", "p", "k", "seed")


class InstanceFormatError(ValueError):
    """Unparseable or inconsistent instance file."""


@dataclass
class Instance:
    graph: Graph | Digraph
    directed: bool
    planted: list[int] | None = None
    params: ModelParams | None = None


def _format_float(x: float) -> str:
    return repr(float(x))


def instance_to_text(inst: Instance) -> str:
    g = inst.graph
    pairs = g.arc_list if inst.directed else g.edge_list
    out = io.StringIO()
    kind = "directed" if inst.directed else "undirected"
    out.write(f"{MAGIC} {VERSION} {kind} {g.n} {pairs.shape[0]}\n")
    for u, v in pairs.tolist():
        out.write(f"{u} {v}\n")
    if inst.planted is not None:
        ids = " ".join(str(v) for v in sorted(inst.planted))
        out.write(f"planted {len(inst.planted)}{ ' ' + ids if ids else ''}\n")
    if inst.params is not None:
        p = inst.params
        fields = []
        if p.delta is not None:
            fields.append(f"delta={_format_float(p.delta)}")
        fields.append(f"p={_format_float(p.p)}")
        if p.k is not None:
            fields.append(f"k={p.k}")
        fields.append(f"seed={p.seed}")
        out.write("params " + " ".join(fields) + "\n")
    return out.getvalue()


def write_instance(path: str | Path, inst: Instance) -> None:
    Path(path).write_text(instance_to_text(inst))


def instance_from_text(text: str) -> Instance:
    lines = text.splitlines()
    if not lines:
        raise InstanceFormatError("empty file")
    head = lines[0].split()
    if len(head) != 5 or head[0] != MAGIC or head[1] != VERSION:
        raise InstanceFormatError(f"bad header: {lines[0]!r}")
    kind = head[2]
    if kind not in ("directed", "undirected"):
        raise InstanceFormatError(f"unknown graph kind {kind!r}")
    try:
        n = int(head[3])
        m = int(head[4])
    except ValueError as exc:
        raise InstanceFormatError(f"bad header counts: {lines[0]!r}") from exc
    if len(lines) < 1 + m:
        raise InstanceFormatError(f"expected {m} edge lines, found {len(lines) - 1}")

    pairs = np.empty((m, 2), dtype=np.int64)
    for i in range(m):
        parts = lines[1 + i].split()
        if len(parts) != 2:
            raise InstanceFormatError(f"bad edge line {i + 2}: {lines[1 + i]!r}")
        try:
            pairs[i, 0] = int(parts[0])
            pairs[i, 1] = int(parts[1])
        except ValueError as exc:
            raise InstanceFormatError(f"bad edge line {i + 2}: {lines[1 + i]!r}") from exc

    planted: list[int] | None = None
    params: ModelParams | None = None
    for line in lines[1 + m:]:
        if not line.strip():
            continue
        parts = line.split()
        if parts[0] == "planted":
            if planted is not None:
                raise InstanceFormatError("duplicate planted trailer")
            try:
                count = int(parts[1])
                planted = [int(x) for x in parts[2:]]
            except (IndexError, ValueError) as exc:
                raise InstanceFormatError(f"bad planted trailer: {line!r}") from exc
            if len(planted) != count:
                raise InstanceFormatError(
                    f"planted trailer announces {count} ids but carries {len(planted)}"
                )
            if planted and (min(planted) < 0 or max(planted) >= n):
                raise InstanceFormatError("planted id out of range")
        elif parts[0] == "params":
            if params is not None:
                raise InstanceFormatError("duplicate params trailer")
            kv: dict[str, str] = {}
            for item in parts[1:]:
                if "=" not in item:
                    raise InstanceFormatError(f"bad params entry: {item!r}")
                key, value = item.split("=", 1)
                if key not in _PARAM_KEYS or key in kv:
                    raise InstanceFormatError(f"bad params key: {key!r}")
                kv[key] = value
            try:
                params = ModelParams(
                    n=n,
                    p=float(kv.get("p", "0")),
                    delta=float(kv["delta"]) if "delta" in kv else None,
                    k=int(kv["k"]) if "k" in kv else None,
                    seed=int(kv.get("seed", "0")),
                )
            except ValueError as exc:
                raise InstanceFormatError(f"bad params trailer: {line!r}") from exc
        else:
            raise InstanceFormatError(f"unexpected trailer line: {line!r}")

    try:
        graph: Graph | Digraph = Digraph(n, pairs) if kind == "directed" else Graph(n, pairs)
    except GraphError as exc:
        raise InstanceFormatError(str(exc)) from exc
    return Instance(graph=graph, directed=kind == "directed", planted=planted, params=params)


def read_instance(path: str | Path) -> Instance:
    return instance_from_text(Path(path).read_text())
