"""Command-line entry point wiring dataset -> networks -> metrics -> MST.

Subcommands: ``validate``, ``histogram``, ``tables``, ``mst``, ``export``
and ``all`` (the one-command full artifact set). Outputs are plain files
under the --out directory; re-running any command with the same inputs
produces byte-identical files. Exit codes: 0 success, 1 corpus validation
failure, 2 usage or I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import bipartite, dataset, metrics, mst
from .dataset import COMMODITY_AXIS, DESTINATION_AXIS, Dataset, DatasetError

_NET_NAME = {DESTINATION_AXIS: "dsn", COMMODITY_AXIS: "csn"}
_DEFAULT_TAXONOMY = {DESTINATION_AXIS: "destination", COMMODITY_AXIS: "commodity"}


def _precision(text: str) -> int | None:
    """--precision argument: a digit count, or 'full' for round-trip floats."""
    if text == "full":
        return None
    try:
        p = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"precision must be an integer or 'full', got {text!r}")
    if p < 0:
        raise argparse.ArgumentTypeError("precision must be nonnegative")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tradenet",
        description=(
            "Build destination/commodity share networks from a country "
            "export-profile corpus, compute partition-averaged topological "
            "coefficients, and extract minimal spanning trees."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_: str, axis: bool = False, taxonomy: bool = False,
            fmt: bool = False, out: bool = True, precision: bool = False):
        p = sub.add_parser(name, help=help_)
        p.add_argument("input", help="corpus CSV path")
        if axis:
            p.add_argument("--axis", choices=list(_NET_NAME), default=None,
                           help="network axis (default: both where sensible)")
        if taxonomy:
            p.add_argument("--taxonomy", choices=list(dataset.TAXONOMIES), default=None,
                           help="partition taxonomy for coloring/grouping (default: match axis)")
        if fmt:
            p.add_argument("--format", action="append", choices=["csv", "json", "dot"],
                           default=None, help="output format, repeatable (default: csv)")
        if out:
            p.add_argument("--out", "-o", default="out", help="output directory (default: out)")
        if precision:
            p.add_argument("--precision", type=_precision, default=2,
                           help="decimals for table floats, or 'full' (default: 2)")
        return p

    add("validate", "check the corpus against its invariants and taxonomies", out=False)
    add("histogram", "write frequency histograms of leading entries", axis=True)
    add("tables", "write partition-averaged and whole-network coefficient tables", precision=True)
    add("mst", "write single-linkage dendrogram and spanning tree exports", axis=True, taxonomy=True)
    add("export", "write the projected network itself", axis=True, taxonomy=True, fmt=True)
    add("all", "write the full artifact set for both networks", precision=True)
    return parser


def _load(path: str) -> Dataset:
    return dataset.load_dataset(path)


def _check_valid(ds: Dataset) -> list[str]:
    return dataset.validate(ds)


def _write(out_dir: Path, name: str, text: str) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / name).write_text(text, encoding="utf-8")


def _axes(args) -> list[str]:
    axis = getattr(args, "axis", None)
    return [axis] if axis else list(_NET_NAME)


def _network(ds: Dataset, axis: str) -> bipartite.WeightedGraph:
    return bipartite.project(bipartite.build_bipartite(ds, axis))


def _colorgroups(ds: Dataset, taxonomy: str) -> dict[str, str]:
    return dataset.partition_labels(ds, taxonomy)


def _sizes(ds: Dataset) -> dict[str, float]:
    return {r.code: r.export_value for r in ds.records if r.export_value is not None}


def cmd_validate(args) -> int:
    try:
        ds = _load(args.input)
    except DatasetError as e:
        print(f"invalid: {e}")
        return 1
    violations = _check_valid(ds)
    for v in violations:
        print(v)
    if violations:
        return 1
    print(f"ok: {len(ds)} records, 0 violations")
    return 0


def cmd_histogram(args) -> int:
    ds = _load(args.input)
    out = Path(args.out)
    for axis in _axes(args):
        for aggregation in ("raw", "cluster"):
            hist = dataset.frequency_histogram(ds, axis, aggregation)
            lines = ["label,count"] + [f"{label},{count}" for label, count in hist]
            _write(out, f"hist_{axis}_{aggregation}.csv", "\n".join(lines) + "\n")
    return 0


def cmd_tables(args) -> int:
    ds = _load(args.input)
    out = Path(args.out)
    p = args.precision
    nets = {axis: _network(ds, axis) for axis in _NET_NAME}
    table_specs = [
        (DESTINATION_AXIS, "destination"),
        (DESTINATION_AXIS, "organization"),
        (COMMODITY_AXIS, "commodity"),
        (COMMODITY_AXIS, "organization"),
    ]
    for axis, taxonomy in table_specs:
        rows = metrics.partition_summaries(
            nets[axis],
            dataset.partition_labels(ds, taxonomy),
            order=dataset.taxonomy_order(taxonomy),
        )
        name = f"partition_{_NET_NAME[axis]}_by_{taxonomy}.csv"
        _write(out, name, metrics.partition_table_csv(rows, p))
    summary_rows = [(_NET_NAME[axis], metrics.network_summary(nets[axis])) for axis in _NET_NAME]
    _write(out, "network_summary.csv", metrics.network_table_csv(summary_rows, p))
    return 0


def cmd_mst(args) -> int:
    ds = _load(args.input)
    out = Path(args.out)
    for axis in _axes(args):
        taxonomy = args.taxonomy or _DEFAULT_TAXONOMY[axis]
        net = _NET_NAME[axis]
        D = mst.distance_matrix(_network(ds, axis))
        dn = mst.single_linkage(D)
        tree = mst.mst_edges(D)
        _write(out, f"mst_{net}_dendrogram.csv", mst.dendrogram_csv(dn))
        _write(out, f"mst_{net}_edges.csv", mst.tree_edge_csv(tree))
        _write(
            out,
            f"mst_{net}.dot",
            mst.tree_dot(tree, _colorgroups(ds, taxonomy), _sizes(ds), name=f"mst_{net}"),
        )
        if tree.warning:
            print(f"warning: {net} is disconnected; wrote a spanning forest", file=sys.stderr)
    return 0


def cmd_export(args) -> int:
    ds = _load(args.input)
    out = Path(args.out)
    formats = args.format or ["csv"]
    for axis in _axes(args):
        taxonomy = args.taxonomy or _DEFAULT_TAXONOMY[axis]
        net = _NET_NAME[axis]
        g = _network(ds, axis)
        if "csv" in formats:
            _write(out, f"network_{net}_edges.csv", bipartite.edge_list_csv(g))
        if "dot" in formats:
            _write(
                out,
                f"network_{net}.dot",
                bipartite.graph_dot(g, _colorgroups(ds, taxonomy), _sizes(ds), name=net),
            )
        if "json" in formats:
            labels = _colorgroups(ds, taxonomy)
            payload = {
                "axis": axis,
                "nodes": [
                    {
                        "code": r.code,
                        "name": r.name,
                        "org": dataset.ORGANIZATIONS[r.org],
                        "cluster": labels[r.code],
                        "export_value": r.export_value,
                    }
                    for r in ds.records
                ],
                "edges": [
                    {"src": a, "dst": b, "weight": v} for a, b, v in g.edges()
                ],
            }
            _write(out, f"network_{net}.json", json.dumps(payload, indent=2) + "\n")
    return 0


def cmd_all(args) -> int:
    # One-command reproduction path: histograms, tables, networks, trees.
    ds = _load(args.input)
    violations = _check_valid(ds)
    if violations:
        for v in violations:
            print(v)
        return 1
    ns = argparse.Namespace
    rc = cmd_histogram(ns(input=args.input, axis=None, out=args.out))
    rc = rc or cmd_tables(ns(input=args.input, out=args.out, precision=args.precision))
    rc = rc or cmd_mst(ns(input=args.input, axis=None, taxonomy=None, out=args.out))
    rc = rc or cmd_export(
        ns(input=args.input, axis=None, taxonomy=None, format=["csv", "dot"], out=args.out)
    )
    return rc


_COMMANDS = {
    "validate": cmd_validate,
    "histogram": cmd_histogram,
    "tables": cmd_tables,
    "mst": cmd_mst,
    "export": cmd_export,
    "all": cmd_all,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2
    try:
        return _COMMANDS[args.command](args)
    except DatasetError as e:
        print(f"invalid corpus: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"i/o error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
