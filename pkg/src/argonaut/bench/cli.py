"""The `bench` command line: run the search benchmark over fixture files."""

from __future__ import annotations

import sys

import click

from ..catalog import CorpusParseError, InMemoryCatalog, load_corpus
from ..gateway import GatewayError, ScriptedBackend, load_script_rules
from .harness import emit_report, format_table, load_queries, run_benchmark
from .types import ARCHITECTURES, BenchError, ParseError


@click.group()
def main() -> None:
    """Search benchmark harness."""


@main.command()
@click.option("--arch", default=",".join(ARCHITECTURES), show_default=True,
              help="Comma-separated architectures to run.")
@click.option("--queries", "queries_path", required=True, type=click.Path(exists=True),
              help="JSONL query fixture with ground-truth annotations.")
@click.option("--catalog", "catalog_path", required=True, type=click.Path(exists=True),
              help="JSONL corpus fixture.")
@click.option("--judge", type=click.Choice(["oracle", "model"]), default="oracle",
              show_default=True)
@click.option("--script", "script_path", type=click.Path(exists=True), default=None,
              help="Scripted-model rules (JSONL); required for simple/agentic/model-judge.")
@click.option("--out", "out_path", type=click.Path(), default=None,
              help="Write the report here (defaults to stdout table).")
@click.option("--format", "fmt", type=click.Choice(["table", "machine"]), default="table",
              show_default=True)
def run(arch: str, queries_path: str, catalog_path: str, judge: str,
        script_path: str | None, out_path: str | None, fmt: str) -> None:
    """Run architectures over the query set and aggregate judge scores."""
    architectures = tuple(a.strip() for a in arch.split(",") if a.strip())
    unknown = [a for a in architectures if a not in ARCHITECTURES]
    if unknown:
        click.echo(f"unknown architectures: {unknown}", err=True)
        sys.exit(2)
    try:
        queries = load_queries(queries_path)
        records = load_corpus(catalog_path)
    except (ParseError, CorpusParseError) as exc:
        click.echo(f"parse error: {exc}", err=True)
        sys.exit(2)
    catalog = InMemoryCatalog()
    catalog.ingest_all(records)

    llm = None
    if script_path is not None:
        llm = ScriptedBackend(load_script_rules(script_path))
    needs_model = any(a in ("simple", "agentic") for a in architectures) or judge == "model"
    if needs_model and llm is None:
        click.echo("simple/agentic architectures and the model judge need --script", err=True)
        sys.exit(3)

    try:
        report = run_benchmark(queries, catalog, architectures, llm=llm,
                               judge_backend=llm, judge=judge)
    except (GatewayError, BenchError) as exc:
        click.echo(f"backend failure: {exc}", err=True)
        sys.exit(3)

    if out_path is None:
        click.echo(format_table(report), nl=False)
    else:
        emit_report(report, out_path, format=fmt)
        click.echo(f"report written to {out_path}")
    sys.exit(0)


if __name__ == "__main__":
    main()
