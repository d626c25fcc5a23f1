"""
CLI Tool Access Layer for treecoh

This module provides the command-line interface: the verification suite
runner and the generators for Diestel-Leader graphs, cell dumps and trees.
Exit codes of `run`: 0 when every check passes, 1 on any failure, 2 on a
configuration error.
"""

import json
import os
import sys

import click
import yaml

sys.path.append(os.path.dirname(os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))))

from cohomo.pairs import TruncationPair
from dlgeom.graph import dl_graph, write_edge_list, y0_graph
from event_system.event_bus import EventBus
from event_system.handlers.progress_handler import ProgressHandler
from orchestrator.check_engine import CheckEngine
from orchestrator.task_manager import TaskManager
from prodcomplex.complex import ProductComplex
from prodcomplex.dump import write_cells
from prodcomplex.regions import MultiComplement, parse_region
from treegeo.tree import build_regular
from utils.config import load_config, parse_config
from utils.errors import ConfigError, TreecohError
from utils.logging import setup_logging

VERSION = "0.1.0"

LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR"]


@click.group()
@click.version_option(version=VERSION)
def cli():
    """treecoh - cohomology checks for horoballs in products of trees"""
    pass


def _config_error(error: ConfigError) -> None:
    click.echo(f"Error: {str(error)}", err=True)
    click.echo(json.dumps(error.to_dict(), sort_keys=True), err=True)
    sys.exit(2)


def _write(text: str, output: str) -> None:
    with open(output, "w") as f:
        f.write(text)


@cli.command()
@click.option("--config", "config_path", required=True, type=click.Path(dir_okay=False),
              help="JSON or YAML run configuration")
@click.option("--out", "-o", type=click.Path(), help="Report file (defaults to the config output)")
@click.option("--threads", type=int, help="Worker threads")
@click.option("--seed", type=int, help="Seed for sampling checks")
@click.option("--format", "-f", "format_type", type=click.Choice(["json", "yaml", "text"]), default="json",
              help="Report format")
@click.option("--log-level", type=click.Choice(LOG_LEVELS, case_sensitive=False), default="WARNING")
@click.option("--progress/--no-progress", default=False, help="Print check progress to stderr")
@click.option("--timings", is_flag=True, help="Print per-check wall time to stderr")
def run(config_path, out, threads, seed, format_type, log_level, progress, timings):
    """Run the verification checks named in a configuration"""
    setup_logging(log_level)
    try:
        config = load_config(config_path)
        overrides = {key: value for key, value in (("threads", threads), ("seed", seed)) if value is not None}
        if overrides:
            config = parse_config({**config.model_dump(mode="json"), **overrides})
        config.validate_depths()
    except ConfigError as e:
        _config_error(e)

    event_bus = EventBus()
    if progress:
        ProgressHandler(echo=lambda line: click.echo(line, err=True)).attach(event_bus)
    engine = CheckEngine(task_manager=TaskManager(event_bus), event_bus=event_bus)
    report = engine.run(config)

    formatted_output = format_output(report.to_dict(), format_type)
    output = out or config.output
    if output:
        try:
            _write(formatted_output + "\n", output)
        except OSError as e:
            click.echo(f"Error writing to file: {str(e)}", err=True)
            sys.exit(1)
        click.echo(f"Report written to {output}", err=True)
    else:
        click.echo(formatted_output)

    if timings:
        for check, usage in engine.get_timing_report().items():
            click.echo(f"{check}: {usage['total_ms']} ms", err=True)

    sys.exit(report.exit_code)


@cli.command("dl-graph")
@click.option("--q", "q", type=int, default=2, show_default=True, help="Alphabet size")
@click.option("--depth", type=int, default=2, show_default=True, help="Label budget of both trees")
@click.option("--window", type=int, help="Largest |h(u)| kept (defaults to the depth)")
@click.option("--factors", type=click.IntRange(min=1), default=2, show_default=True,
              help="Number of tree factors; other than 2 exports the horosphere Y_0 of the product")
@click.option("--out", "-o", required=True, type=click.Path(), help="Edge-list CSV")
def dl_graph_command(q, depth, window, factors, out):
    """Export the Diestel-Leader graph DL(q, q), or Y_0 of a d-fold product, as an edge list"""
    try:
        if factors == 2:
            graph = dl_graph(q, depth, window)
        else:
            graph = y0_graph(ProductComplex.regular(factors, q, depth), window)
        edges = write_edge_list(graph, out)
    except TreecohError as e:
        click.echo(f"Error: {str(e)}", err=True)
        sys.exit(1)
    click.echo(f"{graph.number_of_nodes()} vertices, {edges} edges written to {out}")


@cli.command()
@click.option("--config", "config_path", required=True, type=click.Path(dir_okay=False))
@click.option("--stage", type=int, required=True, help="Stage n of the exhaustion")
@click.option("--region", default="whole", show_default=True,
              help='Region such as "whole", "superlevel:1", "corner:0:2", or "multi" for the configured horoballs')
@click.option("--out", "-o", type=click.Path(), help="Cell CSV (defaults to stdout)")
def cells(config_path, stage, region, out):
    """Dump the cells of a stage pair as CSV"""
    try:
        config = load_config(config_path)
    except ConfigError as e:
        _config_error(e)
    try:
        complex_ = config.build_complex()
        if region.strip().lower() == "multi":
            selected = MultiComplement(tuple(config.horoball_specs(complex_)))
        else:
            selected = parse_region(region)
        pair = TruncationPair.at_stage(complex_, selected, stage)
        text = write_cells(complex_, pair.cells.all_cells())
    except TreecohError as e:
        click.echo(f"Error: {str(e)}", err=True)
        sys.exit(1)
    if out:
        _write(text, out)
        click.echo(f"{len(pair.cells.all_cells())} cells written to {out}", err=True)
    else:
        click.echo(text, nl=False)


@cli.command()
@click.option("--q", "q", type=int, default=2, show_default=True, help="Branching number")
@click.option("--depth", type=int, default=2, show_default=True, help="Truncation depth N")
def tree(q, depth):
    """Print a truncated regular tree as JSON"""
    try:
        click.echo(build_regular(q, depth).to_json())
    except TreecohError as e:
        click.echo(f"Error: {str(e)}", err=True)
        sys.exit(1)


def format_output(data, format_type):
    """Format output based on format type

    Args:
        data: Data to format
        format_type: Format type (text, json, yaml)

    Returns:
        Formatted output string
    """
    if format_type == "json":
        return json.dumps(data, indent=2, sort_keys=True)
    elif format_type == "yaml":
        return yaml.safe_dump(data, default_flow_style=False, sort_keys=True)
    else:  # text
        return format_as_text(data).lstrip("\n")


def format_as_text(data, indent=0):
    """Format data as text

    Args:
        data: Data to format
        indent: Indentation level

    Returns:
        Formatted text string
    """
    if data is None:
        return "None"

    if isinstance(data, str):
        return data

    if isinstance(data, (int, float, bool)):
        return str(data)

    if isinstance(data, list):
        if not data:
            return "[]"

        result = ""
        for item in data:
            result += "\n" + " " * indent + "- " + format_as_text(item, indent + 2).lstrip()
        return result

    if isinstance(data, dict):
        if not data:
            return "{}"

        result = ""
        for key, value in data.items():
            formatted_value = format_as_text(value, indent + 2)
            if "\n" in formatted_value:
                result += "\n" + " " * indent + f"{key}:" + formatted_value
            else:
                result += "\n" + " " * indent + f"{key}: {formatted_value}"
        return result

    return str(data)


if __name__ == "__main__":
    cli()
